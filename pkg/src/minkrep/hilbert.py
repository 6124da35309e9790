"""State vectors built from framed surfaces carrying fields, and their inner products."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polygon import TRIANGLE_NODES, polygon_nodes
from .fields import FieldSection, scale_add
from .geometry import (
    Frame,
    GeometryError,
    Piece,
    euclidean_area,
    insert_disjoint,
    intersect,
)

FRAME_MATCH_TOL = 1e-9


class FrameMismatchError(GeometryError):
    pass


@dataclass(frozen=True, eq=False)
class Term:
    piece: Piece
    section: FieldSection
    frame: Frame


@dataclass(frozen=True, eq=False)
class StateVector:
    """Finite sum of ``(piece, section, frame)`` terms with disjoint pieces.

    Build through :meth:`from_terms` (or :func:`add`) so that overlapping
    pieces get merged; the bare constructor trusts its input.
    """

    terms: tuple
    n: int

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        for t in terms:
            if t.section.n != self.n:
                raise ValueError(f"term has {t.section.n} components, state has {self.n}")

    @classmethod
    def single(cls, piece: Piece, section: FieldSection, frame: Frame) -> "StateVector":
        return cls((Term(piece, section, frame),), section.n)

    @classmethod
    def from_terms(cls, terms, n: int | None = None) -> "StateVector":
        terms = list(terms)
        if n is None:
            if not terms:
                raise ValueError("cannot infer the component count of an empty state")
            n = terms[0].section.n
        out = cls((), n)
        for t in terms:
            out = add(1, out, 1, cls.single(t.piece, t.section, t.frame))
        return out

    @classmethod
    def zero(cls, n: int) -> "StateVector":
        return cls((), n)

    def __add__(self, other):
        return add(1, self, 1, other)

    def __sub__(self, other):
        return add(1, self, -1, other)

    def __rmul__(self, c):
        return scale(c, self)

    def __neg__(self):
        return scale(-1, self)


def scale(c: complex, v: StateVector) -> StateVector:
    zero = FieldSection.zero(v.n)
    return StateVector(tuple(Term(t.piece, scale_add(c, t.section, 0, zero), t.frame) for t in v.terms), v.n)


def _require_same_frame(old: Frame, new: Frame):
    if not old.matches(new, FRAME_MATCH_TOL):
        raise FrameMismatchError("overlapping pieces carry different frames")


def add(lam: complex, v: StateVector, mu: complex, w: StateVector) -> StateVector:
    """``lam*v + mu*w``; overlapping pieces are split and their fields summed.

    Outside its own support each field counts as zero, so the overlap gets
    ``lam*f + mu*g`` and the leftovers keep ``lam*f`` or ``mu*g``.
    """
    if v.n != w.n:
        raise ValueError(f"component count mismatch: {v.n} vs {w.n}")
    zero = FieldSection.zero(v.n)
    items = [(t.piece, scale_add(lam, t.section, 0, zero), t.frame) for t in v.terms]
    for t in w.terms:
        items = insert_disjoint(
            items,
            t.piece,
            scale_add(mu, t.section, 0, zero),
            t.frame,
            combine=lambda a, b: scale_add(1, a, 1, b),
            on_overlap=_require_same_frame,
        )
    return StateVector(tuple(Term(p, s, f) for p, s, f in items), v.n)


def integrate_region(region: Piece, integrand, measure: str = "minkowski", n: int = TRIANGLE_NODES) -> complex:
    """``int integrand(x) dmu`` over a piece; ``integrand`` takes points ``(k, 4)``.

    ``measure`` is ``"minkowski"`` (d|rho'|) or ``"euclidean"`` (d rho); both
    densities are constant on a plane, so only the chart Jacobian enters.
    """
    chart = region.chart
    if measure == "minkowski":
        density = chart.minkowski_jacobian()
    elif measure == "euclidean":
        density = chart.euclidean_jacobian()
    else:
        raise ValueError(f"unknown measure {measure!r}")
    st, w = polygon_nodes(region.polygon, n)
    if len(w) == 0:
        return 0j
    values = integrand(chart.point(st))
    return complex(density * np.sum(w * values))


def _pair_integral(p: Term, q: Term, measure: str) -> complex:
    if not p.frame.matches(q.frame, FRAME_MATCH_TOL):
        return 0j
    region = intersect(p.piece, q.piece)
    if region is None:
        return 0j

    def integrand(x):
        return np.sum(p.section.evaluate(x) * np.conj(q.section.evaluate(x)), axis=-1)

    return integrate_region(region, integrand, measure)


def _inner(v: StateVector, w: StateVector, measure: str) -> complex:
    if v.n != w.n:
        raise ValueError(f"component count mismatch: {v.n} vs {w.n}")
    total = 0j
    for p in v.terms:
        for q in w.terms:
            total += _pair_integral(p, q, measure)
    return total


def inner(v: StateVector, w: StateVector) -> complex:
    """Invariant inner product (Minkowski surface measure); zero across different frames."""
    return _inner(v, w, "minkowski")


def inner_legacy(v: StateVector, w: StateVector) -> complex:
    """Same pairing against the Euclidean area measure (not boost invariant)."""
    return _inner(v, w, "euclidean")


def norm(v: StateVector) -> float:
    ip = inner(v, v)
    if abs(ip.imag) > 1e-12 * max(1.0, abs(ip.real)):
        raise ArithmeticError(f"<v, v> has imaginary part {ip.imag}")
    return float(np.sqrt(max(ip.real, 0.0)))


def gram_matrix(vs, tol: float = 1e-12) -> np.ndarray:
    vs = list(vs)
    g = np.array([[inner(a, b) for b in vs] for a in vs], dtype=complex)
    defect = np.max(np.abs(g - g.conj().T)) if len(vs) else 0.0
    if defect > tol * max(1.0, float(np.max(np.abs(g))) if len(vs) else 1.0):
        raise ArithmeticError(f"Gram matrix is not Hermitian (defect {defect})")
    return g


def total_area(v: StateVector) -> float:
    return sum(euclidean_area(t.piece) for t in v.terms)

