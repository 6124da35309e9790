"""The operators U(a, L) on state vectors and checks of their defining properties."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fields import FieldSection, pullback, scale
from .geometry import Frame, GeometryError, RectSurface, intersect
from .hilbert import StateVector, Term, add, inner, inner_legacy, norm
from .lorentz import InhomogeneousElement, compose, four_vector, minkowski_dot
from .polygon import area as polygon_area, fan_triangles

UNITARITY_TOL = 1e-9
GROUP_LAW_TOL = 1e-9
GROUP_LAW_NORM_TOL = 1e-8


@dataclass(frozen=True)
class RepConfig:
    h_hat: float = 1.0
    p_hat: float = 0.5

    def __post_init__(self):
        if not (np.isfinite(self.h_hat) and np.isfinite(self.p_hat)):
            raise ValueError("h_hat and p_hat must be finite")


def phase(cfg: RepConfig, g: InhomogeneousElement, frame) -> complex:
    """``exp(-i a.(H Y f0 + P Y f1))`` with the Minkowski product."""
    y = g.matrix
    k = cfg.h_hat * (y @ frame.f0) + cfg.p_hat * (y @ frame.f1)
    return complex(np.exp(-1j * minkowski_dot(g.translation, k)))


def act_term(cfg: RepConfig, g: InhomogeneousElement, term: Term) -> Term:
    c = phase(cfg, g, term.frame)
    section = term.section.map(lambda f: scale(c, pullback(f, g)))
    return Term(term.piece.transformed(g), section, term.frame.transformed(g))


def act(cfg: RepConfig, g: InhomogeneousElement, v: StateVector) -> StateVector:
    """``U(g) v``: move each piece and frame by g, pull the fields back and attach the phase."""
    if g.is_identity():
        return v
    return StateVector(tuple(act_term(cfg, g, t) for t in v.terms), v.n)


@dataclass
class CheckReport:
    name: str
    passed: bool
    values: dict = field(default_factory=dict)
    tolerance: float = 0.0

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "tolerance": self.tolerance, "values": self.values}


def _c(z: complex) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def verify_unitarity(cfg: RepConfig, g, v, w, tol: float = UNITARITY_TOL, legacy: bool = False) -> CheckReport:
    """Compare ``<U v, U w>`` with ``<v, w>`` (``legacy`` uses the Euclidean pairing)."""
    ip = inner_legacy if legacy else inner
    before = ip(v, w)
    after = ip(act(cfg, g, v), act(cfg, g, w))
    diff = abs(after - before)
    return CheckReport(
        "unitarity-legacy" if legacy else "unitarity",
        bool(diff <= tol),
        {"before": _c(before), "after": _c(after), "difference": float(diff)},
        tol,
    )


def random_points_on(piece, rng, k: int) -> np.ndarray:
    """``k`` uniform points inside a convex piece, as ``(k, 4)``."""
    tris = fan_triangles(piece.polygon)
    areas = np.array([polygon_area(t) for t in tris])
    idx = rng.choice(len(tris), size=k, p=areas / areas.sum())
    r1, r2 = rng.random(k), rng.random(k)
    flip = r1 + r2 > 1
    r1[flip], r2[flip] = 1 - r1[flip], 1 - r2[flip]
    t = tris[idx]
    st = t[:, 0] + r1[:, None] * (t[:, 1] - t[:, 0]) + r2[:, None] * (t[:, 2] - t[:, 0])
    return piece.chart.point(st)


def _vertex_distance(p, q) -> float:
    """Hausdorff-like distance between vertex sets (order free)."""
    a, b = p.vertices(), q.vertices()
    if len(a) != len(b):
        return float("inf")
    d = np.max(np.abs(a[:, None, :] - b[None, :, :]), axis=-1)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def compare_states(u: StateVector, v: StateVector, rng, samples: int = 20) -> dict:
    """Structural comparison of two states with term lists in matching order."""
    if len(u.terms) != len(v.terms) or u.n != v.n:
        return {"vertex": float("inf"), "frame": float("inf"), "field": float("inf")}
    vert = frame = fld = 0.0
    for s, t in zip(u.terms, v.terms):
        vert = max(vert, _vertex_distance(s.piece, t.piece))
        frame = max(frame, float(np.max(np.abs(s.frame.f0 - t.frame.f0))), float(np.max(np.abs(s.frame.f1 - t.frame.f1))))
        x = random_points_on(s.piece, rng, samples)
        fld = max(fld, float(np.max(np.abs(s.section.evaluate(x) - t.section.evaluate(x)))))
    return {"vertex": vert, "frame": frame, "field": fld}


def verify_group_law(cfg: RepConfig, g1, g2, v, rng=None, tol: float = GROUP_LAW_TOL,
                     norm_tol: float = GROUP_LAW_NORM_TOL) -> CheckReport:
    """``U(g1) U(g2) v`` against ``U(g1 g2) v``: pieces, frames, sampled fields and norm distance."""
    rng = rng if rng is not None else np.random.default_rng(0)
    lhs = act(cfg, g1, act(cfg, g2, v))
    rhs = act(cfg, compose(g1, g2), v)
    values = compare_states(lhs, rhs, rng)
    values["norm"] = norm(add(1, lhs, -1, rhs))
    passed = (
        values["vertex"] <= tol and values["frame"] <= tol and values["field"] <= tol
        and values["norm"] <= norm_tol
    )
    return CheckReport("group-law", bool(passed), values, tol)


def verify_inverse(cfg: RepConfig, g, v, rng=None, tol: float = GROUP_LAW_TOL) -> CheckReport:
    rng = rng if rng is not None else np.random.default_rng(0)
    back = act(cfg, g.inverse(), act(cfg, g, v))
    values = compare_states(back, v, rng)
    passed = all(values[k] <= tol for k in ("vertex", "frame", "field"))
    return CheckReport("inverse", bool(passed), values, tol)


def unit_square_x23(origin=(0, 0, 0, 0)) -> RectSurface:
    return RectSurface(four_vector(origin), (0, 0, 1, 0), (0, 0, 0, 1))


def nonseparability_family(k: int, step, n: int = 1) -> list[StateVector]:
    """``k`` unit-norm states ``(S0 + j*step, E^1, (e0, e1))`` on disjoint translates."""
    step = four_vector(step)
    surfaces = [unit_square_x23(j * step) for j in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if intersect(surfaces[i], surfaces[j]) is not None:
                raise GeometryError(f"translates {i} and {j} overlap")
    section = FieldSection.basis(1, n)
    return [StateVector.single(s, section, Frame.standard()) for s in surfaces]

