"""Jacobian densities and surface measures on parametrised surfaces.

For a chart ``sigma(s, t)`` with partials ``sigma'`` and ``sigma_dot`` the
pair Jacobians are ``J_ab = [[s'_a, t'_a], [s'_b, t'_b]]``.  Two densities
are built from them:

* ``rho^ab = |det J_ab| / sqrt(det(J_ab^T J_ab + J_cd^T J_cd))`` whose sum
  ``sum rho^ab |J_ab|`` integrates to the Euclidean area, and
* the imaginary-time version, with the time row of ``J_0b`` multiplied by
  ``i``; its sum integrates to a Lorentz-invariant measure.

(c, d) is always the complementary index pair of (a, b).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np

from .geometry import Chart, GeometryError, Piece, euclidean_area
from .lorentz import euclidean_dot, minkowski_dot
from . import polygon as poly2d

PAIRS = tuple(combinations(range(4), 2))
COMPLEMENT = {p: tuple(sorted(set(range(4)) - set(p))) for p in PAIRS}

DEGENERATE_TOL = 1e-14
QUAD_NODES = 32
SELF_CHECK_TOL = 1e-8


class DegenerateChartError(GeometryError):
    pass


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class Parametrization:
    """A chart ``I^2 -> R^4`` with analytic partials (all vectorised).

    Each callable takes arrays ``s, t`` of equal shape and returns an array
    with a trailing axis of length 4.
    """

    sigma: Callable
    d_s: Callable
    d_t: Callable
    name: str = "chart"
    affine: bool = False

    def partials(self, s, t):
        return np.asarray(self.d_s(s, t), dtype=float), np.asarray(self.d_t(s, t), dtype=float)


def affine_chart(origin, u, v) -> Parametrization:
    origin, u, v = (np.asarray(x, dtype=float) for x in (origin, u, v))

    def sigma(s, t):
        s, t = np.asarray(s, dtype=float), np.asarray(t, dtype=float)
        return origin + s[..., None] * u + t[..., None] * v

    def d_s(s, t):
        return np.broadcast_to(u, np.shape(s) + (4,))

    def d_t(s, t):
        return np.broadcast_to(v, np.shape(t) + (4,))

    return Parametrization(sigma, d_s, d_t, name="affine", affine=True)


def chart_of(piece: Piece) -> Parametrization:
    """Affine chart of a piece (the unit square maps onto a rectangle)."""
    c = piece.chart
    return affine_chart(c.origin, c.u, c.v)


def reparametrized(p: Parametrization, fs=None, dfs=None, ft=None, dft=None, name="reparametrized") -> Parametrization:
    """``p(fs(s), ft(t))`` for monotone bijections ``fs, ft`` of [0, 1]."""
    ident = lambda x: np.asarray(x, dtype=float)
    one = lambda x: np.ones_like(np.asarray(x, dtype=float))
    fs, dfs = (fs, dfs) if fs is not None else (ident, one)
    ft, dft = (ft, dft) if ft is not None else (ident, one)

    def sigma(s, t):
        return p.sigma(fs(s), ft(t))

    def d_s(s, t):
        return p.d_s(fs(s), ft(t)) * np.asarray(dfs(s))[..., None]

    def d_t(s, t):
        return p.d_t(fs(s), ft(t)) * np.asarray(dft(t))[..., None]

    return Parametrization(sigma, d_s, d_t, name=name)


def squared_s(p: Parametrization) -> Parametrization:
    """``sigma(s^2, t)``."""
    return reparametrized(p, fs=lambda s: np.asarray(s) ** 2, dfs=lambda s: 2 * np.asarray(s), name="s^2")


def cubed_t(p: Parametrization) -> Parametrization:
    """``sigma(s, t^3)``."""
    return reparametrized(p, ft=lambda t: np.asarray(t) ** 3, dft=lambda t: 3 * np.asarray(t) ** 2, name="t^3")


def jacobians(d_s, d_t, imaginary_time: bool = False) -> dict:
    """``{(a, b): J_ab}`` with J_ab of shape ``(..., 2, 2)``."""
    cols = np.stack([d_s, d_t], axis=-1)  # (..., 4, 2)
    if imaginary_time:
        cols = cols.astype(complex)
        cols[..., 0, :] *= 1j
    return {(a, b): cols[..., [a, b], :] for a, b in PAIRS}


def _det2(m):
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def _gram_sum(J, pair):
    """``det(J_ab^T J_ab + J_cd^T J_cd)`` (plain transpose, no conjugation)."""
    jab, jcd = J[pair], J[COMPLEMENT[pair]]
    m = np.swapaxes(jab, -1, -2) @ jab + np.swapaxes(jcd, -1, -2) @ jcd
    return _det2(m)


def density_rho(p: Parametrization, s, t) -> dict:
    """``{(a, b): rho^ab}`` at ``(s, t)``."""
    d_s, d_t = p.partials(s, t)
    J = jacobians(d_s, d_t)
    out = {}
    for pair in PAIRS:
        g = _gram_sum(J, pair)
        if np.any(g <= DEGENERATE_TOL):
            raise DegenerateChartError("differential is degenerate")
        out[pair] = np.abs(_det2(J[pair])) / np.sqrt(g)
    return out


def transition_matrix(p: Parametrization, s, t, pair, other) -> np.ndarray:
    """``W_ab^cd = J_cd J_ab^-1`` (requires ``J_ab`` invertible)."""
    d_s, d_t = p.partials(s, t)
    J = jacobians(d_s, d_t)
    jab = J[pair]
    if np.any(np.abs(_det2(jab)) <= DEGENERATE_TOL):
        raise DegenerateChartError(f"J_{pair} is singular")
    return J[other] @ np.linalg.inv(jab)


def density_rho_w(p: Parametrization, s, t, pair) -> np.ndarray:
    """Cross-check of ``rho^ab`` through ``1 / sqrt(det(1 + W^T W))``, W = W_ab^cd."""
    w = transition_matrix(p, s, t, pair, COMPLEMENT[pair])
    return 1.0 / np.sqrt(_det2(np.eye(2) + np.swapaxes(w, -1, -2) @ w))


def euclidean_density(p: Parametrization, s, t):
    """``sum_ab rho^ab |J_ab|``, the Euclidean area element."""
    d_s, d_t = p.partials(s, t)
    J = jacobians(d_s, d_t)
    rho = density_rho(p, s, t)
    return sum(rho[pair] * np.abs(_det2(J[pair])) for pair in PAIRS)


def _imag_terms(p: Parametrization, s, t):
    d_s, d_t = p.partials(s, t)
    J = jacobians(d_s, d_t, imaginary_time=True)
    rho = {}
    for pair in PAIRS:
        g = _gram_sum(J, pair)
        if np.any(np.abs(g) <= DEGENERATE_TOL):
            raise DegenerateChartError("Minkowski Gram determinant vanishes")
        rho[pair] = _det2(J[pair]) / np.sqrt(g + 0j)
    return rho, J


def density_rho_imag_terms(p: Parametrization, s, t) -> dict:
    """``{(a, b): rho'^ab}`` with the imaginary-time Jacobians (principal sqrt)."""
    return _imag_terms(p, s, t)[0]


def density_rho_imag(p: Parametrization, s, t):
    """``sum_ab rho'^ab det J'_ab`` (complex; real positive on space-like charts)."""
    rho, J = _imag_terms(p, s, t)
    return sum(rho[pair] * _det2(J[pair]) for pair in PAIRS)


def minkowski_gram_density(d_s, d_t):
    """``sqrt((s'.s')(t'.t') - (s'.t')^2)`` with Minkowski dots; space-like input only."""
    g = minkowski_dot(d_s, d_s) * minkowski_dot(d_t, d_t) - minkowski_dot(d_s, d_t) ** 2
    if np.any(g <= 0):
        raise DegenerateChartError("chart is not space-like")
    return np.sqrt(g)


def euclidean_gram_density(d_s, d_t):
    g = euclidean_dot(d_s, d_s) * euclidean_dot(d_t, d_t) - euclidean_dot(d_s, d_t) ** 2
    return np.sqrt(np.maximum(g, 0.0))


def wedge_check(p: Parametrization, s, t, A) -> float:
    """``sum rho^ab |J_ab|`` for the chart ``A sigma`` (``A`` orthogonal)."""
    A = np.asarray(A, dtype=float)
    if np.max(np.abs(A.T @ A - np.eye(4))) > 1e-10:
        raise ValueError("basis change must be orthogonal")
    rotated = Parametrization(
        lambda s, t: p.sigma(s, t) @ A.T,
        lambda s, t: p.d_s(s, t) @ A.T,
        lambda s, t: p.d_t(s, t) @ A.T,
    )
    return euclidean_density(rotated, s, t)


def gauss_legendre_square(n: int):
    """Tensor Gauss-Legendre nodes ``(s, t)`` and weights on [0, 1]^2."""
    x, w = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    s, t = np.meshgrid(x, x, indexing="ij")
    return s.ravel(), t.ravel(), np.outer(w, w).ravel()


def integrate_square(f: Callable, n: int = QUAD_NODES, check: bool = True):
    """Integrate ``f(s, t)`` over [0, 1]^2, self-checked against ``2n`` nodes."""
    s, t, w = gauss_legendre_square(n)
    value = np.sum(w * f(s, t))
    if check:
        s2, t2, w2 = gauss_legendre_square(2 * n)
        fine = np.sum(w2 * f(s2, t2))
        if abs(fine - value) > SELF_CHECK_TOL * max(1.0, abs(fine)):
            raise QuadratureError(f"quadrature self-check failed: |{value} - {fine}| > {SELF_CHECK_TOL}")
    return value


def integrate_polygon(f: Callable, polygon, n: int = poly2d.TRIANGLE_NODES, check: bool = True):
    """Integrate ``f(s, t)`` over a convex parameter polygon, self-checked against ``2n``."""
    pts, w = poly2d.polygon_nodes(polygon, n)
    value = np.sum(w * f(pts[:, 0], pts[:, 1]))
    if check:
        pts2, w2 = poly2d.polygon_nodes(polygon, 2 * n)
        fine = np.sum(w2 * f(pts2[:, 0], pts2[:, 1]))
        if abs(fine - value) > SELF_CHECK_TOL * max(1.0, abs(fine)):
            raise QuadratureError(f"quadrature self-check failed: |{value} - {fine}| > {SELF_CHECK_TOL}")
    return value


def _mink_abs_integrand(p: Parametrization):
    def integrand(s, t):
        d_s, d_t = p.partials(s, t)
        minkowski_gram_density(d_s, d_t)  # asserts positivity before the complex sqrt
        return np.abs(density_rho_imag(p, s, t))

    return integrand


def measure_by_quadrature(piece: Piece, kind: str = "area"):
    """Quadrature of a measure over the piece's own parameter polygon in its affine chart.

    ``kind`` is ``"area"``, ``"mink"`` or ``"signed"``.
    """
    p = chart_of(piece)
    f = {
        "area": lambda s, t: euclidean_density(p, s, t),
        "mink": _mink_abs_integrand(p),
        "signed": lambda s, t: density_rho_imag(p, s, t),
    }[kind]
    value = integrate_polygon(f, piece.polygon)
    return complex(value) if kind == "signed" else float(np.real(value))


def area(surface, p: Parametrization | None = None, n: int = QUAD_NODES) -> float:
    """Euclidean area; closed form for pieces, quadrature for an explicit chart."""
    if p is None:
        return euclidean_area(surface)
    return float(integrate_square(lambda s, t: euclidean_density(p, s, t), n))


def _check_spacelike(chart: Chart):
    try:
        return chart.minkowski_jacobian()
    except GeometryError as err:
        raise DegenerateChartError(str(err)) from None


def mink_area(surface, p: Parametrization | None = None, n: int = QUAD_NODES) -> float:
    """``int_S d|rho'|``: closed form for pieces, quadrature for an explicit chart."""
    if p is None:
        return poly2d.area(surface.polygon) * _check_spacelike(surface.chart)

    return float(integrate_square(_mink_abs_integrand(p), n))


def mink_area_signed(surface, p: Parametrization | None = None, n: int = QUAD_NODES) -> complex:
    """``int_S d rho'`` (no modulus; complex in general)."""
    if p is None:
        p = chart_of(surface)
        scale = poly2d.area(surface.polygon)
        return complex(density_rho_imag(p, np.array([0.5]), np.array([0.5]))[0]) * scale
    return complex(integrate_square(lambda s, t: density_rho_imag(p, s, t), n))
