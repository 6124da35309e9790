"""Planar space-like surfaces in R^4, their frames, intersections and unions.

Every surface piece is a convex polygon drawn in an affine *chart*
``(origin, u, v)`` of its plane: chart coordinates ``(s, t)`` map to
``origin + s*u + t*v``.  A :class:`RectSurface` is the unit square in the
chart spanned by its two edges; a :class:`ConvexRegion` carries an arbitrary
convex polygon (results of clipping).  Lorentz transformations act on the
chart only, so the polygon coordinates are carried over exactly.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from . import polygon as poly2d
from .lorentz import InhomogeneousElement, basis, euclidean_dot, four_vector, minkowski_dot

COPLANAR_TOL = 1e-9
FRAME_TOL = 1e-10
AREA_TOL = 1e-12


class GeometryError(ValueError):
    pass


class SpanClass(enum.Enum):
    SPACE_LIKE = "SpaceLike"
    TIME_LIKE = "TimeLike"
    DEGENERATE = "Degenerate"

    def __str__(self):
        return self.value


def gram(u, v, dot=minkowski_dot) -> np.ndarray:
    return np.array([[dot(u, u), dot(u, v)], [dot(v, u), dot(v, v)]], dtype=float)


def classify_span(u, v, tol: float = 1e-10) -> SpanClass:
    """Causal type of the plane spanned by ``u`` and ``v``.

    A plane in Minkowski space carries an induced form of signature (+,+)
    (space-like), (+,-) (contains a time-like direction) or (+,0) (tangent to
    the light cone).  The sign of the Minkowski Gram determinant, measured
    relative to the Euclidean one, separates the three.
    """
    u, v = four_vector(u), four_vector(v)
    e_det = np.linalg.det(gram(u, v, euclidean_dot))
    if e_det <= tol * euclidean_dot(u, u) * euclidean_dot(v, v):
        raise GeometryError("span vectors are linearly dependent")
    m_det = np.linalg.det(gram(u, v))
    rel = m_det / e_det
    if abs(rel) <= tol:
        return SpanClass.DEGENERATE
    return SpanClass.SPACE_LIKE if rel > 0 else SpanClass.TIME_LIKE


@dataclass(frozen=True, eq=False)
class Chart:
    origin: np.ndarray
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        for name in ("origin", "u", "v"):
            object.__setattr__(self, name, four_vector(getattr(self, name)))

    @property
    def basis(self) -> np.ndarray:
        """``(4, 2)`` matrix with columns u, v."""
        return np.stack([self.u, self.v], axis=1)

    def point(self, st) -> np.ndarray:
        st = np.asarray(st, dtype=float)
        return self.origin + st[..., :1] * self.u + st[..., 1:2] * self.v

    def coords(self, x) -> np.ndarray:
        """Least-squares chart coordinates of points ``x`` (rows)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        sol, *_ = np.linalg.lstsq(self.basis, (x - self.origin).T, rcond=None)
        return sol.T

    def transformed(self, g: InhomogeneousElement) -> "Chart":
        y = g.matrix
        return Chart(y @ self.origin + g.translation, y @ self.u, y @ self.v)

    def euclidean_jacobian(self) -> float:
        """Euclidean area of the unit chart square."""
        return float(np.sqrt(max(np.linalg.det(gram(self.u, self.v, euclidean_dot)), 0.0)))

    def minkowski_jacobian(self) -> float:
        """Minkowski area of the unit chart square (requires a space-like plane)."""
        d = np.linalg.det(gram(self.u, self.v))
        if d <= 0:
            raise GeometryError("chart plane is not space-like")
        return float(np.sqrt(d))

    def key(self) -> tuple:
        return tuple(np.concatenate([self.origin, self.u, self.v]).tolist())

    def orthonormal(self) -> np.ndarray:
        """``(4, 2)`` Euclidean-orthonormal basis of the chart plane."""
        q, _ = np.linalg.qr(self.basis)
        return q


UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


@dataclass(frozen=True, eq=False)
class RectSurface:
    """``origin + s*span_u + t*span_v`` for ``(s, t)`` in the unit square.

    ``include_boundary`` flags the four edges (s=0, s=1, t=0, t=1).  They are
    bookkeeping only: edges have zero measure for every integral here.
    """

    origin: np.ndarray
    span_u: np.ndarray
    span_v: np.ndarray
    include_boundary: tuple = (True, True, True, True)
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        for name in ("origin", "span_u", "span_v"):
            object.__setattr__(self, name, four_vector(getattr(self, name)))
        flags = tuple(bool(b) for b in self.include_boundary)
        if len(flags) != 4:
            raise GeometryError("include_boundary needs 4 flags")
        object.__setattr__(self, "include_boundary", flags)
        if self.validate:
            kind = classify_span(self.span_u, self.span_v)
            if kind is not SpanClass.SPACE_LIKE:
                raise GeometryError(f"surface is {kind}, only space-like surfaces are admitted")

    @property
    def chart(self) -> Chart:
        return Chart(self.origin, self.span_u, self.span_v)

    @property
    def polygon(self) -> np.ndarray:
        return UNIT_SQUARE

    def vertices(self) -> np.ndarray:
        return self.chart.point(self.polygon)

    def transformed(self, g: InhomogeneousElement) -> "RectSurface":
        y = g.matrix
        return RectSurface(y @ self.origin + g.translation, y @ self.span_u, y @ self.span_v, self.include_boundary)

    def translated(self, a) -> "RectSurface":
        return RectSurface(self.origin + four_vector(a), self.span_u, self.span_v, self.include_boundary)

    def as_region(self) -> "ConvexRegion":
        return ConvexRegion(self.chart, self.polygon)


@dataclass(frozen=True, eq=False)
class ConvexRegion:
    """A convex polygon (chart coordinates) in a space-like plane."""

    chart: Chart
    polygon: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "polygon", poly2d.cleanup(self.polygon))

    def vertices(self) -> np.ndarray:
        return self.chart.point(self.polygon)

    def transformed(self, g: InhomogeneousElement) -> "ConvexRegion":
        return ConvexRegion(self.chart.transformed(g), self.polygon)

    @property
    def parameter_area(self) -> float:
        return poly2d.area(self.polygon)


Piece = Union[RectSurface, ConvexRegion]


def euclidean_area(piece: Piece) -> float:
    return poly2d.area(piece.polygon) * piece.chart.euclidean_jacobian()


@dataclass(frozen=True, eq=False)
class Frame:
    """Minkowski-orthonormal pair: ``f0`` time-like, ``f1`` space-like."""

    f0: np.ndarray
    f1: np.ndarray
    tol: float = field(default=FRAME_TOL, repr=False)

    def __post_init__(self):
        f0, f1 = four_vector(self.f0), four_vector(self.f1)
        object.__setattr__(self, "f0", f0)
        object.__setattr__(self, "f1", f1)
        scale = max(1.0, float(euclidean_dot(f0, f0)), float(euclidean_dot(f1, f1)))
        tol = self.tol * scale
        if abs(minkowski_dot(f0, f0) + 1) > tol:
            raise GeometryError(f"f0.f0 = {minkowski_dot(f0, f0)}, expected -1")
        if abs(minkowski_dot(f1, f1) - 1) > tol:
            raise GeometryError(f"f1.f1 = {minkowski_dot(f1, f1)}, expected 1")
        if abs(minkowski_dot(f0, f1)) > tol:
            raise GeometryError(f"f0.f1 = {minkowski_dot(f0, f1)}, expected 0")

    @classmethod
    def standard(cls) -> "Frame":
        return cls(basis(0), basis(1))

    def transformed(self, g: InhomogeneousElement) -> "Frame":
        y = g.matrix
        return Frame(y @ self.f0, y @ self.f1)

    def matches(self, other: "Frame", tol: float = 1e-9) -> bool:
        return bool(
            np.max(np.abs(self.f0 - other.f0)) <= tol and np.max(np.abs(self.f1 - other.f1)) <= tol
        )

    def normal_defect(self, chart: Chart) -> float:
        """Largest ``|f . w|`` over unit chart directions ``w``."""
        worst = 0.0
        for w in (chart.u, chart.v):
            w = w / np.sqrt(euclidean_dot(w, w))
            for f in (self.f0, self.f1):
                worst = max(worst, abs(float(minkowski_dot(f, w))) / np.sqrt(euclidean_dot(f, f)))
        return worst


@dataclass(frozen=True, eq=False)
class FramedSurface:
    surface: Piece
    frame: Frame

    def __post_init__(self):
        defect = self.frame.normal_defect(self.surface.chart)
        if defect > FRAME_TOL:
            raise GeometryError(f"frame is not Minkowski-normal to the surface (defect {defect:.3g})")


def standard_frame(surface: RectSurface) -> Frame:
    """``(e0, e1)`` for a rectangle lying in a translate of the x2-x3 plane."""
    for w in (surface.span_u, surface.span_v):
        if w[0] != 0 or w[1] != 0:
            raise GeometryError("standard frame needs a surface parallel to the x2-x3 plane")
    return Frame.standard()


def transform_framed(g: InhomogeneousElement, fs: FramedSurface) -> FramedSurface:
    return FramedSurface(fs.surface.transformed(g), fs.frame.transformed(g))


def coplanar(s1: Piece, s2: Piece, tol: float = COPLANAR_TOL) -> bool:
    """Whether the affine planes of two pieces coincide (residuals <= tol)."""
    q = s1.chart.orthonormal()
    proj = np.eye(4) - q @ q.T
    c2 = s2.chart
    for w in (c2.u, c2.v):
        if np.max(np.abs(proj @ (w / np.linalg.norm(w)))) > tol:
            return False
    return bool(np.max(np.abs(proj @ (c2.origin - s1.chart.origin))) <= tol)


def intersect(s1: Piece, s2: Piece, tol: float = COPLANAR_TOL, area_tol: float = AREA_TOL):
    """Two-dimensional intersection of two pieces, or ``None``.

    Non-coplanar pieces meet at most in a segment or point, which counts as
    empty.  The result is drawn in a canonical chart (chosen from the two
    inputs independently of argument order), so ``intersect(a, b)`` and
    ``intersect(b, a)`` give the same region.
    """
    if not coplanar(s1, s2, tol):
        return None
    a, b = (s1, s2) if s1.chart.key() <= s2.chart.key() else (s2, s1)
    chart = a.chart
    pa = poly2d.cleanup(a.polygon)
    pb = poly2d.cleanup(chart.coords(b.vertices()))
    clipped = poly2d.clip_convex(pa, pb)
    if len(clipped) < 3:
        return None
    region = ConvexRegion(chart, clipped)
    if len(region.polygon) < 3 or euclidean_area(region) <= area_tol:
        return None
    return region


def subtract(s1: Piece, s2: Piece, tol: float = COPLANAR_TOL, area_tol: float = AREA_TOL) -> list[ConvexRegion]:
    """Convex pieces covering ``s1 \\ s2`` (``[s1]`` itself when they do not overlap)."""
    if intersect(s1, s2, tol, area_tol) is None:
        return [s1]
    chart = s1.chart
    pb = poly2d.cleanup(chart.coords(s2.vertices()))
    jac = chart.euclidean_jacobian()
    parts = poly2d.convex_difference(poly2d.cleanup(s1.polygon), pb, tol=area_tol / jac)
    return [ConvexRegion(chart, p) for p in parts if len(p) >= 3]


def insert_disjoint(items: list, piece: Piece, payload, frame: Frame | None,
                    combine: Callable, on_overlap: Callable | None = None) -> list:
    """Insert ``(piece, payload, frame)`` into a list of disjoint items.

    Overlaps are re-subdivided: the common part gets ``combine(old, new)``,
    the leftovers keep their own payload.  ``on_overlap(old_frame, frame)`` is
    called before merging and may raise.
    """
    for idx, (other, other_payload, other_frame) in enumerate(items):
        common = intersect(other, piece)
        if common is None:
            continue
        if on_overlap is not None:
            on_overlap(other_frame, frame)
        rest = items[:idx] + items[idx + 1:]
        rest.append((common, combine(other_payload, payload), other_frame))
        rest.extend((p, other_payload, other_frame) for p in subtract(other, piece))
        for leftover in subtract(piece, other):
            rest = insert_disjoint(rest, leftover, payload, frame, combine, on_overlap)
        return rest
    return items + [(piece, payload, frame)]


@dataclass(frozen=True, eq=False)
class SurfaceCollection:
    """Finite union of framed pieces with pairwise disjoint interiors."""

    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                if intersect(parts[i].surface, parts[j].surface) is not None:
                    raise GeometryError(f"parts {i} and {j} overlap")

    def area(self) -> float:
        return sum(euclidean_area(p.surface) for p in self.parts)


def union_disjoint(c1: SurfaceCollection, c2: SurfaceCollection) -> SurfaceCollection:
    """Union of two collections, re-subdivided so interiors stay disjoint.

    A region covered by both keeps the frame of the part from ``c1``.
    """
    items = [(p.surface, None, p.frame) for p in c1.parts]
    for p in c2.parts:
        items = insert_disjoint(items, p.surface, None, p.frame, lambda a, b: None)
    return SurfaceCollection(tuple(FramedSurface(s, f) for s, _, f in items))
