"""Planar convex-polygon helpers (2D chart coordinates).

Polygons are ``(k, 2)`` float arrays, counter-clockwise once normalised.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

EPS = 1e-13
TRIANGLE_NODES = 16


def signed_area(poly) -> float:
    poly = np.asarray(poly, dtype=float)
    if len(poly) < 3:
        return 0.0
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def area(poly) -> float:
    return abs(signed_area(poly))


def centroid(poly) -> np.ndarray:
    """Area centroid (falls back to the vertex mean for degenerate input)."""
    poly = np.asarray(poly, dtype=float)
    a = signed_area(poly)
    if abs(a) < EPS:
        return poly.mean(axis=0)
    x, y = poly[:, 0], poly[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    return np.array([np.sum((x + xn) * cross), np.sum((y + yn) * cross)]) / (6.0 * a)


def cleanup(poly, tol: float = 1e-12) -> np.ndarray:
    """CCW orientation, no repeated or collinear vertices, canonical start vertex."""
    poly = np.asarray(poly, dtype=float).reshape(-1, 2)
    if len(poly) == 0:
        return poly
    scale = max(1.0, float(np.max(np.abs(poly))))
    keep = [poly[0]]
    for p in poly[1:]:
        if np.max(np.abs(p - keep[-1])) > tol * scale:
            keep.append(p)
    if len(keep) > 1 and np.max(np.abs(keep[0] - keep[-1])) <= tol * scale:
        keep.pop()
    pts = np.array(keep)
    if signed_area(pts) < 0:
        pts = pts[::-1]
    # drop collinear vertices
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if abs(cross) <= tol * scale * scale:
                pts = np.delete(pts, i, axis=0)
                changed = True
                break
    if len(pts) == 0:
        return pts.reshape(0, 2)
    start = min(range(len(pts)), key=lambda i: (pts[i, 0], pts[i, 1]))
    return np.roll(pts, -start, axis=0)


def _side(p, a, b) -> float:
    return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])


def clip_halfplane(poly, a, b, keep_left: bool = True) -> np.ndarray:
    """Sutherland-Hodgman step: keep the part of ``poly`` left (or right) of line a->b."""
    poly = np.asarray(poly, dtype=float)
    if len(poly) == 0:
        return poly.reshape(0, 2)
    sign = 1.0 if keep_left else -1.0
    out = []
    n = len(poly)
    for i in range(n):
        s, e = poly[i - 1], poly[i]
        ds, de = sign * _side(s, a, b), sign * _side(e, a, b)
        if de >= 0:
            if ds < 0:
                out.append(s + (e - s) * (ds / (ds - de)))
            out.append(e)
        elif ds >= 0:
            out.append(s + (e - s) * (ds / (ds - de)))
    return np.array(out, dtype=float).reshape(-1, 2)


def clip_convex(subject, clip) -> np.ndarray:
    """Intersection of two convex polygons (clip must be CCW)."""
    out = np.asarray(subject, dtype=float)
    clip = np.asarray(clip, dtype=float)
    for i in range(len(clip)):
        if len(out) == 0:
            break
        out = clip_halfplane(out, clip[i - 1], clip[i])
    return out


def convex_difference(p, q, tol: float = 1e-12) -> list[np.ndarray]:
    """Split ``p \\ q`` into convex pieces with disjoint interiors (``q`` CCW).

    Slivers of area at most ``tol`` are dropped.
    """
    remaining = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pieces = []
    for i in range(len(q)):
        a, b = q[i - 1], q[i]
        outside = clip_halfplane(remaining, a, b, keep_left=False)
        if area(outside) > tol:
            pieces.append(cleanup(outside))
        remaining = clip_halfplane(remaining, a, b, keep_left=True)
        if area(remaining) <= tol:
            break
    return pieces


def fan_triangles(poly) -> np.ndarray:
    """Triangles ``(m, 3, 2)`` fanned from the area centroid."""
    poly = np.asarray(poly, dtype=float)
    c = centroid(poly)
    nxt = np.roll(poly, -1, axis=0)
    return np.stack([np.broadcast_to(c, poly.shape), poly, nxt], axis=1)


@lru_cache(maxsize=None)
def triangle_rule(n: int = TRIANGLE_NODES):
    """Collapsed Gauss-Legendre rule on the reference triangle (0,0),(1,0),(0,1).

    Returns ``(r, s, w)`` with weights summing to 1/2.
    """
    x, w = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    xi, eta = np.meshgrid(x, x, indexing="ij")
    wt = np.outer(w, w) * xi
    r = xi * (1.0 - eta)
    s = xi * eta
    return r.ravel(), s.ravel(), wt.ravel()


def polygon_nodes(polygon, n: int = TRIANGLE_NODES):
    """Quadrature nodes ``(k, 2)`` and weights over a convex polygon (fan from centroid)."""
    r, s, w = triangle_rule(n)
    pts, wts = [], []
    for a, b, c in fan_triangles(polygon):
        jac = abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
        if jac == 0:
            continue
        pts.append(a + np.outer(r, b - a) + np.outer(s, c - a))
        wts.append(w * jac)
    if not pts:
        return np.zeros((0, 2)), np.zeros(0)
    return np.concatenate(pts), np.concatenate(wts)
