"""Seeded random instances for the verification suites.

Every stream is a ``numpy`` Philox (counter-based) generator keyed by
``SeedSequence(seed, spawn_key=(stream,))``, so a given (seed, stream) pair
reproduces the same draws on any platform and independent suites never
share state.
"""
from __future__ import annotations

import numpy as np

from .fields import BinOp, Call, Const, FieldSection, Pow, Var
from .geometry import Frame, RectSurface
from .hilbert import StateVector, Term
from .lorentz import (
    SL2C,
    InhomogeneousElement,
    boost,
    rotation,
    spinor_boost,
    spinor_rotation,
)

STREAMS = {
    "lorentz": 1,
    "sl2c": 2,
    "area": 3,
    "basis": 4,
    "invariance": 5,
    "identity": 6,
    "inner": 7,
    "unitarity": 8,
    "grouplaw": 9,
    "parser": 10,
    "orthogonality": 11,
    "geometry": 12,
    "fields": 13,
}


def make_rng(seed: int, stream: str | int = 0) -> np.random.Generator:
    if isinstance(stream, str):
        if stream not in STREAMS:
            raise KeyError(f"unknown stream {stream!r}; known: {sorted(STREAMS)}")
        stream = STREAMS[stream]
    key = stream
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(int(key),))))


def random_sl2c(rng) -> SL2C:
    """Entries uniform in the unit disc, rescaled by ``1/sqrt(det)``."""
    while True:
        r = np.sqrt(rng.random(4))
        phi = rng.uniform(0, 2 * np.pi, 4)
        z = r * np.exp(1j * phi)
        det = z[0] * z[3] - z[1] * z[2]
        if abs(det) > 1e-3:
            return SL2C.from_matrix(z.reshape(2, 2), normalize=True)


def random_lorentz_factors(rng, max_rapidity: float = 2.0, max_factors: int = 4):
    """List of ``("boost"|"rotation", axis, parameter)`` factors."""
    out = []
    for _ in range(rng.integers(1, max_factors + 1)):
        axis = int(rng.integers(1, 4))
        if rng.random() < 0.5:
            out.append(("boost", axis, float(rng.uniform(-max_rapidity, max_rapidity))))
        else:
            out.append(("rotation", axis, float(rng.uniform(-np.pi, np.pi))))
    return out


def random_polar_factors(rng, max_rapidity: float = 2.0):
    """Rotation, one boost, rotation: every restricted map of rapidity at most ``max_rapidity``."""
    def euler():
        return [("rotation", 3, float(rng.uniform(-np.pi, np.pi))),
                ("rotation", 2, float(np.arccos(rng.uniform(-1, 1)))),
                ("rotation", 3, float(rng.uniform(-np.pi, np.pi)))]
    return euler() + [("boost", 3, float(rng.uniform(-max_rapidity, max_rapidity)))] + euler()


def lorentz_matrix_of(factors) -> np.ndarray:
    m = np.eye(4)
    for kind, axis, p in factors:
        m = m @ (boost(axis, p) if kind == "boost" else rotation(axis, p))
    return m


def spinor_of(factors) -> SL2C:
    A = SL2C.identity()
    for kind, axis, p in factors:
        A = A @ (spinor_boost(axis, p) if kind == "boost" else spinor_rotation(axis, p))
    return A


def random_element(rng, max_rapidity: float = 2.0, max_translation: float = 2.0) -> InhomogeneousElement:
    A = spinor_of(random_lorentz_factors(rng, max_rapidity, max_factors=3))
    return InhomogeneousElement(rng.uniform(-max_translation, max_translation, 4), A)


def _spatial_frame(rng):
    """Random orthonormal basis (e_u, e_v, normal) of R^3 embedded at x0 = 0."""
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    vecs = np.zeros((3, 4))
    vecs[:, 1:] = q.T
    return vecs


def random_spatial_rectangle(rng, width=(0.5, 2.0)):
    """A rectangle in a random spatial plane, with frame ``(e0, unit normal)``."""
    eu, ev, nrm = _spatial_frame(rng)
    a, b = rng.uniform(*width, 2)
    origin = rng.uniform(-1, 1, 4)
    return RectSurface(origin, a * eu, b * ev), Frame(np.array([1.0, 0, 0, 0]), nrm)


def random_spacelike_rectangle(rng, max_rapidity: float = 2.0):
    """Lorentz image of a random spatial rectangle, with its transported frame."""
    rect, frame = random_spatial_rectangle(rng)
    g = InhomogeneousElement(rng.uniform(-1, 1, 4), spinor_of(random_lorentz_factors(rng, max_rapidity, 3)))
    return rect.transformed(g), frame.transformed(g)


def random_field(rng, depth: int = 3):
    """Expression from a small generator grammar (no pullbacks, no division by non-constants)."""
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return Var(int(rng.integers(0, 4)))
        re, im = np.round(rng.uniform(-2, 2, 2), int(rng.integers(1, 6)))
        return Const(complex(re, im if rng.random() < 0.5 else 0.0))
    kind = rng.choice(["+", "-", "*", "/", "pow", "call"])
    if kind == "pow":
        return Pow(random_field(rng, depth - 1), int(rng.integers(0, 4)))
    if kind == "call":
        func = str(rng.choice(["sin", "cos", "exp", "sinh", "cosh"]))
        return Call(func, random_field(rng, depth - 1))
    if kind == "/":
        c = float(np.round(rng.uniform(0.5, 3), 3))
        return BinOp("/", random_field(rng, depth - 1), Const(complex(c)))
    return BinOp(str(kind), random_field(rng, depth - 1), random_field(rng, depth - 1))


def tame_field(rng):
    """Smooth bounded field: constant + linear term + a plane wave."""
    c0 = complex(*rng.uniform(-1, 1, 2))
    c1 = float(rng.uniform(-0.5, 0.5))
    k = rng.uniform(-1, 1, 4)
    var = Var(int(rng.integers(0, 4)))
    phase_arg = Var(0)
    expr = BinOp("*", Const(complex(k[0])), phase_arg)
    for j in range(1, 4):
        expr = BinOp("+", expr, BinOp("*", Const(complex(k[j])), Var(j)))
    wave = Call("exp", BinOp("*", Const(1j), expr))
    return BinOp("+", BinOp("+", Const(c0), BinOp("*", Const(complex(c1)), var)), wave)


def random_section(rng, n: int) -> FieldSection:
    return FieldSection(tuple(tame_field(rng) for _ in range(n)))


def random_state(rng, n: int = 2, max_rapidity: float = 2.0) -> StateVector:
    rect, frame = random_spacelike_rectangle(rng, max_rapidity)
    return StateVector.single(rect, random_section(rng, n), frame)


def random_state_pair(rng, n: int = 2, max_rapidity: float = 2.0, extra_terms: bool = True):
    """Two states whose main pieces share a plane and frame and overlap.

    The second rectangle is rotated within the plane, so the overlap is a
    general convex polygon.  Optionally each state gets a second term in an
    unrelated plane with its own frame.
    """
    eu, ev, nrm = _spatial_frame(rng)
    base = rng.uniform(-1, 1, 4)
    base[1:] = 0.0
    base[0] = rng.uniform(-1, 1)
    rects = []
    for _ in range(2):
        theta = rng.uniform(0, np.pi / 2)
        du = np.cos(theta) * eu + np.sin(theta) * ev
        dv = -np.sin(theta) * eu + np.cos(theta) * ev
        a, b = rng.uniform(0.8, 2.0, 2)
        centre = base + rng.uniform(-0.3, 0.3) * eu + rng.uniform(-0.3, 0.3) * ev
        rects.append(RectSurface(centre - 0.5 * a * du - 0.5 * b * dv, a * du, b * dv))
    frame = Frame(np.array([1.0, 0, 0, 0]), nrm)
    g = InhomogeneousElement(rng.uniform(-1, 1, 4), spinor_of(random_lorentz_factors(rng, max_rapidity, 3)))
    states = []
    for rect in rects:
        terms = [Term(rect.transformed(g), random_section(rng, n), frame.transformed(g))]
        if extra_terms and rng.random() < 0.5:
            other, other_frame = random_spacelike_rectangle(rng, max_rapidity)
            terms.append(Term(other, random_section(rng, n), other_frame))
        states.append(StateVector.from_terms(terms, n))
    return states[0], states[1]
