"""Four-vectors, Lorentz matrices, SL(2,C) and the inhomogeneous group law.

Conventions: c = 1, coordinates (x0, x1, x2, x3) with x0 the time axis, and
the Minkowski product ``-x0*y0 + x1*y1 + x2*y2 + x3*y3`` (the sign used
throughout this package, opposite to the usual particle-physics one).

Four-vectors are plain ``numpy`` arrays of shape ``(4,)`` and Lorentz
matrices are ``(4, 4)`` arrays; SL(2,C) elements and group elements are small
immutable value types.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

DET_TOL = 1e-9


class LorentzError(ValueError):
    pass


def four_vector(*xs) -> np.ndarray:
    """Build a finite real four-vector from 4 numbers or one length-4 sequence."""
    if len(xs) == 1:
        xs = xs[0]
    v = np.asarray(xs, dtype=float).reshape(-1)
    if v.shape != (4,):
        raise LorentzError(f"four-vector needs 4 components, got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise LorentzError("four-vector components must be finite")
    return v


def basis(k: int) -> np.ndarray:
    e = np.zeros(4)
    e[k] = 1.0
    return e


def minkowski_dot(x, y):
    """Minkowski product along the last axis (broadcasts)."""
    x = np.asarray(x)
    y = np.asarray(y)
    return -x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] + x[..., 2] * y[..., 2] + x[..., 3] * y[..., 3]


def euclidean_dot(x, y):
    x = np.asarray(x)
    y = np.asarray(y)
    return np.sum(x * y, axis=-1)


def _check_axis(axis: int) -> int:
    if axis not in (1, 2, 3):
        raise LorentzError(f"spatial axis must be 1, 2 or 3, got {axis!r}")
    return axis


def boost(axis: int, rapidity: float) -> np.ndarray:
    """Pure boost along a spatial axis.

    ``boost(1, atanh(beta))`` is the usual frame change to an observer moving
    with velocity ``beta`` along x1: ``x0' = cosh*x0 - sinh*x1``,
    ``x1' = -sinh*x0 + cosh*x1``.
    """
    k = _check_axis(axis)
    if not np.isfinite(rapidity):
        raise LorentzError("rapidity must be finite")
    m = np.eye(4)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    m[0, 0] = m[k, k] = ch
    m[0, k] = m[k, 0] = -sh
    return m


def rotation(axis: int, angle: float) -> np.ndarray:
    """Right-handed spatial rotation about ``axis``; the time row/column is untouched."""
    k = _check_axis(axis)
    if not np.isfinite(angle):
        raise LorentzError("angle must be finite")
    # the rotated plane (i, j) is cyclic after k
    i, j = {1: (2, 3), 2: (3, 1), 3: (1, 2)}[k]
    m = np.eye(4)
    c, s = np.cos(angle), np.sin(angle)
    m[i, i] = m[j, j] = c
    m[i, j] = -s
    m[j, i] = s
    return m


def metric_defect(m) -> float:
    """``max|m^T eta m - eta|``."""
    m = np.asarray(m, dtype=float)
    return float(np.max(np.abs(m.T @ ETA @ m - ETA)))


def is_restricted_lorentz(m, tol: float = 1e-12) -> bool:
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        return False
    return (
        metric_defect(m) <= tol
        and m[0, 0] >= 1.0 - tol
        and abs(np.linalg.det(m) - 1.0) <= tol
    )


def lorentz_inverse(m) -> np.ndarray:
    """Exact inverse of a Lorentz matrix, ``eta m^T eta``."""
    m = np.asarray(m, dtype=float)
    return ETA @ m.T @ ETA


@dataclass(frozen=True)
class SL2C:
    """A 2x2 complex matrix ``[[a, b], [c, d]]`` with unit determinant."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))
        if abs(self.det - 1) > DET_TOL:
            raise LorentzError(f"SL(2,C) element has det {self.det}, expected 1")

    @classmethod
    def from_matrix(cls, m, normalize: bool = False) -> "SL2C":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise LorentzError(f"expected a 2x2 matrix, got shape {m.shape}")
        if normalize:
            det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            if det == 0:
                raise LorentzError("cannot normalize a singular matrix")
            m = m / np.sqrt(det)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> "SL2C":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __matmul__(self, other: "SL2C") -> "SL2C":
        # renormalised so long products do not drift off det = 1
        return SL2C.from_matrix(self.matrix @ other.matrix, normalize=True)

    def __neg__(self) -> "SL2C":
        return SL2C(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2C":
        return SL2C(self.d, -self.b, -self.c, self.a)

    def is_identity(self) -> bool:
        return self.a == 1 and self.b == 0 and self.c == 0 and self.d == 1


def hermitian_of(x) -> np.ndarray:
    """``x0*1 + x1*s1 + x2*s2 + x3*s3`` for a four-vector ``x``."""
    return np.tensordot(np.asarray(x, dtype=float), PAULI, axes=1)


def vector_of(h) -> np.ndarray:
    """Inverse of :func:`hermitian_of`: ``x_mu = tr(h s_mu) / 2``."""
    h = np.asarray(h, dtype=complex)
    return np.real(np.einsum("ij,kji->k", h, PAULI)) / 2.0


def covering_map(A: SL2C) -> np.ndarray:
    """The double cover Y: SL(2,C) -> restricted Lorentz group.

    ``Y(A) x`` is the four-vector of ``A X(x) A^dagger``; column ``nu`` of
    ``Y(A)`` is therefore ``tr(s_mu A s_nu A^dagger) / 2``.
    """
    if abs(A.det - 1) > DET_TOL:
        raise LorentzError(f"det A = {A.det} is not 1")
    m = A.matrix
    conj = np.einsum("ij,njk,lk->nil", m, PAULI, m.conj())
    y = np.real(np.einsum("mji,nij->mn", PAULI, conj)) / 2.0
    return y


def spinor_boost(axis: int, rapidity: float) -> SL2C:
    """SL(2,C) lift of :func:`boost`, ``exp(-rapidity * s_axis / 2)``."""
    k = _check_axis(axis)
    h = rapidity / 2.0
    m = np.cosh(h) * PAULI[0] - np.sinh(h) * PAULI[k]
    return SL2C.from_matrix(m)


def spinor_rotation(axis: int, angle: float) -> SL2C:
    """SL(2,C) lift of :func:`rotation`, ``exp(-i * angle * s_axis / 2)``."""
    k = _check_axis(axis)
    h = angle / 2.0
    m = np.cos(h) * PAULI[0] - 1j * np.sin(h) * PAULI[k]
    return SL2C.from_matrix(m)


@dataclass(frozen=True, eq=False)
class InhomogeneousElement:
    """Group element ``{a, L}`` acting by ``x -> Y(L) x + a``."""

    translation: np.ndarray
    lorentz: SL2C

    def __post_init__(self):
        object.__setattr__(self, "translation", four_vector(self.translation))

    @classmethod
    def identity(cls) -> "InhomogeneousElement":
        return cls(np.zeros(4), SL2C.identity())

    @classmethod
    def pure_translation(cls, a) -> "InhomogeneousElement":
        return cls(four_vector(a), SL2C.identity())

    @classmethod
    def pure_lorentz(cls, A: SL2C) -> "InhomogeneousElement":
        return cls(np.zeros(4), A)

    @cached_property
    def matrix(self) -> np.ndarray:
        """``Y(L)`` as a 4x4 real matrix."""
        return covering_map(self.lorentz)

    @cached_property
    def inverse_matrix(self) -> np.ndarray:
        return covering_map(self.lorentz.inverse())

    def is_identity(self) -> bool:
        return self.lorentz.is_identity() and not np.any(self.translation)

    def inverse(self) -> "InhomogeneousElement":
        inv = self.lorentz.inverse()
        return InhomogeneousElement(-(covering_map(inv) @ self.translation), inv)

    def __matmul__(self, other: "InhomogeneousElement") -> "InhomogeneousElement":
        return compose(self, other)

    def __repr__(self):
        A = self.lorentz
        return f"InhomogeneousElement(translation={self.translation.tolist()}, lorentz={[A.a, A.b, A.c, A.d]})"


def compose(g1: InhomogeneousElement, g2: InhomogeneousElement) -> InhomogeneousElement:
    """``{a1, L1}{a2, L2} = {a1 + Y(L1) a2, L1 L2}``."""
    return InhomogeneousElement(g1.translation + g1.matrix @ g2.translation, g1.lorentz @ g2.lorentz)


def apply(g: InhomogeneousElement, x) -> np.ndarray:
    """``Y(L) x + a``; ``x`` may be a stack of points with the 4-axis last."""
    x = np.asarray(x, dtype=float)
    return x @ g.matrix.T + g.translation


def apply_inverse(g: InhomogeneousElement, x) -> np.ndarray:
    """``Y(L)^-1 (x - a)``, the point map used by field pullbacks."""
    x = np.asarray(x, dtype=float)
    return (x - g.translation) @ g.inverse_matrix.T
