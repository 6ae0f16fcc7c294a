#!/usr/bin/env python3
"""
Points of CP^3, the split Hermitian form h, the quaternionic involution j,
the twistor projection to S^4 and the twistor fibres.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .errors import ZeroCovector, ZeroVector
from .numeric import INF, Quat, complex_gaussian, quat_mul

H = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)
S = np.array([[0, -1, 0, 0],
              [1, 0, 0, 0],
              [0, 0, 0, -1],
              [0, 0, 1, 0]], dtype=complex)


def _as_vector4(z, error):
    try:
        arr = np.array(z, dtype=complex).reshape(-1)
    except (TypeError, ValueError) as e:
        raise error(f"not a complex 4-vector: {e}")
    if arr.shape != (4,):
        raise error(f"expected 4 coordinates, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)) or not np.any(arr):
        raise error("coordinates must be finite and not all zero")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """A point [z0:z1:z2:z3] of CP^3."""
    z: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "z", _as_vector4(self.z, ZeroVector))

    @classmethod
    def of(cls, *coords):
        return cls(coords)

    def unit(self):
        return self.z / np.linalg.norm(self.z)

    def canonical(self, tol=None):
        """Unit representative whose first coordinate above eq_abs is real positive."""
        tol = config.resolve(tol)
        w = self.unit()
        k = int(np.argmax(np.abs(w) > tol.eq_abs))
        return w * (np.conj(w[k]) / abs(w[k]))

    def __repr__(self):
        coords = ", ".join(f"{c:.6g}" for c in self.canonical())
        return f"ProjPoint([{coords}])"


def proj_eq(p, q, tol=None):
    tol = config.resolve(tol)
    zp, zq = p.z, q.z
    return abs(np.vdot(zp, zq)) >= (1 - tol.eq_abs) * np.linalg.norm(zp) * np.linalg.norm(zq)


@dataclass(frozen=True, eq=False)
class HyperplaneDual:
    """The hyperplane {v . z = 0}; n is its h-normal, so the plane is n^{perp_h}."""
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "v", _as_vector4(self.v, ZeroCovector))

    @classmethod
    def from_normal(cls, n):
        return cls(np.conj(H @ np.asarray(n, dtype=complex)))

    @property
    def n(self):
        return H @ np.conj(self.v)

    def unit(self):
        return self.v / np.linalg.norm(self.v)

    def evaluate(self, p):
        """|v . z| for unit v and unit z."""
        return abs(np.dot(self.unit(), p.unit()))


@dataclass(frozen=True)
class S4Point:
    x: tuple

    def on_sigma(self, tol=None):
        return abs(self.x[0]) < config.resolve(tol).eq_abs


@dataclass(frozen=True, eq=False)
class ProjLine:
    """The projective line spanned by the two columns of a 4x2 basis matrix."""
    basis: np.ndarray

    def point(self, s, t):
        return ProjPoint(self.basis @ np.array([s, t], dtype=complex))

    def sample_points(self, n, rng):
        return [self.point(*complex_gaussian(rng, 2)) for _ in range(n)]

    def contains(self, p, tol=None):
        tol = config.resolve(tol)
        q, _ = np.linalg.qr(self.basis)
        z = p.unit()
        return np.linalg.norm(q.conj().T @ z) >= 1 - tol.eq_abs


@dataclass(frozen=True, eq=False)
class FibreParam(ProjLine):
    """The twistor fibre over a base point of S^4 (a Quat or INF)."""
    base: object = None


def hermitian_h(z, w):
    return complex(np.vdot(np.asarray(z, dtype=complex), H @ np.asarray(w, dtype=complex)))


def q22_residual(p):
    """h(z, z) / ||z||^2; it vanishes exactly on Q^{2,2}."""
    z = p.unit()
    return float(hermitian_h(z, z).real)


def in_q22(p, tol=None):
    return abs(q22_residual(p)) < config.resolve(tol).eq_abs


def apply_j(p):
    """j[z0:z1:z2:z3] = [-conj z1 : conj z0 : -conj z3 : conj z2]."""
    return ProjPoint(S @ np.conj(p.z))


def projection_terms(p):
    """The intermediates (A, B, alpha, beta) of the twistor projection, on the unit representative."""
    z0, z1, z2, z3 = p.unit()
    a = abs(z0) ** 2 + abs(z1) ** 2
    b = abs(z2) ** 2 + abs(z3) ** 2
    alpha = z2 * np.conj(z0) + z3 * np.conj(z1)
    beta = z0 * z3 - z1 * z2
    return float(a), float(b), complex(alpha), complex(beta)


def project_r5(p):
    a, b, alpha, beta = projection_terms(p)
    s = a + b
    return S4Point(((a - b) / s, 2 * alpha.real / s, 2 * alpha.imag / s,
                    2 * beta.real / s, 2 * beta.imag / s))


def project_quat(p, tol=None):
    """Affine quaternion chart q = (z2 + j z3)(z0 + j z1)^{-1}, or INF when z0 = z1 = 0."""
    tol = config.resolve(tol)
    z0, z1, z2, z3 = p.unit()
    if abs(z0) ** 2 + abs(z1) ** 2 < tol.eq_abs ** 2:
        return INF
    return quat_mul(Quat(z2, z3), Quat(z0, z1).inverse())


def fibre_basis(q):
    if q is INF:
        return np.array([[0, 0], [0, 0], [1, 0], [0, 1]], dtype=complex)
    return np.array([[1, 0],
                     [0, 1],
                     [q.p0, -q.p1.conjugate()],
                     [q.p1, q.p0.conjugate()]], dtype=complex)


def fibre_over(q):
    """(z0, z1) -> [z0 : z1 : p0 z0 - conj(p1) z1 : p1 z0 + conj(p0) z1]; over INF, (z2, z3) -> [0:0:z2:z3]."""
    return FibreParam(fibre_basis(q), base=q)


def fibre_through(p, tol=None):
    return fibre_over(project_quat(p, tol))


def random_point(rng):
    return ProjPoint(complex_gaussian(rng, 4))


def random_q22_point(rng):
    """A random null point: unit (z0, z1) and unit (z2, z3)."""
    x = complex_gaussian(rng, 2)
    y = complex_gaussian(rng, 2)
    return ProjPoint(np.concatenate([x / np.linalg.norm(x), y / np.linalg.norm(y)]))
