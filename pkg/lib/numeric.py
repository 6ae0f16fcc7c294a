#!/usr/bin/env python3
"""
Numeric core for HyperQ: tolerance policy, quaternions in the complex
splitting q = p0 + j*p1, fixed-size complex matrix helpers and seeded
samplers.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidTolerance, NotInSU2, NotUnitary, SchemaError

I2 = np.eye(2, dtype=complex)
J0 = np.array([[0, -1], [1, 0]], dtype=complex)


@dataclass(frozen=True)
class Tolerance:
    """Thresholds shared by every approximate predicate.

    eq_abs is an absolute threshold applied after normalization, disc_zero
    decides when a discriminant (or determinant) counts as zero, containment
    matches circle parameters.
    """
    eq_abs: float = 1e-9
    disc_zero: float = 1e-8
    containment: float = 1e-8

    def __post_init__(self):
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
                raise InvalidTolerance(f"{field.name} must be a positive finite number, got {value!r}")

    def replace(self, **overrides):
        """Return a copy with the given fields replaced (None values are ignored)."""
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **overrides)


class Infinity(Enum):
    """The point at infinity of the affine quaternion chart."""
    INF = "inf"

    def __repr__(self):
        return "INF"


INF = Infinity.INF


@dataclass(frozen=True)
class Quat:
    """Quaternion p0 + j*p1 with complex p0, p1 and j*a = conj(a)*j."""
    p0: complex = 0j
    p1: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "p0", complex(self.p0))
        object.__setattr__(self, "p1", complex(self.p1))

    @classmethod
    def one(cls):
        return cls(1, 0)

    @classmethod
    def j(cls):
        return cls(0, 1)

    @classmethod
    def from_real4(cls, x):
        """Build from real coordinates (Re p0, Im p0, Re p1, Im p1)."""
        return cls(complex(x[0], x[1]), complex(x[2], x[3]))

    def norm2(self):
        return abs(self.p0) ** 2 + abs(self.p1) ** 2

    def __abs__(self):
        return math.sqrt(self.norm2())

    def conj(self):
        return Quat(self.p0.conjugate(), -self.p1)

    def inverse(self):
        n2 = self.norm2()
        if n2 == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        c = self.conj()
        return Quat(c.p0 / n2, c.p1 / n2)

    def __mul__(self, other):
        if isinstance(other, Quat):
            return quat_mul(self, other)
        return NotImplemented

    def close_to(self, other, atol=1e-9):
        return abs(self.p0 - other.p0) <= atol and abs(self.p1 - other.p1) <= atol


def quat_mul(q1, q2):
    """Multiply (a0 + j a1)(b0 + j b1) = (a0 b0 - conj(a1) b1) + j (a1 b0 + conj(a0) b1)."""
    a0, a1 = q1.p0, q1.p1
    b0, b1 = q2.p0, q2.p1
    return Quat(a0 * b0 - a1.conjugate() * b1, a1 * b0 + a0.conjugate() * b1)


class UnitaryGroup(str, Enum):
    U2 = "U2"
    SU2 = "SU2"


# --- Small matrix helpers ---

def as_matrix(entries, size):
    """Coerce nested entries into a complex size x size matrix."""
    try:
        m = np.array(entries, dtype=complex)
    except (TypeError, ValueError) as e:
        raise SchemaError(f"not a complex matrix: {e}")
    if m.shape != (size, size):
        raise SchemaError(f"expected a {size}x{size} matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise SchemaError("matrix entries must be finite")
    return m


def dagger(m):
    return np.conj(np.transpose(m))


def unitarity_defect(a):
    a = np.asarray(a, dtype=complex)
    return float(np.linalg.norm(dagger(a) @ a - np.eye(a.shape[0])))


def is_unitary(a, tol):
    return unitarity_defect(a) < tol.eq_abs


def proj_distance(a, b):
    """Sine of the angle between the complex lines through a and b.

    Computed as ||a - b<b,a>|| on unit vectors, which stays accurate for
    nearly equal lines where sqrt(1 - |<a,b>|^2) loses all digits.
    Works row-wise on stacked vectors.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a = a / np.linalg.norm(a, axis=-1, keepdims=True)
    b = b / np.linalg.norm(b, axis=-1, keepdims=True)
    inner = np.sum(np.conj(b) * a, axis=-1, keepdims=True)
    return np.linalg.norm(a - b * inner, axis=-1)


# --- U(2) / SU(2) ---

def unitary_phase_split(a, tol):
    """Split a unitary 2x2 matrix as A = e^{i theta} U with theta in [0, pi) and det U = 1."""
    a = as_matrix(a, 2)
    if not is_unitary(a, tol):
        raise NotUnitary(f"matrix is not unitary (defect {unitarity_defect(a):.3g})")
    theta = float(np.angle(np.linalg.det(a))) / 2
    u = a * np.exp(-1j * theta)
    if theta < 0:
        theta += math.pi
        u = -u
    return theta, u


def haar_unitary(seed, group=UnitaryGroup.U2):
    """Sample a Haar-distributed 2x2 unitary (or special unitary) matrix.

    seed is an integer or an existing numpy Generator; the same integer
    always gives the same matrix.
    """
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    if UnitaryGroup(group) is UnitaryGroup.SU2:
        q[:, 0] = q[:, 0] / np.linalg.det(q)
    return q


def check_su2(x, tol):
    x = as_matrix(x, 2)
    if not is_unitary(x, tol) or abs(np.linalg.det(x) - 1) >= tol.eq_abs:
        raise NotInSU2("matrix is not in SU(2)")
    return x


def su2_to_quat(x, tol):
    """Identify x = [[alpha, beta], [-conj(beta), conj(alpha)]] with the unit quaternion alpha - j*conj(beta)."""
    x = check_su2(x, tol)
    return Quat(x[0, 0], x[1, 0])


def quat_to_su2(q, tol):
    if abs(abs(q) - 1) >= tol.eq_abs:
        raise NotInSU2(f"|q| = {abs(q):.12g} is not 1")
    return np.array([[q.p0, -q.p1.conjugate()],
                     [q.p1, q.p0.conjugate()]], dtype=complex)


def su2_rotation_to(angle, rng):
    """V diag(e^{i angle}, e^{-i angle}) V^{-1} for a Haar V in SU(2); its trace is exactly 2 cos(angle)."""
    v = haar_unitary(rng, UnitaryGroup.SU2)
    d = np.diag([np.exp(1j * angle), np.exp(-1j * angle)])
    return v @ d @ dagger(v)


# --- Samplers ---

def complex_gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unit_quats(rng, n):
    """n uniformly distributed unit quaternions as real rows (Re p0, Im p0, Re p1, Im p1)."""
    x = rng.standard_normal((n, 4))
    return x / np.linalg.norm(x, axis=1, keepdims=True)
