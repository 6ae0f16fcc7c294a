#!/usr/bin/env python3
"""
Symmetries of Q^{2,2} compatible with j, the hyperplane invariant Delta and
the three-orbit classification of hyperplanes with explicit witnesses.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import config
from .errors import ZeroCovector
from .numeric import I2, as_matrix, dagger, haar_unitary, proj_distance, UnitaryGroup
from .projective import H, S, HyperplaneDual

_logger = logging.getLogger(__name__)

CANONICAL_NORMALS = {
    "positive": np.array([1, 0, 0, 0], dtype=complex),
    "negative": np.array([0, 0, 1, 0], dtype=complex),
    "tangent": np.array([1, 0, 1, 0], dtype=complex),
}


class OrbitClass(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    TANGENT = "tangent"


@dataclass(frozen=True)
class Membership:
    stabilizer_scale: float = None
    commutes_j: bool = False

    @property
    def in_gjq(self):
        return self.stabilizer_scale is not None and self.commutes_j


@dataclass(frozen=True, eq=False)
class Witness:
    """g in the j-compatible stabilizer with g(target) proportional to the normal n_v."""
    g: np.ndarray
    target: np.ndarray
    residuals: dict


def optimal_j_phase(g):
    """Unimodular c minimising ||c g S - S conj(c g)||, returned with the rescaled matrix."""
    x = g @ S
    y = S @ np.conj(g)
    inner = np.vdot(x, y)
    if abs(inner) == 0:
        return 1.0 + 0j, g
    c2 = inner / abs(inner)
    c = np.sqrt(c2)
    return c, c * g


def group_membership(g, tol=None):
    """Test G* H G = lambda H for real lambda != 0 and G S = S conj(G) after the best phase."""
    tol = config.resolve(tol)
    g = as_matrix(g, 4)
    scale = float(np.linalg.norm(g)) ** 2
    gram = dagger(g) @ H @ g
    lam = float(gram[0, 0].real)
    stab = None
    if abs(lam) > tol.eq_abs * scale and np.linalg.norm(gram - lam * H) < 1e-8 * scale:
        stab = lam
    _, aligned = optimal_j_phase(g)
    commutator = np.linalg.norm(aligned @ S - S @ np.conj(aligned))
    return Membership(stab, bool(commutator < tol.eq_abs * math.sqrt(scale)))


def normal_form_residual(g):
    """Distance of the phase-aligned G from the quaternionic pattern

        rows (a, b, c, d), (-conj b, conj a, -conj d, conj c),
             (e, f, g, h), (-conj f, conj e, -conj h, conj g).
    """
    _, m = optimal_j_phase(as_matrix(g, 4))

    def partner(row):
        a, b, c, d = row
        return np.array([-np.conj(b), np.conj(a), -np.conj(d), np.conj(c)])

    return float(np.linalg.norm(m[1] - partner(m[0])) + np.linalg.norm(m[3] - partner(m[2])))


def hyperplane_delta(hp):
    """Delta = h(n_v, n_v) = |v0|^2 + |v1|^2 - |v2|^2 - |v3|^2 on unit v."""
    v = hp.unit()
    return float(np.sum(np.abs(v[:2]) ** 2) - np.sum(np.abs(v[2:]) ** 2))


def unitary_block(w):
    """U_w in SU(2) with U_w w = (||w||, 0); the identity for w = 0."""
    norm = float(np.linalg.norm(w))
    if norm == 0:
        return I2.copy()
    xi, eta = w
    return np.array([[np.conj(xi), np.conj(eta)], [-eta, xi]], dtype=complex) / norm


def block_rotation(n):
    """D_n = diag(U_x, U_y) for n = (x, y), taking n to (||x||, 0, ||y||, 0)."""
    d = np.zeros((4, 4), dtype=complex)
    d[:2, :2] = unitary_block(n[:2])
    d[2:, 2:] = unitary_block(n[2:])
    return d


def boost(r, s):
    """C_{r,s} = [[r I, s I], [s I, r I]], an isometry of h when r^2 - s^2 = 1."""
    c = np.zeros((4, 4), dtype=complex)
    c[:2, :2] = r * I2
    c[2:, 2:] = r * I2
    c[:2, 2:] = s * I2
    c[2:, :2] = s * I2
    return c


def sign_swap_element():
    """R exchanges (z0, z1) with (z2, z3): R* H R = -H and R S = S conj(R)."""
    r = np.zeros((4, 4), dtype=complex)
    r[0, 2] = r[1, 3] = r[2, 0] = r[3, 1] = 1
    return r


def witness_residuals(g, target, n):
    return {
        "stab": float(np.linalg.norm(dagger(g) @ H @ g - H)),
        "commute": float(np.linalg.norm(g @ S - S @ np.conj(g))),
        "map": float(proj_distance(g @ target, n)),
    }


def classify_hyperplane(hp, tol=None):
    """Orbit of the hyperplane under the j-compatible group, with a witness g built from D_n and C_{r,s}."""
    tol = config.resolve(tol)
    delta = hyperplane_delta(hp)
    n = H @ np.conj(hp.unit())
    d_inv = dagger(block_rotation(n))

    if abs(delta) < tol.disc_zero:
        cls, g = OrbitClass.TANGENT, d_inv
    else:
        scaled = n / math.sqrt(abs(delta))
        x_norm = float(np.linalg.norm(scaled[:2]))
        y_norm = float(np.linalg.norm(scaled[2:]))
        if delta > 0:
            cls, g = OrbitClass.POSITIVE, d_inv @ boost(x_norm, y_norm)
        else:
            cls, g = OrbitClass.NEGATIVE, d_inv @ boost(y_norm, x_norm)
    target = CANONICAL_NORMALS[cls.value]
    _logger.debug("Delta = %.3g against disc_zero %.3g: %s orbit", delta, tol.disc_zero, cls.value)
    return cls, Witness(g, target, witness_residuals(g, target, n))


def transform_hyperplane(g, hp):
    """The image G(Pi_v), whose h-normal is G n_v."""
    g = as_matrix(g, 4)
    n = g @ hp.n
    if not np.any(np.abs(n) > 0):
        raise ZeroCovector("transformed normal vanishes")
    return HyperplaneDual.from_normal(n)


def random_group_element(rng, factors=3):
    """A product of random generators of the j-compatible stabilizer: SU(2) blocks, D_n rotations and boosts."""
    g = np.eye(4, dtype=complex)
    for _ in range(factors):
        blocks = np.zeros((4, 4), dtype=complex)
        blocks[:2, :2] = haar_unitary(rng, UnitaryGroup.SU2)
        blocks[2:, 2:] = haar_unitary(rng, UnitaryGroup.SU2)
        t = rng.uniform(-1.5, 1.5)
        n = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        g = g @ blocks @ boost(math.cosh(t), math.sinh(t)) @ block_rotation(n)
    return g
