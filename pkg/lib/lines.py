#!/usr/bin/env python3
"""
Lines of Q^{2,2} as graphs of unitary matrices, their spheres in S^3 = SU(2),
incidence and tangency criteria, and recovery of a line from sample points.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import config
from .errors import (CriteriaDisagree, DegenerateConfiguration, FibreInput,
                     NotOnCommonLine, NotOnHypersurface, NotUnitary)
from .numeric import (J0, as_matrix, check_su2, complex_gaussian, dagger,
                      unitarity_defect, unitary_phase_split, su2_rotation_to)
from .projective import ProjPoint, in_q22, project_quat

_logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LineU2:
    """The line {[z : A z]} of Q22 with its phase split A = e^{i theta} U."""
    A: np.ndarray
    theta: float
    U: np.ndarray

    def point(self, z0, z1):
        z = np.array([z0, z1], dtype=complex)
        return ProjPoint(np.concatenate([z, self.A @ z]))

    def sample_points(self, n, rng):
        return [self.point(*complex_gaussian(rng, 2)) for _ in range(n)]


@dataclass(frozen=True, eq=False)
class SphereOrPoint:
    """Sigma_A in SU(2): the single point U for a fibre, else the sphere {tr(U^{-1} x) = 2 cos theta}."""
    center: np.ndarray
    radius: float = None

    @property
    def is_point(self):
        return self.radius is None


class Tangency(str, Enum):
    COMPATIBLE = "compatible"
    OPPOSITE = "opposite"
    BOTH = "both"
    NONE = "none"


def line_from_unitary(a, tol=None):
    tol = config.resolve(tol)
    a = as_matrix(a, 2)
    theta, u = unitary_phase_split(a, tol)
    return LineU2(a, theta, u)


def line_contains(line, p, tol=None):
    tol = config.resolve(tol)
    z = p.canonical(tol)
    return float(np.linalg.norm(z[2:] - line.A @ z[:2])) < tol.eq_abs


def _fibre_measures(line):
    det_gap = abs(np.linalg.det(line.A) - 1)
    commutator = np.linalg.norm(line.A @ J0 - J0 @ np.conj(line.A), 2)
    return det_gap, commutator


def is_fibre(line, tol=None):
    """A in SU(2), checked both as det A = 1 and as A J0 = J0 conj(A)."""
    tol = config.resolve(tol)
    det_gap, commutator = _fibre_measures(line)
    by_det = det_gap < tol.eq_abs
    by_commutator = commutator < tol.eq_abs
    if by_det != by_commutator:
        raise CriteriaDisagree(f"|det A - 1| = {det_gap:.3g} but ||A J0 - J0 conj A|| = {commutator:.3g}")
    _logger.debug("|det A - 1| = %.3g, commutator %.3g: fibre %s", det_gap, commutator, by_det)
    return by_det


def j_line(line, tol=None):
    """j(l_A) = l_{e^{-i theta} U}."""
    return line_from_unitary(np.exp(-1j * line.theta) * line.U, tol)


def line_sphere(line, tol=None):
    if is_fibre(line, tol):
        return SphereOrPoint(line.U)
    return SphereOrPoint(line.U, line.theta)


def sphere_contains(line, x, tol=None):
    """x in Sigma_A, by det(A - x) = 0 and by tr(U^{-1} x) = 2 cos theta."""
    tol = config.resolve(tol)
    x = check_su2(x, tol)
    by_det = abs(np.linalg.det(line.A - x))
    by_trace = abs(np.trace(dagger(line.U) @ x) - 2 * math.cos(line.theta))
    if (by_det < tol.disc_zero) != (by_trace < tol.disc_zero):
        raise CriteriaDisagree(f"|det(A - x)| = {by_det:.3g} but trace gap = {by_trace:.3g}")
    return by_det < tol.disc_zero


def sample_sphere_point(line, rng):
    """x = U y with y in C_theta, so x lies on Sigma_A by construction."""
    return line.U @ su2_rotation_to(line.theta, rng)


def lines_meet(l1, l2, tol=None):
    tol = config.resolve(tol)
    by_det = abs(np.linalg.det(l1.A - l2.A))
    by_trace = abs(np.trace(dagger(l2.U) @ l1.U) - 2 * math.cos(l1.theta - l2.theta))
    if (by_det < tol.disc_zero) != (by_trace < tol.disc_zero):
        raise CriteriaDisagree(f"|det(A - B)| = {by_det:.3g} but trace gap = {by_trace:.3g}")
    return by_det < tol.disc_zero


def meeting_point(l1, l2, tol=None):
    """The common point of two meeting lines, from the kernel of A - B."""
    tol = config.resolve(tol)
    if not lines_meet(l1, l2, tol):
        raise DegenerateConfiguration("lines do not meet")
    diff = l1.A - l2.A
    if np.linalg.norm(diff) < tol.eq_abs:
        raise DegenerateConfiguration("lines coincide")
    _, _, vh = np.linalg.svd(diff)
    z = np.conj(vh[-1])
    return l1.point(*z)


def tangency_relation(l1, l2, tol=None):
    """Compatible when the lines meet, opposite when l1 meets j(l2)."""
    tol = config.resolve(tol)
    if is_fibre(l1, tol) or is_fibre(l2, tol):
        raise FibreInput("tangency is defined for non-fibre lines only")
    compatible = lines_meet(l1, l2, tol)
    opposite = lines_meet(l1, j_line(l2, tol), tol)
    _logger.debug("lines meet: %s, meet after j: %s", compatible, opposite)
    if compatible and opposite:
        return Tangency.BOTH
    if compatible:
        return Tangency.COMPATIBLE
    if opposite:
        return Tangency.OPPOSITE
    return Tangency.NONE


def fibre_basepoint(x, tol=None):
    """The base point of the fibre l_x, read off as project_quat([1 : 0 : x (1, 0)])."""
    tol = config.resolve(tol)
    x = check_su2(x, tol)
    return project_quat(ProjPoint([1, 0, x[0, 0], x[1, 0]]), tol)


def recover_line(points, tol=None):
    """Solve (z2, z3) = A (z0, z1) from the best-conditioned pair of points and verify the rest."""
    tol = config.resolve(tol)
    if len(points) < 2:
        raise DegenerateConfiguration("need at least two points")
    for p in points:
        if not in_q22(p, tol):
            raise NotOnHypersurface("input point is not on Q22")
    reps = [p.canonical(tol) for p in points]

    best, best_det = None, 0.0
    for i, k in itertools.combinations(range(len(reps)), 2):
        d = abs(np.linalg.det(np.column_stack([reps[i][:2], reps[k][:2]])))
        if d > best_det:
            best, best_det = (i, k), d
    if best is None or best_det < tol.eq_abs:
        raise DegenerateConfiguration("no two points with independent (z0, z1) parts")

    i, k = best
    lower = np.column_stack([reps[i][:2], reps[k][:2]])
    upper = np.column_stack([reps[i][2:], reps[k][2:]])
    a = upper @ np.linalg.inv(lower)

    for z in reps:
        if np.linalg.norm(z[2:] - a @ z[:2]) > 10 * tol.eq_abs:
            raise NotOnCommonLine("points do not lie on one graph line")
    defect = unitarity_defect(a)
    if defect > 10 * tol.eq_abs:
        raise NotUnitary(f"recovered matrix is not unitary (defect {defect:.3g})")
    return line_from_unitary(a, tol.replace(eq_abs=10 * tol.eq_abs))
