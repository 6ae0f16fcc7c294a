#!/usr/bin/env python3
"""
Hyperplane sections of Q^{2,2}: smooth spherical sections that are graphs
over Sigma, and tangent sections foliated by complex lines.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import config
from .errors import NotOnSigma, NotTangent, TangentPlane
from .projective import ProjLine, ProjPoint, fibre_over, fibre_through
from .symmetries import OrbitClass, classify_hyperplane, hyperplane_delta

_logger = logging.getLogger(__name__)


class SectionType(str, Enum):
    SMOOTH_SPHERICAL = "smooth_spherical"
    TANGENT_LEVIFLAT = "tangent_leviflat"


@dataclass(frozen=True, eq=False)
class SectionKind:
    kind: SectionType
    delta: float
    singular_point: ProjPoint = None
    fibre_residual: float = None


def plane_contains(hp, p, tol=None):
    return hp.evaluate(p) < config.resolve(tol).eq_abs


def _fibre_residual(hp, fibre):
    # the plane is linear, so the two basis points and their sum cover the whole fibre
    b = fibre.basis
    return max(hp.evaluate(ProjPoint(z)) for z in (b[:, 0], b[:, 1], b[:, 0] + b[:, 1]))


def section_kind(hp, tol=None):
    """Smooth when Delta != 0; tangent when Delta = 0, singular at [n_v].

    In the tangent case the whole fibre through [n_v] lies in the plane;
    fibre_residual records the largest |v . z| over points of that fibre.
    """
    tol = config.resolve(tol)
    delta = hyperplane_delta(hp)
    if abs(delta) < tol.disc_zero:
        singular = ProjPoint(hp.n)
        residual = _fibre_residual(hp, fibre_through(singular, tol))
        _logger.debug("tangent section, Delta = %.3g, fibre residual %.3g", delta, residual)
        return SectionKind(SectionType.TANGENT_LEVIFLAT, delta, singular, residual)
    _logger.debug("smooth section, Delta = %.3g", delta)
    return SectionKind(SectionType.SMOOTH_SPHERICAL, delta)


def section_graph_point(hp, q, tol=None):
    """The single point where the fibre over q (|q| = 1) meets the smooth section."""
    tol = config.resolve(tol)
    if abs(abs(q) - 1) >= tol.eq_abs:
        raise NotOnSigma(f"|q| = {abs(q):.12g}")
    if abs(hyperplane_delta(hp)) < tol.disc_zero:
        raise TangentPlane("graph sections need a non-tangent hyperplane")
    v = hp.unit()
    a = v[0] + v[2] * q.p0 + v[3] * q.p1
    b = v[1] - v[2] * np.conj(q.p1) + v[3] * np.conj(q.p0)
    if abs(a) < tol.eq_abs and abs(b) < tol.eq_abs:
        raise TangentPlane("the fibre lies inside the plane")
    z = fibre_over(q).basis @ np.array([-b, a])
    return ProjPoint(ProjPoint(z).canonical(tol))


def _require_tangent(hp, tol):
    cls, witness = classify_hyperplane(hp, tol)
    if cls is not OrbitClass.TANGENT:
        raise NotTangent("plane is not tangent to Q22")
    return witness.g


def tangent_leaf(hp, phase, tol=None):
    """The leaf zeta0 (1,0,1,0) + zeta1 (0,1,0,e^{i phase}) of the canonical tangent section, moved by the witness."""
    tol = config.resolve(tol)
    g = _require_tangent(hp, tol)
    canonical = np.array([[1, 0], [0, 1], [1, 0], [0, np.exp(1j * phase)]], dtype=complex)
    return ProjLine(g @ canonical)


def leaf_phase(hp, p, tol=None):
    """The phase of the leaf through a non-singular point p of the tangent section."""
    tol = config.resolve(tol)
    g = _require_tangent(hp, tol)
    w = np.linalg.solve(g, p.unit())
    if abs(w[1]) < tol.eq_abs:
        raise TangentPlane("every leaf passes through the singular point")
    return float(np.angle(w[3] / w[1])) % (2 * math.pi)
