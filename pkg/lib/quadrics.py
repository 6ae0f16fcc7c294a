#!/usr/bin/env python3
"""
j-invariant quadrics and their intersection with Q^{2,2}.

Covers j-invariance and normalization, the family Q_{a,r} and the Segre
quadric, restriction of a quadric to twistor fibres, the discriminant
circle with its inversive distance and branch points, the two section
branches over a base point and the Levi type of the induced structure.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import config
from .cr import Chart, to_chart
from .errors import (ChartUndefined, FibreContained, InvalidRadius, NonTransverse,
                     NotJInvariant, NotOnIntersection, NotOnSigma, NotSymmetric,
                     OnBranchLocus, SchemaError)
from .numeric import INF, as_matrix, proj_distance
from .projective import S, ProjPoint, apply_j, fibre_basis, in_q22

_logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuadricSym4:
    """The quadric F(z) = (1/2) z^T Q z = 0 for a complex symmetric Q."""
    Q: np.ndarray

    def __post_init__(self):
        q = as_matrix(self.Q, 4)
        gap = float(np.linalg.norm(q - q.T))
        if gap > config.resolve(None).eq_abs * max(1.0, float(np.linalg.norm(q))):
            raise NotSymmetric(f"||Q - Q^T|| = {gap:.3g}")
        q = (q + q.T) / 2
        q.setflags(write=False)
        object.__setattr__(self, "Q", q)

    def value(self, z):
        z = np.asarray(z, dtype=complex)
        return complex(z @ self.Q @ z) / 2

    def residual(self, p):
        """|F| on the unit representative, relative to the size of Q."""
        return abs(self.value(p.unit())) / float(np.linalg.norm(self.Q))


@dataclass(frozen=True)
class FamilyParams:
    a: float
    r: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.r)):
            raise SchemaError("family parameters must be finite")
        if self.r <= 0:
            raise InvalidRadius(f"r must be positive, got {self.r}")

    @property
    def c(self):
        return self.a ** 2 - self.r ** 2


class FibreType(str, Enum):
    TWO = "two"
    TANGENT = "tangent"
    CONTAINED = "contained"


@dataclass(frozen=True)
class FibreQuadratic:
    """alpha z0^2 + 2 beta z0 z1 + gamma z1^2 on a fibre."""
    alpha: complex
    beta: complex
    gamma: complex

    @property
    def disc(self):
        return self.beta ** 2 - self.alpha * self.gamma

    def fibre_type(self, tol=None):
        tol = config.resolve(tol)
        if max(abs(self.alpha), abs(self.beta), abs(self.gamma)) < tol.disc_zero:
            return FibreType.CONTAINED
        if abs(self.disc) < tol.disc_zero:
            return FibreType.TANGENT
        return FibreType.TWO


class CircleKind(str, Enum):
    CIRCLE = "circle"
    LINE = "line"
    CONTAINED_UNIT_CIRCLE = "contained_unit_circle"


@dataclass(frozen=True)
class DiscriminantCircle:
    """The discriminant locus of Q_{a,r} in the slice p1 = 0 of the quaternion chart."""
    kind: CircleKind
    center: complex = None
    radius: float = None
    re_equals: float = None

    def sample(self, n, extent=2.5):
        """n points of the locus; a line is cut to |Im z| <= extent."""
        if self.kind is CircleKind.LINE:
            return self.re_equals + 1j * np.linspace(-extent, extent, n)
        t = np.linspace(0.0, 2 * math.pi, n)
        return self.center + self.radius * np.exp(1j * t)


class Position(str, Enum):
    CONTAINED = "contained"
    TWO_POINTS = "two_points"
    TANGENT = "tangent"
    DISJOINT = "disjoint"


@dataclass(frozen=True)
class RelPosition:
    position: Position
    inversive_distance: float
    branch_points: tuple


@dataclass(frozen=True, eq=False)
class LeviType:
    nondegenerate: bool
    value: float
    direction: np.ndarray

    @property
    def degenerate(self):
        return not self.nondegenerate


@dataclass(frozen=True)
class EliminatedChart:
    """The section near a point of U0, with u1 eliminated: rho(u2, u3) and its derivatives."""
    u1: complex
    rho: float
    gradient: tuple
    hessian: np.ndarray
    levi_value: float


# --- j-invariance ---

def jinv_transform(quadric):
    """T(Q) = S^T conj(Q) S; j-invariance means T(Q) = lambda Q."""
    return S.T @ np.conj(quadric.Q) @ S


def jinv_pattern(a, b, c, d, e, f):
    """The normalized j-invariant matrix with complex a, c, d, e and real b, f."""
    a, c, d, e = (complex(x) for x in (a, c, d, e))
    q = np.array([
        [a, 1j * b, c, d],
        [1j * b, a.conjugate(), -d.conjugate(), c.conjugate()],
        [c, -d.conjugate(), e, 1j * f],
        [d, c.conjugate(), 1j * f, e.conjugate()],
    ], dtype=complex)
    return QuadricSym4(q)


def jinv_pattern_residual(quadric):
    """Distance of Q from the normalized pattern it would have to follow."""
    q = quadric.Q
    rebuilt = jinv_pattern(q[0, 0], (q[0, 1] / 1j).real, q[0, 2], q[0, 3], q[2, 2], (q[2, 3] / 1j).real)
    return float(np.linalg.norm(q - rebuilt.Q))


def jinv_normalize(quadric, tol=None):
    """Find |lambda| = 1 with T(Q) = lambda Q and return (lambda, mu Q), mu = e^{i arg(lambda)/2}."""
    tol = config.resolve(tol)
    q = quadric.Q
    t = jinv_transform(quadric)
    lam = np.vdot(q, t) / np.vdot(q, q)
    if abs(lam) == 0 or np.linalg.norm(t - lam * q) > tol.eq_abs * np.linalg.norm(q):
        raise NotJInvariant("S^T conj(Q) S is not proportional to Q")
    lam = lam / abs(lam)
    angle = float(np.angle(lam))
    if angle <= -math.pi + tol.eq_abs:
        angle = math.pi
    mu = np.exp(0.5j * angle)
    return complex(np.exp(1j * angle)), QuadricSym4(mu * q)


def family_quadric(fp):
    """Q_{a,r}, i.e. F = z0 z1 - a (z0 z3 + z1 z2) + (a^2 - r^2) z2 z3, with det Q = r^4."""
    a, c = fp.a, fp.c
    return QuadricSym4(np.array([[0, 1, 0, -a],
                                 [1, 0, -a, 0],
                                 [0, -a, 0, c],
                                 [-a, 0, c, 0]], dtype=complex))


def segre_quadric():
    """F = z0 z3 - z1 z2."""
    return QuadricSym4(np.array([[0, 0, 0, 1],
                                 [0, 0, -1, 0],
                                 [0, -1, 0, 0],
                                 [1, 0, 0, 0]], dtype=complex))


# --- Fibre restriction ---

def restrict_to_fibre(quadric, q):
    """Substitute the fibre over q into F; on the fibre over INF this reads the lower-right block."""
    m = fibre_basis(q)
    g = m.T @ quadric.Q @ m
    return FibreQuadratic(complex(g[0, 0]) / 2, complex(g[0, 1]) / 2, complex(g[1, 1]) / 2)


def family_discriminant(fp, q):
    """Closed form of Delta(p) on Q_{a,r}: a sum of two non-negative terms."""
    a, c = fp.a, fp.c
    p0, p1 = q.p0, q.p1
    first = 0.25 * (1 - 2 * a * p0.real + c * (abs(p0) ** 2 - abs(p1) ** 2)) ** 2
    return first + abs(p1) ** 2 * abs(c * p0 - a) ** 2


# --- Discriminant circle ---

def inversive_distance(fp):
    """I = |a^2 - r^2 - 1| / (2 r)."""
    return abs(fp.c - 1) / (2 * fp.r)


def discriminant_circle(fp, tol=None):
    """Center a/(a^2 - r^2) and radius r/|a^2 - r^2|, or the line Re z = 1/(2a) when a^2 = r^2.

    For a = 0 the locus is the circle |z| = 1/r, concentric with the unit circle.
    """
    tol = config.resolve(tol)
    a, c, r = fp.a, fp.c, fp.r
    if a == 0:
        if abs(r - 1) < tol.containment:
            return DiscriminantCircle(CircleKind.CONTAINED_UNIT_CIRCLE, center=0j, radius=1.0)
        return DiscriminantCircle(CircleKind.CIRCLE, center=0j, radius=1 / r)
    if abs(c) < tol.containment * max(1.0, a * a):
        return DiscriminantCircle(CircleKind.LINE, re_equals=1 / (2 * a))
    center = a / c
    radius = r / abs(c)
    if abs(center) < tol.containment and abs(radius - 1) < tol.containment:
        return DiscriminantCircle(CircleKind.CONTAINED_UNIT_CIRCLE, center=0j, radius=1.0)
    return DiscriminantCircle(CircleKind.CIRCLE, center=complex(center), radius=radius)


def branch_points(fp, position):
    """Intersections of the discriminant locus with the unit circle: Re z = (a^2 - r^2 + 1)/(2a)."""
    if position in (Position.CONTAINED, Position.DISJOINT) or fp.a == 0:
        return ()
    x = (fp.c + 1) / (2 * fp.a)
    if position is Position.TANGENT:
        return (complex(math.copysign(1.0, x), 0.0),)
    y = math.sqrt(max(1 - x * x, 0.0))
    return (complex(x, y), complex(x, -y))


def classify_family(fp, tol=None):
    """Discriminant circle of Q_{a,r} and its position relative to the unit circle."""
    tol = config.resolve(tol)
    circle = discriminant_circle(fp, tol)
    inv = inversive_distance(fp)
    if circle.kind is CircleKind.CONTAINED_UNIT_CIRCLE:
        position = Position.CONTAINED
    elif fp.a == 0:
        # concentric circles of radii 1 and 1/r
        position = Position.DISJOINT
    elif abs(inv - 1) < tol.containment:
        position = Position.TANGENT
    elif inv < 1:
        position = Position.TWO_POINTS
    else:
        position = Position.DISJOINT
    _logger.debug("Q_{%g,%g}: %s locus, I = %.12g, position %s",
                  fp.a, fp.r, circle.kind.value, inv, position.value)
    return circle, RelPosition(position, inv, branch_points(fp, position))


def inversion_image(fp, w):
    """z = 1/w; maps the circle |w - a| = r onto the discriminant locus."""
    return 1 / np.asarray(w, dtype=complex)


# --- Section branches ---

def _lex_key(z):
    return tuple(v for c in np.round(z, 12) for v in (c.real, c.imag))


def fibre_roots(coeffs):
    """Projective roots (z0 : z1) of the binary quadratic, using the sign-aware stable formula."""
    alpha, beta, gamma = coeffs.alpha, coeffs.beta, coeffs.gamma
    root = np.sqrt(complex(coeffs.disc))
    if (np.conj(beta) * root).real < 0:
        root = -root
    t = -(beta + root)
    return np.array([t, alpha]), np.array([gamma, t])


def section_roots(quadric, q, tol=None):
    """The two points of S on the fibre over q, ordered lexicographically by canonical representative."""
    tol = config.resolve(tol)
    if q is INF or abs(abs(q) - 1) >= tol.eq_abs:
        raise NotOnSigma("section roots are taken over unit quaternions")
    coeffs = restrict_to_fibre(quadric, q)
    kind = coeffs.fibre_type(tol)
    if kind is FibreType.CONTAINED:
        raise FibreContained("the whole fibre lies in the quadric")
    if kind is FibreType.TANGENT:
        raise OnBranchLocus("the fibre is tangent to the quadric")
    m = fibre_basis(q)
    points = [ProjPoint(ProjPoint(m @ r).canonical(tol)) for r in fibre_roots(coeffs)]
    points.sort(key=lambda p: _lex_key(p.z))
    return points[0], points[1]


def jswap_residual(first, second):
    """How far j(first) is from second, as a projective distance."""
    return float(proj_distance(apply_j(first).z, second.z))


# --- Levi type ---

def section_levi_type(quadric, p, tol=None):
    """Ambient Levi value on the complex tangent line shared by S and Q22, computed in U0.

    The line is the kernel of dF and d(rho0), i.e. the bilinear cross product
    of the two gradients; the value is (1/2)(|X1|^2 - |X2|^2 - |X3|^2) on the
    unit kernel vector.
    """
    tol = config.resolve(tol)
    if not in_q22(p, tol) or quadric.residual(p) >= tol.eq_abs:
        raise NotOnIntersection("point is not on both S and Q22")
    cp = to_chart(p, Chart.U0, tol)
    u = cp.coords
    grad_f = (quadric.Q @ np.concatenate([[1], u]))[1:]
    grad_rho = np.conj(u) * cp.signs
    if np.linalg.norm(grad_f) == 0:
        raise NonTransverse("dF vanishes")
    f_unit = grad_f / np.linalg.norm(grad_f)
    rho_unit = grad_rho / np.linalg.norm(grad_rho)
    x = np.cross(f_unit, rho_unit)
    if np.linalg.norm(x) < tol.disc_zero:
        raise NonTransverse("dF and d(rho) are dependent")
    x = x / np.linalg.norm(x)
    value = 0.5 * float(np.sum(cp.signs * np.abs(x) ** 2))
    return LeviType(abs(value) >= tol.disc_zero, value, x)


def eliminated_chart(fp, u2, u3, tol=None):
    """Solve F_{a,r} = 0 in U0 for u1 = u3 (a - c u2)/(1 - a u2) and differentiate rho0 in (u2, u3)."""
    tol = config.resolve(tol)
    a, c, r = fp.a, fp.c, fp.r
    u2, u3 = complex(u2), complex(u3)
    pole = 1 - a * u2
    if abs(pole) < tol.eq_abs:
        raise ChartUndefined("u1 cannot be eliminated where a u2 = 1")
    g = (a - c * u2) / pole
    dg = r ** 2 / pole ** 2
    u1 = u3 * g
    rho_value = 1 + abs(g) ** 2 * abs(u3) ** 2 - abs(u2) ** 2 - abs(u3) ** 2
    d2 = dg * g.conjugate() * abs(u3) ** 2 - u2.conjugate()
    d3 = (abs(g) ** 2 - 1) * u3.conjugate()
    hessian = np.array([[abs(dg) ** 2 * abs(u3) ** 2 - 1, dg * g.conjugate() * u3],
                        [(dg * g.conjugate() * u3).conjugate(), abs(g) ** 2 - 1]], dtype=complex)
    x = np.array([d3, -d2])
    norm = np.linalg.norm(x)
    levi = 0.0 if norm == 0 else 0.5 * float((np.conj(x) @ hessian.T @ x).real) / norm ** 2
    return EliminatedChart(u1, rho_value, (d2, d3), hessian, levi)
