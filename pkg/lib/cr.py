#!/usr/bin/env python3
"""
CR geometry of Q^{2,2} in the affine charts U0 = {z0 != 0} and U3 = {z3 != 0}:
defining functions, contact form, CR frames and the Levi matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import config
from .errors import ChartUndefined, FrameUndefined, NotOnHypersurface, NotTangent
from .numeric import complex_gaussian


class Chart(str, Enum):
    U0 = "U0"
    U3 = "U3"


class Frame(str, Enum):
    Z12 = "Z12"
    Y01 = "Y01"


# rho = offset + sum_k sign_k |c_k|^2 in each chart
_SIGNS = {Chart.U0: np.array([1.0, -1.0, -1.0]), Chart.U3: np.array([1.0, 1.0, -1.0])}
_OFFSET = {Chart.U0: 1.0, Chart.U3: -1.0}


@dataclass(frozen=True, eq=False)
class ChartPoint:
    chart: Chart
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "chart", Chart(self.chart))
        object.__setattr__(self, "coords", np.asarray(self.coords, dtype=complex).reshape(3))

    @property
    def signs(self):
        return _SIGNS[self.chart]

    def homogeneous(self):
        c = self.coords
        if self.chart is Chart.U0:
            return np.array([1, c[0], c[1], c[2]], dtype=complex)
        return np.array([c[0], c[1], c[2], 1], dtype=complex)


@dataclass(frozen=True)
class LeviReport:
    frame: Frame
    matrix: np.ndarray
    det: float
    signature: tuple


def to_chart(p, chart, tol=None):
    """Affine coordinates (z1, z2, z3)/z0 in U0 or (z0, z1, z2)/z3 in U3."""
    tol = config.resolve(tol)
    chart = Chart(chart)
    z = p.canonical(tol)
    k = 0 if chart is Chart.U0 else 3
    if abs(z[k]) <= tol.eq_abs:
        raise ChartUndefined(f"z{k} vanishes, point is outside {chart.value}")
    rest = np.delete(z, k)
    return ChartPoint(chart, rest / z[k])


def rho(cp):
    """1 + |u1|^2 - |u2|^2 - |u3|^2 on U0, |w0|^2 + |w1|^2 - |w2|^2 - 1 on U3."""
    return float(_OFFSET[cp.chart] + np.sum(cp.signs * np.abs(cp.coords) ** 2))


def _scale(cp):
    return 1.0 + float(np.sum(np.abs(cp.coords) ** 2))


def _check_on_q22(cp, tol):
    r = rho(cp)
    if abs(r) > tol.eq_abs * _scale(cp):
        raise NotOnHypersurface(f"rho = {r:.3g} at a point expected on Q22")


def _pairing(cp, variation):
    """sum_k sign_k conj(c_k) dc_k; its real part is d(rho)/2 and minus its imaginary part is the contact form."""
    return complex(np.sum(cp.signs * np.conj(cp.coords) * np.asarray(variation, dtype=complex)))


def is_tangent(cp, variation, tol=None):
    tol = config.resolve(tol)
    size = _scale(cp) * max(1.0, float(np.linalg.norm(variation)))
    return abs(_pairing(cp, variation).real) <= tol.eq_abs * size


def contact_eval(cp, variation, tol=None):
    """Evaluate (i/2)(d rho - dbar rho) on a real tangent vector given as a complex variation of the coordinates."""
    tol = config.resolve(tol)
    _check_on_q22(cp, tol)
    if not is_tangent(cp, variation, tol):
        raise NotTangent("variation does not annihilate d(rho)")
    return -_pairing(cp, variation).imag


def cr_frame(cp, tol=None):
    """The (1,0) frame {Z1, Z2} on U0 (needs u3 != 0) or {Y0, Y1} on U3 (needs w2 != 0), as coefficient rows."""
    tol = config.resolve(tol)
    c = cp.coords
    if abs(c[2]) <= tol.eq_abs:
        name = "u3" if cp.chart is Chart.U0 else "w2"
        raise FrameUndefined(f"{name} vanishes, frame is undefined")
    last = np.conj(c[2])
    if cp.chart is Chart.U0:
        return Frame.Z12, np.array([[1, 0, np.conj(c[0]) / last],
                                    [0, 1, -np.conj(c[1]) / last]], dtype=complex)
    return Frame.Y01, np.array([[1, 0, np.conj(c[0]) / last],
                                [0, 1, np.conj(c[1]) / last]], dtype=complex)


def hermitian_signature(m, tol=None):
    """Inertia of a 2x2 Hermitian matrix from its closed-form eigenvalues."""
    tol = config.resolve(tol)
    half_trace = float(np.trace(m).real) / 2
    det = float(np.linalg.det(m).real)
    root = math.sqrt(max(half_trace ** 2 - det, 0.0))
    eigs = (half_trace + root, half_trace - root)
    return (sum(e > tol.eq_abs for e in eigs), sum(e < -tol.eq_abs for e in eigs))


def levi_report(cp, tol=None):
    tol = config.resolve(tol)
    _check_on_q22(cp, tol)
    frame, rows = cr_frame(cp, tol)
    m = 0.5 * np.einsum('k,ik,jk->ij', cp.signs, rows, np.conj(rows))
    det = float(np.linalg.det(m).real)
    return LeviReport(frame, m, det, hermitian_signature(m, tol))


def expected_levi_det(cp):
    """-1/(4|u3|^2) on U0 and -1/(4|w2|^2) on U3."""
    return -1.0 / (4 * abs(cp.coords[2]) ** 2)


def cr_generators(cp):
    """Coefficient rows of the (0,1) fields spanning the CR distribution.

    On U0 these are M12, M13, M23 and on U3 L01, L02, L12; a row c stands
    for the field sum_k c_k d/d(conj c_k).
    """
    a, b, c = cp.coords
    if cp.chart is Chart.U0:
        return {"M12": np.array([b, a, 0]), "M13": np.array([c, 0, a]), "M23": np.array([0, c, -b])}
    return {"L01": np.array([b, -a, 0]), "L02": np.array([c, 0, a]), "L12": np.array([0, c, b])}


def generator_action(cp, coeffs):
    """Apply the (0,1) field with the given coefficients to rho."""
    return complex(np.sum(cp.signs * cp.coords * np.asarray(coeffs, dtype=complex)))


def generator_relation(cp):
    """u3 M12 - u2 M13 - u1 M23 on U0, w1 L02 - w0 L12 - w2 L01 on U3; identically zero."""
    g = cr_generators(cp)
    a, b, c = cp.coords
    if cp.chart is Chart.U0:
        return c * g["M12"] - b * g["M13"] - a * g["M23"]
    return b * g["L02"] - a * g["L12"] - c * g["L01"]


def sample_chart_point(rng, chart, frame_margin=0.0):
    """A random point of Q22 in the chart, solving rho = 0 for the last coordinate's modulus."""
    chart = Chart(chart)
    while True:
        a, b = complex_gaussian(rng, 2)
        if chart is Chart.U0:
            radicand = 1 + abs(a) ** 2 - abs(b) ** 2
        else:
            radicand = abs(a) ** 2 + abs(b) ** 2 - 1
        if radicand <= frame_margin ** 2:
            continue
        c = math.sqrt(radicand) * np.exp(2j * math.pi * rng.random())
        return ChartPoint(chart, [a, b, c])
