#!/usr/bin/env python3
"""
Global section branches over Sigma by root continuation.

Roots of the fibre quadratic are tracked along geodesics of S^3 from the
reference base point q = 1 to every grid point, matching roots between
steps by projective distance. Paths whose target sits near -1 go through
the quaternion j first. The whole grid is tracked as one array per chunk.
"""
from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import config
from .errors import (ChartUndefined, ContinuationFailed, MonodromyDetected,
                     NonTransverse, NotDisjoint, NotOnIntersection, OnBranchLocus)
from .numeric import Quat, proj_distance, random_unit_quats
from .projective import S, ProjPoint
from .quadrics import Position, classify_family, family_quadric, section_levi_type, section_roots
from .utils import format_elapsed

_logger = logging.getLogger(__name__)

REFERENCE = np.array([1.0, 0.0, 0.0, 0.0])
DETOUR = np.array([0.0, 0.0, 1.0, 0.0])
# Targets with Re p0 below this go through j; the geodesic from 1 degenerates at -1.
ANTIPODE_GUARD = -0.99
INITIAL_STEPS = 16
MAX_STEPS = 4096


@dataclass
class SectionReport:
    grid_size: int
    max_jswap_residual: float
    monodromy_failures: int
    levi_summary: dict
    loops: int = 0
    min_separation: float = 0.0
    steps: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "grid_size": self.grid_size,
            "max_jswap_residual": self.max_jswap_residual,
            "monodromy_failures": self.monodromy_failures,
            "levi_summary": self.levi_summary,
            "loops": self.loops,
            "min_separation": self.min_separation,
            "steps": self.steps,
        }


# --- Vectorized root computation ---

def _fibre_bases(x):
    """Stacked 4x2 fibre bases for real rows x = (Re p0, Im p0, Re p1, Im p1)."""
    p0 = x[:, 0] + 1j * x[:, 1]
    p1 = x[:, 2] + 1j * x[:, 3]
    m = np.zeros((x.shape[0], 4, 2), dtype=complex)
    m[:, 0, 0] = 1
    m[:, 1, 1] = 1
    m[:, 2, 0] = p0
    m[:, 2, 1] = -np.conj(p1)
    m[:, 3, 0] = p1
    m[:, 3, 1] = np.conj(p0)
    return m


def root_pairs(q_matrix, x):
    """Both section roots over each row of x as unit 4-vectors, shape (n, 2, 4), plus |Delta|."""
    m = _fibre_bases(x)
    g = np.einsum('nki,kl,nlj->nij', m, q_matrix, m) / 2
    alpha, beta, gamma = g[:, 0, 0], g[:, 0, 1], g[:, 1, 1]
    disc = beta ** 2 - alpha * gamma
    root = np.sqrt(disc)
    root = np.where((np.conj(beta) * root).real < 0, -root, root)
    t = -(beta + root)
    first = np.einsum('nij,nj->ni', m, np.stack([t, alpha], axis=1))
    second = np.einsum('nij,nj->ni', m, np.stack([gamma, t], axis=1))
    pairs = np.stack([first, second], axis=1)
    pairs /= np.linalg.norm(pairs, axis=2, keepdims=True)
    return pairs, np.abs(disc)


def _match(prev, new):
    """Reorder new so that each slot continues the same branch as prev; return (matched, drift, separation)."""
    same = proj_distance(prev[:, 0], new[:, 0]) + proj_distance(prev[:, 1], new[:, 1])
    swap = proj_distance(prev[:, 0], new[:, 1]) + proj_distance(prev[:, 1], new[:, 0])
    flip = swap < same
    matched = np.where(flip[:, None, None], new[:, ::-1], new)
    drift = np.maximum(proj_distance(prev[:, 0], matched[:, 0]), proj_distance(prev[:, 1], matched[:, 1]))
    separation = proj_distance(matched[:, 0], matched[:, 1])
    return matched, drift, separation


def _slerp(start, end, t):
    """Geodesic points on S^3 between rows of start and end, at parameter t."""
    dot = np.clip(np.sum(start * end, axis=1), -1.0, 1.0)
    omega = np.arccos(dot)[:, None]
    small = omega[:, 0] < 1e-12
    sin_omega = np.where(small[:, None], 1.0, np.sin(omega))
    out = (np.sin((1 - t) * omega) * start + np.sin(t * omega) * end) / sin_omega
    out[small] = start[small]
    return out / np.linalg.norm(out, axis=1, keepdims=True)


def _track_once(q_matrix, path, start_roots, steps, disc_zero):
    roots = start_roots
    ok = True
    min_sep = np.inf
    for k in range(1, steps + 1):
        pairs, disc = root_pairs(q_matrix, path(k / steps, k == steps))
        if np.any(disc < disc_zero):
            raise OnBranchLocus("continuation path crosses the discriminant locus")
        roots, drift, sep = _match(roots, pairs)
        min_sep = min(min_sep, float(sep.min()))
        if np.any(sep <= 3 * drift):
            ok = False
            break
    return roots, ok, min_sep


def track(q_matrix, path, start_roots, disc_zero, steps=INITIAL_STEPS):
    """Continue start_roots along path(t), doubling the step count until separation > 3 x drift everywhere."""
    while steps <= MAX_STEPS:
        roots, ok, min_sep = _track_once(q_matrix, path, start_roots, steps, disc_zero)
        if ok:
            return roots, steps, min_sep
        _logger.debug("Root separation too small at %d steps, refining", steps)
        steps *= 2
    raise ContinuationFailed(f"no stable continuation within {MAX_STEPS} steps")


def _geodesic_path(start, targets):
    def path(t, last):
        if last:
            return targets
        return _slerp(start, targets, t)
    return path


def _loop_path(u, v):
    def path(t, last):
        angle = 2 * math.pi * (0.0 if last else t)
        return math.cos(angle) * u + math.sin(angle) * v
    return path


def _label_targets(q_matrix, targets, ref_roots, detour_roots, disc_zero):
    """Labelled roots over each target, tracked from 1 or, near -1, from j."""
    out = np.empty((targets.shape[0], 2, 4), dtype=complex)
    near_antipode = targets[:, 0] < ANTIPODE_GUARD
    steps = {}
    min_sep = np.inf
    for mask, start, start_roots in ((~near_antipode, REFERENCE, ref_roots),
                                     (near_antipode, DETOUR, detour_roots)):
        if not np.any(mask):
            continue
        chunk = targets[mask]
        starts = np.repeat(start[None, :], chunk.shape[0], axis=0)
        seeds = np.repeat(start_roots[None], chunk.shape[0], axis=0)
        roots, used, sep = track(q_matrix, _geodesic_path(starts, chunk), seeds, disc_zero)
        out[mask] = roots
        steps["detour" if start is DETOUR else "direct"] = used
        min_sep = min(min_sep, sep)
    return out, steps, min_sep


def _jswap(pairs):
    """Projective distance between j(s+) and s- at every grid point."""
    j_first = np.conj(pairs[:, 0]) @ S.T
    return proj_distance(j_first, pairs[:, 1])


def _levi_summary(quadric, pairs, tol):
    counts = {"sampled": 0, "nondegenerate": 0, "degenerate": 0, "non_transverse": 0, "chart_undefined": 0,
              "not_on_intersection": 0}
    values = []
    for z in pairs.reshape(-1, 4):
        counts["sampled"] += 1
        try:
            levi = section_levi_type(quadric, ProjPoint(z), tol)
        except NonTransverse:
            counts["non_transverse"] += 1
            continue
        except NotOnIntersection:
            counts["not_on_intersection"] += 1
            continue
        except ChartUndefined:
            counts["chart_undefined"] += 1
            continue
        counts["nondegenerate" if levi.nondegenerate else "degenerate"] += 1
        values.append(abs(levi.value))
    if values:
        counts["min_abs_value"] = float(min(values))
        counts["max_abs_value"] = float(max(values))
    return counts


def sections_over_region(fp, grid=10_000, loops=100, seed=0, workers=4, levi_samples=500,
                         strict=True, tol=None):
    """Label the two section branches globally over Sigma for a family member with Gamma empty.

    grid is a point count (sampled uniformly with the seed) or an explicit
    array of unit quaternion rows. Returns a SectionReport; with strict set,
    nontrivial loop monodromy raises MonodromyDetected.
    """
    tol = config.resolve(tol)
    _, rel = classify_family(fp, tol)
    if rel.position is not Position.DISJOINT:
        raise NotDisjoint(f"relative position is {rel.position.value}, global sections need disjoint")
    started = time.time()
    quadric = family_quadric(fp)
    qm = np.asarray(quadric.Q)
    rng = np.random.default_rng(seed)
    targets = random_unit_quats(rng, grid) if np.isscalar(grid) else np.asarray(grid, dtype=float)

    ref = np.array([p.z for p in section_roots(quadric, Quat.one(), tol)])
    detour, _, _ = track(qm, _geodesic_path(REFERENCE[None, :], DETOUR[None, :]), ref[None], tol.disc_zero)

    chunks = [c for c in np.array_split(targets, max(1, workers)) if c.shape[0]]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        results = list(executor.map(
            lambda c: _label_targets(qm, c, ref, detour[0], tol.disc_zero), chunks))
    pairs = np.concatenate([r[0] for r in results])
    min_sep = min(r[2] for r in results)
    steps = {}
    for r in results:
        for key, used in r[1].items():
            steps[key] = max(steps.get(key, 0), used)

    failures = 0
    if loops:
        basis = rng.standard_normal((loops, 2, 4))
        u = basis[:, 0] / np.linalg.norm(basis[:, 0], axis=1, keepdims=True)
        v = basis[:, 1] - np.sum(basis[:, 1] * u, axis=1, keepdims=True) * u
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        start, _, _ = _label_targets(qm, u, ref, detour[0], tol.disc_zero)
        end, loop_steps, _ = track(qm, _loop_path(u, v), start, tol.disc_zero)
        steps["loop"] = loop_steps
        kept = proj_distance(end[:, 0], start[:, 0]) < proj_distance(end[:, 0], start[:, 1])
        failures = int(np.count_nonzero(~kept))

    report = SectionReport(
        grid_size=int(targets.shape[0]),
        max_jswap_residual=float(_jswap(pairs).max()),
        monodromy_failures=failures,
        levi_summary=_levi_summary(quadric, pairs[:levi_samples], tol),
        loops=int(loops),
        min_separation=float(min_sep),
        steps=steps,
    )
    _logger.info("Tracked %d base points and %d loops in %s", report.grid_size, loops,
                 format_elapsed(time.time() - started))
    if strict and failures:
        raise MonodromyDetected(f"{failures} of {loops} loops swap the branches")
    return report
