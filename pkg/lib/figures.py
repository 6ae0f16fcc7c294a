#!/usr/bin/env python3
"""
Figure output for the discriminant circle of Q_{a,r} against the unit circle.

CSV rows are (curve_id, x, y) samples of the unit circle, the discriminant
locus and the branch points. SVG figures are drawn with matplotlib on a
fixed 600 x 600 canvas showing [-2.5, 2.5]^2.
"""
import csv
import io
import logging
import math

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .errors import IOFailure, SchemaError
from .quadrics import CircleKind, DiscriminantCircle, classify_family

_logger = logging.getLogger(__name__)

EXTENT = 2.5
CANVAS_PT = 600
SAMPLES = 361
CSV_HEADER = ['curve_id', 'x', 'y']


def figure_geometry(fp, tol=None):
    """Sampled curves keyed by curve id, plus the classification they were drawn from."""
    circle, rel = classify_family(fp, tol)
    t = np.linspace(0.0, 2 * math.pi, SAMPLES)
    curves = {
        'unit_circle': np.exp(1j * t),
        'discriminant': circle.sample(SAMPLES, EXTENT),
        'branch_points': np.array(rel.branch_points, dtype=complex),
    }
    return curves, circle, rel


def render_csv(fp, tol=None):
    curves, _, _ = figure_geometry(fp, tol)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for curve_id, points in curves.items():
        for z in points:
            writer.writerow([curve_id, repr(float(z.real)), repr(float(z.imag))])
    return buf.getvalue()


def render_svg(fp, tol=None):
    curves, circle, rel = figure_geometry(fp, tol)
    matplotlib.rcParams['svg.hashsalt'] = 'hyperq'
    matplotlib.rcParams['svg.fonttype'] = 'none'
    fig = plt.figure(figsize=(CANVAS_PT / 72, CANVAS_PT / 72), dpi=72)
    try:
        ax = fig.add_axes([0, 0, 1, 1])
        ax.set_xlim(-EXTENT, EXTENT)
        ax.set_ylim(-EXTENT, EXTENT)
        ax.set_aspect('equal')
        ax.axis('off')
        unit = curves['unit_circle']
        ax.plot(unit.real, unit.imag, color='black', linestyle='-', linewidth=1.5, label='unit circle')
        disc = curves['discriminant']
        ax.plot(disc.real, disc.imag, color='tab:blue', linestyle='--', linewidth=1.5,
                label=f'discriminant ({circle.kind.value})')
        pts = curves['branch_points']
        if pts.size:
            ax.plot(pts.real, pts.imag, linestyle='none', marker='o', color='tab:red', label='branch points')
        ax.legend(loc='upper left', title=f'I = {rel.inversive_distance:.6g} ({rel.position.value})')
        buf = io.StringIO()
        fig.savefig(buf, format='svg', metadata={'Date': None})
    finally:
        plt.close(fig)
    return buf.getvalue()


def emit_figure(fp, fmt, out=None, tol=None):
    """Render the figure as CSV or SVG text, writing it to out when a path is given."""
    if fmt == 'csv':
        text = render_csv(fp, tol)
    elif fmt == 'svg':
        text = render_svg(fp, tol)
    else:
        raise SchemaError(f"unknown figure format {fmt!r}")
    if out is not None:
        try:
            with open(out, 'w', newline='', encoding='utf-8') as f:
                f.write(text)
        except OSError as e:
            raise IOFailure(f"cannot write {out}: {e}")
        _logger.info("Wrote %s figure to %s", fmt, out)
    return text


def read_figure_csv(text):
    """Group the rows of a figure CSV by curve id."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != CSV_HEADER:
        raise SchemaError(f"unexpected CSV header {header!r}")
    curves = {}
    for curve_id, x, y in reader:
        curves.setdefault(curve_id, []).append(complex(float(x), float(y)))
    return {k: np.array(v) for k, v in curves.items()}


def fit_discriminant(points):
    """Recover the discriminant circle or line from its samples by an algebraic least-squares fit."""
    x, y = points.real, points.imag
    if np.ptp(x) < 1e-12:
        return DiscriminantCircle(CircleKind.LINE, re_equals=float(np.mean(x)))
    design = np.column_stack([x, y, np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(design, x ** 2 + y ** 2, rcond=None)
    center = complex(coef[0] / 2, coef[1] / 2)
    radius = math.sqrt(coef[2] + abs(center) ** 2)
    return DiscriminantCircle(CircleKind.CIRCLE, center=center, radius=radius)
