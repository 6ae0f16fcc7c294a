#!/usr/bin/env python3
"""
HyperQ - twistor geometry of the hyperquadric Q^{2,2} from the command line.

Every command prints one JSON document on stdout (or writes it to --out).
Failures print {"error", "message"} and exit with 2 for rejected input,
3 for a mathematical precondition that does not hold and 1 for I/O trouble.
"""
import argparse
import logging
import sys

from lib import config
from lib.codec import decode_matrix, decode_vector, dumps, encode_array, encode_complex, parse_json
from lib.cr import Chart, expected_levi_det, levi_report, to_chart
from lib.errors import HyperQError, IOFailure, SchemaError
from lib.figures import emit_figure
from lib.hyperplanes import section_kind
from lib.lines import fibre_basepoint, line_from_unitary, line_sphere, recover_line, tangency_relation
from lib.projective import HyperplaneDual, ProjPoint, in_q22, project_quat, project_r5, q22_residual
from lib.quadrics import CircleKind, FamilyParams, classify_family, family_quadric, section_levi_type
from lib.continuation import sections_over_region
from lib.symmetries import classify_hyperplane
from lib.utils import print_error, setup_logging, start_spinner, stop_spinner

__version__ = "1.0.0"

_logger = logging.getLogger("lib.cli")


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that reports bad arguments as SchemaError instead of exiting."""

    def error(self, message):
        raise SchemaError(message)


# --- Parameter decoding ---

def _vector4(text, what):
    return decode_vector(parse_json(text, what), 4)


def _matrix2(text, what):
    return decode_matrix(parse_json(text, what), 2)


def _point(text, what="--point"):
    return ProjPoint(_vector4(text, what))


def _family(args):
    return FamilyParams(args.a, args.r)


def _encode_point(p, tol):
    return encode_array(p.canonical(tol))


# --- Commands ---

def cmd_classify_hyperplane(args, tol):
    hp = HyperplaneDual(_vector4(args.v, "--v"))
    cls, witness = classify_hyperplane(hp, tol)
    kind = section_kind(hp, tol)
    result = {
        "class": cls,
        "delta": kind.delta,
        "section": kind.kind,
        "witness": {"g": witness.g, "target": witness.target, "residuals": witness.residuals},
    }
    if kind.singular_point is not None:
        result["singular_point"] = _encode_point(kind.singular_point, tol)
    return result


def _circle_json(circle):
    if circle.kind is CircleKind.LINE:
        return {"kind": circle.kind, "re_equals": circle.re_equals}
    return {"kind": circle.kind, "center": encode_complex(circle.center), "radius": circle.radius}


def cmd_classify_quadric(args, tol):
    circle, rel = classify_family(_family(args), tol)
    return {
        "position": rel.position,
        "I": rel.inversive_distance,
        "circle": _circle_json(circle),
        "branch_points": [encode_complex(z) for z in rel.branch_points],
    }


def cmd_line_sphere(args, tol):
    line = line_from_unitary(_matrix2(args.matrix, "--matrix"), tol)
    sphere = line_sphere(line, tol)
    result = {
        "theta": line.theta,
        "U": line.U,
        "fibre": sphere.is_point,
        "sphere": {"center": sphere.center, "radius": sphere.radius},
    }
    if sphere.is_point:
        result["base_point"] = fibre_basepoint(line.U, tol)
    return result


def cmd_tangency(args, tol):
    first = line_from_unitary(_matrix2(args.A, "--A"), tol)
    second = line_from_unitary(_matrix2(args.B, "--B"), tol)
    return {"relation": tangency_relation(first, second, tol)}


def cmd_levi(args, tol):
    cp = to_chart(_point(args.point), args.chart, tol)
    report = levi_report(cp, tol)
    return {
        "chart": cp.chart,
        "coords": cp.coords,
        "frame": report.frame,
        "matrix": report.matrix,
        "det": report.det,
        "expected_det": expected_levi_det(cp),
        "signature": list(report.signature),
    }


def cmd_sections(args, tol):
    spinning = args.interactive and start_spinner("Tracking section branches...")
    try:
        report = sections_over_region(_family(args), grid=args.grid, loops=args.loops, seed=args.seed,
                                      workers=args.workers, strict=not args.report_monodromy, tol=tol)
    finally:
        if spinning:
            stop_spinner()
    return report.as_dict()


def cmd_section_levi(args, tol):
    levi = section_levi_type(family_quadric(_family(args)), _point(args.point), tol)
    return {"nondegenerate": levi.nondegenerate, "value": levi.value, "direction": levi.direction}


def cmd_project(args, tol):
    p = _point(args.point)
    s4 = project_r5(p)
    return {
        "quat": project_quat(p, tol),
        "r5": list(s4.x),
        "on_sigma": s4.on_sigma(tol),
        "in_q22": in_q22(p, tol),
        "h_residual": q22_residual(p),
    }


def cmd_recover_line(args, tol):
    raw = parse_json(args.points, "--points")
    if not isinstance(raw, list):
        raise SchemaError("--points: expected an array of 4-vectors")
    line = recover_line([ProjPoint(decode_vector(v, 4)) for v in raw], tol)
    return {"A": line.A, "theta": line.theta, "U": line.U}


COMMANDS = {
    "classify-hyperplane": cmd_classify_hyperplane,
    "classify-quadric": cmd_classify_quadric,
    "line-sphere": cmd_line_sphere,
    "tangency": cmd_tangency,
    "levi": cmd_levi,
    "sections": cmd_sections,
    "section-levi": cmd_section_levi,
    "project": cmd_project,
    "recover-line": cmd_recover_line,
}


def build_parser():
    parser = CommandParser(prog="hyperq", allow_abbrev=False,
                           description="Twistor geometry of the hyperquadric Q^{2,2}.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=0, help="Seed for every random choice (default 0).")
    parser.add_argument("--out", type=str, help="Write the result to this file instead of stdout.")
    parser.add_argument("--eq-abs", type=float, help="Override the equality tolerance.")
    parser.add_argument("--disc-zero", type=float, help="Override the discriminant-zero tolerance.")
    parser.add_argument("--containment", type=float, help="Override the circle containment tolerance.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging (-v, -vv).")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=CommandParser)
    sub.required = True

    p = sub.add_parser("classify-hyperplane", help="Orbit of a hyperplane under the j-compatible group.")
    p.add_argument("--v", required=True, help="Covector as a JSON array of 4 complex entries.")

    for name, text in (("classify-quadric", "Discriminant circle and position for Q_{a,r}."),
                       ("sections", "Label the section branches globally over Sigma."),
                       ("section-levi", "Levi type of the section structure at a point."),
                       ("figure", "Emit the discriminant figure as CSV or SVG.")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--a", type=float, required=True)
        p.add_argument("--r", type=float, required=True)

    sub.choices["sections"].add_argument("--grid", type=int, default=10_000, help="Number of base points.")
    sub.choices["sections"].add_argument("--loops", type=int, default=100, help="Random loops for monodromy.")
    sub.choices["sections"].add_argument("--workers", type=int, default=4, help="Worker threads.")
    sub.choices["sections"].add_argument("--report-monodromy", action="store_true",
                                         help="Report loop failures instead of failing.")
    sub.choices["section-levi"].add_argument("--point", required=True, help="Point as a JSON 4-vector.")
    sub.choices["figure"].add_argument("--format", choices=["csv", "svg"], default="csv", dest="fmt")

    p = sub.add_parser("line-sphere", help="Phase split and sphere of the line of a unitary matrix.")
    p.add_argument("--matrix", required=True, help="2x2 unitary as nested JSON rows.")

    p = sub.add_parser("tangency", help="Tangency relation between two non-fibre lines.")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)

    p = sub.add_parser("levi", help="Levi matrix of Q22 at a point.")
    p.add_argument("--point", required=True)
    p.add_argument("--chart", choices=[c.value for c in Chart], default=Chart.U0.value)

    p = sub.add_parser("project", help="Twistor projection of a point.")
    p.add_argument("--point", required=True)

    p = sub.add_parser("recover-line", help="Recover the unitary of a line from points on it.")
    p.add_argument("--points", required=True, help="JSON array of 4-vectors.")
    return parser


def _check_counts(args):
    for name in ("grid", "loops", "workers"):
        value = getattr(args, name, None)
        if value is not None and value < (1 if name != "loops" else 0):
            raise SchemaError(f"--{name} must be positive, got {value}")


def _write(path, text):
    try:
        with open(path, "w", newline="", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise IOFailure(f"cannot write {path}: {e}")


def dispatch(argv, environ=None, config_path=config.CONFIG_FILE, interactive=False):
    """Run one command; return (exit status, text for stdout)."""
    try:
        args = build_parser().parse_args(argv)
        args.interactive = interactive
        if interactive:
            setup_logging(args.verbose)
        _check_counts(args)
        tol = config.build_tolerance(args.eq_abs, args.disc_zero, args.containment,
                                     environ=environ, config_path=config_path)
        if args.command == "figure":
            text = emit_figure(_family(args), args.fmt, args.out, tol)
            return 0, "" if args.out else text
        _logger.debug("Running %s", args.command)
        text = dumps(COMMANDS[args.command](args, tol))
        if args.out:
            _write(args.out, text)
            return 0, ""
        return 0, text
    except HyperQError as e:
        return e.exit_code, dumps({"error": e.name, "message": str(e)})


def main():
    try:
        status, text = dispatch(sys.argv[1:], interactive=True)
    except KeyboardInterrupt:
        stop_spinner()
        sys.exit(130)
    if status:
        err = parse_json(text, "error")
        print_error(err["error"], err["message"])
    sys.stdout.write(text)
    sys.exit(status)


if __name__ == "__main__":
    main()
