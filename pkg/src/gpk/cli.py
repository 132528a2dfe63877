"""Command-line front end: verify the criterion, build models, emit reports.

Every command produces one JSON report (stdout, or --out with atomic
replace).  Text renderings are tab-delimited tables derived from the JSON,
never the other way around, and --figure-dir adds PNG figures next to the
data.  Exit codes: 0 true/success, 1 false verdict, 2 usage error,
3 certification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time

from gpk.construct import ConstructError, certify_model, plane_model, quotient_plane_model
from gpk.criterion import check_outer_point, standard_instance, verify_tuple
from gpk.ffield import FieldError, build_field
from gpk.funcfield import FuncFieldError
from gpk.groups import GroupError
from gpk.projective import HermitianCurve, ProjPoint

SCHEMA_VERSION = 1

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_CERTIFICATION = 3


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# plumbing
# --------------------------------------------------------------------------

def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gpk-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit_report(report, args, text_renderer):
    payload = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        _write_atomic(args.out, payload)
    else:
        sys.stdout.write(payload)
    text = text_renderer(report)
    if args.text:
        _write_atomic(args.text, text)
    elif args.out:
        sys.stdout.write(text)


def _build_curve(args):
    p, e = args.p, args.e
    try:
        build_field(p, 1)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc
    if e < 1:
        raise UsageError("e must be at least 1")
    if 2 * e > 12:
        raise UsageError("q = p^e too large for the enumerable tower")
    return HermitianCurve(p, e)


def _check_m(curve, m, divisor_of):
    bound = curve.q ** 2 - 1 if divisor_of == "q^2-1" else curve.q + 1
    if m < 1 or bound % m != 0:
        raise UsageError(f"m={m} must divide {divisor_of} = {bound}")


def _figure_path(args, name):
    os.makedirs(args.figure_dir, exist_ok=True)
    stem = f"{args.command}_p{args.p}_e{args.e}"
    if getattr(args, "m", None) is not None:
        stem += f"_m{args.m}"
    return os.path.join(args.figure_dir, f"{stem}_{name}.png")


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_verify(args):
    curve = _build_curve(args)
    _check_m(curve, args.m, "q^2-1")
    started = time.perf_counter()
    inst = standard_instance(curve, args.m)
    rep = verify_tuple(
        curve,
        inst.trivial,
        inst.trivial,
        inst.h,
        inst.g1,
        inst.g2,
        inst.p1,
        inst.p2,
        inst.witnesses,
        structure=(inst.sylow1, inst.sylow2),
    )
    elapsed = time.perf_counter() - started
    report = rep.serialize()
    report["command"] = "verify"
    report["instance"] = {"p": args.p, "e": args.e, "m": args.m, "q": curve.q}
    report["groups"] = {
        "n1": inst.sylow1.serialize(args.dump_elements),
        "n2": inst.sylow2.serialize(args.dump_elements),
        "h": inst.h.serialize(args.dump_elements),
        "g1": inst.g1.serialize(args.dump_elements),
        "g2": inst.g2.serialize(args.dump_elements),
    }
    emit_report(report, args, _render_verify_text)
    print(f"verify: overall={report['overall']} ({elapsed:.2f}s)", file=sys.stderr)
    if args.figure_dir:
        from gpk import figures

        figures.conditions_figure(report, _figure_path(args, "conditions"))
        cond_d = report["conditions"]["d"]["evidence"]
        figures.divisor_figure(
            cond_d["lhs"], cond_d["rhs"], _figure_path(args, "divisors"),
            title="condition (d) orbit sums",
        )
    return EXIT_TRUE if report["overall"] else EXIT_FALSE


def _render_verify_text(report):
    lines = ["condition\tverdict"]
    for name, cond in sorted(report["conditions"].items()):
        lines.append(f"({name})\t{'pass' if cond['ok'] else 'fail'}")
    lines.append(f"overall\t{'pass' if report['overall'] else 'fail'}")
    if report.get("galois"):
        lines.append(f"degree\t{report['galois']['degree']}")
    return "\n".join(lines) + "\n"


def cmd_points(args):
    curve = _build_curve(args)
    pts = curve.rational_points()
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "points",
        "instance": {"p": args.p, "e": args.e, "q": curve.q},
        "field": curve.field.describe(),
        "count": len(pts),
        "points": [pt.serialize() for pt in pts],
    }
    emit_report(report, args, _render_points_text)
    if args.figure_dir:
        from gpk import figures

        figures.points_figure(report, _figure_path(args, "points"))
    return EXIT_TRUE


def _render_points_text(report):
    lines = ["X\tY\tZ"]
    for coords in report["points"]:
        lines.append("\t".join("".join(str(d) for d in c) for c in coords))
    return "\n".join(lines) + "\n"


def cmd_construct(args):
    curve = _build_curve(args)
    _check_m(curve, args.m, "q^2-1")
    started = time.perf_counter()
    model = plane_model(curve, args.m, sampling_level=args.sampling_level)
    cert = certify_model(model)
    elapsed = time.perf_counter() - started
    report = model.serialize()
    report["schema_version"] = SCHEMA_VERSION
    report["command"] = "construct"
    report["certificate"] = cert.serialize()
    emit_report(report, args, _render_model_text)
    print(f"construct: degree={report['degree']} certified={cert.valid} ({elapsed:.2f}s)",
          file=sys.stderr)
    if args.figure_dir:
        from gpk import figures

        figures.model_support_figure(report, _figure_path(args, "support"))
    return EXIT_TRUE if cert.valid else EXIT_CERTIFICATION


def _render_model_text(report):
    lines = ["U\tV\tW\tcoefficient"]
    for i, j, k, coeffs in report["monomials"]:
        lines.append(f"{i}\t{j}\t{k}\t{''.join(str(d) for d in coeffs)}")
    lines.append(f"degree\t{report['degree']}")
    lines.append(f"polynomial\t{report['rendered']}")
    return "\n".join(lines) + "\n"


def cmd_quotient(args):
    curve = _build_curve(args)
    _check_m(curve, args.m, "q+1")
    qm = quotient_plane_model(curve, args.m)
    report = qm.serialize()
    report["schema_version"] = SCHEMA_VERSION
    report["command"] = "quotient"
    report["instance"] = {"p": args.p, "e": args.e, "m": args.m, "q": curve.q}
    emit_report(report, args, _render_quotient_text)
    if args.figure_dir:
        from gpk import figures

        figures.quotient_figure(report, _figure_path(args, "solutions"))
    return EXIT_TRUE


def _render_quotient_text(report):
    lines = ["key\tvalue", f"relation\t{report['relation']}",
             f"q\t{report['q']}", f"m\t{report['m']}", f"s\t{report['s']}"]
    for key, val in sorted(report["checks"].items()):
        lines.append(f"check:{key}\t{val}")
    return "\n".join(lines) + "\n"


def _parse_point(curve, spec):
    parts = spec.split(",")
    if len(parts) != 3:
        raise UsageError("--point expects three comma-separated digit strings")
    coords = []
    for part in parts:
        digits = part.strip()
        if not digits.isdigit() or len(digits) != curve.field.n:
            raise UsageError(
                f"each coordinate needs exactly {curve.field.n} decimal digits"
            )
        coords.append(curve.field.from_coeffs([int(d) for d in digits]).v)
    if all(v == 0 for v in coords):
        raise UsageError("(0:0:0) is not a projective point")
    return ProjPoint(curve.field, coords)


def cmd_outer(args):
    curve = _build_curve(args)
    _check_m(curve, args.m, "q^2-1")
    if not args.point:
        raise UsageError("outer requires --point X,Y,Z")
    point = _parse_point(curve, args.point)
    if not curve.on_curve(point):
        raise UsageError("the outer point does not lie on the curve")
    inst = standard_instance(curve, args.m)
    res = check_outer_point(curve, inst.g1, inst.g2, point)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "outer",
        "instance": {"p": args.p, "e": args.e, "m": args.m, "q": curve.q},
        "point": point.serialize(),
        "verdict": res.ok,
        "evidence": res.evidence,
    }
    emit_report(report, args, _render_outer_text)
    if args.figure_dir:
        from gpk import figures

        figures.divisor_figure(
            report["evidence"]["lhs"], report["evidence"]["rhs"],
            _figure_path(args, "divisors"), title="outer-point orbit sums",
        )
    return EXIT_TRUE if res.ok else EXIT_FALSE


def _render_outer_text(report):
    lines = [
        "key\tvalue",
        f"point\t{report['point']}",
        f"verdict\t{'pass' if report['verdict'] else 'fail'}",
        f"lhs_degree\t{report['evidence']['lhs_degree']}",
        f"rhs_degree\t{report['evidence']['rhs_degree']}",
    ]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="gpk",
        description="Exact checker and constructor for shared Galois closures "
                    "of plane projections of the Hermitian curve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, needs_m=True):
        sp.add_argument("--p", type=int, required=True, help="prime characteristic")
        sp.add_argument("--e", type=int, required=True, help="exponent: q = p^e")
        if needs_m:
            sp.add_argument("--m", type=int, required=True, help="torus order")
        sp.add_argument("--out", help="write the JSON report here (atomic)")
        sp.add_argument("--text", help="write the delimited text rendering here")
        sp.add_argument("--figure-dir", help="render PNG figures into this directory")

    sp = sub.add_parser("verify", help="run the five-condition criterion")
    common(sp)
    sp.add_argument("--dump-elements", action="store_true",
                    help="include full group element dumps in the report")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="build and certify the plane model")
    common(sp)
    sp.add_argument("--sampling-level", type=int, default=None,
                    help="tower level override for interpolation sampling")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("quotient", help="quotient plane model x^q + x = u^s")
    common(sp)
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("outer", help="outer-point orbit-sum comparison")
    common(sp)
    sp.add_argument("--point", help="curve point as X,Y,Z coefficient digit strings")
    sp.set_defaults(func=cmd_outer)

    sp = sub.add_parser("points", help="enumerate the rational points")
    common(sp, needs_m=False)
    sp.set_defaults(func=cmd_points)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gpk: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConstructError, FuncFieldError, GroupError, FieldError) as exc:
        print(f"gpk: certification failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION


if __name__ == "__main__":
    sys.exit(main())
