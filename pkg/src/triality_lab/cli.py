"""Command-line front end: ``triality-lab``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import charclasses as cc
from . import checks, lie, octonions, roots, singularity
from .checks import FAIL, to_text
from .errors import SingularFiber, TrialityLabError, UnknownSelector
from .scalars import parse_scalar

EXIT_OK, EXIT_FAIL, EXIT_SELECTOR, EXIT_INTERNAL = 0, 1, 2, 3


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(to_text(obj), indent=2, sort_keys=False) + "\n")
    elif isinstance(obj, str):
        out.write(obj + "\n")
    elif isinstance(obj, dict):
        for k, v in to_text(obj).items():
            out.write(f"{k}: {v if not isinstance(v, (dict, list)) else json.dumps(v)}\n")
    else:
        out.write(json.dumps(to_text(obj)) + "\n")


def cmd_run(args, out) -> int:
    if args.list:
        for cid in checks.check_ids():
            out.write(cid + "\n")
        return EXIT_OK
    reports = checks.run_checks(args.selector)
    if args.format == "json":
        out.write(json.dumps([r.to_json() for r in reports], indent=2) + "\n")
    else:
        for r in reports:
            out.write(r.text() + "\n")
    return EXIT_FAIL if any(r.status == FAIL for r in reports) else EXIT_OK


def cmd_lie_verify(args, out) -> int:
    report = checks.check_lie_compact() if args.form == lie.COMPACT else checks.check_lie_split()
    _emit(report.to_json(), args.format, out)
    return EXIT_FAIL if report.status == FAIL else EXIT_OK


def cmd_octonion_table(args, out) -> int:
    t = octonions.table_for(args.form, flip_e4=args.flip_e4)
    if args.format == "json":
        _emit([[t.format_vector(v) for v in row] for row in t.c], "json", out)
    else:
        out.write(t.text() + "\n")
    return EXIT_OK


def cmd_roots_orbits(args, out) -> int:
    dec = roots.orbits_in_table_order()
    data = {
        "fixed": [roots.root_label(r) for r in dec.fixed],
        "orbits": [[roots.root_label(r) for r in o] for o in dec.free],
    }
    if args.format == "json":
        _emit(data, "json", out)
    else:
        out.write("fixed: " + " ".join(data["fixed"]) + "\n")
        for o in data["orbits"]:
            out.write("orbit: " + " -> ".join(o) + "\n")
    return EXIT_OK


def cmd_charclass_images(args, out) -> int:
    images = cc.generator_images()
    data = {f"phi({g})": images[g] for g in cc.GEN_VARS}
    if args.format == "json":
        _emit(data, "json", out)
    else:
        for k, v in data.items():
            out.write(f"{k} = {v}\n")
    return EXIT_OK


def cmd_charclass_fixed(args, out) -> int:
    iso = cc.isotypic_decomposition(args.degree, args.field)
    data = {
        "degree": args.degree,
        "field": args.field,
        "basis": [str(cc._monomial(m)) for m in iso.monomials],
        "trace": iso.trace(),
        "fixed": [str(p) for p in iso.fixed_classes()],
        "nontrivial": [str(p) for p in iso.nontrivial_classes()],
    }
    if args.field == "F3" and args.degree >= 8 and args.degree % 4 == 0:
        data["euler_span_has_invariant_complement"] = not cc.f3_complement_check(args.degree)
    _emit(data, args.format, out)
    return EXIT_OK


def cmd_sing_morsify(args, out) -> int:
    pts = singularity.morsification_data(parse_scalar(args.a))
    data = [
        {"label": p.label, "x": p.x, "y": p.y, "value": p.value, "hessian_det": p.hessian_det, "type": p.morse_type}
        for p in pts
    ]
    if args.format == "json":
        _emit(data, "json", out)
    else:
        for row in to_text(data):
            out.write(" ".join(f"{k}={v}" for k, v in row.items()) + "\n")
    return EXIT_OK


def cmd_sing_milnor(args, out) -> int:
    r = singularity.n_lines_quotient_genus(args.n)
    _emit({"n": r.n, "milnor": r.milnor, "genus": r.genus, "punctures": r.punctures}, args.format, out)
    return EXIT_OK


def cmd_sing_quotient_form(args, out) -> int:
    q = singularity.quotient_intersection_form(singularity.d4_form())
    _emit({"labels": list(q.labels), "form": q.matrix, "cartan": singularity.cartan_matrix(q)}, args.format, out)
    return EXIT_OK


def cmd_sing_bifurcation(args, out) -> int:
    bif = singularity.bifurcation()
    data = {
        "raw": bif.raw,
        "squarefree_invariant": bif.squarefree_invariant,
        "invariant_core": bif.core,
    }
    if args.eval:
        a, b, c = (parse_scalar(t) for t in args.eval.split(","))
        data["value"] = bif.evaluate(a, b, c)
    _emit(data, args.format, out)
    return EXIT_OK


def cmd_sing_cubic(args, out) -> int:
    r = singularity.quotient_cubic_invariants(Fraction(parse_scalar(args.a)), Fraction(parse_scalar(args.d)), strict=False)
    data = {"c4": r.c4, "c6": r.c6, "discriminant": r.discriminant, "j": r.j, "singular": r.singular}
    _emit(data, args.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default="text")

    p = argparse.ArgumentParser(prog="triality-lab", description="Exact verification of triality computations.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[fmt], help="run registered checks matching a glob")
    run.add_argument("selector", nargs="?", default="*")
    run.add_argument("--list", action="store_true", help="list check ids and exit")
    run.set_defaults(func=cmd_run)

    lp = sub.add_parser("lie").add_subparsers(dest="lie_cmd", required=True)
    v = lp.add_parser("verify", parents=[fmt])
    v.add_argument("--form", choices=lie.FORMS, default=lie.COMPACT)
    v.set_defaults(func=cmd_lie_verify)

    op = sub.add_parser("octonion").add_subparsers(dest="oct_cmd", required=True)
    t = op.add_parser("table", parents=[fmt])
    t.add_argument("--form", choices=(octonions.EUCLID, octonions.SPLIT), default=octonions.EUCLID)
    t.add_argument("--flip-e4", action="store_true")
    t.set_defaults(func=cmd_octonion_table)

    rp = sub.add_parser("roots").add_subparsers(dest="roots_cmd", required=True)
    rp.add_parser("orbits", parents=[fmt]).set_defaults(func=cmd_roots_orbits)

    cp = sub.add_parser("charclass").add_subparsers(dest="cc_cmd", required=True)
    cp.add_parser("theorem1", parents=[fmt]).set_defaults(func=cmd_charclass_images)
    fx = cp.add_parser("fixed", parents=[fmt])
    fx.add_argument("--degree", type=int, required=True)
    fx.add_argument("--field", choices=("Q", "F3"), default="Q")
    fx.set_defaults(func=cmd_charclass_fixed)

    sp = sub.add_parser("sing").add_subparsers(dest="sing_cmd", required=True)
    m = sp.add_parser("morsify", parents=[fmt])
    m.add_argument("--a", default="1")
    m.set_defaults(func=cmd_sing_morsify)
    mi = sp.add_parser("milnor", parents=[fmt])
    mi.add_argument("--n", type=int, default=3)
    mi.set_defaults(func=cmd_sing_milnor)
    sp.add_parser("quotient-form", parents=[fmt]).set_defaults(func=cmd_sing_quotient_form)
    bf = sp.add_parser("bifurcation", parents=[fmt])
    bf.add_argument("--eval", help="a,b,c")
    bf.set_defaults(func=cmd_sing_bifurcation)
    cu = sp.add_parser("cubic", parents=[fmt])
    cu.add_argument("--a", required=True)
    cu.add_argument("--d", required=True)
    cu.set_defaults(func=cmd_sing_cubic)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UnknownSelector as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SELECTOR
    except (TrialityLabError, ValueError, ArithmeticError) as exc:
        if isinstance(exc, SingularFiber):
            sys.stderr.write(f"singular fiber: discriminant {exc.discriminant}\n")
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - any crash must not look like success
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
