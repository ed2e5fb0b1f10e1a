"""Command-line interface.

Exit codes: 0 success, 2 malformed input, 3 a mathematical precondition
failed, 4 the answer is undetermined at the cutoff.
"""

from __future__ import annotations

import argparse
import json
import sys

from .deformation import DEFAULT_ORDER_CUTOFF, classify_defo_ring, lift_probe
from .errors import AlgebraError, InvalidModule, NotMonomial, ParseError
from .exactlin import field_from_spec
from .homology import (Verdict, default_cutoff, ext1, is_cohen_macaulay, is_gorenstein,
                       is_gorenstein_projective, stable_hom)
from .jsonio import load_json, parse_algebra, parse_bimodule, parse_module, path_json
from .monomial import gproj_indecomposables, overlaps, perfect_cycles, perfect_paths
from .repmod import projective
from .transport import transport_check

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_UNDETERMINED = 0, 2, 3, 4


class Undetermined(Exception):
    """Carries a finished report whose verdict is undetermined at the cutoff."""

    def __init__(self, report):
        self.report = report


# -- input ---------------------------------------------------------------------

def _field(args):
    try:
        return field_from_spec(args.field)
    except AlgebraError as exc:
        raise ParseError("--field", str(exc)) from None


def _algebra(args):
    F = _field(args)
    if args.algebra:
        name, A = parse_algebra(load_json(args.algebra), F, where=args.algebra)
        return name or "custom", A
    return parse_algebra(args.fixture, F, where="--fixture")


def _module(args, name, A, required=True):
    if args.gen and args.module:
        raise ParseError("--gen/--module", "give at most one of --gen and --module")
    if args.gen:
        names = [s.strip() for s in args.gen.split(",") if s.strip()]
        return parse_module({"generator": names}, A, name, where="--gen")
    if args.module:
        if args.module.endswith(".json"):
            obj = load_json(args.module)
            where = args.module
        else:
            obj, where = args.module, "--module"
        return parse_module(obj, A, name, where=where)
    if required:
        raise ParseError("--gen/--module", "a module is required")
    return None


def _provenance(args, A, cutoff):
    return {"field": A.field.name, "seed": args.seed, "cutoff_used": cutoff}


def _cutoff(args, A):
    return args.cutoff if args.cutoff is not None else default_cutoff(A)


# -- commands --------------------------------------------------------------------

def cmd_algebra_info(args):
    name, A = _algebra(args)
    cutoff = _cutoff(args, A)
    g = is_gorenstein(A, cutoff)
    report = {
        "command": "algebra info",
        "algebra": name,
        "dim": A.dim,
        "basis": [p.label() for p in A.basis],
        "is_monomial": A.is_monomial,
        "loewy_bound": A.bound,
        "gorenstein": {"verdict": g.verdict.value, "left_injdim": g.left, "right_injdim": g.right},
        **_provenance(args, A, cutoff),
    }
    if g.verdict is not Verdict.TRUE:
        raise Undetermined(report)
    return report


def _module_block(M, cutoff, seed, route=None):
    gp = is_gorenstein_projective(M, cutoff, route=route, seed=seed)
    return {
        "dims": dict(M.dims),
        "ext1": ext1(M, M),
        "stable_end_dim": stable_hom(M, M).dim if not M.is_zero() else 0,
        "cm": is_cohen_macaulay(M, cutoff).value,
        "gproj": gp.to_json(),
    }


def cmd_gproj_classify(args):
    name, A = _algebra(args)
    cutoff = _cutoff(args, A)
    M = _module(args, name, A, required=False)
    report = {"command": "gproj classify", "algebra": name, **_provenance(args, A, cutoff)}
    undetermined = False
    if M is not None:
        block = _module_block(M, cutoff, args.seed, args.route)
        report["module"] = block
        report["route"] = block["gproj"]["route"]
        undetermined = block["gproj"]["verdict"] == Verdict.UNKNOWN.value
    if A.is_monomial:
        ov = overlaps(A)
        strict = [o for o in ov if o.kind == "O1" or o.strict]
        report.update({
            "perfect_paths": [path_json(p) for p in perfect_paths(A)],
            "perfect_cycles": [[path_json(p) for p in c] for c in perfect_cycles(A)],
            "overlaps": [_overlap_json(o) for o in ov],
            "overlap_readings_differ": len(strict) != len(ov),
            "gproj_nonprojective": [
                {"generator": path_json(e.generator), "dims": dict(e.module.dims),
                 "syzygy_generator": path_json(e.syzygy_generator)}
                for e in gproj_indecomposables(A, args.seed)],
            "indecomposable_projectives": [{"vertex": v, "dims": dict(projective(A, v).dims)} for v in A.vertices],
        })
        report.setdefault("route", "monomial")
    elif M is None:
        raise NotMonomial("classification without --module needs a monomial algebra")
    if undetermined:
        raise Undetermined(report)
    return report


def _overlap_json(o):
    return {"kind": o.kind, "p": path_json(o.p), "q": path_json(o.q), "x": path_json(o.x),
            "p_rest": path_json(o.p_rest), "q_rest": path_json(o.q_rest), "strict": o.strict}


def cmd_defo_ring(args):
    name, A = _algebra(args)
    cutoff = _cutoff(args, A)
    M = _module(args, name, A)
    order = args.order if args.order is not None else DEFAULT_ORDER_CUTOFF
    r = classify_defo_ring(M, order, route=args.route, seed=args.seed, homological_cutoff=cutoff)
    report = {"command": "defo ring", "algebra": name, "dims": dict(M.dims), "order_cutoff": order,
              **r.to_json(), **_provenance(args, A, cutoff)}
    if r.ring.kind == "undetermined":
        raise Undetermined(report)
    return report


def cmd_lift_probe(args):
    name, A = _algebra(args)
    M = _module(args, name, A)
    order = args.order if args.order is not None else DEFAULT_ORDER_CUTOFF
    T, steps = lift_probe(M, order, args.seed)
    return {
        "command": "lift probe", "algebra": name, "dims": dict(M.dims), "order": order,
        "tangent_dim": T.quotient_dim,
        "ladder": [{"class": s.class_index, "obstruction_order": s.obstruction_order,
                    "extends_to_order": order if s.obstruction_order is None else s.obstruction_order - 1}
                   for s in steps],
        **_provenance(args, A, None),
    }


def cmd_transport(args):
    F = _field(args)
    if args.bimodule in (None, "regular"):
        X, name = parse_bimodule({"regular": args.fixture}, F, where="--fixture")
    else:
        X, name = parse_bimodule(load_json(args.bimodule), F, where=args.bimodule)
    A = X.right
    M = _module(args, name, A)
    cutoff = args.cutoff
    order = args.order if args.order is not None else DEFAULT_ORDER_CUTOFF
    rep = transport_check(X, M, cutoff, seed=args.seed, order_cutoff=order)
    return {"command": "transport", **rep.to_json(), "order_cutoff": order,
            "field": F.name, "seed": args.seed, "cutoff_used": cutoff if cutoff is not None else default_cutoff(A)}


# -- plumbing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q or Fp:<p>")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cutoff", type=int, default=None, help="homological cutoff (default dim + 2)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", default="json")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    src = common.add_mutually_exclusive_group()
    src.add_argument("--fixture", default="lambda", help="built-in algebra name")
    src.add_argument("--algebra", help="algebra JSON file")
    common.add_argument("--gen", help="generator path, comma separated, written order (b,a is ba)")
    common.add_argument("--module", help="module JSON file or built-in module name")
    common.add_argument("--route", default=None)
    common.add_argument("--order", type=int, default=None, help="lifting order cutoff")

    parser = argparse.ArgumentParser(prog="gpdefo", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def add(group, sub, fn, extra=None):
        g = groups.choices.get(group) or groups.add_parser(group)
        if not hasattr(g, "_subs"):
            g._subs = g.add_subparsers(dest="sub", required=True)
        p = g._subs.add_parser(sub, parents=[common])
        p.set_defaults(func=fn)
        if extra:
            extra(p)
        return p

    add("algebra", "info", cmd_algebra_info)
    add("gproj", "classify", cmd_gproj_classify)
    add("defo", "ring", cmd_defo_ring)
    add("lift", "probe", cmd_lift_probe)
    t = groups.add_parser("transport", parents=[common])
    t.add_argument("--bimodule", default=None, help="bimodule JSON file, or 'regular' (default)")
    t.set_defaults(func=cmd_transport)
    return parser


def _text(report, indent=0) -> str:
    lines = []
    pad = "  " * indent
    for k in sorted(report):
        v = report[k]
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


def render(report, fmt) -> str:
    if fmt == "text":
        return _text(report)
    return json.dumps(report, sort_keys=True, indent=2)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
        code = EXIT_OK
    except Undetermined as u:
        report, code = u.report, EXIT_UNDETERMINED
    except (ParseError, InvalidModule) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AlgebraError as exc:
        cond = getattr(exc, "condition", None)
        report = {"error": type(exc).__name__, "message": str(exc)}
        if cond:
            report["condition"] = cond
        print(render(report, args.format))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    print(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
