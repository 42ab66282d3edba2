"""Command-line front end.

Exit codes: 0 success, 1 computation error, 2 input error.  Output depends
only on the arguments and input files.
"""

from __future__ import annotations

import argparse
import sys

from . import jsonio
from .arith import d_kappa_detail, hilbert_symbol, parse_place, quaternion_is_split_Q, relevant_places
from .arith import tate_h_minus_1
from .errors import InputError, ParseError, ShaGraphError, UnknownExample
from .graph import cycle_rank, is_monotonic_tree, is_tree
from .groups import FiniteGroup, trivial, trivial_hom
from .orbits import DEFAULT_MAX_STATES
from .sha import nonmono_model, sha_exact_rational, sha_lower_bound, triangle_model, verdict

EXAMPLES = ("triangle", "nonmono")


def _positive(s):
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _int_list(s):
    s = s.strip()
    if not s:
        return []
    try:
        return [int(x) for x in s.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def _read_json(path):
    if path == "-":
        return jsonio.load_text(sys.stdin.read(), "<stdin>")
    return jsonio.load_file(path)


# --- output ----------------------------------------------------------------


def _table_lines(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            key = f"{prefix}{k}"
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                yield from _table_lines(v, key + ".")
            else:
                yield f"{key}: {_scalar(v)}"
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _table_lines(v, f"{prefix}{i}.") if isinstance(v, (dict, list)) else [f"{prefix}{i}: {_scalar(v)}"]


def _flat_list(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def emit(obj, fmt):
    if fmt == "json":
        print(jsonio.dumps(obj))
    else:
        for line in _table_lines(obj):
            print(line)


# --- commands ----------------------------------------------------------------


def cmd_graph_check(args):
    g = jsonio.graph_from_json(_read_json(args.file))
    connected = g.is_connected
    out = {"connected": connected, "bipartite": True, "vertices": len(g.vertices), "edges": len(g.edges)}
    if connected:
        mono, root = is_monotonic_tree(g)
        out.update({"cycleRank": cycle_rank(g), "isTree": is_tree(g), "isMonotonicTree": mono,
                    "root": root if mono else None})
    return out


def _sha_report(m, exact, max_states):
    space = sha_exact_rational(m, max_states) if exact else sha_lower_bound(m, max_states)
    out = {"mode": "exact" if exact else "lower-bound", "verdict": verdict(m, space, exact)}
    out.update(space.to_json())
    return out


def cmd_sha(args):
    m = jsonio.model_from_json(_read_json(args.file))
    return _sha_report(m, args.exact, args.max_states)


def cmd_dk(args):
    res = d_kappa_detail(args.kappa, args.a, args.b)
    return {"kappa": args.kappa, "a": args.a, "b": args.b, "d": res.d, "torusGroup": res.torus_group,
            "places": [{"place": str(p), "count": n} for p, n in res.places]}


def cmd_tate(args):
    mod = jsonio.module_from_json(_read_json(args.file))
    return {"orders": mod.orders, "groupOrder": mod.group.order,
            "invariantFactors": tate_h_minus_1(mod, args.max_states)}


def cmd_hilbert(args):
    if args.a == 0 or args.b == 0:
        raise InputError("Hilbert symbols need nonzero integers", witness=(args.a, args.b))
    if args.place is not None:
        try:
            place = parse_place(args.place)
        except ValueError:
            raise ParseError(f"bad place {args.place!r}", witness=args.place) from None
        places = [place]
    else:
        places = relevant_places(args.a, args.b)
    return {"a": args.a, "b": args.b,
            "symbols": {str(v): hilbert_symbol(args.a, args.b, v) for v in places},
            "split": quaternion_is_split_Q(args.a, args.b)}


def _example_group(ref):
    return jsonio.group_from_ref(ref)


def cmd_examples(args):
    if args.name not in EXAMPLES:
        raise UnknownExample(f"unknown example {args.name!r} (known: {', '.join(EXAMPLES)})", witness=args.name)
    grp = _example_group(args.group)
    if args.name == "triangle":
        m = triangle_model(grp)
        report = _sha_report(m, True, args.max_states)
    else:
        k = trivial()
        m = nonmono_model(k, grp, trivial_hom(k, grp))
        report = _sha_report(m, False, args.max_states)
    return {"example": args.name, "group": args.group, "model": jsonio.model_to_json(m), "sha": report}


def _raw_group(ref):
    """Load a group file without validating it, so selftest can report the defect."""
    obj = jsonio.load_file(ref[5:]) if ref.startswith("file:") else ref
    if isinstance(obj, str):
        return jsonio.group_from_ref(obj)
    table = jsonio._get(obj, "table", ref, list)
    try:
        return FiniteGroup(table, name=ref)
    except (ValueError, TypeError):
        raise ParseError(f"{ref}: table is not a square integer array", witness=f"{ref}.table") from None


def cmd_selftest(args):
    from . import selftest

    extra = [_raw_group(r) for r in args.group or ()]
    passed = []
    selftest.run(extra, seed=args.seed, report=passed.append)
    return {"passed": passed, "status": "ok"}


# --- entry point ----------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-states", type=_positive, default=DEFAULT_MAX_STATES,
                        help="bound on enumerated states (default 10^7)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    p = argparse.ArgumentParser(prog="shagraph", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("graph-check", parents=[common], help="structure of a graph or model file")
    s.add_argument("file")
    s.set_defaults(func=cmd_graph_check)

    s = sub.add_parser("sha", parents=[common], help="double coset classes of a model file")
    s.add_argument("file")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="require all fields rational and compute exactly")
    mode.add_argument("--lower-bound", action="store_true", help="double coset quotient (default)")
    s.set_defaults(func=cmd_sha)

    s = sub.add_parser("dk", parents=[common], help="places of kappa with a unique place of L")
    s.add_argument("--kappa", type=_int_list, default=[], help='comma-separated generators, "" for Q')
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.set_defaults(func=cmd_dk)

    s = sub.add_parser("tate", parents=[common], help="Tate H^-1 of a finite module file")
    s.add_argument("file")
    s.set_defaults(func=cmd_tate)

    s = sub.add_parser("hilbert", parents=[common], help="Hilbert symbols over Q")
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    s.add_argument("--place", help="a prime or inf (default: every place that can contribute)")
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("examples", parents=[common], help="built-in example models")
    s.add_argument("name")
    s.add_argument("--group", default="z2", help="z2, z3, z4, s3, q8, ... or file:PATH")
    s.set_defaults(func=cmd_examples)

    s = sub.add_parser("selftest", parents=[common], help="run the oracle-equivalence checks")
    s.add_argument("--group", action="append", help="extra group (name or file:PATH) to validate")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except ShaGraphError as exc:
        code = 2 if isinstance(exc, InputError) else 1
        if args.format == "json":
            print(jsonio.dumps(jsonio.error_json(exc)), file=sys.stderr)
        else:
            print(f"error: {type(exc).__name__}: {exc} (witness: {exc.witness!r})", file=sys.stderr)
        return code
    emit(out, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
