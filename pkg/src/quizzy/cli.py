"""Command-line interface: ``quizzy <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import classical as C
from . import intertwiners as I
from . import partitions as P
from . import reports as R
from . import symbolic as S
from .errors import (BudgetExceededError, CacheCorruptionError, ExperimentalCategoryError,
                     SingularMatrixError)
from .linalg import span_intersection_dim

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_CACHE = 4
EXIT_VALIDATION = 5


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_output(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_const", dest="fmt", const="json",
                   help="one JSON object per line")
    g.add_argument("--csv", action="store_const", dest="fmt", const="csv", help="CSV with header")
    p.set_defaults(fmt="table")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--experimental", action="store_true",
                        help="allow the balanced categories P2star and Pevenstar")
    common.add_argument("--max-index-space", type=int, default=I.DEFAULT_MAX_INDEX_SPACE,
                        help="largest N^m tensor index space (default 10^8)")
    common.add_argument("--max-group-order", type=int, default=R.DEFAULT_MAX_GROUP_ORDER,
                        help="largest classical group enumerated (default 10^5)")
    common.add_argument("--no-cache", action="store_true", help="bypass the result cache")
    _add_output(common)

    ap = argparse.ArgumentParser(prog="quizzy", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partitions", parents=[common], help="enumerate a category of partitions")
    p.add_argument("--category", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--list", action="store_true", help="print every partition")

    p = sub.add_parser("fixdim", parents=[common], help="dim Fix(u^⊗k) for a category")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--category")
    src.add_argument("--group")
    p.add_argument("--twisted", action="store_true")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=_int_list, required=True)
    p.add_argument("--stability", action="store_true", help="also report N-1 and N+1")

    p = sub.add_parser("orbitals", parents=[common], help="k-orbital counts")
    p.add_argument("kind", choices=["classical", "quantum", "dual"])
    p.add_argument("--group", default="hyperoctahedral")
    p.add_argument("--N", type=int)
    p.add_argument("--k", type=_int_list, required=True)
    p.add_argument("--space", default=None,
                   help="segments | cube | points | fundamental (default depends on the group)")
    p.add_argument("--method", default=None,
                   help="quantum: constrained-rank | weingarten; dual: loop-count | classes")
    p.add_argument("--orders", type=_int_list, help="dual: cyclic orders, e.g. 2,3")
    p.add_argument("--mode", choices=["direct", "free"], default="direct")

    p = sub.add_parser("twist", parents=[common], help="Möbius expansion of a twisted vector")
    p.add_argument("--partition", required=True, help='e.g. "{1,3}{2,4}" or "1212"')
    p.add_argument("--N", type=int, default=2)

    p = sub.add_parser("span-intersect", parents=[common],
                       help="dim of span(twisted P2) ∩ span(NCeven) on k legs")
    p.add_argument("--N", type=int, default=5)
    p.add_argument("--k", type=int, default=4)

    p = sub.add_parser("magic-unitary", parents=[common], help="symbolic magic unitary of Obar_N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--full", action="store_true", help="sum over every b, not only supp(j)")

    p = sub.add_parser("character", parents=[common], help="symbolic characters")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--form", choices=["raw", "grouped", "final", "trace"], default="final")
    p.add_argument("--antisym", type=int, default=None, metavar="R",
                   help="signed character of the R-th antisymmetric representation of O_N")
    p.add_argument("--at", default=None,
                   help="evaluate at a matrix given as rows, e.g. '1,0;0,-1'")

    p = sub.add_parser("weingarten", parents=[common], help="exact Haar integral of a monomial")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--category")
    src.add_argument("--group")
    p.add_argument("--twisted", action="store_true")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--rows", type=_int_list, required=True)
    p.add_argument("--cols", type=_int_list, required=True)

    p = sub.add_parser("level", parents=[common], help="level of a liberation inner ⊂ outer")
    p.add_argument("--inner", required=True)
    p.add_argument("--outer", required=True)
    p.add_argument("--N", type=int, default=5)
    p.add_argument("--cap", type=int, default=6)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("suite", choices=sorted(R.SUITES))

    p = sub.add_parser("explore-conjecture", parents=[common],
                       help="H_N vs Obar_N analytic k-orbitals on the cube (exploratory)")
    p.add_argument("--N", type=_int_list, default=[1, 2, 3])
    p.add_argument("--k", type=_int_list, default=[1, 2, 3])
    return ap


def _budgets(args) -> R.Budgets:
    return R.Budgets(args.max_index_space, args.max_group_order, args.experimental)


def _cache(args):
    return None if args.no_cache else R.ResultCache()


def _print_json(obj):
    print(json.dumps(obj, sort_keys=True, ensure_ascii=False))


def cmd_partitions(args):
    parts = P.enumerate_category(args.category, args.m, args.experimental)
    if args.fmt == "json":
        _print_json({"category": args.category, "m": args.m, "count": len(parts),
                     "partitions": [str(p) for p in parts] if args.list else None})
        return EXIT_OK
    print(f"|{args.category}({args.m})| = {len(parts)}")
    if args.list:
        for p in parts:
            print(f"  {p}")
    return EXIT_OK


def cmd_fixdim(args):
    if args.group:
        spec = I.QuizzySpec.for_group(args.group, args.N, args.experimental)
    else:
        spec = I.QuizzySpec(args.category, args.twisted, args.N, args.experimental)
    reports = []
    for k in args.k:
        params = {"category": spec.category, "twisted": spec.twisted, "N": args.N, "k": k,
                  "method": "gram-rank"}
        rep = R.compute("fixdim", params, _budgets(args), _cache(args))
        if args.stability:
            for n in (args.N - 1, args.N + 1):
                if n >= 1:
                    rep.extra[f"N={n}"] = I.fix_dim(spec.at(n), k, args.max_index_space)
        reports.append(rep)
    print(R.emit(reports, args.fmt))
    return EXIT_OK


def cmd_orbitals(args):
    reports = []
    if args.kind == "dual":
        if not args.orders:
            raise ValueError("dual orbitals need --orders")
        method = args.method or "loop-count"
        for k in args.k:
            params = {"orders": args.orders, "mode": args.mode, "k": k, "method": method,
                      "N": sum(args.orders)}
            reports.append(R.compute("orbitals-dual", params, _budgets(args), _cache(args)))
    else:
        if args.N is None:
            raise ValueError("--N is required")
        group = I.ALIASES.get(args.group, args.group)
        if args.kind == "classical":
            space = args.space or ("points" if group == "S_N" else "segments")
            for k in args.k:
                params = {"group": group, "N": args.N, "k": k, "space": space,
                          "method": "burnside"}
                reports.append(R.compute("orbitals-classical", params, _budgets(args), _cache(args)))
        else:
            group = I.group_name(args.group)
            default_space = {"H_N": "segments", "H_N+": "segments", "Obar_N": "cube"}
            space = args.space or default_space.get(group, "fundamental")
            method = args.method or "constrained-rank"
            if method not in ("constrained-rank", "weingarten"):
                raise ValueError("quantum orbitals use constrained-rank or weingarten")
            for k in args.k:
                params = {"group": group, "N": args.N, "k": k, "space": space, "method": method}
                reports.append(R.compute("orbitals-quantum", params, _budgets(args), _cache(args)))
    print(R.emit(reports, args.fmt))
    return EXIT_OK


def cmd_twist(args):
    pi = P.parse_partition(args.partition)
    coeffs = I.mobius_twist_coefficients(pi)
    lhs = I.twist_via_mobius(pi, args.N)
    rhs = I.xi_twisted(pi, args.N)
    terms = sorted(coeffs.items(), key=lambda t: str(t[0]))
    if args.fmt == "json":
        _print_json({"partition": str(pi), "N": args.N, "signature": P.signature(pi),
                     "expansion": {str(s): c for s, c in terms}, "matches_direct": lhs == rhs})
    else:
        print(f"twisted T{pi} = " + " ".join(f"{c:+d}·T{s}" for s, c in terms))
        print(f"signature {P.signature(pi):+d}; equals direct sign formula at N={args.N}: {lhs == rhs}")
    return EXIT_OK if lhs == rhs else EXIT_CHECK_FAILED


def cmd_span_intersect(args):
    I.check_budget(args.N, args.k, args.max_index_space)
    bar = [I.xi_twisted(pi, args.N) for pi in P.enumerate_category("P2", args.k)]
    plain = [I.xi_vector(pi, args.N) for pi in P.enumerate_category("NCeven", args.k)]
    d = span_intersection_dim(bar, plain)
    out = {"N": args.N, "k": args.k, "dim": d, "NC2": len(P.enumerate_category("NC2", args.k))}
    if args.experimental:
        star = [I.xi_vector(pi, args.N)
                for pi in P.enumerate_category("Pevenstar", args.k, experimental=True)]
        out["dim_balanced_experimental"] = span_intersection_dim(bar, star)
    if args.fmt == "json":
        _print_json(out)
    else:
        print(f"dim span(twisted P2({args.k})) ∩ span(NCeven({args.k})) at N={args.N}: {d}"
              f"  (|NC2({args.k})| = {out['NC2']})")
        if "dim_balanced_experimental" in out:
            print(f"experimental, with Peven*({args.k}): {out['dim_balanced_experimental']}")
    return EXIT_OK


def cmd_magic_unitary(args):
    w = S.magic_unitary(args.N, full=args.full)
    pts = S.binary_vectors(args.N)
    if args.fmt == "json":
        _print_json({"N": args.N, "rows": [["".join(map(str, i)) for i in pts]],
                     "entries": [[str(x) for x in row] for row in w]})
        return EXIT_OK
    for i, row in zip(pts, w):
        for k, x in zip(pts, row):
            print(f"w[{''.join(map(str, i))},{''.join(map(str, k))}] = {x}")
    return EXIT_OK


def _parse_matrix(text: str) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row.split(",")] for row in text.split(";")]


def cmd_character(args):
    if args.antisym is not None:
        polys = {f"antisym_{args.antisym}": S.antisym_character(args.N, args.antisym)}
    else:
        chi = S.magic_character(args.N, args.form)
        if isinstance(chi, list):
            polys = {f"chi_{r}": p for r, p in enumerate(chi)}
            polys["chi"] = S.nc_sum(chi)
        else:
            polys = {"chi": chi}
    g = _parse_matrix(args.at) if args.at else None
    if args.fmt == "json":
        out = {name: str(p) for name, p in polys.items()}
        if g is not None:
            out["values"] = {name: R.exact_string(S.evaluate(p, g)) for name, p in polys.items()}
        _print_json(out)
        return EXIT_OK
    for name, p in polys.items():
        line = f"{name} = {p}"
        if g is not None:
            line += f"   [at g: {R.exact_string(S.evaluate(p, g))}]"
        print(line)
    return EXIT_OK


def cmd_weingarten(args):
    if args.group:
        spec = I.QuizzySpec.for_group(args.group, args.N, args.experimental)
    else:
        spec = I.QuizzySpec(args.category, args.twisted, args.N, args.experimental)
    t0 = time.perf_counter()
    v = I.weingarten_integrate(spec, args.rows, args.cols)
    rep = R.OrbitalReport("weingarten", spec.category + ("~" if spec.twisted else ""), args.N,
                          len(args.rows), "weingarten", v, (time.perf_counter() - t0) * 1000)
    print(R.emit([rep], args.fmt))
    return EXIT_OK


def cmd_level(args):
    inner = I.QuizzySpec.for_group(args.inner, args.N, args.experimental)
    outer = I.QuizzySpec.for_group(args.outer, args.N, args.experimental)
    rep = I.liberation_level(inner, outer, args.cap, args.max_index_space)
    out = {"inner": I.group_name(args.inner), "outer": I.group_name(args.outer), "N": args.N,
           "level": rep.level, "inner_dims": rep.inner_dims, "outer_dims": rep.outer_dims}
    if args.fmt == "json":
        _print_json(out)
    else:
        lvl = rep.level if rep.level is not None else f"none up to {rep.cap}"
        print(f"level of {out['inner']} ⊂ {out['outer']} at N={args.N}: {lvl}")
        print(f"  dims {out['inner']}: {rep.inner_dims}")
        print(f"  dims {out['outer']}: {rep.outer_dims}")
    return EXIT_OK


def cmd_verify(args):
    res = R.verify(args.suite, args.experimental)
    if args.fmt == "json":
        _print_json(res.to_dict())
    else:
        print(res.render())
    return EXIT_OK if res.passed else EXIT_CHECK_FAILED


def cmd_explore(args):
    rows = []
    for N in args.N:
        for k in args.k:
            rows.append(R.explore_cube_orbitals(N, k, _budgets(args)))
    if args.fmt == "json":
        for r in rows:
            _print_json(r)
        return EXIT_OK
    print("exploratory: no pass/fail")
    for r in rows:
        same = "equal" if r["H_N burnside"] == r["Obar_N"] else "differ"
        print(f"N={r['N']} k={r['k']}: H_N {r['H_N burnside']} "
              f"(exterior words {r['H_N exterior words']}), Obar_N {r['Obar_N']}  [{same}]")
    return EXIT_OK


COMMANDS = {
    "partitions": cmd_partitions, "fixdim": cmd_fixdim, "orbitals": cmd_orbitals,
    "twist": cmd_twist, "span-intersect": cmd_span_intersect,
    "magic-unitary": cmd_magic_unitary, "character": cmd_character,
    "weingarten": cmd_weingarten, "level": cmd_level, "verify": cmd_verify,
    "explore-conjecture": cmd_explore,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CacheCorruptionError as exc:
        print(f"cache corruption: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except (ValueError, ExperimentalCategoryError, SingularMatrixError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
