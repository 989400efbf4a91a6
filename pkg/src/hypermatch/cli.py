"""Command-line front end.

Every command is batch-style and deterministic: identical inputs and flags
produce byte-identical output.  Randomized pieces (edge-order shuffling, the
typed generator) draw from a single numpy/random stream named by --seed.
Exit codes: 0 success, 2 input error, 3 requested guarantee not met.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from .branching import (
    local_convergence_rate,
    parse_branching,
    parse_typed_hypergraph,
    format_typed_hypergraph,
    generate_typed,
    reversibility,
    validate_branching,
)
from .counting import (
    NoGuaranteeError,
    approx_log_partition,
    approx_partition,
    classify_regime,
    hardness_threshold,
)
from .decay import (
    contraction_ratio,
    critical_activity,
    fixed_point,
    truncated_marginal,
    two_periodic_points,
)
from .hypergraph import (
    dualize,
    exact_partition,
    format_hypergraph,
    gadget_reduce,
    parse_hypergraph,
    parse_pinning,
    validate_and_stats,
    validate_pinning,
)
from .sawtree import (
    EdgeOrdering,
    ExpansionLimitError,
    build_saw_tree,
    dump_saw_tree,
    saw_marginal_exact,
)

_REGIME_SHORT = {
    "FPTAS": "FPTAS",
    "CriticalPTAS": "Critical",
    "Gap": "Gap",
    "Hard": "Hard",
}


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return f"{float(x):.12g}"


def _json_num(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_input(args):
    H = parse_hypergraph(_read(args.input))
    pin = None
    if getattr(args, "pin", None):
        pin = parse_pinning(_read(args.pin))
        validate_pinning(H, pin)
    return H, pin


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _cmd_exact(args) -> int:
    H, pin = _load_input(args)
    lam = Fraction(args.lam) if args.lam is not None else Fraction(1)
    res = exact_partition(H, activities=lam, pinning=pin)
    if args.json:
        _emit_json({
            "Z": _fmt(res.Z),
            "Z_float": float(res.Z),
            "marginals": [float(x) for x in res.marginals],
        })
    else:
        print(f"Z = {_fmt(res.Z)}")
    return 0


def _cmd_count(args) -> int:
    H, _ = _load_input(args)
    lam = float(args.lam) if args.lam is not None else 1.0
    fn = approx_log_partition if args.log else approx_partition
    res = fn(
        H, activities=lam, eps=args.eps,
        vertex_order=args.order, max_depth=args.depth,
    )
    stats = validate_and_stats(H)
    d_eff = max(1, stats.d)
    k_eff = max(1, stats.k)
    if args.log:
        log_estimate = res.estimate
    else:
        log_estimate = (res.lower + res.upper) / 2.0
    if args.json:
        _emit_json({
            "estimate": res.estimate,
            "log_estimate": log_estimate,
            "eps": res.eps,
            "depth_max": res.depth_used,
            "regime": res.regime.value,
            "d": d_eff,
            "k": k_eff,
            "lambda_c": _json_num(critical_activity(d_eff, k_eff)),
        })
    else:
        print(f"estimate = {_fmt(res.estimate)}")
        print(f"log_estimate = {_fmt(log_estimate)}")
        print(f"certified_error = {_fmt(res.certified_error)}")
        print(f"eps = {_fmt(res.eps)}")
        print(f"depth_max = {res.depth_used}")
        print(f"regime = {res.regime.value}")
        print(f"d = {d_eff}")
        print(f"k = {k_eff}")
        print(f"lambda_c = {_fmt(critical_activity(d_eff, k_eff))}")
        if not res.guaranteed:
            print("note: no a-priori guarantee in this regime; "
                  "the certified error above is still rigorous")
    return 0 if res.ok else 3


def _cmd_marginal(args) -> int:
    H, pin = _load_input(args)
    lam = float(args.lam) if args.lam is not None else 1.0
    vertices = [args.vertex] if args.vertex is not None else list(range(H.n))
    for v in vertices:
        if not 0 <= v < H.n:
            raise ValueError(f"vertex {v} out of range for n={H.n}")
    ordering = None
    if args.seed is not None:
        ordering = EdgeOrdering.shuffled(H, args.seed)
    rows = []
    for v in vertices:
        if args.depth is None:
            p = saw_marginal_exact(H, v, pinning=pin, activities=lam, ordering=ordering)
            rows.append((v, p, p))
        else:
            iv = truncated_marginal(
                H, v, pinning=pin, activities=lam, depth=args.depth,
                ordering=ordering,
            )
            lo, hi = iv.probability_bounds()
            rows.append((v, lo, hi))
    if args.json:
        _emit_json({
            "depth": args.depth,
            "marginals": [
                {"vertex": v, "lo": lo, "hi": hi} for (v, lo, hi) in rows
            ],
        })
    else:
        for v, lo, hi in rows:
            if lo == hi:
                print(f"p[{v}] = {_fmt(lo)}")
            else:
                print(f"p[{v}] in [{_fmt(lo)}, {_fmt(hi)}]")
    return 0


def _cmd_saw(args) -> int:
    H, pin = _load_input(args)
    ordering = None
    if args.seed is not None:
        ordering = EdgeOrdering.shuffled(H, args.seed)
    root = build_saw_tree(
        H, args.vertex, ordering=ordering, pinning=pin, depth_limit=args.depth
    )
    sys.stdout.write(dump_saw_tree(root))
    return 0


def _cmd_threshold(args) -> int:
    d, k = args.d, args.k
    lam_c = critical_activity(d, k)
    obj = {
        "d": d,
        "k": k,
        "lambda_c": _json_num(lam_c),
        "hard_threshold": _json_num(hardness_threshold(d, k)),
    }
    lines = [f"lambda_c = {_fmt(lam_c)}",
             f"hard_threshold = {_fmt(hardness_threshold(d, k))}"]
    if args.lam is not None:
        lam = float(args.lam)
        x = fixed_point(d, k, lam)
        ratio = contraction_ratio(d, k, lam)
        regime = classify_regime(d, k, lam)
        pts = two_periodic_points(d, k, lam)
        obj.update({
            "lambda": lam,
            "fixed_point": x,
            "contraction_ratio": ratio,
            "regime": regime.value,
            "two_periodic_points": list(pts),
        })
        lines += [
            f"lambda = {_fmt(lam)}",
            f"fixed_point = {_fmt(x)}",
            f"contraction_ratio = {_fmt(ratio)}",
            f"regime = {regime.value}",
            "two_periodic_points = " + " ".join(_fmt(p) for p in pts),
        ]
    if args.json:
        _emit_json(obj)
    else:
        print("\n".join(lines))
    return 0


def _cmd_regimes(args) -> int:
    lam = float(args.lam) if args.lam is not None else 1.0
    dmax, kmax = args.dmax, args.kmax
    if dmax < 1 or kmax < 1:
        raise ValueError("dmax and kmax must be at least 1")
    grid = [
        [classify_regime(d, k, lam).value for k in range(1, kmax + 1)]
        for d in range(1, dmax + 1)
    ]
    if args.json:
        _emit_json({"lambda": lam, "dmax": dmax, "kmax": kmax, "grid": grid})
        return 0
    width = max(8, max(len(_REGIME_SHORT[c]) for row in grid for c in row) + 1)
    header = "d\\k".ljust(6) + "".join(str(k).ljust(width) for k in range(1, kmax + 1))
    print(header)
    for d, row in enumerate(grid, start=1):
        cells = "".join(_REGIME_SHORT[c].ljust(width) for c in row)
        print(str(d).ljust(6) + cells)
    return 0


def _cmd_gadget(args) -> int:
    G = parse_hypergraph(_read(args.input))
    H, copies = gadget_reduce(G, args.k)
    sys.stdout.write(f"# gadget output: k = {args.k}, copies per vertex = {copies}\n")
    sys.stdout.write(
        f"# partition identity: Z_out(lam) = Z_in({copies}*lam) for every lam\n"
    )
    sys.stdout.write(format_hypergraph(H))
    return 0


def _cmd_dualize(args) -> int:
    H = parse_hypergraph(_read(args.input))
    sys.stdout.write(format_hypergraph(dualize(H)))
    return 0


def _cmd_branching_check(args) -> int:
    B = parse_branching(_read(args.matrices))
    report = validate_branching(B)
    if report is not None:
        if args.json:
            _emit_json({"valid": False, "violation": report})
        else:
            print(f"invalid: {report}")
        return 2
    rev = reversibility(B)
    if args.json:
        obj = {"valid": True, "reversible": rev.reversible}
        if rev.reversible:
            obj["p"] = [_fmt(x) for x in rev.p]
            obj["q"] = [_fmt(x) for x in rev.q]
        else:
            obj["witness"] = rev.witness
        _emit_json(obj)
    else:
        print("valid")
        if rev.reversible:
            print("reversible: yes")
            print("p = " + " ".join(_fmt(x) for x in rev.p))
            print("q = " + " ".join(_fmt(x) for x in rev.q))
        else:
            print("reversible: no")
            print(f"witness: {rev.witness}")
    return 0


def _cmd_branching_gen(args) -> int:
    B = parse_branching(_read(args.matrices))
    H = generate_typed(B, args.n, seed=args.seed if args.seed is not None else 0)
    sys.stdout.write(format_typed_hypergraph(H))
    return 0


def _cmd_branching_verify(args) -> int:
    B = parse_branching(_read(args.matrices))
    H = parse_typed_hypergraph(_read(args.input))
    fractions = local_convergence_rate(
        H, B, radius=args.radius, samples=args.samples,
        seed=args.seed if args.seed is not None else 0,
    )
    if args.json:
        _emit_json({
            "radius": args.radius,
            "samples": args.samples,
            "fractions": {str(t): f for t, f in sorted(fractions.items())},
        })
    else:
        for t in sorted(fractions):
            print(f"type {t}: tree fraction = {_fmt(fractions[t])}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="hypermatch",
        description="Deterministic counting of weighted hypergraph "
        "matchings and independent sets",
    )
    sub = top.add_subparsers(dest="cmd")

    def common(p, *, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="hypergraph file")
        p.add_argument("--threads", type=int, default=1,
                       help="accepted for compatibility; evaluation is "
                       "sequential and output never depends on it")
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("exact", help="exact partition function by enumeration")
    common(p)
    p.add_argument("--pin", help="pinning file")
    p.add_argument("--lambda", dest="lam", help="uniform activity (exact rational)")
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("count", help="certified approximate partition function")
    common(p)
    p.add_argument("--lambda", dest="lam", type=float, help="uniform activity")
    p.add_argument("--eps", type=float, required=True, help="target relative error")
    p.add_argument("--log", action="store_true", help="estimate log Z instead of Z")
    p.add_argument("--order", choices=["input", "mindeg"], default="input",
                   help="vertex elimination order")
    p.add_argument("--depth", type=int, help="override the depth cap")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("marginal", help="occupation marginals (exact or certified interval)")
    common(p)
    p.add_argument("--pin", help="pinning file")
    p.add_argument("--lambda", dest="lam", type=float, help="uniform activity")
    p.add_argument("--vertex", type=int, help="single vertex (default: all)")
    p.add_argument("--depth", type=int,
                   help="truncation depth; omit for exact full expansion")
    p.add_argument("--seed", type=int,
                   help="shuffle incident-edge orderings with this seed")
    p.set_defaults(func=_cmd_marginal)

    p = sub.add_parser("saw", help="dump the walk tree of a vertex")
    common(p)
    p.add_argument("--pin", help="pinning file")
    p.add_argument("--vertex", type=int, default=0, help="root vertex")
    p.add_argument("--depth", type=int, help="expansion depth limit")
    p.add_argument("--seed", type=int,
                   help="shuffle incident-edge orderings with this seed")
    p.set_defaults(func=_cmd_saw)

    p = sub.add_parser("threshold", help="critical activity and fixed-point data")
    common(p, needs_input=False)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", help="activity to analyze")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("regimes", help="tractability grid over (d, k)")
    common(p, needs_input=False)
    p.add_argument("--lambda", dest="lam", required=True, help="activity")
    p.add_argument("--dmax", type=int, default=8)
    p.add_argument("--kmax", type=int, default=8)
    p.set_defaults(func=_cmd_regimes)

    p = sub.add_parser("gadget", help="blow a graph up into the k-uniform instance "
                       "with the scaled-activity partition identity")
    common(p)
    p.add_argument("--k", type=int, required=True, help="edge-size parameter")
    p.set_defaults(func=_cmd_gadget)

    p = sub.add_parser("dualize", help="swap vertices and hyperedges")
    common(p)
    p.set_defaults(func=_cmd_dualize)

    p = sub.add_parser("branching-check", help="validate matrices and decide reversibility")
    common(p, needs_input=False)
    p.add_argument("--matrices", required=True, help="branching-matrix file")
    p.set_defaults(func=_cmd_branching_check)

    p = sub.add_parser("branching-gen", help="sample the typed configuration model")
    common(p, needs_input=False)
    p.add_argument("--matrices", required=True, help="branching-matrix file")
    p.add_argument("--n", type=int, required=True, help="target size parameter")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_branching_gen)

    p = sub.add_parser("branching-verify",
                       help="measure tree-neighborhood fractions of a typed hypergraph")
    common(p)
    p.add_argument("--matrices", required=True, help="branching-matrix file")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_branching_verify)
    return top


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    if getattr(args, "cmd", None) is None:
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except NoGuaranteeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ExpansionLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    entry()
