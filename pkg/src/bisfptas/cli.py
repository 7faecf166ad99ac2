"""Command line interface: ``bisfptas <command> ...``.

Exit codes: 0 success, 1 usage, 2 unreadable or malformed input,
3 guard violation (degree, size or node budget), 4 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import time

from . import decay, exact, fptas, io
from .errors import (DegreeTooLarge, InvalidEpsilon, InvalidParams, NodeBudgetExceeded,
                     ParseError, TooLarge)
from .graph import BipartiteGraph, left, max_degrees, orient
from .report import dumps, make_report

EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_VERIFY = 4

HEURISTIC_LABEL = "heuristic depth, no a priori epsilon guarantee"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str) -> BipartiteGraph:
    try:
        return io.read_graph(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _graph_info(path: str, g: BipartiteGraph) -> dict:
    du, dv = max_degrees(g)
    return {"path": path, "sha256": io.digest(g), "n": g.n, "m": g.m,
            "edges": g.edge_count, "max_degree_left": du, "max_degree_right": dv}


def _emit(report: dict, out_path: str | None) -> None:
    text = dumps(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


# ---------------------------------------------------------------- commands

def cmd_exact(args, argv):
    t0 = time.perf_counter()
    g = _load(args.file)
    z = exact.exact_count(g, cap=args.cap)
    result = {"Z": str(z), "ln_Z": math.log(z), "cap": args.cap}
    _emit(make_report("exact", argv, result, _graph_info(args.file, g),
                      wall_time=time.perf_counter() - t0), args.report)
    return 0


def cmd_count(args, argv):
    t0 = time.perf_counter()
    g = _load(args.file)
    if args.epsilon is not None:
        og, _ = orient(g)
        if og.n:
            L = fptas.depth_for_epsilon(og.n, args.epsilon)
            predicted = og.n * fptas.node_envelope(L)
            print(f"depth L = {L}; worst-case node estimate {predicted:.3g}", file=sys.stderr)
        lc = fptas.count_with_epsilon(g, args.epsilon, unsafe=args.unsafe,
                                      max_nodes=args.max_nodes, threads=args.threads)
        mode = "epsilon"
    else:
        lc = fptas.count_with_depth(g, args.depth, unsafe=args.unsafe, threads=args.threads)
        mode = "depth"
    result = {
        "ln_Z": lc.ln_Z,
        "log10_Z": lc.ln_Z / math.log(10),
        "depth": lc.depth_used,
        "depth_mode": mode,
        "epsilon": args.epsilon,
        "guarantee": (f"(1 +- {args.epsilon}) relative" if mode == "epsilon" and not args.unsafe
                      else HEURISTIC_LABEL),
        "swapped": lc.swapped,
        "n_ratios": lc.n_ratios,
        "unsafe": args.unsafe,
        "nodes": {"internal": lc.stats.internal, "base": lc.stats.base,
                  "trivial": lc.stats.trivial},
        "node_envelope_per_root": fptas.node_envelope(lc.depth_used),
    }
    _emit(make_report("count", argv, result, _graph_info(args.file, g),
                      wall_time=time.perf_counter() - t0), args.report)
    return 0


def compare_graph(g: BipartiteGraph, L: int, cap: int = exact.DEFAULT_CAP,
                  unsafe: bool = False) -> dict:
    """Run the estimate and the exact oracle side by side on the oriented graph."""
    if not unsafe:
        fptas.check_degree_guard(g)
    og, swapped = orient(g)
    z = exact.exact_count(og, cap=cap)
    lc = fptas.estimate_log_count(og, L, swapped=swapped)
    ln_z = math.log(z)
    rel = math.expm1(lc.ln_Z - ln_z)
    max_phi = max_abs = 0.0
    in_range = True
    for i, r_hat in enumerate(lc.ratios):
        view = fptas.prefix_view(og, i)
        u = left(i)
        r = exact.exact_ratio(view, u, cap=cap)
        lo, hi = fptas.ratio_bounds(view, u)
        in_range &= lo <= r_hat <= hi
        max_phi = max(max_phi, abs(decay.phi(r_hat) - decay.phi(float(r))))
        max_abs = max(max_abs, abs(r_hat - float(r)))
    phi_bound = fptas.PHI_ERROR_CONSTANT * decay.ALPHA ** L
    ratio_bound = fptas.ERROR_CONSTANT * decay.ALPHA ** L
    return {
        "Z": str(z), "ln_Z_exact": ln_z, "ln_Z_estimate": lc.ln_Z,
        "relative_error": abs(rel), "depth": L, "swapped": swapped,
        "max_phi_error": max_phi, "phi_error_bound": phi_bound,
        "max_ratio_error": max_abs, "ratio_error_bound": ratio_bound,
        "within_bounds": max_phi <= phi_bound and max_abs <= ratio_bound,
        "ratios_in_range": in_range, "n_ratios": lc.n_ratios,
    }


def cmd_compare(args, argv):
    t0 = time.perf_counter()
    g = _load(args.file)
    result = compare_graph(g, args.depth, cap=args.cap, unsafe=args.unsafe)
    _emit(make_report("compare", argv, result, _graph_info(args.file, g),
                      wall_time=time.perf_counter() - t0), args.report)
    return 0


def cmd_verify_decay(args, argv):
    t0 = time.perf_counter()
    params = decay.DecayParams(alpha=args.alpha, M=args.M)
    reports = decay.verify_claims(params, samples=args.samples, seed=args.seed,
                                  raise_on_failure=False)
    for r in reports:
        print(r.row())
    ok = decay.all_passed(reports)
    print(f"{'ALL PASS' if ok else 'FAILED'}: {sum(r.bound_satisfied for r in reports)}"
          f"/{len(reports)} checks (alpha={params.alpha}, M={params.M})")
    if args.report:
        rows = [{"check": r.check, "case": list(r.case_id) if r.case_id else None,
                 "s_star": r.s_star, "max_value": r.max_value, "bound": r.bound,
                 "bound_satisfied": r.bound_satisfied, "grid_points": r.grid_points,
                 "detail": r.detail} for r in reports]
        rep = make_report("verify-decay", argv,
                          {"alpha": params.alpha, "M": params.M, "samples": args.samples,
                           "all_passed": ok, "checks": rows},
                          seed=args.seed, wall_time=time.perf_counter() - t0)
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(dumps(rep))
    return 0 if ok else EXIT_VERIFY


BENCH_SUITES = ("error-depth", "time-size")


def bench_rows(suite: str, seed: int = 0, quick: bool = False):
    if suite == "error-depth":
        header = ["suite", "graph", "style", "n", "m", "depth", "ln_Z_exact", "ln_Z_estimate",
                  "relative_error", "max_phi_error", "phi_error_bound", "seconds"]
        rows = []
        count = 4 if quick else 10
        depths = range(0, 7 if quick else 13)
        for k in range(count):
            style = "heavy" if k % 2 else "bounded"
            g = io.gen_random(10, 10, 5, style, k=None, seed=seed + k)
            for L in depths:
                t0 = time.perf_counter()
                res = compare_graph(g, L)
                rows.append([suite, k, style, g.n, g.m, L, res["ln_Z_exact"], res["ln_Z_estimate"],
                             res["relative_error"], res["max_phi_error"], res["phi_error_bound"],
                             time.perf_counter() - t0])
        return header, rows
    if suite == "time-size":
        header = ["suite", "n", "m", "depth", "ln_Z_estimate", "internal_nodes", "seconds"]
        rows = []
        sizes = (25, 50, 100) if quick else (50, 100, 200, 400, 800)
        for n in sizes:
            g = io.gen_random(n, n, 5, "bounded", k=None, seed=seed)
            t0 = time.perf_counter()
            lc = fptas.count_with_depth(g, 4)
            rows.append([suite, n, n, 4, lc.ln_Z, lc.stats.internal, time.perf_counter() - t0])
        return header, rows
    raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(BENCH_SUITES)}")


def cmd_bench(args, argv):
    header, rows = bench_rows(args.suite, args.seed, args.quick)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format(x, ".17g") if isinstance(x, float) else x for x in row])
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    return 0


def cmd_gen(args, argv):
    fam = args.family
    if fam == "complete":
        g = io.gen_complete(args.a, args.b)
        note = f"complete a={args.a} b={args.b}"
    elif fam == "path":
        g = io.gen_path(args.k)
        note = f"path k={args.k}"
    elif fam == "cycle":
        g = io.gen_cycle(args.length)
        note = f"cycle length={args.length}"
    else:
        g = io.gen_random(args.n, args.m, args.delta, args.style, k=args.k, seed=args.seed)
        note = (f"random n={args.n} m={args.m} delta={args.delta} style={args.style} "
                f"k={args.k} seed={args.seed}")
    io.write_graph(g, args.out, comments=[f"generated by bisfptas gen {note}"])
    print(f"wrote {g!r} to {args.out}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bisfptas", description="Count independent sets of bipartite graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("exact", help="exact count by enumeration over the smaller side")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=exact.DEFAULT_CAP)
    s.add_argument("--report", help="also write the JSON report here")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("count", help="approximate ln Z with the depth-bounded recursion")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--epsilon", type=float)
    g.add_argument("--depth", type=int)
    s.add_argument("--unsafe", action="store_true", help="skip the max-degree guard")
    s.add_argument("--max-nodes", type=float, default=1e9,
                   help="abort --epsilon runs predicted to exceed this many nodes")
    s.add_argument("--threads", type=int, help="worker processes (default: $BIS_THREADS or 1)")
    s.add_argument("--report")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("compare", help="estimate against the exact oracle")
    s.add_argument("file")
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--cap", type=int, default=exact.DEFAULT_CAP)
    s.add_argument("--unsafe", action="store_true")
    s.add_argument("--report")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("verify-decay", help="numerically check the decay-rate analysis")
    s.add_argument("--alpha", type=float, default=decay.ALPHA)
    s.add_argument("--M", type=int, default=decay.M)
    s.add_argument("--samples", type=int, default=10**6)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report")
    s.set_defaults(func=cmd_verify_decay)

    s = sub.add_parser("bench", help="error-vs-depth or time-vs-size table as CSV")
    s.add_argument("--suite", required=True, choices=BENCH_SUITES)
    s.add_argument("--out", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--quick", action="store_true")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("gen", help="write a generated graph file")
    s.add_argument("family", choices=("complete", "path", "cycle", "random"))
    s.add_argument("--a", type=int, default=3)
    s.add_argument("--b", type=int, default=3)
    s.add_argument("--k", type=int, default=None,
                   help="path length, or right-degree cap for random bounded graphs")
    s.add_argument("--length", type=int, default=6)
    s.add_argument("--n", type=int, default=10)
    s.add_argument("--m", type=int, default=10)
    s.add_argument("--delta", type=int, default=5)
    s.add_argument("--style", choices=("bounded", "heavy"), default="bounded")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and args.family == "path" and args.k is None:
        args.k = 6
    try:
        return args.func(args, argv)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DegreeTooLarge, TooLarge, NodeBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InvalidEpsilon, InvalidParams, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
