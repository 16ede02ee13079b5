"""``negsssp`` command line: solve, gen, verify, bench, decomp-stats.

Exit codes: 0 tree / pass, 1 negative cycle / fail, 2 bad input or usage,
3 internal error.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import time

import numpy as np

from .certificate import NegCycleCertificate
from .decompose import crossings, decompose, random_short_paths
from .driver import RunBudget, SolveStats, initial_bound, scaled_weights, sssp
from .errors import InternalError, LoadError, NegSSSPError
from .generate import MODES, gen_random
from .graph import OpCounter
from .io import ResultRecord, emit_dimacs, parse_dimacs, verify_record
from .oracle import oracle_bellman_ford
from .scale import build_decomposition_tree

EXIT_TREE, EXIT_CYCLE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _default_seed() -> int:
    raw = os.environ.get("NEGSSSP_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise LoadError(f"NEGSSSP_SEED must be an integer, got {raw!r}") from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    return parse_dimacs(_read_text(path))


# ------------------------------------------------------------------ commands


def cmd_solve(args) -> int:
    g = _load(args.input)
    seed = _default_seed() if args.seed is None else args.seed
    if not 1 <= args.source <= g.n:
        raise LoadError(f"source {args.source} outside 1..{g.n}")
    stats = SolveStats()
    out = sssp(g, args.source - 1, seed=seed, stats=stats)
    timings = {k: round(v, 6) for k, v in stats.timings.items()} if args.timings else None
    rec = ResultRecord.from_outcome(g, out, seed, stats.ops, stats.total_attempts, timings)
    if args.oracle_check:
        ok, why = _oracle_agrees(g, args.source - 1, out)
        rec.extra["oracle"] = "agree" if ok else f"diverge: {why}"
        if not ok:
            sys.stdout.write(rec.to_json())
            raise InternalError(f"oracle disagrees: {why}")
    sys.stdout.write(rec.to_json())
    return EXIT_CYCLE if rec.kind == "cycle" else EXIT_TREE


def _oracle_agrees(g, source, out):
    ref = oracle_bellman_ford(g, source)
    if isinstance(out, NegCycleCertificate):
        # the solver also reports cycles the source cannot reach
        if isinstance(ref, NegCycleCertificate) or isinstance(oracle_bellman_ford(g), NegCycleCertificate):
            return True, ""
        return False, "solver found a cycle the oracle does not see"
    if isinstance(ref, NegCycleCertificate):
        return False, "oracle found a negative cycle"
    if not np.array_equal(ref.dist, out.dist):
        bad = int(np.flatnonzero(ref.dist != out.dist)[0])
        return False, f"distance to vertex {bad + 1} differs"
    return True, ""


def cmd_gen(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    g = gen_random(args.n, args.m, args.wmin, args.wmax, seed, args.mode, args.cycle_length)
    comment = (f"gen n={args.n} m={args.m} w=[{args.wmin},{args.wmax}] "
               f"seed={seed} mode={args.mode}")
    sys.stdout.write(emit_dimacs(g, comment))
    return 0


def cmd_verify(args) -> int:
    g = _load(args.input)
    rec = ResultRecord.from_json(_read_text(args.result))
    ok, why = verify_record(g, rec)
    print(f"{'pass' if ok else 'fail'}: {why}")
    return 0 if ok else 1


def cmd_bench(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    print(f"{'n':>7} {'m':>8} {'trials':>6} {'ops':>13} {'ops/m':>8} {'wall_s':>8} {'attempts':>8}")
    for n in args.sizes:
        m = int(args.density * n)
        ops, wall, tries = [], [], []
        for t in range(args.trials):
            g = gen_random(n, m, seed=seed * 1_000_003 + 1000 * n + t, mode=args.mode)
            stats = SolveStats()
            t0 = time.perf_counter()
            sssp(g, 0, seed=seed + t, stats=stats)
            wall.append(time.perf_counter() - t0)
            ops.append(stats.ops)
            tries.append(stats.total_attempts / max(1, stats.scale_calls))
        print(f"{n:>7} {m:>8} {args.trials:>6} {np.mean(ops):>13.0f} {np.mean(ops) / m:>8.1f} "
              f"{np.mean(wall):>8.3f} {np.mean(tries):>8.2f}")
    return 0


def cmd_decomp_stats(args) -> int:
    g = _load(args.input)
    seed = _default_seed() if args.seed is None else args.seed
    if args.d < 1:
        raise LoadError("--d must be positive")
    master = np.random.SeedSequence(seed)
    per_path, retries = [], []
    for child in master.spawn(args.trials):
        rng = np.random.default_rng(child)
        cut = decompose(g, args.d, rng)
        retries.append(cut.attempts)
        paths = random_short_paths(g, args.d, rng, args.paths)
        per_path += [crossings(p, cut.mask) for p in paths]
    arr = np.asarray(per_path, dtype=float)
    print(f"instance: n={g.n} m={g.m} d={args.d} trials={args.trials} paths/trial={args.paths}")
    print(f"cut crossings per path: mean={arr.mean():.3f} p50={np.percentile(arr, 50):.0f} "
          f"p90={np.percentile(arr, 90):.0f} p99={np.percentile(arr, 99):.0f} max={arr.max():.0f}")
    print(f"reference 8*ln(n) = {8 * math.log(max(g.n, 2)):.2f}")
    print(f"progress retries: mean={np.mean(retries):.3f} max={max(retries)}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(tree_dot(g, seed))
        print(f"decomposition tree written to {args.dot}")
    return 0


def tree_dot(g, seed: int = 0) -> str:
    """DOT text for the tree the first scaling round would build.

    Chains of single-vertex nodes are drawn as one node.
    """
    W = max(2, initial_bound(g))
    gprime = g.with_weights(scaled_weights(g) + W // 2)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    root = build_decomposition_tree(gprime, W, rng, counter=OpCounter())
    lines = ["digraph decomposition {", "  node [shape=box, fontsize=10];"]
    ids = {}
    stack = [root]
    while stack:
        node = stack.pop()
        k = ids.setdefault(id(node), len(ids))
        if node.singleton_chain:
            label = f"v{int(node.vertices[0]) + 1} chain d={node.d}"
            kids = []
        else:
            kind = "leaf" if node.is_leaf else f"|S|={node.cut.size}"
            label = f"|V|={node.size} d={node.d} {kind}"
            kids = node.children
        lines.append(f'  n{k} [label="{label}"];')
        for c in kids:
            lines.append(f"  n{k} -> n{ids.setdefault(id(c), len(ids))};")
            stack.append(c)
    lines.append("}")
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="negsssp", description="Negative-weight single-source shortest paths.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve a DIMACS instance")
    s.add_argument("--input", default="-", help="DIMACS file, '-' for stdin")
    s.add_argument("--source", type=int, default=1, help="1-based source vertex")
    s.add_argument("--seed", type=int, help="master seed (default $NEGSSSP_SEED or 0)")
    s.add_argument("--oracle-check", action="store_true", help="cross-check with Bellman-Ford")
    s.add_argument("--timings", action="store_true", help="include wall times in the record")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("gen", help="write a random instance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--wmin", type=int, default=-32)
    s.add_argument("--wmax", type=int, default=32)
    s.add_argument("--seed", type=int)
    s.add_argument("--mode", choices=MODES, default="any")
    s.add_argument("--cycle-length", type=int, default=3)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", help="check a result record against its instance")
    s.add_argument("--input", required=True)
    s.add_argument("--result", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bench", help="operation counts and wall times on random instances")
    s.add_argument("--sizes", type=int, nargs="+", default=[1024, 2048, 4096])
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--density", type=float, default=4.0)
    s.add_argument("--mode", choices=MODES, default="acyclic-negative-free")
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("decomp-stats", help="cut crossings of short paths after one decomposition")
    s.add_argument("--input", required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--paths", type=int, default=100)
    s.add_argument("--seed", type=int)
    s.add_argument("--dot", help="also write the decomposition tree as DOT")
    s.set_defaults(func=cmd_decomp_stats)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LoadError, ValueError) as exc:
        print(f"negsssp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NegSSSPError, RuntimeError) as exc:
        print(f"negsssp: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
