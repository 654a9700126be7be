"""
Command-line harness: input generation, sorting runs, greedy supersets,
transformations, oracle verification, benchmarks, and the brute-force
optimum.

Exit codes: 0 success, 1 verification mismatch (or runtime failure),
2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Sequence

from . import formats, geometry, perms, replay, sorting, starpath, transform
from .heap import STRATEGY_NAMES, sort_mode_run
from .perms import SplitMix64


def _write(text: str, path: str | None, append: bool = False) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "a" if append else "w", encoding="ascii") as fh:
            fh.write(text)


def _read(path: str) -> str:
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _load_permutation(args) -> tuple[int, ...]:
    if getattr(args, "perm", None) is not None:
        return perms.check_permutation(formats.parse_permutation(args.perm))
    if getattr(args, "infile", None) is not None:
        return perms.check_permutation(formats.parse_permutation(_read(args.infile)))
    if getattr(args, "gen", None) is not None:
        return _generate(args.gen.split())
    raise SystemExit(2)


def _generate(spec: Sequence[str]) -> tuple[int, ...]:
    kind = spec[0]
    if kind == "random":
        return perms.gen_random(int(spec[1]), int(spec[2]))
    if kind == "identity":
        return perms.identity(int(spec[1]))
    if kind == "reverse":
        return perms.decreasing(int(spec[1]))
    if kind == "tilted":
        return perms.gen_tilted_grid(int(spec[1]))
    raise SystemExit(2)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    spec = [args.kind] + [str(v) for v in args.params]
    X = _generate(spec)
    _write(formats.dump_permutation(X), args.out)
    return 0


def cmd_sort(args) -> int:
    X = _load_permutation(args)
    report = sorting.sort_with(X, args.strategy, seed=args.seed)
    text = report.csv_row() + "\n"
    if args.header:
        text = sorting.CSV_HEADER + "\n" + text
    _write(text, args.out, append=args.out is not None and not args.header)
    return 0


def cmd_greedy(args) -> int:
    if args.points is not None:
        P = formats.parse_point_set(_read(args.points))
    else:
        P = perms.point_set_of(_load_permutation(args))
    Q = geometry.greedy_sweep(P)
    _write(formats.dump_point_set(Q), args.out)
    return 0


def cmd_transform(args) -> int:
    X = _load_permutation(args)
    P = perms.point_set_of(perms.inverse(X))
    if args.mode == "smooth":
        state = transform.smooth_transform(P, check=args.check)
    else:
        run = sort_mode_run(X, args.strategy)
        gtrace = starpath.heap_to_geo(X, run.trace)
        policy = _alt_policy(args.alt, len(gtrace))
        state = transform.general_transform(P, gtrace, alt_policy=policy, check=args.check)
    _write(formats.dump_point_set(state.result_points()), args.out)
    if args.journal is not None:
        _write(_journal_text(state), args.journal)
    return 0


def _alt_policy(spec: str, length: int):
    if spec == "none":
        return None
    if spec == "all":
        return [True] * length
    if spec.startswith("random:"):
        rng = SplitMix64(int(spec.split(":", 1)[1]))
        return [rng.randrange(2) == 1 for _ in range(length)]
    raise SystemExit(2)


def _journal_text(state) -> str:
    lines = []
    for step in state.journal:
        for rec in step.additions:
            witness = ""
            if rec.witness is not None:
                witness = " witness=" + ";".join(f"{p[0]},{p[1]}" for p in rec.witness.points())
            status = "new" if rec.was_new else "old"
            lines.append(f"{rec.point[0]},{rec.point[1]} {rec.phase} {status}{witness}")
    return "\n".join(lines) + "\n" if lines else ""


def cmd_opt(args) -> int:
    X = _load_permutation(args)
    P = perms.point_set_of(perms.inverse(X))
    value = starpath.brute_force_opt_stable(P, budget=args.budget)
    _write(f"{value}\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# Verification oracles
# ---------------------------------------------------------------------------

def _random_perms(count: int, max_n: int, seed: int, min_n: int = 1):
    rng = SplitMix64(seed)
    for i in range(count):
        n = min_n + rng.randrange(max_n - min_n + 1)
        yield perms.gen_random(n, rng.next_u64())


def verify_nondet_eq(count: int, max_n: int, selectors: int, seed: int) -> str | None:
    cases = list(_random_perms(count, max_n, seed))
    for X in cases:
        P = perms.point_set_of(X)
        expect = geometry.greedy_sweep(P)
        sels = [geometry.selector_first, geometry.selector_lowest_fill_row]
        sels += [geometry.selector_random(seed + i) for i in range(selectors)]
        for i, sel in enumerate(sels):
            got = geometry.greedy_nondet(P, sel)
            if got != expect:
                diff = sorted(got ^ expect)[0]
                return f"X={X} selector#{i}: first differing point {diff}"
    return None


def verify_smooth_greedy_eq(count: int, max_n: int, seed: int, check: str = "off") -> str | None:
    cases = list(_random_perms(count, max_n, seed))
    cases += [perms.identity(16), perms.decreasing(16), (4, 1, 7, 2, 6, 3, 5)]
    cases += [perms.gen_tilted_grid(t) for t in (2, 3, 4, 5)]
    for X in cases:
        P = perms.point_set_of(perms.inverse(X))
        expect = geometry.greedy_sweep(P)
        state = transform.smooth_transform(P, check=check, audit=False)
        got = state.core_points()
        if got != expect:
            diff = sorted(got ^ expect)[0]
            return f"X={X}: first differing point {diff}"
    return None


def verify_bijection(count: int, max_n: int, seed: int) -> str | None:
    rng = SplitMix64(seed)
    strategies = list(STRATEGY_NAMES)
    for X in _random_perms(count, max_n, seed, min_n=1):
        strategy = strategies[rng.randrange(len(strategies))]
        run = sort_mode_run(X, strategy)
        P = perms.point_set_of(perms.inverse(X))
        gtrace = starpath.heap_to_geo(X, run.trace)
        tree = starpath.replay_geo(P, gtrace)
        if tree != starpath.path_of(P):
            return f"X={X} strategy={strategy}: geo replay did not reach the path"
        back = starpath.geo_to_heap(P, gtrace)
        if back != run.trace:
            return f"X={X} strategy={strategy}: trace did not round-trip"
        if len(gtrace) != len(run.trace):
            return f"X={X} strategy={strategy}: trace lengths differ"
        order = starpath.replay_heap_trace(X, back)
        if order != sorted(X):
            return f"X={X} strategy={strategy}: replayed heap trace failed to sort"
    return None


def verify_invariants(count: int, max_n: int, seed: int) -> str | None:
    for X in _random_perms(count, max_n, seed):
        P = perms.point_set_of(perms.inverse(X))
        try:
            transform.smooth_transform(P, check="every-step")
            run = sort_mode_run(X, "smooth")
            gtrace = starpath.heap_to_geo(X, run.trace)
            transform.general_transform(P, gtrace, check="every-step")
        except transform.TransformError as exc:
            return f"X={X}: {exc}"
    return None


def verify_replay(count: int, max_n: int, seed: int) -> str | None:
    for X in _random_perms(count, max_n, seed):
        Q = geometry.greedy_sweep(perms.point_set_of(X))
        try:
            execution = replay.replay_insert_mode(Q)
        except replay.ReplayError as exc:
            return f"X={X}: {exc}"
        if execution.cost != len(Q):
            return f"X={X}: cost {execution.cost} != |Q| {len(Q)}"
    return None


def cmd_verify(args) -> int:
    started = time.perf_counter()
    if args.which == "nondet-eq":
        failure = verify_nondet_eq(args.count, min(args.max_n, 32), args.selectors, args.seed)
    elif args.which == "smooth-greedy-eq":
        failure = verify_smooth_greedy_eq(args.count, args.max_n, args.seed, check=args.check)
    elif args.which == "bijection":
        failure = verify_bijection(args.count, args.max_n, args.seed)
    elif args.which == "invariants":
        failure = verify_invariants(args.count, args.max_n, args.seed)
    elif args.which == "replay":
        failure = verify_replay(args.count, args.max_n, args.seed)
    else:
        raise SystemExit(2)
    elapsed = time.perf_counter() - started
    if failure is None:
        print(f"PASS {args.which} ({elapsed:.1f}s)")
        return 0
    print(f"FAIL {args.which}: {failure}")
    return 1


# ---------------------------------------------------------------------------
# Benchmarks
# ---------------------------------------------------------------------------

def _bench_rows(suite: str, seed: int):
    rng = SplitMix64(seed)
    if suite == "random-scaling":
        for power in range(8, 13):
            n = 1 << power
            for rep in range(3):
                X = perms.gen_random(n, rng.next_u64())
                yield X, "smooth", seed
    elif suite == "tilted-scaling":
        for t in (4, 8, 16, 32):
            X = perms.gen_tilted_grid(t)
            yield X, "smooth", seed
            yield X, "cartesian", seed
    elif suite == "monotone":
        yield perms.identity(1024), "smooth", seed
        yield perms.decreasing(1024), "smooth", seed
    elif suite == "strategy-matrix":
        inputs = [
            perms.gen_random(256, rng.next_u64()),
            perms.gen_tilted_grid(8),
            perms.identity(256),
            perms.decreasing(256),
        ]
        for X in inputs:
            for strategy in STRATEGY_NAMES:
                yield X, strategy, seed
    else:
        raise SystemExit(2)


def cmd_bench(args) -> int:
    lines = [sorting.CSV_HEADER + ",wall_ms"]
    for X, algo, seed in _bench_rows(args.suite, args.seed):
        t0 = time.perf_counter()
        if algo == "cartesian":
            report = sorting.cartesian_tree_sort(X, seed=seed)
        else:
            report = sorting.sort_with(X, algo, seed=seed)
        wall_ms = (time.perf_counter() - t0) * 1000.0
        lines.append(report.csv_row() + f",{wall_ms:.2f}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _add_input_group(sub, generator: bool = True) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--perm", help="inline permutation, comma-separated ranks")
    group.add_argument("--in", dest="infile", help="permutation file")
    if generator:
        group.add_argument("--gen", help="generator spec: 'random N SEED' | 'identity N' | 'reverse N' | 'tilted T'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heapgeo", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("gen", help="write a generated permutation")
    p.add_argument("kind", choices=["random", "identity", "reverse", "tilted"])
    p.add_argument("params", nargs="+", type=int, help="N [SEED] or T")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_gen)

    p = subs.add_parser("sort", help="run a sorting-mode execution, emit one CSV row")
    _add_input_group(p)
    p.add_argument("--strategy", default="smooth")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--header", action="store_true", help="emit the CSV header line")
    p.set_defaults(fn=cmd_sort)

    p = subs.add_parser("greedy", help="row-sweep greedy satisfied superset")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--perm")
    group.add_argument("--in", dest="infile")
    group.add_argument("--gen")
    group.add_argument("--points", help="point-set file")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_greedy)

    p = subs.add_parser("transform", help="run a schedule-to-superset transformation")
    _add_input_group(p)
    p.add_argument("--mode", choices=["smooth", "general"], default="smooth")
    p.add_argument("--strategy", default="smooth", help="schedule source for general mode")
    p.add_argument("--check", choices=list(transform.CHECK_LEVELS), default="boundary")
    p.add_argument("--alt", default="none", help="general mode: none | all | random:SEED")
    p.add_argument("--journal", default=None, help="write per-addition journal here")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_transform)

    p = subs.add_parser("verify", help="run an oracle equality / property check")
    p.add_argument("which", choices=["nondet-eq", "smooth-greedy-eq", "bijection", "invariants", "replay"])
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--selectors", type=int, default=20)
    p.add_argument("--seed", type=int, default=20240)
    p.add_argument("--check", choices=list(transform.CHECK_LEVELS), default="off")
    p.set_defaults(fn=cmd_verify)

    p = subs.add_parser("bench", help="deterministic benchmark sweep, CSV table")
    p.add_argument("suite", choices=["random-scaling", "tilted-scaling", "monotone", "strategy-matrix"])
    p.add_argument("--seed", type=int, default=20240)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_bench)

    p = subs.add_parser("opt", help="brute-force minimum link schedule (n <= 8)")
    _add_input_group(p)
    p.add_argument("--budget", type=int, default=5_000_000)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_opt)

    return parser


_VERIFY_DEFAULTS = {
    "nondet-eq": (100, 32),
    "smooth-greedy-eq": (200, 64),
    "bijection": (100, 64),
    "invariants": (25, 48),
    "replay": (100, 64),
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        default_count, default_n = _VERIFY_DEFAULTS[args.which]
        if args.count is None:
            args.count = default_count
        if args.max_n is None:
            args.max_n = default_n
    try:
        return args.fn(args)
    except BrokenPipeError:
        return 0
    except (ValueError, OSError, RuntimeError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
