"""Command-line entry point: ``run``, ``bench`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 bad input or configuration,
3 invariant violation (the recent event trace goes to stderr).
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .engine import Mode, RunEnv, compute_params, run
from .matching import Matching, MatchingError, validate_edge_set, validate_matching
from .oracle import EDGE_BUDGET, certificate_check, max_matching_exact
from .stream import (
    EdgeList, EdgeStream, GraphFormatError, OrderPolicy, generate, parse_generator_spec,
    read_edge_list,
)
from .structures import CheckLevel, InvariantViolation

CSV_COLUMNS = ("run_id", "n", "m", "eps", "mode", "passes", "bundles", "phases",
               "final_size", "opt_size", "ratio", "peak_words")
SEED_ENV = "SEMIMATCH_SEED"

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    source: str  # "file:<path>" or "gen:<spec>"
    eps: Fraction
    mode: Mode
    order: OrderPolicy
    seed: int
    tau: int | None = None
    max_len: int | None = None
    limit: int | None = None
    phases: int | None = None
    verify: bool = False
    check: CheckLevel = CheckLevel.OFF
    run_id: str = "0"


@dataclass
class RunOutcome:
    row: dict[str, object]
    verified: bool
    messages: list[str]
    matching: Matching
    log: list[str]


def _eps(text: str) -> Fraction:
    try:
        e = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < e <= 1:
        raise argparse.ArgumentTypeError(f"eps must lie in (0, 1], got {text}")
    return e


def _list(conv):
    def parse(text: str):
        return [conv(x) for x in text.split(",") if x.strip()]
    return parse


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def load_graph(source: str, seed: int) -> EdgeList:
    kind, _, arg = source.partition(":")
    if kind == "file":
        return read_edge_list(arg)
    try:
        return parse_generator_spec(arg, seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def format_row(row: dict[str, object]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writerow(row)
    return buf.getvalue()


def csv_header() -> str:
    return ",".join(CSV_COLUMNS) + "\n"


def execute(cfg: RunConfig, trace: bool = False) -> RunOutcome:
    """One run of the algorithm on ``cfg``; raises on bad input or violated invariants."""
    g = load_graph(cfg.source, cfg.seed)
    try:
        params = compute_params(cfg.eps, cfg.mode, tau=cfg.tau, max_len=cfg.max_len,
                                limit=cfg.limit, phases=cfg.phases)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    stream = EdgeStream(g, cfg.order, cfg.seed)
    env = RunEnv(stream, params, cfg.check, trace or cfg.check is CheckLevel.FULL)
    m, stats = run(stream, env=env)

    row: dict[str, object] = {
        "run_id": cfg.run_id, "n": g.n, "m": g.m, "eps": str(cfg.eps), "mode": params.mode.value,
        "passes": stats.passes, "bundles": stats.bundles, "phases": stats.phases,
        "final_size": stats.final_size, "opt_size": "", "ratio": "", "peak_words": stats.peak_words,
    }
    messages: list[str] = []
    ok = True
    if cfg.verify:
        problem = validate_matching(g, m)
        if problem is not None:
            ok = False
            messages.append(f"run {cfg.run_id}: invalid matching: {problem}")
        if g.m <= EDGE_BUDGET:
            opt = max_matching_exact(g).opt_size
            ratio = Fraction(m.size, opt) if opt else Fraction(1)
            row["opt_size"] = opt
            row["ratio"] = f"{float(ratio):.6f}"
            if ratio < 1 / (1 + cfg.eps):
                ok = False
                messages.append(f"run {cfg.run_id}: ratio {ratio} below 1/(1+{cfg.eps})")
        else:
            messages.append(f"run {cfg.run_id}: {g.m} edges exceed the oracle budget "
                            f"of {EDGE_BUDGET}; ratio not checked")
    return RunOutcome(row, ok, messages, m, env.log)


def _execute_quiet(cfg: RunConfig) -> RunOutcome:
    # worker entry point for bench --jobs; the log is dropped to keep pickles small
    out = execute(cfg)
    out.log = []
    return out


# -- subcommands --------------------------------------------------------------

def _config_from_args(args, source: str, eps: Fraction, seed: int, run_id: str) -> RunConfig:
    return RunConfig(
        source=source, eps=eps, mode=Mode(args.mode), order=OrderPolicy(args.order), seed=seed,
        tau=args.tau, max_len=args.lmax, limit=args.limit, phases=args.phases,
        verify=args.verify, check=CheckLevel(args.check), run_id=run_id,
    )


def cmd_run(args) -> int:
    source = f"file:{args.input}" if args.input else f"gen:{args.gen}"
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = _config_from_args(args, source, args.eps, seed, args.run_id)
    out = execute(cfg, trace=args.dump)
    if args.dump:
        for line in out.log:
            print(line, file=sys.stderr)
    text = csv_header() + format_row(out.row)
    _emit(text, args.output)
    if args.matching_out:
        with open(args.matching_out, "w", encoding="utf-8") as fh:
            fh.write(out.matching.serialize())
    for msg in out.messages:
        print(msg, file=sys.stderr)
    return EXIT_OK if out.verified else EXIT_VERIFY


def bench_configs(args) -> list[RunConfig]:
    seeds = args.seeds if args.seeds is not None else [_default_seed()]
    configs = []
    i = 0
    for eps in args.eps:
        for n in args.n:
            for seed in seeds:
                if args.gen == "random":
                    spec = f"random:{n}:{int(args.m_factor * n)}"
                elif args.gen == "two-greedy-trap":
                    spec = "two-greedy-trap"
                else:
                    spec = f"{args.gen}:{n}"
                configs.append(_config_from_args(args, f"gen:{spec}", eps, seed, str(i)))
                i += 1
    return configs


def cmd_bench(args) -> int:
    configs = bench_configs(args)
    if args.jobs > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_execute_quiet, configs))
    else:
        outcomes = [execute(c) for c in configs]
    text = csv_header() + "".join(format_row(o.row) for o in outcomes)
    _emit(text, args.output)
    ok = True
    for o in outcomes:
        for msg in o.messages:
            print(msg, file=sys.stderr)
        ok = ok and o.verified
    return EXIT_OK if ok else EXIT_VERIFY


def read_matching_edges(path: str) -> list[tuple[int, int]]:
    edges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                u, v = (int(x) for x in parts)
            except ValueError:
                raise GraphFormatError(f"expected two integers, got {line!r}", lineno) from None
            edges.append((u, v))
    return edges


def cmd_verify(args) -> int:
    g = read_edge_list(args.input)
    edges = read_matching_edges(args.matching)
    problem = validate_edge_set(g, edges)
    if problem is not None:
        print(f"invalid matching: {problem}", file=sys.stderr)
        return EXIT_VERIFY
    m = Matching.from_edges(g.n, edges)
    print(f"size {m.size}")
    ok = True
    if g.m <= EDGE_BUDGET:
        opt = max_matching_exact(g).opt_size
        ratio = Fraction(m.size, opt) if opt else Fraction(1)
        print(f"opt {opt}")
        print(f"ratio {float(ratio):.6f}")
        if args.eps is not None and ratio < 1 / (1 + args.eps):
            print(f"ratio {ratio} below 1/(1+{args.eps})", file=sys.stderr)
            ok = False
    else:
        print(f"opt skipped ({g.m} edges exceed the oracle budget of {EDGE_BUDGET})")
    for k in args.k:
        count, bound = certificate_check(g, m, k)
        verdict = "certified" if count <= bound else "not certified"
        print(f"certificate k={k}: {count} disjoint paths, bound {bound} ({verdict})")
    return EXIT_OK if ok else EXIT_VERIFY


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- argument parsing -----------------------------------------------------------

def _add_algo_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=[x.value for x in Mode], default=Mode.QUIESCENT.value)
    p.add_argument("--order", choices=[x.value for x in OrderPolicy], default=OrderPolicy.FILE.value,
                   help="per-pass stream order")
    p.add_argument("--tau", type=int, help="override bundles per phase")
    p.add_argument("--lmax", type=int, help="override the maximum active-path length")
    p.add_argument("--limit", type=int, help="override the on-hold vertex threshold")
    p.add_argument("--phases", type=int, help="override the phase budget of budget mode")
    p.add_argument("--verify", action="store_true", help="compare against the exact oracle")
    p.add_argument("--assert", dest="check", choices=[x.value for x in CheckLevel],
                   default=CheckLevel.OFF.value, help="invariant checking level")
    p.add_argument("--output", "-o", help="write CSV here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semimatch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run once and print one CSV row")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file: 'n m' header, then 'u v' lines")
    src.add_argument("--gen", help="path:N, cycle:N, random:N:M or two-greedy-trap")
    p.add_argument("--eps", type=_eps, default=Fraction(1, 2))
    p.add_argument("--seed", type=int, help=f"stream/generator seed (default ${SEED_ENV} or 0)")
    p.add_argument("--run-id", default="0")
    p.add_argument("--dump", action="store_true", help="print per-bundle structure dumps to stderr")
    p.add_argument("--matching-out", help="write the final matching as sorted 'u v' lines")
    _add_algo_flags(p)
    p.set_defaults(func=cmd_run)

    b = sub.add_parser("bench", help="sweep eps x n x seeds, one CSV row per run")
    b.add_argument("--gen", choices=["path", "cycle", "random", "two-greedy-trap"], default="path")
    b.add_argument("--eps", type=_list(_eps), default=[Fraction(1, 2)], help="comma-separated")
    b.add_argument("--n", type=_list(int), default=[100], help="comma-separated vertex counts")
    b.add_argument("--seeds", type=_list(int), help="comma-separated seeds")
    b.add_argument("--m-factor", type=float, default=3.0, help="edges per vertex for random graphs")
    b.add_argument("--jobs", type=int, default=1)
    _add_algo_flags(b)
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="check a matching file against a graph")
    v.add_argument("--input", required=True)
    v.add_argument("--matching", required=True)
    v.add_argument("--eps", type=_eps, help="fail unless size >= opt/(1+eps)")
    v.add_argument("--k", type=_list(int), default=[2, 4], help="certificate path lengths")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, MatchingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        for line in exc.trace:
            print(f"  {line}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
