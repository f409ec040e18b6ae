"""Command-line harness.

Subcommands:
  sample      exact draws via coupling from the past, one JSON object per line
  coupletime  forward coalescence-time experiment, CSV plus a companion
              curve file (fraction of runs not yet coalesced per step)
  verify      sample and test against the brute-force oracle distribution

Exit codes: 0 success, 1 verification failure or sampling gave up,
2 usage error.  Output is a deterministic function of the flags: sample i
uses root seed --seed + i, and all randomness is key-addressed, so reruns
are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from . import engine, oracle
from .graphs import GraphFormatError, load_graph
from .models import MODEL_NAMES, build_model

USAGE_ERROR = 2


@dataclass
class RunConfig:
    model: object
    model_name: str
    params: dict
    seed: int
    t0: int | None
    max_levels: int
    samples: int | None
    reps: int | None
    t_cap: int | None
    out: str | None


def _fail_usage(message: str):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(USAGE_ERROR)


_MODEL_FLAGS = {
    # flag name -> models it belongs to
    "--n": {"perm"},
    "--graph": {"hardcore", "coloring", "potts", "sinkfree"},
    "--k": {"coloring", "potts"},
    "--lambda": {"hardcore"},
    "--pswap": {"hardcore"},
    "--temp": {"potts"},
}


def _build_config(args) -> RunConfig:
    name = args.model
    given = {
        "--n": args.n,
        "--graph": args.graph,
        "--k": args.k,
        "--lambda": args.fugacity,
        "--pswap": args.pswap,
        "--temp": args.temp,
    }
    for flag, owners in _MODEL_FLAGS.items():
        if given[flag] is not None and name not in owners:
            _fail_usage(f"{flag} does not apply to model {name!r}")
    graph = None
    if args.graph is not None:
        try:
            graph = load_graph(Path(args.graph).read_text())
        except OSError as exc:
            _fail_usage(f"cannot read --graph file: {exc}")
        except GraphFormatError as exc:
            _fail_usage(f"--graph {args.graph}: {exc}")
    params: dict = {}
    try:
        if name == "perm":
            if args.n is None:
                _fail_usage("--n is required for model 'perm'")
            params = {"n": args.n}
            model = build_model("perm", n=args.n)
        elif name == "hardcore":
            if graph is None:
                _fail_usage("--graph is required for model 'hardcore'")
            if args.fugacity is None:
                _fail_usage("--lambda is required for model 'hardcore'")
            pswap = 0.25 if args.pswap is None else args.pswap
            params = {"lambda": args.fugacity, "pswap": pswap}
            model = build_model(
                "hardcore", graph=graph, fugacity=args.fugacity, p_swap=pswap
            )
        elif name == "coloring":
            if graph is None or args.k is None:
                _fail_usage("--graph and --k are required for model 'coloring'")
            params = {"k": args.k}
            model = build_model("coloring", graph=graph, k=args.k)
            if args.k < graph.max_degree + 2:
                print(
                    f"warning: k={args.k} < max_degree+2={graph.max_degree + 2}; "
                    "the recoloring chain may not connect the state space and "
                    "coalescence may never be certified",
                    file=sys.stderr,
                )
        elif name == "potts":
            if graph is None or args.k is None or args.temp is None:
                _fail_usage("--graph, --k and --temp are required for model 'potts'")
            params = {"k": args.k, "temp": args.temp}
            model = build_model("potts", graph=graph, k=args.k, temperature=args.temp)
        elif name == "sinkfree":
            if graph is None:
                _fail_usage("--graph is required for model 'sinkfree'")
            model = build_model("sinkfree", graph=graph)
        else:  # unreachable, argparse restricts choices
            _fail_usage(f"unknown model {name!r}")
    except ValueError as exc:
        _fail_usage(str(exc))
    return RunConfig(
        model=model,
        model_name=name,
        params=params,
        seed=args.seed,
        t0=args.t0,
        max_levels=args.max_levels,
        samples=getattr(args, "samples", None),
        reps=getattr(args, "reps", None),
        t_cap=getattr(args, "tcap", None),
        out=args.out,
    )


def _open_out(path: str | None):
    if path is None:
        return sys.stdout, False
    return open(path, "w", newline="\n"), True


def cmd_sample(config: RunConfig, sampler=engine.cftp_sample) -> int:
    if not config.samples or config.samples < 1:
        _fail_usage("--samples must be a positive integer")
    model = config.model
    out, close = _open_out(config.out)
    try:
        for i in range(config.samples):
            seed = config.seed + i
            try:
                result = sampler(model, seed, config.t0, config.max_levels)
            except engine.MaxLevelsExceededError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 1  # partial output is kept
            record = {
                "model": config.model_name,
                "params": config.params,
                "state": model.state_jsonable(result.state),
                "levels_used": result.levels_used,
                "total_steps": result.total_steps,
                "seed": seed,
            }
            out.write(json.dumps(record, separators=(",", ":")) + "\n")
        return 0
    finally:
        if close:
            out.close()


def _curve_path(out: str) -> str:
    p = Path(out)
    return str(p.with_name(p.stem + ".curve" + (p.suffix or ".csv")))


def cmd_coupletime(config: RunConfig) -> int:
    if not config.reps or config.reps < 1:
        _fail_usage("--reps must be a positive integer")
    if config.out is None:
        _fail_usage("--out is required for coupletime")
    model = config.model
    t0 = config.t0 if config.t0 is not None else model.default_t0()
    t_cap = config.t_cap if config.t_cap is not None else 50 * t0
    taus = []
    with open(config.out, "w", newline="\n") as out:
        out.write("rep,tau,restarts\n")
        for i in range(config.reps):
            res = engine.forward_couple_time(model, config.seed + i, t_cap)
            taus.append(res.tau)
            tau = res.tau if res.tau is not None else -1
            out.write(f"{i},{tau},{res.restarts}\n")
    curve = engine.curve_from_taus(taus, t_cap)
    with open(_curve_path(config.out), "w", newline="\n") as out:
        out.write("t,fraction_not_coalesced\n")
        for t, frac in curve:
            out.write(f"{t},{frac:.6f}\n")
    return 0


def cmd_verify(config: RunConfig, sampler=engine.cftp_sample) -> int:
    samples = config.samples or 20000
    model = config.model
    try:
        exact = oracle.exact_distribution(model)
    except oracle.StateSpaceTooLargeError as exc:
        _fail_usage(f"verify needs a desk-scale instance: {exc}")
    counts = Counter()
    try:
        for i in range(samples):
            result = sampler(model, config.seed + i, config.t0, config.max_levels)
            counts[model.canonical(result.state)] += 1
    except engine.MaxLevelsExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        report = oracle.chi_square(counts, exact)
    except oracle.ImpossibleStateError as exc:
        print(f"FAIL model={config.model_name} impossible state: {exc}")
        return 1
    verdict = "PASS" if report.passed else "FAIL"
    print(
        f"{verdict} model={config.model_name} samples={samples} "
        f"states={len(exact.states)} tv={report.tv_distance:.5f} "
        f"chi2={report.chi_square_statistic:.3f} dof={report.dof} "
        f"threshold={report.threshold:.3f}"
    )
    return 0 if report.passed else 1


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument("--model", required=True, choices=MODEL_NAMES)
    sub.add_argument("--graph", help="edge-list graph file")
    sub.add_argument("--n", type=int, help="size (perm only)")
    sub.add_argument("--k", type=int, help="number of colors")
    sub.add_argument("--lambda", type=float, dest="fugacity", help="hard-core fugacity")
    sub.add_argument("--pswap", type=float, help="hard-core swap probability (default 0.25)")
    sub.add_argument("--temp", type=float, help="temperature (potts only)")
    sub.add_argument("--seed", type=int, default=0, help="base root seed (default 0)")
    sub.add_argument("--t0", type=int, help="level-0 block length (default per model)")
    sub.add_argument("--max-levels", type=int, default=40, dest="max_levels")
    sub.add_argument("--out", help="output path (default stdout where supported)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cftp",
        description="Exact sampling via bounding chains and coupling from the past.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_sample = subs.add_parser("sample", help="draw exact samples (JSONL)")
    _add_common(p_sample)
    p_sample.add_argument("--samples", type=int, help="number of samples")

    p_ct = subs.add_parser("coupletime", help="forward coupling-time experiment (CSV)")
    _add_common(p_ct)
    p_ct.add_argument("--reps", type=int, help="number of independent runs")
    p_ct.add_argument("--tcap", type=int, help="step cap per run (default 50*t0)")

    p_verify = subs.add_parser("verify", help="compare samples to the exact oracle")
    _add_common(p_verify)
    p_verify.add_argument("--samples", type=int, help="number of samples (default 20000)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = _build_config(args)
    if args.command == "sample":
        return cmd_sample(config)
    if args.command == "coupletime":
        return cmd_coupletime(config)
    return cmd_verify(config)


if __name__ == "__main__":
    sys.exit(main())
