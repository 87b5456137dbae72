"""Command-line interface: scenario classification, Monte Carlo scatter
runs, lambda sweeps, and the finite-run hypothesis-test simulation.

All randomness is driven by an explicit --seed; omitting it on sampling
commands is an error, so every run is reproducible by construction.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import sys

from . import __version__, engine, experiments, model
from .model import LurkingVars
from .sampling import SampleConfig, SamplingStarvationError, trial_rng


def _metadata(args, config: dict) -> dict:
    meta = {"version": __version__, "seed": getattr(args, "seed", None), "config": config}
    if not args.no_timestamp:
        meta["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return meta


def _parse_lambdas(text: str) -> list[float]:
    values = [float(tok) for tok in text.split(",") if tok.strip()]
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise argparse.ArgumentTypeError(f"lambda {v} outside [0, 1]")
    return values


def _worker_count(args) -> int:
    workers = args.workers
    cap = os.environ.get("YSQ_THREADS")
    if cap is not None:
        workers = min(workers, max(1, int(cap)))
    return workers


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="output file path (CSV or JSON depending on command)")
    parser.add_argument("--format", choices=("csv", "json"), default="json",
                        help="stdout payload format where applicable")
    parser.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp from the metadata block")


def _add_sample_flags(parser: argparse.ArgumentParser, require_lambdas: bool) -> None:
    parser.add_argument("--seed", type=int, required=True)
    parser.add_argument("--trials", type=int, default=10000)
    parser.add_argument("--dim", type=int, choices=(2, 3), default=2)
    parser.add_argument("--measure", choices=("haar", "param-uniform"), default="haar")
    parser.add_argument("--effects", choices=("general", "projective-only"), default="general")
    parser.add_argument("--premise", choices=("strict", "weak"), default="strict")
    parser.add_argument("--equal-mixing", action="store_true")
    parser.add_argument("--max-rejections", type=int, default=10000)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--lambdas", type=_parse_lambdas, required=require_lambdas,
                        help="comma-separated lambda values in [0, 1]")
    _add_common(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qys",
        description="Quantum Yule-Simpson effect simulation and classification",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_sample = sub.add_parser("sample", help="Monte Carlo scatter run over random scenarios")
    _add_sample_flags(p_sample, require_lambdas=False)

    p_sweep = sub.add_parser("lambda-sweep", help="scatter run with lambda-family columns")
    _add_sample_flags(p_sweep, require_lambdas=True)

    p_classify = sub.add_parser("classify", help="classify one scenario file with given lurking variables")
    p_classify.add_argument("--scenario", required=True, help="scenario JSON path")
    p_classify.add_argument("--alpha", type=float, required=True)
    p_classify.add_argument("--beta", type=float, required=True)
    p_classify.add_argument("--phi-alpha", type=float, default=0.0)
    p_classify.add_argument("--phi-beta", type=float, default=0.0)
    _add_common(p_classify)

    p_hyp = sub.add_parser("hyptest", help="finite-run aggregated vs partitioned inference")
    p_hyp.add_argument("--scenario", required=True, help="scenario JSON path")
    p_hyp.add_argument("--seed", type=int, required=True)
    p_hyp.add_argument("--m", type=int, required=True, help="total probe runs per repeat")
    p_hyp.add_argument("--frac1", type=float, required=True, help="cos^2(alpha): psi1 weight of the A model")
    p_hyp.add_argument("--frac1-alt", type=float, required=True, help="cos^2(beta): psi1 weight of the B model")
    p_hyp.add_argument("--frac1-run", type=float, default=None,
                       help="actual fraction of psi1 preparations (default: --frac1)")
    p_hyp.add_argument("--repeats", type=int, default=10000)
    p_hyp.add_argument("--truth", choices=("A", "B"), default="A")
    _add_common(p_hyp)

    return parser


def _cmd_sample(args) -> int:
    config = SampleConfig(
        seed=args.seed, dim=args.dim, measure=args.measure, effects=args.effects,
        premise=args.premise, equal_mixing=args.equal_mixing,
        max_rejections_per_trial=args.max_rejections,
    )
    records, summary = experiments.run_scatter(
        config, args.trials, lambdas=args.lambdas, workers=_worker_count(args)
    )
    csv_text = experiments.records_to_csv(records, lambdas=args.lambdas)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    payload = {"metadata": _metadata(args, config.to_dict()), "summary": summary.to_dict()}
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_classify(args) -> int:
    scenario = model.load_scenario(args.scenario)
    lurking = LurkingVars(args.alpha, args.beta, args.phi_alpha, args.phi_beta)
    qc = engine.qc_probabilities(scenario, lurking)
    qq = engine.qq_probabilities(scenario, lurking)
    cls = engine.classify(scenario, lurking)
    result = {
        "category": cls.category,
        "premise": cls.premise,
        "p": qc.p, "q": qc.q, "P": qq.P, "Q": qq.Q,
        "ratio_pq": None if math.isnan(cls.ratio_pq) else cls.ratio_pq,
        "ratio_PQ": None if math.isnan(cls.ratio_PQ) else cls.ratio_PQ,
        "qc_occurs": qc.occurs, "qq_occurs": qq.occurs,
    }
    payload = {"metadata": _metadata(args, {"scenario": args.scenario}), "result": result}
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def _cmd_hyptest(args) -> int:
    scenario = model.load_scenario(args.scenario)
    for name in ("frac1", "frac1_alt"):
        value = getattr(args, name)
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"--{name.replace('_', '-')} must lie in [0, 1]")
    lurking = LurkingVars(math.acos(math.sqrt(args.frac1)), math.acos(math.sqrt(args.frac1_alt)))
    rng = trial_rng(args.seed, 0)
    outcomes, disagreement = experiments.run_hyptest(
        scenario, lurking, args.m, args.repeats, rng,
        truth=args.truth, run_frac1=args.frac1_run,
    )
    exact = experiments.exact_disagreement_probability(
        scenario, lurking, args.m, truth=args.truth, run_frac1=args.frac1_run
    )
    result = {
        "M": args.m, "M1": outcomes[0].M1, "M2": outcomes[0].M2,
        "repeats": args.repeats, "truth": args.truth,
        "disagreement_rate": disagreement,
        "exact_disagreement_probability": exact,
        "partition_fallback": outcomes[0].partition_fallback,
    }
    payload = {"metadata": _metadata(args, {"scenario": args.scenario}), "result": result}
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand in ("sample", "lambda-sweep"):
            return _cmd_sample(args)
        if args.subcommand == "classify":
            return _cmd_classify(args)
        return _cmd_hyptest(args)
    except (SamplingStarvationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
