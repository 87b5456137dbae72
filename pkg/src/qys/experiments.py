"""Monte Carlo runs over random scenarios and the finite-run decision game.

run_scatter produces one YSRecord per trial (the data behind the scatter
plots of P/Q against p/q), summarize aggregates category rates with
Wilson intervals, and run_hyptest simulates the aggregated-vs-partitioned
inference disagreement with an exact-binomial companion for validation.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import binom, norm

from . import engine
from .engine import DegenerateSuperpositionError, LambdaResult
from .model import LurkingVars, Scenario
from .sampling import SampleConfig, sample_lurking, sample_scenario, trial_rng

CSV_BASE_HEADER = "trial,p1,p2,q1,q2,p,q,P,Q,ratio_pq,ratio_PQ,category"
CSV_LAMBDA_FIELDS = "lambda,P_lambda,Q_lambda,occurs"

CATEGORIES = ("BOTH", "QC_ONLY", "QQ_ONLY", "NEITHER")


@dataclass(frozen=True)
class YSRecord:
    trial_index: int
    p1: float
    p2: float
    q1: float
    q2: float
    p: float
    q: float
    P: float
    Q: float
    ratio_pq: float
    ratio_PQ: float
    category: str
    rejections: int
    lambda_results: tuple[LambdaResult, ...] | None = None


@dataclass(frozen=True)
class RateEstimate:
    rate: float
    low: float
    high: float


@dataclass(frozen=True)
class RunSummary:
    n_trials: int
    rates: dict[str, RateEstimate]
    degenerate_resamples: int
    seed: int
    config: dict
    lambdas: tuple[float, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "n_trials": self.n_trials,
            "rates": {
                key: {"rate": est.rate, "wilson_low": est.low, "wilson_high": est.high}
                for key, est in self.rates.items()
            },
            "degenerate_resamples": self.degenerate_resamples,
            "seed": self.seed,
            "config": self.config,
            "lambdas": list(self.lambdas) if self.lambdas is not None else None,
        }


def wilson_interval(successes: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if n <= 0:
        raise ValueError("n must be positive")
    z = norm.ppf(0.5 + confidence / 2.0)
    phat = successes / n
    denom = 1.0 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n))
    return max(0.0, center - half), min(1.0, center + half)


def _run_trial(config: SampleConfig, trial_index: int, lambdas) -> tuple[YSRecord, int]:
    """One trial on its own substream; degenerate draws are resampled."""
    rng = trial_rng(config.seed, trial_index)
    degenerate = 0
    while True:
        scenario, rejections = sample_scenario(config, rng)
        lurking = sample_lurking(config, rng)
        try:
            qc = engine.qc_probabilities(scenario, lurking)
            qq = engine.qq_probabilities(scenario, lurking)
        except DegenerateSuperpositionError:
            degenerate += 1
            continue
        break
    cls = engine.classify(scenario, lurking)
    lambda_results = None
    if lambdas is not None:
        lambda_results = tuple(engine.lambda_family(scenario, lurking, lam) for lam in lambdas)
    record = YSRecord(
        trial_index=trial_index,
        p1=scenario.p1, p2=scenario.p2, q1=scenario.q1, q2=scenario.q2,
        p=qc.p, q=qc.q, P=qq.P, Q=qq.Q,
        ratio_pq=cls.ratio_pq, ratio_PQ=cls.ratio_PQ,
        category=cls.category, rejections=rejections,
        lambda_results=lambda_results,
    )
    return record, degenerate


def _run_chunk(args):
    config, indices, lambdas = args
    return [_run_trial(config, i, lambdas) for i in indices]


def run_scatter(
    config: SampleConfig,
    n_trials: int,
    lambdas=None,
    workers: int = 1,
) -> tuple[list[YSRecord], RunSummary]:
    """n_trials independent trials; identical output for any worker count."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    lambdas = tuple(lambdas) if lambdas is not None else None
    indices = list(range(n_trials))
    if workers <= 1:
        results = [_run_trial(config, i, lambdas) for i in indices]
    else:
        chunk = max(1, math.ceil(n_trials / (workers * 4)))
        chunks = [(config, indices[i : i + chunk], lambdas) for i in range(0, n_trials, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [item for part in pool.map(_run_chunk, chunks) for item in part]
    records = [rec for rec, _ in results]
    degenerate = sum(d for _, d in results)
    return records, summarize(records, config=config, degenerate_resamples=degenerate, lambdas=lambdas)


def summarize(
    records,
    config: SampleConfig | None = None,
    degenerate_resamples: int = 0,
    lambdas=None,
) -> RunSummary:
    records = list(records)
    if not records:
        raise ValueError("cannot summarize an empty record list")
    n = len(records)
    counts = {cat: 0 for cat in CATEGORIES}
    for rec in records:
        counts[rec.category] += 1
    rates = {}
    for cat in CATEGORIES:
        low, high = wilson_interval(counts[cat], n)
        rates[f"rate_{cat.lower()}"] = RateEstimate(rate=counts[cat] / n, low=low, high=high)
    return RunSummary(
        n_trials=n,
        rates=rates,
        degenerate_resamples=degenerate_resamples,
        seed=config.seed if config is not None else -1,
        config=config.to_dict() if config is not None else {},
        lambdas=tuple(lambdas) if lambdas is not None else None,
    )


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def records_to_csv(records, lambdas=None) -> str:
    """CSV with 12-significant-digit floats; stable for golden-file tests."""
    out = io.StringIO()
    header = CSV_BASE_HEADER
    if lambdas is not None:
        header += ("," + CSV_LAMBDA_FIELDS) * len(tuple(lambdas))
    out.write(header + "\n")
    for rec in records:
        fields = [
            str(rec.trial_index),
            _fmt(rec.p1), _fmt(rec.p2), _fmt(rec.q1), _fmt(rec.q2),
            _fmt(rec.p), _fmt(rec.q), _fmt(rec.P), _fmt(rec.Q),
            _fmt(rec.ratio_pq), _fmt(rec.ratio_PQ),
            rec.category,
        ]
        if lambdas is not None:
            for lr in rec.lambda_results or ():
                fields += [_fmt(lr.lam), _fmt(lr.P_lambda), _fmt(lr.Q_lambda),
                           "true" if lr.occurs else "false"]
        out.write(",".join(fields) + "\n")
    return out.getvalue()


# --- finite-run hypothesis testing -----------------------------------------


@dataclass(frozen=True)
class HypTestOutcome:
    M1: int
    M2: int
    k1: int
    k2: int
    decision_partitioned: str  # "A" or "B"
    decision_aggregated: str
    disagree: bool
    partition_fallback: bool = False


def _split_runs(M: int, frac1: float) -> tuple[int, int]:
    m1 = int(round(M * frac1))
    return m1, M - m1


def _aggregate_models(s: Scenario, v: LurkingVars) -> tuple[float, float]:
    ca, cb = math.cos(v.alpha) ** 2, math.cos(v.beta) ** 2
    p_model = ca * s.p1 + (1.0 - ca) * s.p2
    q_model = cb * s.q1 + (1.0 - cb) * s.q2
    return p_model, q_model


def partitioned_decision(k1: int, m1: int, k2: int, m2: int, s: Scenario) -> str:
    """Maximum likelihood over the per-preparation binomial models; ties go to A."""
    log_a = binom.logpmf(k1, m1, s.p1) + binom.logpmf(k2, m2, s.p2)
    log_b = binom.logpmf(k1, m1, s.q1) + binom.logpmf(k2, m2, s.q2)
    return "A" if log_a >= log_b else "B"


def aggregated_decision(k: int, M: int, p_model: float, q_model: float) -> str:
    """Maximum likelihood over the two aggregate binomial models; ties go to A."""
    log_a = binom.logpmf(k, M, p_model)
    log_b = binom.logpmf(k, M, q_model)
    return "A" if log_a >= log_b else "B"


def _decision_tables(s: Scenario, v: LurkingVars, m1: int, m2: int):
    """Boolean lookup tables: decision 'A' per (k1, k2) and per aggregate k."""
    M = m1 + m2
    p_model, q_model = _aggregate_models(s, v)
    k1 = np.arange(m1 + 1)[:, None]
    k2 = np.arange(m2 + 1)[None, :]
    log_a = binom.logpmf(k1, m1, s.p1) + binom.logpmf(k2, m2, s.p2)
    log_b = binom.logpmf(k1, m1, s.q1) + binom.logpmf(k2, m2, s.q2)
    part_is_a = log_a >= log_b
    k = np.arange(M + 1)
    agg_is_a = binom.logpmf(k, M, p_model) >= binom.logpmf(k, M, q_model)
    return part_is_a, agg_is_a


def run_hyptest(
    s: Scenario,
    v: LurkingVars,
    M: int,
    repeats: int,
    rng: np.random.Generator,
    truth: str = "A",
    run_frac1: float | None = None,
) -> tuple[list[HypTestOutcome], float]:
    """Simulate repeated finite-run identification of the measurement.

    The box's true measurement is fixed by `truth`.  Each repeat probes
    the box M times, using M1 = round(M * run_frac1) preparations of
    psi1 (run_frac1 defaults to cos^2 alpha).  The partitioned decision
    uses the per-preparation counts; the aggregated one only k1 + k2,
    compared against the two aggregate models p (weights alpha) and q
    (weights beta).
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    if truth not in ("A", "B"):
        raise ValueError("truth must be 'A' or 'B'")
    if run_frac1 is None:
        run_frac1 = math.cos(v.alpha) ** 2
    m1, m2 = _split_runs(M, run_frac1)
    r1, r2 = (s.p1, s.p2) if truth == "A" else (s.q1, s.q2)
    part_is_a, agg_is_a = _decision_tables(s, v, m1, m2)
    fallback = m1 == 0 or m2 == 0
    outcomes = []
    disagreements = 0
    for _ in range(repeats):
        k1 = int(rng.binomial(m1, r1)) if m1 > 0 else 0
        k2 = int(rng.binomial(m2, r2)) if m2 > 0 else 0
        dec_part = "A" if part_is_a[k1, k2] else "B"
        dec_agg = "A" if agg_is_a[k1 + k2] else "B"
        disagree = dec_part != dec_agg
        disagreements += disagree
        outcomes.append(HypTestOutcome(
            M1=m1, M2=m2, k1=k1, k2=k2,
            decision_partitioned=dec_part, decision_aggregated=dec_agg,
            disagree=disagree, partition_fallback=fallback,
        ))
    return outcomes, disagreements / repeats


def exact_disagreement_probability(
    s: Scenario,
    v: LurkingVars,
    M: int,
    truth: str = "A",
    run_frac1: float | None = None,
) -> float:
    """Exact disagreement probability by summing over all (k1, k2).

    Companion to run_hyptest: same decision rules, but the probability is
    an exact binomial sum instead of a Monte Carlo estimate.
    """
    if run_frac1 is None:
        run_frac1 = math.cos(v.alpha) ** 2
    m1, m2 = _split_runs(M, run_frac1)
    r1, r2 = (s.p1, s.p2) if truth == "A" else (s.q1, s.q2)
    part_is_a, agg_is_a = _decision_tables(s, v, m1, m2)
    w1 = binom.pmf(np.arange(m1 + 1), m1, r1)
    w2 = binom.pmf(np.arange(m2 + 1), m2, r2)
    joint = np.outer(w1, w2)
    k_sum = np.arange(m1 + 1)[:, None] + np.arange(m2 + 1)[None, :]
    disagree = part_is_a != agg_is_a[k_sum]
    return float(joint[disagree].sum())
