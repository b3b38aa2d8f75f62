"""Pairing observed distributions with predicted tables, and the verify pipeline."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

from . import closed_form, codes, cyclotomy, sequences
from .closed_form import PredictionTable
from .field import DEFAULT_MAX_Q, build_field
from .parameters import ParamSet
from .sequences import ORACLE_MAX_Q, Distribution

SCHEMA = 1


class Verdict(enum.Enum):
    VERIFIED = "Verified"
    FREQUENCY_MISMATCH = "FrequencyMismatch"
    UNMATCHED_VALUE = "UnmatchedValue"
    TOLERANCE_EXCEEDED = "ToleranceExceeded"


def default_tol(p: int, n: int) -> float:
    return 1e-6 * p ** (n / 2)


@dataclass
class MatchReport:
    observed: Distribution
    predicted: PredictionTable
    tol: float
    pairing: list = field(default_factory=list)  # (predicted value, predicted freq, observed CycInt, observed freq, gap)
    unmatched_observed: list = field(default_factory=list)
    unmatched_predicted: list = field(default_factory=list)
    verdict: Verdict = Verdict.VERIFIED

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "tol": self.tol,
            "pairing": [
                {"predicted": pv, "predicted_frequency": str(pf), "observed": ov.to_json(),
                 "observed_numeric": ov.eval_numeric().real, "observed_frequency": str(of), "gap": gap}
                for pv, pf, ov, of, gap in self.pairing
            ],
            "unmatched_observed": [v.to_json() for v in self.unmatched_observed],
            "unmatched_predicted": self.unmatched_predicted,
        }


def match_predictions(observed: Distribution, predicted: PredictionTable, tol: float) -> MatchReport:
    """Greedy nearest-value pairing, each value used at most once.

    Predicted rows closer than tol are merged first (their frequencies add);
    values predicted with frequency zero are dropped, since they cannot occur.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    preds = [(v, f) for v, f, _ in predicted.merged(tol) if f]
    obs = [(val, freq, val.eval_numeric()) for val, freq in observed.sorted_items()]
    candidates = sorted(
        (abs(z - pv), i, j) for i, (_, _, z) in enumerate(obs) for j, (pv, _) in enumerate(preds)
    )
    used_o, used_p = set(), set()
    pairs = []
    for gap, i, j in candidates:
        if i in used_o or j in used_p:
            continue
        used_o.add(i)
        used_p.add(j)
        pairs.append((preds[j][0], preds[j][1], obs[i][0], obs[i][1], gap))
    pairs.sort(key=lambda r: r[0])
    report = MatchReport(observed=observed, predicted=predicted, tol=tol, pairing=pairs)
    report.unmatched_observed = [obs[i][0] for i in range(len(obs)) if i not in used_o]
    report.unmatched_predicted = [preds[j][0] for j in range(len(preds)) if j not in used_p]
    if report.unmatched_observed or report.unmatched_predicted:
        report.verdict = Verdict.UNMATCHED_VALUE
    elif any(gap >= tol for *_, gap in pairs):
        report.verdict = Verdict.TOLERANCE_EXCEEDED
    elif any(pf != of for _, pf, _, of, _ in pairs):
        report.verdict = Verdict.FREQUENCY_MISMATCH
    return report


@dataclass
class VerifyConfig:
    workers: int | None = None
    tol: float | None = None
    max_q: int = DEFAULT_MAX_Q
    oracle_max_q: int = ORACLE_MAX_Q
    codes: bool = True
    extended: bool = False  # cyclotomy, periods, partition oracle, triple sums
    samples: int = 60


def params_json(params: ParamSet) -> dict:
    return {"p": params.p, "n": params.n, "i": params.i, "q": str(params.q), "d": str(params.d),
            "g": str(params.g), "case": params.case.value}


def verify(params: ParamSet, cfg: VerifyConfig) -> tuple[dict, bool, dict]:
    """Run the pipeline; returns (report, all_ok, timings in seconds)."""
    timings = {}
    t0 = time.perf_counter()
    ctx = build_field(params.p, params.n, max_q=cfg.max_q)
    quad = closed_form.solve_quad_partition(ctx)
    timings["field"] = time.perf_counter() - t0
    tol = cfg.tol if cfg.tol is not None else default_tol(params.p, params.n)

    t0 = time.perf_counter()
    counts = sequences.correlation_counts(ctx, params.d, workers=cfg.workers)
    observed = sequences.distribution_from_counts(ctx.p, counts)
    timings["distribution"] = time.perf_counter() - t0
    predicted = closed_form.correlation_table(params, quad)
    match = match_predictions(observed, predicted, tol)
    first = sequences.first_moment(ctx, params.d, counts)
    checks = {
        "correlation": match.to_json(),
        "first_moment": {"value": first.to_json(), "ok": first == 1},
        "distinct_values": {"count": len(observed), "ok": len(observed) <= 13},
    }
    ok = match.verdict is Verdict.VERIFIED and first == 1 and len(observed) <= 13

    if cfg.codes:
        t0 = time.perf_counter()
        brute = codes.weight_distribution_brute(ctx, params.d, workers=cfg.workers, max_q=cfg.max_q)
        cmp = codes.compare_weights(brute, closed_form.weight_table(params, quad))
        timings["codes"] = time.perf_counter() - t0
        checks["code_weights"] = {"observed": brute.to_json(), **cmp.to_json()}
        ok &= cmp.matches

    if cfg.extended:
        t0 = time.perf_counter()
        brute_c = cyclotomy.count_cij_brute(ctx)
        closed_c = cyclotomy.closed_cij(quad, params.n)
        checks["cyclotomy"] = {"brute": brute_c.to_json(), "closed": closed_c.to_json(),
                               "ok": brute_c == closed_c}
        ok &= brute_c == closed_c

        periods = cyclotomy.gaussian_periods(ctx)
        obs_sets = cyclotomy.observed_period_sets(periods)
        pred_sets = cyclotomy.closed_period_sets(quad, params.n)
        gaps = {k: cyclotomy.multiset_distance(obs_sets[k], pred_sets[k]) for k in obs_sets}
        ptol = 1e-9 * params.p ** (params.n / 2)
        sum_ok = sum(periods.three_eta, 0) == -3
        checks["periods"] = {
            "three_eta": [x.to_json() for x in periods.three_eta],
            "numeric": list(periods.numeric),
            "set_gaps": gaps,
            "ok": sum_ok and max(gaps.values()) < ptol,
        }
        ok &= checks["periods"]["ok"]

        if ctx.q <= cfg.oracle_max_q:
            cells = sequences.partition_counts(ctx, params, max_q=cfg.oracle_max_q)
            expected = cyclotomy.predicted_partition_cells(closed_c, params.g, ctx.q)
            part_ok = cells == expected and sum(cells.values()) == (ctx.q - 1) * (ctx.q - 2)
            checks["partition"] = {"cells": {f"{j}{k}{l}": str(c) for (j, k, l), c in cells.items()},
                                   "ok": part_ok}
            ok &= part_ok

        tri = codes.triple_sum_check(ctx, params, cfg.samples)
        checks["triple_sum"] = {"samples": tri.samples, "exceptional": tri.exceptional,
                                "violations": [[u, v, s.to_json()] for u, v, s in tri.violations],
                                "ok": tri.ok}
        ok &= tri.ok
        timings["extended"] = time.perf_counter() - t0

    report = {
        "schema": SCHEMA,
        "command": "verify",
        "params": params_json(params),
        "field": {"modulus": list(ctx.modulus), "psi": ctx.psi, "omega_p": ctx.omega_p},
        "quad": {"u": quad.u, "v": quad.v, "theta": quad.theta,
                 "E": str(closed_form.eval_E(quad.u, quad.v, params.n)),
                 "O": str(closed_form.eval_O(quad.u, quad.v, params.n))},
        "checks": checks,
        "verdict": "Verified" if ok else "Mismatch",
    }
    return report, bool(ok), timings
