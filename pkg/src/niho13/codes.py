"""Weight enumerator of the cyclic code C_{1,d} = {(Tr(u x + v x^d))_{x != 0}}.

Weights are counted directly from trace zeros; nothing here goes through
W_d, so the enumerator is an independent check on the closed forms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .closed_form import PredictionTable
from .field import DEFAULT_MAX_Q, FieldCtx, FieldTooLarge
from .parallel import sweep
from .parameters import ParamSet
from .sequences import GcdNotOne, exp_sum_W


def codeword_weight(ctx: FieldCtx, d: int, u: int, v: int) -> int:
    x = ctx.elements()[1:]
    word = ctx.trace(ctx.add(ctx.mul(u, x), ctx.mul(v, ctx.pow(x, d))))
    return int(np.count_nonzero(word))


@dataclass
class CodeWeightDist:
    weights: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)  # weight -> one (u, v) attaining it

    @property
    def total(self) -> int:
        return sum(self.weights.values())

    def add(self, weight: int, count: int, witness=None) -> None:
        self.weights[weight] = self.weights.get(weight, 0) + count
        if witness is not None:
            self.witnesses.setdefault(weight, witness)

    def to_json(self) -> dict:
        return {
            "total": str(self.total),
            "weights": [{"weight": w, "count": str(c), "witness": list(self.witnesses.get(w, ()))}
                        for w, c in sorted(self.weights.items())],
        }

    def to_csv(self) -> str:
        lines = ["weight,count"]
        lines += [f"{w},{c}" for w, c in sorted(self.weights.items())]
        return "\n".join(lines) + "\n"


def slice_weights(ctx: FieldCtx, d: int, *, workers: int | None = None) -> np.ndarray:
    """weight(u, 1) for every u in F_q, indexed by the code of u."""
    N = ctx.q - 1
    log_x = np.arange(N, dtype=np.int64)  # x = psi^t
    tr_xd = ctx.trace_table[ctx.antilog[(d * log_x) % N]]

    def block(a: int, b: int) -> np.ndarray:
        out = np.empty(b - a, dtype=np.int64)
        for r, u in enumerate(range(a, b)):
            if u == 0:
                tr_ux = 0
            else:
                tr_ux = ctx.trace_table[ctx.antilog[(ctx.log[u] + log_x) % N]]
            out[r] = np.count_nonzero((tr_ux + tr_xd) % ctx.p)
        return out

    return sweep(block, ctx.q, workers=workers, block=max(64, ctx.q // 64))


def weight_distribution_brute(ctx: FieldCtx, d: int, *, workers: int | None = None,
                              max_q: int = DEFAULT_MAX_Q) -> CodeWeightDist:
    """Full enumerator over all p^{2n} pairs (u, v).

    Codewords with v != 0 satisfy weight(u, v) = weight(u v^{-1/d}, 1), so
    the v = 1 slice is counted q - 1 times.  For v = 0 every nonzero u gives
    the weight of (1, 0) under x -> x/u.
    """
    q = ctx.q
    if math.gcd(d, q - 1) != 1:
        raise GcdNotOne(f"gcd({d}, {q - 1}) != 1")
    if q > max_q:
        raise FieldTooLarge(q, max_q)
    weights = slice_weights(ctx, d, workers=workers)
    dist = CodeWeightDist()
    dist.add(0, 1, (0, 0))
    dist.add(codeword_weight(ctx, d, 1, 0), q - 1, (1, 0))
    values, first, counts = np.unique(weights, return_index=True, return_counts=True)
    for w, u, c in zip(values, first, counts):
        dist.add(int(w), int(c) * (q - 1), (int(u), 1))
    return dist


@dataclass
class WeightComparison:
    matches: bool
    mismatches: list  # (weight, observed, predicted, witness)

    def to_json(self) -> dict:
        return {"matches": self.matches,
                "mismatches": [{"weight": w, "observed": str(o), "predicted": str(p),
                                "witness": list(wit) if wit else None}
                               for w, o, p, wit in self.mismatches]}


def compare_weights(observed: CodeWeightDist, predicted: PredictionTable) -> WeightComparison:
    """Exact comparison of the enumerator with a predicted weight table."""
    pred: dict[int, int] = {}
    for row in predicted.rows:
        w = int(round(row.value))
        pred[w] = pred.get(w, 0) + row.frequency
    bad = []
    for w in sorted(set(pred) | set(observed.weights)):
        o, p_ = observed.weights.get(w, 0), pred.get(w, 0)
        if o != p_:
            bad.append((w, o, p_, observed.witnesses.get(w)))
    return WeightComparison(matches=not bad, mismatches=bad)


def in_exceptional_set(ctx: FieldCtx, params: ParamSet, u: int, v: int) -> bool:
    """u = -beta^m v^{p^{-i}} for some m in {0, 1, 2}."""
    w = ctx.frob_inverse_pow(v, params.i)
    return any(ctx.add(u, ctx.mul(w, ctx.exp(m * params.g))) == 0 for m in range(3))


@dataclass
class TripleSumReport:
    samples: int
    exceptional: int
    violations: list  # (u, v, observed sum as CycInt)

    @property
    def ok(self) -> bool:
        return not self.violations


def triple_sum(ctx: FieldCtx, params: ParamSet, u: int, v: int):
    total = None
    for j in range(3):
        vj = ctx.neg(ctx.mul(ctx.exp(j * params.g), v))
        w = exp_sum_W(ctx, u, vj, params.d)
        total = w if total is None else total + w
    return total


def triple_sum_check(ctx: FieldCtx, params: ParamSet, samples: int, *, seed: int = 0) -> TripleSumReport:
    """Check sum_j W_d(u, -beta^j v) is q on the exceptional set and 0 elsewhere.

    Every third sample is drawn from the exceptional set so both branches
    are exercised.
    """
    rng = random.Random(seed)
    q = ctx.q
    violations = []
    exceptional = 0
    for k in range(samples):
        v = rng.randrange(1, q)
        if k % 3 == 0:
            w = ctx.frob_inverse_pow(v, params.i)
            u = ctx.neg(ctx.mul(w, ctx.exp(rng.randrange(3) * params.g)))
        else:
            u = rng.randrange(q)
        hit = in_exceptional_set(ctx, params, u, v)
        exceptional += hit
        s = triple_sum(ctx, params, u, v)
        if s != (q if hit else 0):
            violations.append((u, v, s))
    return TripleSumReport(samples=samples, exceptional=exceptional, violations=violations)
