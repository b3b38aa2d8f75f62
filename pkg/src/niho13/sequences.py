"""Brute-force exponential sums W_d(u, v) and the cross-correlation spectrum.

For u = psi^tau the shift-tau cross-correlation of the m-sequence
s_t = Tr(psi^t) with its decimation s_{dt} is C_tau = W_d(u, 1) - 1, so the
whole spectrum is a sweep over tau of p-bin histograms of
Tr(psi^{t+tau}) - Tr(psi^{dt}) mod p.  Histograms are CycInt coefficient
vectors, so every value stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
import numpy as np

from .cycint import CycInt
from .field import FieldCtx
from .parallel import sweep
from .parameters import ParamSet

ORACLE_MAX_Q = 10_000


class GcdNotOne(ValueError):
    pass


class FieldTooLargeForOracle(ValueError):
    pass


@dataclass
class Distribution:
    """Multiset of exact values: CycInt -> frequency."""

    p: int
    entries: dict = field(default_factory=dict)

    @property
    def total_mass(self) -> int:
        return sum(self.entries.values())

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, value):
        if isinstance(value, int):
            value = CycInt.integer(self.p, value)
        return self.entries.get(value, 0)

    def add(self, value: CycInt, count: int = 1) -> None:
        self.entries[value.canonicalize()] = self.entries.get(value.canonicalize(), 0) + count

    def merge(self, other: "Distribution") -> "Distribution":
        out = Distribution(self.p, dict(self.entries))
        for k, c in other.entries.items():
            out.add(k, c)
        return out

    def shift(self, m: int) -> "Distribution":
        """Add the integer m to every value."""
        out = Distribution(self.p)
        for k, c in self.entries.items():
            out.add(k + m, c)
        return out

    def scale_counts(self, factor: int) -> "Distribution":
        return Distribution(self.p, {k: c * factor for k, c in self.entries.items()})

    def sorted_items(self) -> list[tuple[CycInt, int]]:
        def key(item):
            z = item[0].eval_numeric()
            return (round(z.real, 9), round(z.imag, 9), item[0].canonical_coeffs())
        return sorted(self.entries.items(), key=key)

    def as_integers(self) -> dict[int, int] | None:
        """{value: frequency} when every value is a rational integer."""
        out = {}
        for k, c in self.entries.items():
            m = k.as_integer()
            if m is None:
                return None
            out[m] = c
        return out

    def to_json(self) -> dict:
        rows = []
        for value, count in self.sorted_items():
            z = value.eval_numeric()
            m = value.as_integer()
            rows.append({
                "coeffs": value.to_json(),
                "integer": None if m is None else str(m),
                "numeric": [z.real, z.imag],
                "frequency": str(count),
            })
        return {"p": self.p, "total_mass": str(self.total_mass), "values": rows}


def distribution_from_counts(p: int, counts: np.ndarray) -> Distribution:
    canon = counts - counts[:, -1:]
    uniq, mult = np.unique(canon, axis=0, return_counts=True)
    dist = Distribution(p)
    for row, m in zip(uniq, mult):
        dist.add(CycInt(p, row), int(m))
    return dist


def exp_sum_W(ctx: FieldCtx, u: int, v: int, d: int) -> CycInt:
    """W_d(u, v) = sum over all x in F_q of zeta^{Tr(u x - v x^d)}."""
    x = ctx.elements()
    ux = ctx.mul(u, x)
    vxd = ctx.mul(v, ctx.pow(x, d))
    expo = (ctx.trace(ux) - ctx.trace(vxd)) % ctx.p
    return CycInt.from_counts(np.bincount(expo, minlength=ctx.p))


def m_sequence(ctx: FieldCtx) -> np.ndarray:
    """s_t = Tr(psi^t), t in [0, q-1)."""
    return ctx.trace_of_power


def decimated_sequence(ctx: FieldCtx, d: int) -> np.ndarray:
    """s'_t = s_{dt mod (q-1)}."""
    N = ctx.q - 1
    t = np.arange(N, dtype=np.int64)
    return ctx.trace_of_power[(d * t) % N]


def cross_corr_direct(ctx: FieldCtx, d: int, tau: int) -> CycInt:
    """C_tau straight from the two sequences."""
    s = m_sequence(ctx)
    s2 = decimated_sequence(ctx, d)
    expo = (np.roll(s, -tau) - s2) % ctx.p
    return CycInt.from_counts(np.bincount(expo, minlength=ctx.p))


def cross_corr_value(ctx: FieldCtx, d: int, tau: int) -> CycInt:
    """C_tau = W_d(psi^tau, 1) - 1."""
    return exp_sum_W(ctx, ctx.exp(tau), 1, d) - 1


def correlation_counts(ctx: FieldCtx, d: int, *, workers: int | None = None) -> np.ndarray:
    """(q-1, p) array; row tau is the zeta-power histogram of C_tau."""
    N = ctx.q - 1
    p = ctx.p
    s = m_sequence(ctx)
    s2 = decimated_sequence(ctx, d)
    doubled = np.concatenate([s, s])

    def block(a: int, b: int) -> np.ndarray:
        rows = b - a
        out = np.empty((rows, p), dtype=np.int64)
        for r, tau in enumerate(range(a, b)):
            expo = doubled[tau : tau + N] - s2
            expo %= p
            out[r] = np.bincount(expo, minlength=p)
        return out

    return sweep(block, N, workers=workers, block=max(64, N // 64))


def cross_corr_distribution(ctx: FieldCtx, d: int, *, workers: int | None = None) -> Distribution:
    return distribution_from_counts(ctx.p, correlation_counts(ctx, d, workers=workers))


def first_moment(ctx: FieldCtx, d: int, counts: np.ndarray | None = None) -> CycInt:
    """Sum of C_tau over all shifts (equals 1)."""
    if counts is None:
        counts = correlation_counts(ctx, d)
    return CycInt.from_counts(counts.sum(axis=0))


def w_distribution_over_plane(ctx: FieldCtx, d: int, *, workers: int | None = None,
                              counts: np.ndarray | None = None) -> Distribution:
    """Distribution of W_d(u, v) over all of F_q x F_q.

    For v != 0, W_d(u, v) = W_d(u v^{-1/d}, 1), so every nonzero-v slice is
    a copy of the v = 1 slice.  The v = 0 row contributes q at the origin
    and 0 elsewhere.
    """
    q = ctx.q
    if math.gcd(d, q - 1) != 1:
        raise GcdNotOne(f"gcd({d}, {q - 1}) != 1")
    if counts is None:
        counts = correlation_counts(ctx, d, workers=workers)
    counts = counts.copy()
    counts[:, 0] += 1  # the x = 0 term turns C_tau into W_d(psi^tau, 1)
    slice_v1 = distribution_from_counts(ctx.p, counts)
    slice_v1.add(CycInt.integer(ctx.p, 0), 1)  # u = 0
    plane = slice_v1.scale_counts(q - 1)
    plane.add(CycInt.integer(ctx.p, q), 1)
    plane.add(CycInt.integer(ctx.p, 0), q - 1)
    return plane


def shifted_differences(ctx: FieldCtx, params: ParamSet, u, v):
    """(u_0, u_1, u_2) with u_j = psi^j (u - v^{p^{-i}} beta^j), beta = psi^g."""
    w = ctx.frob_inverse_pow(v, params.i)
    out = []
    for j in range(3):
        bj = ctx.exp(j * params.g)
        out.append(ctx.mul(ctx.exp(j), ctx.sub(u, ctx.mul(w, bj))))
    return tuple(out)


def partition_counts(ctx: FieldCtx, params: ParamSet, *, max_q: int = ORACLE_MAX_Q) -> dict:
    """|S_{j,k,l}|: pairs (u, v) with all u_j nonzero, keyed by the classes of (u_0, u_1, u_2)."""
    q = ctx.q
    if q > max_q:
        raise FieldTooLargeForOracle(f"q={q} exceeds oracle ceiling {max_q}")
    u = ctx.elements()
    cells = np.zeros(27, dtype=np.int64)
    for v in range(q):
        u0, u1, u2 = shifted_differences(ctx, params, u, v)
        ok = (u0 != 0) & (u1 != 0) & (u2 != 0)
        key = (ctx.log[u0[ok]] % 3) * 9 + (ctx.log[u1[ok]] % 3) * 3 + ctx.log[u2[ok]] % 3
        cells += np.bincount(key, minlength=27)
    return {(j, k, l): int(cells[9 * j + 3 * k + l]) for j in range(3) for k in range(3) for l in range(3)}


def cubic_split_W(ctx: FieldCtx, params: ParamSet, u: int, v: int) -> CycInt:
    """3 W_d(u, v) rebuilt from three cubic sums over y in F_q.

    Each term is sum_y zeta^{Tr(y^3 u_j)}; nothing here evaluates x^d.
    """
    y = ctx.elements()
    cubes = ctx.pow(y, 3)
    total = CycInt.zero(ctx.p)
    for uj in shifted_differences(ctx, params, u, v):
        expo = ctx.trace(ctx.mul(uj, cubes))
        total = total + CycInt.from_counts(np.bincount(expo, minlength=ctx.p))
    return total
