"""Cubic cyclotomy of F_q: pair counts |C_{i,j}|, Gaussian periods, and the
number of solutions of a1 x1^3 + a2 x2^3 = c, each by enumeration and by
closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closed_form import QuadPartition, coefficients, exact_div
from .cycint import CycInt
from .field import FieldCtx
from .parameters import CaseTag


class NonIntegralCount(ArithmeticError):
    pass


class ZeroCoefficient(ValueError):
    pass


@dataclass(frozen=True)
class CyclotomyCounts:
    counts: tuple  # 3x3, counts[i][j] = |C_{i,j}|

    def __getitem__(self, ij):
        i, j = ij
        return self.counts[i][j]

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def to_json(self) -> list[list[str]]:
        return [[str(c) for c in row] for row in self.counts]


def count_cij_brute(ctx: FieldCtx) -> CyclotomyCounts:
    """Classify every x outside {0, -1} by (class(x+1), class(x))."""
    x = ctx.elements()[1:]
    x1 = ctx.add(x, 1)
    keep = x1 != 0
    x, x1 = x[keep], x1[keep]
    key = (ctx.log[x1] % 3) * 3 + ctx.log[x] % 3
    c = np.bincount(key, minlength=9)
    return CyclotomyCounts(tuple(tuple(int(c[3 * i + j]) for j in range(3)) for i in range(3)))


def closed_cij(quad: QuadPartition, n: int) -> CyclotomyCounts:
    q = quad.p**n
    c = coefficients(quad, n)
    c00 = exact_div(q + c.even - 8, 9, "|C_00|")
    c12 = exact_div(q + c.even + 1, 9, "|C_12|")
    c01 = exact_div(q + c.minus - 2, 9, "|C_01|")
    c02 = exact_div(q + c.plus - 2, 9, "|C_02|")
    return CyclotomyCounts((
        (c00, c01, c02),
        (c01, c02, c12),
        (c02, c12, c01),
    ))


@dataclass(frozen=True)
class GaussianPeriods:
    """Stored as the exact sums 3*eta_j = sum over y != 0 of zeta^{Tr(psi^j y^3)}."""

    three_eta: tuple  # of CycInt

    @property
    def numeric(self) -> tuple[float, float, float]:
        return tuple(x.eval_numeric().real / 3 for x in self.three_eta)

    def combination(self, a: int, b: int, shift: int) -> list[float]:
        """[a*eta_j + b*eta_{j+shift} for j = 0, 1, 2]."""
        eta = self.numeric
        return [a * eta[j] + b * eta[(j + shift) % 3] for j in range(3)]


def gaussian_periods(ctx: FieldCtx) -> GaussianPeriods:
    N = ctx.q - 1
    t = np.arange(N, dtype=np.int64)
    out = []
    for j in range(3):
        expo = ctx.trace_of_power[(j + 3 * t) % N]
        out.append(CycInt.from_counts(np.bincount(expo, minlength=ctx.p)))
    return GaussianPeriods(tuple(out))


def closed_period_sets(quad: QuadPartition, n: int) -> dict[str, list[float]]:
    """The four predicted three-element sets, keyed by the combination they describe."""
    amp = (-1) ** (n + 1) * quad.p ** (n / 2)
    phi = n * quad.theta / 3
    r3 = math.sqrt(3)
    return {
        "eta": [2 * amp / 3 * math.cos(phi - 2 * math.pi * l / 3) - 1 / 3 for l in range(3)],
        "2eta_j+eta_j+1": [2 * r3 * amp / 3 * math.cos(phi - math.pi * (4 * l + 1) / 6) - 1 for l in range(3)],
        "2eta_j+eta_j+2": [2 * r3 * amp / 3 * math.cos(phi - math.pi * (4 * l - 1) / 6) - 1 for l in range(3)],
        "eta_j+eta_j+1": [2 * amp / 3 * math.cos(phi - math.pi * (2 * l + 1) / 3) - 2 / 3 for l in range(3)],
    }


def observed_period_sets(periods: GaussianPeriods) -> dict[str, list[float]]:
    return {
        "eta": list(periods.numeric),
        "2eta_j+eta_j+1": periods.combination(2, 1, 1),
        "2eta_j+eta_j+2": periods.combination(2, 1, 2),
        "eta_j+eta_j+1": periods.combination(1, 1, 1),
    }


def multiset_distance(a, b) -> float:
    """Largest gap after pairing both lists in sorted order."""
    return max(abs(x - y) for x, y in zip(sorted(a), sorted(b)))


def diagonal_count_brute(ctx: FieldCtx, a1: int, a2: int, c: int) -> int:
    """#{(x1, x2) : a1 x1^3 + a2 x2^3 = c} by convolving value multiplicities."""
    if 0 in (a1, a2, c):
        raise ZeroCoefficient("a1, a2 and c must be nonzero")
    cubes = ctx.pow(ctx.elements(), 3)
    m1 = np.bincount(ctx.mul(a1, cubes), minlength=ctx.q)
    m2 = np.bincount(ctx.mul(a2, cubes), minlength=ctx.q)
    rest = ctx.sub(c, ctx.elements())
    return int(np.dot(m1, m2[rest]))


def diagonal_count_closed(quad: QuadPartition, n: int, class_product: int, delta_class: int) -> int:
    """Closed form of the diagonal count.

    class_product = ind(a1 a2 c) mod 3, delta_class = ind(a1 a2^2) mod 3.
    """
    q = quad.p**n
    try:
        co = coefficients(quad, n)
    except ArithmeticError as e:
        raise NonIntegralCount(str(e)) from e
    delta = -2 if delta_class % 3 == 0 else 1
    main = (co.even, co.minus, co.plus)[class_product % 3]
    return q + main + delta


def w_value_sets(periods: GaussianPeriods, case: CaseTag, q: int) -> tuple[set, set]:
    """Allowed values of 3*W_d(u, v) for v != 0, as exact CycInts.

    Returns (generic, special); the special values are those that occur
    once per v-slice.
    """
    e = periods.three_eta
    p = e[0].p
    one = CycInt.integer(p, 3)
    generic = {CycInt.zero(p)}
    for j in range(3):
        generic.add(3 * e[j] + one)
        generic.add(2 * e[j] + e[(j + 1) % 3] + one)
        generic.add(2 * e[j] + e[(j + 2) % 3] + one)
    special = set()
    for j in range(3):
        if case is CaseTag.CASE_ONE:
            special.add(2 * e[j] + (q + 2))
        else:
            special.add(e[j] + e[(j + 1) % 3] + (q + 2))
    return {x.canonicalize() for x in generic}, {x.canonicalize() for x in special}


def predicted_partition_cells(counts: CyclotomyCounts, g: int, q: int) -> dict:
    """|S_{j,k,l}| implied by the pair counts.

    u_2 ranges over a class ((q-1)/3 choices); u_1 then must make
    u_2/(psi beta^2 u_1) + 1 land in the right class, and that quotient is
    counted by one |C_{a,b}|.
    """
    c = (1 + 2 * g) % 3  # class of psi * beta^2
    out = {}
    for j in range(3):
        for k in range(3):
            for l in range(3):
                a = (j - k + c) % 3
                b = (l - k - c) % 3
                out[(j, k, l)] = (q - 1) // 3 * counts[a, b]
    return out
