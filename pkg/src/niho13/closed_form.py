"""Closed-form predictions: the partition 4p = u^2 + 3v^2, the binomial sums
E and O, and the predicted value/frequency tables for the correlation
spectrum and for the weight enumerator of the cyclic code C_{1,d}.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .field import FieldCtx
from .parameters import CaseTag, ParamSet


class NoPartitionFound(ArithmeticError):
    pass


class NonIntegralFrequency(ArithmeticError):
    pass


class NonIntegralWeight(ArithmeticError):
    pass


def exact_div(num: int, den: int, what: str = "frequency", exc=NonIntegralFrequency) -> int:
    if num % den:
        raise exc(f"{what}: {num} is not divisible by {den}")
    return num // den


def v2(m: int) -> int:
    """2-adic valuation of a nonzero integer."""
    return (m & -m).bit_length() - 1


@dataclass(frozen=True)
class QuadPartition:
    p: int
    u: int
    v: int
    theta: float
    omega_p: int


def primitive_cube_roots(p: int) -> tuple[int, int]:
    """The two roots of x^2 + x + 1 mod p, ascending."""
    if p % 3 != 1:
        raise ValueError(f"p={p} has no primitive cube roots of unity")
    for x in range(2, p):
        w = pow(x, (p - 1) // 3, p)
        if w != 1:
            return tuple(sorted((w, w * w % p)))
    raise ValueError(f"p={p} has no primitive cube roots of unity")


def solve_quad_partition_for(p: int, omega_p: int) -> QuadPartition:
    """Normalize 4p = u^2 + 3v^2 with u = 1, v = 0 (mod 3) and 3v = u(2*omega+1) (mod p)."""
    if (omega_p * omega_p + omega_p + 1) % p:
        raise ValueError(f"{omega_p} is not a primitive cube root of unity mod {p}")
    found = []
    vmax = math.isqrt(4 * p // 3)
    for v in range(-vmax, vmax + 1):
        if v % 3:
            continue
        rest = 4 * p - 3 * v * v
        u = math.isqrt(rest)
        if u * u != rest:
            continue
        for su in {u, -u}:
            if su % 3 == 1 and (3 * v - su * (2 * omega_p + 1)) % p == 0:
                found.append((su, v))
    if len(found) != 1:
        raise NoPartitionFound(f"p={p}, omega={omega_p}: candidates {found}")
    u, v = found[0]
    theta = math.copysign(math.acos(u / (2 * math.sqrt(p))), v)
    return QuadPartition(p=p, u=u, v=v, theta=theta, omega_p=omega_p)


def solve_quad_partition(ctx: FieldCtx) -> QuadPartition:
    if ctx.p % 3 != 1:
        raise ValueError("needs p = 1 (mod 3)")
    return solve_quad_partition_for(ctx.p, ctx.omega_p)


def other_branch(quad: QuadPartition) -> QuadPartition:
    """The partition a primitive element with the conjugate cube root would give."""
    return solve_quad_partition_for(quad.p, quad.p - 1 - quad.omega_p)


def eval_E(u: int, v: int, n: int) -> int:
    total = u**n
    for t in range(2, n + 1, 2):
        term = comb(n, t) * u ** (n - t) * v**t * 3 ** (t // 2)
        total += -term if v2(t) == 1 else term
    return total


def eval_O(u: int, v: int, n: int) -> int:
    total = 0
    for t in range(1, n + 1, 2):
        term = comb(n, t) * u ** (n - t) * v**t * 3 ** ((t + 1) // 2)
        total += term if v2(t + 1) == 1 else -term
    return total


@dataclass(frozen=True)
class Coefficients:
    """The three normalized corrections appearing in every count formula."""

    E: int
    O: int
    even: int  # (-1)^{n-1} E / 2^{n-1}
    minus: int  # (-1)^n (E - O) / 2^n
    plus: int  # (-1)^n (E + O) / 2^n


def coefficients(quad: QuadPartition, n: int) -> Coefficients:
    E = eval_E(quad.u, quad.v, n)
    O = eval_O(quad.u, quad.v, n)
    sign = -1 if n % 2 else 1
    return Coefficients(
        E=E,
        O=O,
        even=-sign * exact_div(E, 2 ** (n - 1), "E / 2^(n-1)"),
        minus=sign * exact_div(E - O, 2**n, "(E - O) / 2^n"),
        plus=sign * exact_div(E + O, 2**n, "(E + O) / 2^n"),
    )


@dataclass(frozen=True)
class PredictionRow:
    family: str
    l: Optional[int]
    value: float
    frequency: int

    def to_json(self) -> dict:
        return {"family": self.family, "l": self.l, "value": self.value, "frequency": str(self.frequency)}


@dataclass
class PredictionTable:
    kind: str  # "correlation" or "weights"
    case: CaseTag
    rows: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(r.frequency for r in self.rows)

    def merged(self, tol: float) -> list[tuple[float, int, list]]:
        """Rows grouped by numeric value (chains closer than tol collapse)."""
        rows = sorted(self.rows, key=lambda r: r.value)
        groups: list[list] = []
        for r in rows:
            if groups and abs(r.value - groups[-1][-1].value) < tol:
                groups[-1].append(r)
            else:
                groups.append([r])
        return [(sum(r.value for r in g) / len(g), sum(r.frequency for r in g), g) for g in groups]

    def to_json(self) -> dict:
        return {"kind": self.kind, "case": self.case.value, "total": str(self.total),
                "rows": [r.to_json() for r in self.rows]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "l", "value" if self.kind == "correlation" else "weight", "frequency"])
        for r in self.rows:
            w.writerow([r.family, "" if r.l is None else r.l, repr(r.value), r.frequency])
        return buf.getvalue()


def _families(params: ParamSet, quad: QuadPartition):
    """(family, l, value) for the twelve cosine-family correlation values."""
    n, q = params.n, params.q
    amp = (-1) ** (n + 1) * quad.p ** (n / 2)
    phi = n * quad.theta / 3
    out = []
    for l in range(3):
        out.append(("cos", l, 2 * amp * math.cos(phi - 2 * math.pi * l / 3) - 1))
    for l in range(3):
        out.append(("sin+", l, 2 * math.sqrt(3) / 3 * amp * math.cos(phi - math.pi * (4 * l + 1) / 6) - 1))
    for l in range(3):
        out.append(("sin-", l, 2 * math.sqrt(3) / 3 * amp * math.cos(phi - math.pi * (4 * l - 1) / 6) - 1))
    for l in range(3):
        if params.case is CaseTag.CASE_ONE:
            val = 4 * amp / 3 * math.cos(phi - 2 * math.pi * l / 3) + (q - 3) / 3
        else:
            val = 2 * amp / 3 * math.cos(phi - math.pi * (2 * l + 1) / 3) + (q - 3) / 3
        out.append(("peak", l, val))
    return out


def correlation_frequencies(params: ParamSet, quad: QuadPartition) -> dict[str, int]:
    q = params.q
    c = coefficients(quad, params.n)
    if params.case is CaseTag.CASE_ONE:
        base = q + c.even - 8
        minus_one = exact_div(2 * base, 9, "frequency of -1")
        cos = exact_div(base, 27, "cos family")
    else:
        minus_one = exact_div(2 * q + 2 * c.even - 25, 9, "frequency of -1")
        cos = exact_div(q + c.even + 1, 27, "cos family")
    return {
        "minus_one": minus_one,
        "cos": cos,
        "sin+": exact_div(q + c.minus - 2, 9, "sin+ family"),
        "sin-": exact_div(q + c.plus - 2, 9, "sin- family"),
        "peak": 1,
    }


def correlation_table(params: ParamSet, quad: QuadPartition) -> PredictionTable:
    """Predicted cross-correlation values and their frequencies (13 rows)."""
    freq = correlation_frequencies(params, quad)
    table = PredictionTable(kind="correlation", case=params.case)
    table.rows.append(PredictionRow("minus_one", None, -1.0, freq["minus_one"]))
    for fam, l, val in _families(params, quad):
        table.rows.append(PredictionRow(fam, l, val, freq[fam]))
    if table.total != params.q - 1:
        raise NonIntegralFrequency(f"frequencies sum to {table.total}, expected {params.q - 1}")
    return table


def _integral_weight(w: float, tol: float) -> int:
    r = round(w)
    if abs(w - r) > tol:
        raise NonIntegralWeight(f"weight {w!r} is not an integer")
    return int(r)


def weight_table(params: ParamSet, quad: QuadPartition) -> PredictionTable:
    """Predicted weight distribution of C_{1,d}, zero word included."""
    p, n, q = params.p, params.n, params.q
    base = p ** (n - 1) * (p - 1)
    table = PredictionTable(kind="weights", case=params.case)
    table.rows.append(PredictionRow("zero", None, 0.0, 1))
    if n % 3:
        table.rows.append(PredictionRow("base", None, float(base), (q - 2) * (q - 1)))
        table.rows.append(PredictionRow("low", None, float(exact_div(2 * (p - 1) * p ** (n - 1), 3, "weight",
                                                                      NonIntegralWeight)), 3 * (q - 1)))
    else:
        if params.case is not CaseTag.CASE_ZERO:
            raise AssertionError("n = 0 (mod 3) forces g = 0 (mod 3)")
        c = coefficients(quad, n)
        table.rows.append(PredictionRow("base", None, float(base),
                                        exact_div((q - 1) * (2 * q + 2 * c.even - 7), 9, "base weight count")))
        freq = correlation_frequencies(params, quad)
        tol = 1e-6 * p ** (n / 2)
        for fam, l, val in _families(params, quad):
            # weight = p^{n-1}(p-1) - ((p-1)/p) * W with W = C + 1
            w = _integral_weight(base - (p - 1) / p * (val + 1), tol)
            table.rows.append(PredictionRow(fam, l, float(w), (q - 1) * freq[fam]))
    if table.total != q * q:
        raise NonIntegralFrequency(f"codeword counts sum to {table.total}, expected {q * q}")
    return table

