"""Parameter triples (p, n, i) and the decimation d = (p^n - 1)/3 + p^i."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class ParameterError(ValueError):
    """Base class for rejected parameter triples."""


class NotPrime(ParameterError):
    pass


class PNotOneModThree(ParameterError):
    pass


class GModThreeIsTwo(ParameterError):
    """The decimation is inadmissible: g = p^{-i}(p^n-1)/3 is 2 mod 3."""


class IOutOfRange(ParameterError):
    pass


class CaseTag(enum.Enum):
    CASE_ONE = "CaseOne"  # g = 1 (mod 3)
    CASE_ZERO = "CaseZero"  # g = 0 (mod 3)


def is_prime(m: int) -> bool:
    """Deterministic trial division; fine for m < 2**32."""
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    for f in range(3, math.isqrt(m) + 1, 2):
        if m % f == 0:
            return False
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of m, ascending."""
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return out


def g_exponent(p: int, n: int, i: int) -> int:
    q = p**n
    return ((q - 1) // 3) * pow(p, n - i, q - 1) % (q - 1)


@dataclass(frozen=True)
class ParamSet:
    p: int
    n: int
    i: int
    q: int
    d: int
    g: int
    case: CaseTag

    @property
    def order(self) -> int:
        """Size q - 1 of the multiplicative group."""
        return self.q - 1

    @property
    def d_inverse(self) -> int:
        return pow(self.d, -1, self.q - 1)


def validate_params(p: int, n: int, i: int) -> ParamSet:
    if not is_prime(p) or p < 5:
        raise NotPrime(f"p={p} is not a prime >= 5")
    if p % 3 != 1:
        raise PNotOneModThree(f"p={p} is {p % 3} mod 3, need 1")
    if n < 1 or not 0 <= i < n:
        raise IOutOfRange(f"need n >= 1 and 0 <= i < n, got n={n}, i={i}")
    q = p**n
    g = g_exponent(p, n, i)
    if g % 3 == 2:
        raise GModThreeIsTwo(f"(p,n,i)=({p},{n},{i}): g={g} is 2 mod 3")
    d = (q - 1) // 3 + p**i
    if math.gcd(d, q - 1) != 1:
        raise AssertionError(f"gcd(d, q-1) != 1 for admissible ({p},{n},{i})")
    case = CaseTag.CASE_ONE if g % 3 == 1 else CaseTag.CASE_ZERO
    return ParamSet(p=p, n=n, i=i, q=q, d=d, g=g, case=case)


def admissible_triples(max_q: int):
    """Yield every admissible ParamSet with q <= max_q, ordered by (p, n, i)."""
    for p in range(7, max_q + 1, 6):
        if not is_prime(p):
            continue
        n = 1
        while p**n <= max_q:
            for i in range(n):
                try:
                    yield validate_params(p, n, i)
                except GModThreeIsTwo:
                    pass
            n += 1
