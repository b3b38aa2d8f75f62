"""Exact elements of Z[zeta_p], zeta_p = exp(2*pi*i/p).

A value is stored as p integer coefficients c_0..c_{p-1} of powers of
zeta_p.  Since 1 + zeta + ... + zeta^{p-1} = 0 the representation is not
unique; the canonical form is the one with c_{p-1} = 0.  Equality and
hashing always go through the canonical form.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np


class CycInt:
    __slots__ = ("p", "coeffs", "_canon")

    def __init__(self, p: int, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != p:
            raise ValueError(f"expected {p} coefficients, got {len(coeffs)}")
        self.p = p
        self.coeffs = coeffs
        self._canon = None

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p, (0,) * p)

    @classmethod
    def integer(cls, p: int, m: int) -> "CycInt":
        return cls(p, (m,) + (0,) * (p - 1))

    @classmethod
    def root(cls, p: int, k: int) -> "CycInt":
        c = [0] * p
        c[k % p] = 1
        return cls(p, c)

    @classmethod
    def from_counts(cls, counts) -> "CycInt":
        """Sum of zeta^k with multiplicity counts[k]."""
        counts = [int(c) for c in counts]
        return cls(len(counts), counts)

    def canonicalize(self) -> "CycInt":
        if self._canon is None:
            top = self.coeffs[-1]
            if top == 0:
                self._canon = self
            else:
                canon = CycInt(self.p, (c - top for c in self.coeffs))
                canon._canon = canon
                self._canon = canon
        return self._canon

    def canonical_coeffs(self) -> tuple[int, ...]:
        return self.canonicalize().coeffs

    def accumulate_root(self, k: int, m: int = 1) -> "CycInt":
        """self + m * zeta^k."""
        c = list(self.coeffs)
        c[k % self.p] += m
        return CycInt(self.p, c)

    def as_integer(self) -> Optional[int]:
        """The rational integer this equals, or None if it is irrational."""
        c = self.canonical_coeffs()
        if any(c[1:]):
            return None
        return c[0]

    def eval_numeric(self) -> complex:
        """Double-precision value; error is at most about p * max|c_k| * 2**-50."""
        c = np.array(self.canonical_coeffs(), dtype=np.float64)
        k = np.arange(self.p)
        roots = np.exp(2j * np.pi * k / self.p)
        return complex(np.dot(c, roots))

    def galois(self, m: int) -> "CycInt":
        """Image under the automorphism zeta -> zeta^m, gcd(m, p) = 1."""
        if m % self.p == 0:
            raise ValueError("m must be a unit mod p")
        c = [0] * self.p
        for k, ck in enumerate(self.coeffs):
            c[k * m % self.p] += ck
        return CycInt(self.p, c)

    def conjugate(self) -> "CycInt":
        return self.galois(-1)

    def _check(self, other):
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        if not isinstance(other, CycInt) or other.p != self.p:
            raise TypeError("operands must be CycInts over the same p")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CycInt(self.p, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, (-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, (other * a for a in self.coeffs))
        other = self._check(other)
        c = [0] * self.p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    c[(i + j) % self.p] += a * b
        return CycInt(self.p, c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.canonical_coeffs() == other.canonical_coeffs()

    def __hash__(self):
        return hash((self.p, self.canonical_coeffs()))

    def __repr__(self):
        m = self.as_integer()
        if m is not None:
            return f"CycInt(p={self.p}, {m})"
        return f"CycInt(p={self.p}, {list(self.canonical_coeffs())})"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.canonical_coeffs()]

    @classmethod
    def from_json(cls, data: list[str]) -> "CycInt":
        return cls(len(data), (int(s) for s in data))


def canonicalize(x: CycInt) -> CycInt:
    return x.canonicalize()


def accumulate_root(acc: CycInt, k: int, m: int) -> CycInt:
    return acc.accumulate_root(k, m)


def as_integer(x: CycInt) -> Optional[int]:
    return x.as_integer()


def eval_numeric(x: CycInt) -> complex:
    return x.eval_numeric()


def error_bound(x: CycInt) -> float:
    return x.p * max(abs(c) for c in x.canonical_coeffs()) * 2.0**-50
