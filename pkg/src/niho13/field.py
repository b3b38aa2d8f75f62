"""Fully tabulated finite fields F_{p^n}.

Elements are integer codes in [0, q): the base-p digits of a code are the
coefficients (constant term first) of a polynomial reduced modulo the field
modulus.  Every operation below accepts either a Python int or a numpy
integer array of codes.
"""

from __future__ import annotations

import numpy as np

from .parameters import is_prime, prime_factors

DEFAULT_MAX_Q = 20_000_000


class FieldError(Exception):
    pass


class FieldTooLarge(FieldError):
    def __init__(self, q: int, ceiling: int):
        super().__init__(f"q={q} exceeds the configured ceiling {ceiling}")
        self.q = q
        self.ceiling = ceiling


class InternalIrreducibleSearchExhausted(FieldError):
    pass


class LogOfZero(FieldError, ValueError):
    pass


# -- polynomials over F_p: coefficient lists, constant term first -----------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, f, p):
    a = _trim(list(a))
    inv = pow(f[-1], -1, p)
    while len(a) >= len(f):
        c = a[-1] * inv % p
        shift = len(a) - len(f)
        for k, fk in enumerate(f):
            a[shift + k] = (a[shift + k] - c * fk) % p
        _trim(a)
    return a


def poly_mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return poly_mod(out, f, p)


def poly_powmod(a, e, f, p):
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    return a


def is_irreducible(f, p) -> bool:
    """Rabin's test for a monic f of degree n over F_p."""
    n = len(f) - 1
    if n == 1:
        return True
    x = [0, 1]
    if poly_powmod(x, p**n, f, p) != x:
        return False
    for r in prime_factors(n):
        h = poly_powmod(x, p ** (n // r), f, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(poly_gcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n whose lower coefficients form the smallest code."""
    for k in range(p**n):
        low = [(k // p**j) % p for j in range(n)]
        f = low + [1]
        if n > 1 and low[0] == 0:
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise InternalIrreducibleSearchExhausted(f"no irreducible of degree {n} over F_{p}")


def _code_to_poly(code: int, p: int, n: int):
    return _trim([(code // p**j) % p for j in range(n)])


def _poly_to_code(a, p: int) -> int:
    return sum(int(c) * p**j for j, c in enumerate(a))


class FieldCtx:
    """F_{p^n} with log/antilog/trace tables.  Immutable after construction."""

    def __init__(self, p, n, modulus, psi, antilog, log, trace_table):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        self.psi = psi
        self.antilog = antilog
        self.log = log
        self.trace_table = trace_table
        for arr in (antilog, log, trace_table):
            arr.flags.writeable = False
        third = self.antilog[(self.q - 1) // 3] if (self.q - 1) % 3 == 0 else None
        self.omega_p = None if third is None else int(third)
        # Tr(psi^t): the m-sequence itself.
        self.trace_of_power = trace_table[antilog]
        self.trace_of_power.flags.writeable = False

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={self.modulus}, psi={self.psi})"

    @property
    def order(self) -> int:
        return self.q - 1

    # -- additive structure, digitwise mod p
    def add(self, a, b):
        return self._digitwise(a, b, 1)

    def sub(self, a, b):
        return self._digitwise(a, b, -1)

    def neg(self, a):
        return self._digitwise(0, a, -1)

    def _digitwise(self, a, b, sign):
        p = self.p
        out = 0
        pw = 1
        for _ in range(self.n):
            out = out + ((a // pw) % p + sign * ((b // pw) % p)) % p * pw
            pw *= p
        return out

    def scale(self, c: int, a):
        """Multiply by a prime-field scalar c."""
        p = self.p
        out = 0
        pw = 1
        for _ in range(self.n):
            out = out + (c * ((a // pw) % p)) % p * pw
            pw *= p
        return out

    # -- multiplicative structure through the tables
    def exp(self, t):
        """psi^t for any integer exponent t."""
        return self.antilog[np.mod(t, self.q - 1)] if isinstance(t, np.ndarray) else int(self.antilog[t % (self.q - 1)])

    def dlog(self, x):
        """ind_psi(x) in [0, q-1)."""
        if isinstance(x, np.ndarray):
            if np.any(x == 0):
                raise LogOfZero("discrete log of 0")
            return self.log[x]
        if x == 0:
            raise LogOfZero("discrete log of 0")
        return int(self.log[x])

    def mul(self, a, b):
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            a = np.asarray(a, dtype=np.int64)
            b = np.asarray(b, dtype=np.int64)
            out = self.antilog[(self.log[a] + self.log[b]) % (self.q - 1)]
            return np.where((a == 0) | (b == 0), 0, out)
        if a == 0 or b == 0:
            return 0
        return int(self.antilog[(int(self.log[a]) + int(self.log[b])) % (self.q - 1)])

    def pow(self, a, e: int):
        """a^e; e may be negative for nonzero a."""
        if isinstance(a, np.ndarray):
            out = self.antilog[(self.log[a] * (e % (self.q - 1))) % (self.q - 1)]
            if e == 0:
                return np.ones_like(a)
            return np.where(a == 0, 0, out)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        return int(self.antilog[(int(self.log[a]) * e) % (self.q - 1)])

    def inv(self, a):
        return self.pow(a, -1)

    def cubic_class(self, x):
        """j in {0,1,2} with x in psi^j <psi^3>."""
        return self.dlog(x) % 3

    def trace(self, x):
        if isinstance(x, np.ndarray):
            return self.trace_table[x]
        return int(self.trace_table[x])

    def frob_inverse_pow(self, v, i: int):
        """v^{p^{n-i}}: the unique element whose p^i-th power is v."""
        return self.pow(v, pow(self.p, (self.n - i) % self.n, self.q - 1))

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)


def _mul_matrix(c, f, p, n) -> np.ndarray:
    """Matrix of x -> c*x on coefficient vectors (columns are images of x^j)."""
    m = np.zeros((n, n), dtype=np.int64)
    col = poly_mod(c, f, p)
    for j in range(n):
        m[: len(col), j] = col
        col = poly_mulmod(col, [0, 1], f, p)
    return m


def _digits(codes: np.ndarray, p: int, n: int) -> np.ndarray:
    return np.stack([(codes // p**j) % p for j in range(n)], axis=1)


def _undigits(dig: np.ndarray, p: int) -> np.ndarray:
    weights = p ** np.arange(dig.shape[1], dtype=np.int64)
    return dig @ weights


def _is_primitive(code: int, f, p: int, n: int) -> bool:
    q = p**n
    a = _code_to_poly(code, p, n)
    if not a:
        return False
    if q == 2:
        return True
    for r in prime_factors(q - 1):
        if poly_powmod(a, (q - 1) // r, f, p) == [1]:
            return False
    return True


def build_field(p: int, n: int, *, max_q: int = DEFAULT_MAX_Q) -> FieldCtx:
    """Tabulate F_{p^n}.

    The modulus is the first monic irreducible in code order of its lower
    coefficients and psi is the smallest primitive code, so every run
    builds the same tables.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    q = p**n
    if q > max_q:
        raise FieldTooLarge(q, max_q)
    f = list(smallest_irreducible(p, n))
    psi = next((c for c in range(1, q) if _is_primitive(c, f, p, n)), None)
    if psi is None:
        raise InternalIrreducibleSearchExhausted("no primitive element found")

    antilog = np.empty(q - 1, dtype=np.int64)
    antilog[0] = 1
    filled = 1
    psi_poly = _code_to_poly(psi, p, n)
    while filled < q - 1:
        step = min(filled, q - 1 - filled)
        shift = _mul_matrix(poly_powmod(psi_poly, filled, f, p), f, p, n)
        block = _digits(antilog[:step], p, n) @ shift.T % p
        antilog[filled : filled + step] = _undigits(block, p)
        filled += step

    log = np.zeros(q, dtype=np.int64)
    log[antilog] = np.arange(q - 1, dtype=np.int64)
    if len(np.unique(antilog)) != q - 1 or np.any(antilog == 0):
        raise FieldError("antilog table is not a bijection onto nonzero codes")

    basis_traces = np.array(
        [int(np.trace(_mul_matrix(_code_to_poly(p**j, p, n), f, p, n))) % p for j in range(n)],
        dtype=np.int64,
    )
    trace_table = np.zeros(q, dtype=np.int64)
    chunk = 1 << 20
    for start in range(0, q, chunk):
        codes = np.arange(start, min(q, start + chunk), dtype=np.int64)
        trace_table[start : start + len(codes)] = _digits(codes, p, n) @ basis_traces % p

    return FieldCtx(p, n, tuple(f), psi, antilog, log, trace_table)
