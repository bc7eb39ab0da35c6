"""Exact integer arithmetic helpers shared across the package.

Everything here is deterministic: the Miller-Rabin bases are fixed, the
Pollard rho parameters are derived from the input, and the factor cache is
keyed on absolute values.  Factorisations are returned as {prime: exponent}
dictionaries over the positive primes; signs are the caller's problem.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "primes_below",
    "is_prime",
    "factorint",
    "squarefree_split",
    "mobius",
    "crt_pair",
    "crt",
    "modinv",
    "FactorBudgetError",
]

# Deterministic Miller-Rabin bases, valid for all n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_SMALL_PRIME_BOUND = 100_000
_small_primes_cache: list[int] | None = None


class FactorBudgetError(Exception):
    """Raised when a factorisation exceeds the configured effort budget."""

    def __init__(self, n: int, budget: int):
        super().__init__(f"factoring budget exceeded for |n|={abs(n)} (budget 10^{budget})")
        self.n = n
        self.budget = budget


def primes_below(bound: int) -> list[int]:
    """All primes < bound, by plain sieve of Eratosthenes."""
    if bound <= 2:
        return []
    sieve = bytearray([1]) * bound
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(bound) if sieve[i]]


def _small_primes() -> list[int]:
    global _small_primes_cache
    if _small_primes_cache is None:
        _small_primes_cache = primes_below(_SMALL_PRIME_BOUND)
    return _small_primes_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    # Deterministic parameter sweep; each (y0, c) pair gives an independent try.
    for c in range(1, 64):
        y, m, g, r, q = 2 + c, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                k += m
                g = math.gcd(q, n)
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise FactorBudgetError(n, 0)


def factorint(n: int, budget_digits: int = 30) -> dict[int, int]:
    """Complete factorisation of |n| into {prime: exponent}.

    budget_digits caps the size of composites we are willing to attack with
    Pollard rho after trial division; beyond it a FactorBudgetError is raised
    so callers can route the input to an "unresolved" path instead of hanging.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    if len(str(n)) > budget_digits:
        raise FactorBudgetError(n, budget_digits)
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        # m is composite and coprime to all small primes: perfect-power check
        # first, then rho.
        for e in range(2, m.bit_length()):
            r = round(m ** (1.0 / e))
            for cand in (r - 1, r, r + 1):
                if cand > 1 and cand**e == m:
                    stack.extend([cand] * e)
                    m = 1
                    break
            if m == 1:
                break
        if m == 1:
            continue
        d = _pollard_brent(m)
        stack.append(d)
        stack.append(m // d)
    return out


def squarefree_split(n: int, budget_digits: int = 30) -> tuple[int, int]:
    """Write |n| = s * t**2 with s squarefree; returns (s, t)."""
    fac = factorint(n, budget_digits)
    s = t = 1
    for p, e in fac.items():
        t *= p ** (e // 2)
        if e % 2:
            s *= p
    return s, t


def mobius(n: int) -> int:
    fac = factorint(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def modinv(a: int, m: int) -> int:
    g, x, _ = _xgcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} not invertible mod {m}")
    return x % m


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine x = r1 (mod m1), x = r2 (mod m2) for coprime moduli."""
    g = math.gcd(m1, m2)
    if g != 1:
        raise ValueError("crt_pair needs coprime moduli")
    m = m1 * m2
    x = (r1 + (r2 - r1) * modinv(m1, m2) % m2 * m1) % m
    return x, m


def crt(residues: list[int], moduli: list[int]) -> tuple[int, int]:
    x, m = 0, 1
    for r, mm in zip(residues, moduli):
        x, m = crt_pair(x, m, r % mm, mm)
    return x, m


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)
