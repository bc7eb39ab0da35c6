"""Univariate integer polynomials: Hensel lifting and irreducibility over Q.

Polynomials are dense lists, low degree first, exact integer coefficients.
Two consumers:

  * the irreducibility gate for ring construction: a fast mod-p certificate
    (irreducible mod some p <= 100 with full degree), then a factor-degree
    sieve across several primes, then a Zassenhaus fallback (Hensel lift one
    modular factorization and try subset recombinations) that is complete for
    the small degrees this package works at;

  * quadratic-factor lifting mod p^K for the local splitting analysis, via
    ``hensel_pair_lift`` (linear lifting of a coprime monic/cofactor pair).

Irreducibility is tested on the monicized polynomial a_0^(n-1) f(x/a_0),
which is irreducible over Q exactly when f is.
"""

from __future__ import annotations

import math

from .arith import primes_below
from .modp import (
    poly_divmod,
    poly_factor,
    poly_gcd,
    poly_mod,
    poly_mul,
    trim,
)

__all__ = [
    "zpoly_mul",
    "zpoly_divmod_exact",
    "hensel_pair_lift",
    "lift_factorization",
    "is_irreducible_poly",
]


def zpoly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def zpoly_divmod_exact(a: list[int], b: list[int]) -> list[int] | None:
    """Quotient a / b over Z when b is monic and divides a exactly, else None."""
    if not b or b[-1] != 1:
        raise ValueError("divisor must be monic")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return None if a else []
    q = [0] * (len(a) - db)
    for i in range(len(a) - db - 1, -1, -1):
        c = a[i + db]
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return q if not any(a[:db]) else None


def _sym(x: int, mod: int) -> int:
    x %= mod
    return x - mod if 2 * x > mod else x


def _poly_xgcd_modp(a, b, p):
    """(g, s, t) with s*a + t*b = g (monic) over F_p."""
    r0, r1 = trim([c % p for c in a]), trim([c % p for c in b])
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, trim([(x - y) % p for x, y in _zippad(s0, poly_mul(q, s1, p))])
        t0, t1 = t1, trim([(x - y) % p for x, y in _zippad(t0, poly_mul(q, t1, p))])
    if not r0:
        raise ZeroDivisionError("gcd of zero polynomials")
    inv = pow(r0[-1], p - 2, p)
    return (
        [c * inv % p for c in r0],
        [c * inv % p for c in s0],
        [c * inv % p for c in t0],
    )


def _zippad(a, b):
    la, lb = len(a), len(b)
    if la < lb:
        a = a + [0] * (lb - la)
    elif lb < la:
        b = b + [0] * (la - lb)
    return zip(a, b)


def hensel_pair_lift(f: list[int], g0: list[int], h0: list[int], p: int, K: int):
    """Lift f = g0*h0 (mod p) to f = g*h (mod p^K), g monic, g = g0 (mod p).

    Requires g0 monic and gcd(g0, h0) = 1 over F_p.  Linear lifting: one
    correction per power of p, using the fixed mod-p Bezout pair.
    """
    g0 = trim([c % p for c in g0])
    h0 = trim([c % p for c in h0])
    gcd, sigma, tau = _poly_xgcd_modp(g0, h0, p)
    if len(gcd) != 1:
        raise ValueError("factors are not coprime mod p")
    g = list(g0)
    h = list(h0)
    pj = p
    dg = len(g0) - 1
    for _ in range(K - 1):
        prod = zpoly_mul(g, h)
        e = [(x - y) for x, y in _zippad(f, prod)]
        assert all(c % pj == 0 for c in e), "lift invariant broken"
        ebar = trim([(c // pj) % p for c in e])
        u = poly_mod(poly_mul(tau, ebar, p), g0, p)
        rest = trim([(x - y) % p for x, y in _zippad(ebar, poly_mul(u, h0, p))])
        v, rem = poly_divmod(rest, g0, p)
        assert not rem, "inexact correction division"
        g = trim([x + pj * y for x, y in _zippad(g, u)])
        h = trim([x + pj * y for x, y in _zippad(h, v)])
        pj *= p
    assert len(g) - 1 == dg and g[-1] % pj == 1 % pj
    return g, h, pj


def lift_factorization(f: list[int], factors: list[list[int]], p: int, K: int) -> list[list[int]]:
    """Lift a pairwise-coprime monic factorization of monic f mod p to mod p^K."""
    if len(factors) == 1:
        pj = p**K
        return [[c % pj for c in f]]
    half = len(factors) // 2
    g0 = [1]
    for q in factors[:half]:
        g0 = poly_mul(g0, q, p)
    h0 = [1]
    for q in factors[half:]:
        h0 = poly_mul(h0, q, p)
    g, h, _ = hensel_pair_lift(f, g0, h0, p, K)
    return lift_factorization(g, factors[:half], p, K) + lift_factorization(
        h, factors[half:], p, K
    )


def _monicize(coeffs: list[int]) -> list[int]:
    """For f = a_0 x^n + ... + a_n (given low-first), return the monic
    a_0^(n-1) f(x/a_0), low-first."""
    n = len(coeffs) - 1
    lead = coeffs[-1]
    out = [coeffs[j] * lead ** (n - 1 - j) for j in range(n)]
    out.append(1)
    return out


def _subset_products(lifted: list[list[int]], pK: int, n: int):
    """Yield (mask, product mod pK) over subsets of the lifted factors,
    smallest sizes first, proper subsets only."""
    r = len(lifted)
    order = sorted(range(1, 1 << r), key=lambda m: bin(m).count("1"))
    for mask in order:
        size = bin(mask).count("1")
        if size > r // 2 or size == r:
            continue
        prod = [1]
        for i in range(r):
            if mask >> i & 1:
                prod = zpoly_mul(prod, lifted[i])
                prod = [c % pK for c in prod]
        yield mask, prod


def is_irreducible_poly(coeffs: list[int]) -> bool:
    """Irreducibility over Q of a degree-n integer polynomial (low-first).

    Complete for any degree in principle; tuned for the package's n <= 6.
    """
    c = trim([int(x) for x in coeffs])
    n = len(c) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    g = math.gcd(*c)
    c = [x // g for x in c]
    if c[0] == 0:
        return False  # x divides
    from .forms import BinaryForm, discriminant

    if discriminant(BinaryForm(n, tuple(reversed(c)))) == 0:
        return False  # repeated factor
    monic = _monicize(c)

    degree_sets: list[set[int]] | None = None
    best: tuple[int, int, list[list[int]]] | None = None
    usable = 0
    for p in primes_below(100):
        red = [x % p for x in monic]
        if len(trim(list(red))) - 1 != n:
            continue
        d = trim([(i * x) % p for i, x in enumerate(red)][1:])
        if len(poly_gcd(red, d, p)) != 1:
            continue  # not squarefree mod p
        _, facs = poly_factor(red, p)
        if len(facs) == 1 and facs[0][1] == 1:
            return True  # irreducible mod p certificate
        usable += 1
        degs = [len(q) - 1 for q, _ in facs]
        sums = {0}
        for d0 in degs:
            sums |= {s + d0 for s in sums}
        proper = {s for s in sums if 0 < s < n}
        degree_sets = proper if degree_sets is None else (degree_sets & proper)
        if not degree_sets:
            return True  # no consistent proper factor degree across primes
        if best is None or len(facs) < len(best[2]):
            best = (p, n, [q for q, _ in facs])
        if usable >= 7:
            break
    if best is None:
        raise ArithmeticError("no usable prime below 100; input too degenerate")

    # Zassenhaus fallback: lift the smallest factorization and recombine.
    p, _, facs = best
    norm2 = math.isqrt(sum(x * x for x in monic)) + 1
    bound = 2 ** (n + 1) * norm2
    K = 1
    while p**K <= 2 * bound:
        K += 1
    pK = p**K
    lifted = lift_factorization([x % pK for x in monic], facs, p, K)
    for _mask, prod in _subset_products(lifted, pK, n):
        cand = [_sym(x, pK) for x in prod]
        if zpoly_divmod_exact(list(monic), cand) is not None:
            return False
    return True
