"""Polynomials and binary forms over F_p.

Affine polynomials are dense coefficient lists, low degree first (``c[j]``
multiplies x^j), always trimmed so the last entry is nonzero; [] is zero.
Binary forms keep the package's leading-first convention.

A degree-n form reduces mod p to y^k * u * prod q_i(x,y)^{e_i} where k is the
multiplicity of the point at infinity, u a unit and the q_i monic-in-x
irreducibles.  ``factor_modp`` computes that decomposition (squarefree
decomposition, then distinct-degree and equal-degree splitting; for p below
2^16 linear factors are taken out first by an exhaustive root scan).  All
choices in the splitting are deterministic and the output ordering is fixed
by (degree, coefficient vector).

``double_root_profile`` classifies the multiple points of the reduction:
either none (smooth), a unique affine rational double point, a double point
at infinity only, or "strongly divisible" (a rational triple point, or at
least two double points of P^1 over the algebraic closure).

``profile_code`` is an independent scan-based classifier of the same
trichotomy used by the sieve and the brute-force density counts; the two
implementations cross-check each other in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import mobius
from .forms import BinaryForm

__all__ = [
    "FactorModP",
    "DoubleRootProfile",
    "factor_modp",
    "double_root_profile",
    "count_H",
    "singular_density",
    "profile_code",
    "SMOOTH",
    "UNIQUE_AFFINE",
    "DOUBLE_INF",
    "STRONG",
]

SMOOTH = "smooth"
UNIQUE_AFFINE = "unique-affine-rational-double"
DOUBLE_INF = "double-at-infinity"
STRONG = "strongly-divisible"

REASON_TRIPLE = "rational-triple"
REASON_TWO_DOUBLES = "two-double-points"

ROOT_SCAN_BOUND = 1 << 16


# ----------------------------------------------------------------------
# dense univariate arithmetic over F_p (low-degree-first lists)

def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def poly_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def poly_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return [], trim(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        c = a[i + db] % p
        if c:
            c = c * inv % p
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return trim(q), trim(a)


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def poly_powmod(a, e, mod, p):
    r = [1]
    a = poly_mod(a, mod, p)
    while e:
        if e & 1:
            r = poly_mod(poly_mul(r, a, p), mod, p)
        a = poly_mod(poly_mul(a, a, p), mod, p)
        e >>= 1
    return r


def poly_deriv(a, p):
    return trim([(i * c) % p for i, c in enumerate(a)][1:])


def poly_monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def poly_eval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def poly_pth_root(a, p):
    """For a = h(x^p) (zero derivative), return h; uses c^p = c over F_p."""
    return trim([a[i] for i in range(0, len(a), p)])


# ----------------------------------------------------------------------
# factorization

def _squarefree_decomposition(g, p):
    """g monic -> list of (monic squarefree part, multiplicity)."""
    if len(g) <= 1:
        return []
    out = []
    d = poly_deriv(g, p)
    if not d:
        for q, m in _squarefree_decomposition(poly_pth_root(g, p), p):
            out.append((q, m * p))
        return out
    c = poly_gcd(g, d, p)
    w = poly_divmod(g, c, p)[0]
    i = 1
    while len(w) > 1:
        y = poly_gcd(w, c, p)
        fac = poly_divmod(w, y, p)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = poly_divmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        for q, m in _squarefree_decomposition(poly_pth_root(c, p), p):
            out.append((q, m * p))
    return out


def _ddf(g, p):
    """Distinct-degree split of squarefree monic g -> list of (product, d)."""
    out = []
    h = [0, 1]  # x
    d = 0
    while len(g) - 1 > 2 * (d + 1) - 1:
        d += 1
        h = poly_powmod(h, p, g, p)
        sub = list(h)
        if len(sub) < 2:
            sub = sub + [0] * (2 - len(sub))
        sub[1] = (sub[1] - 1) % p
        gd = poly_gcd(g, trim(sub), p)
        if len(gd) > 1:
            out.append((gd, d))
            g = poly_divmod(g, gd, p)[0]
            h = poly_mod(h, g, p)
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def _poly_counter(j, d, p):
    """j-th element of a fixed enumeration of polynomials of degree < d."""
    coeffs = []
    for _ in range(d):
        coeffs.append(j % p)
        j //= p
    return trim(coeffs)


def _edf(g, d, p):
    """Equal-degree split: g squarefree monic, all factors of degree d."""
    if len(g) - 1 == d:
        return [g]
    stack = [g]
    done = []
    attempt = 1
    while stack:
        q = stack.pop()
        if len(q) - 1 == d:
            done.append(q)
            continue
        split = None
        while split is None:
            if attempt > 64 * p ** min(d, 8):
                raise RuntimeError("equal-degree splitting exhausted its attempt budget")
            a = _poly_counter(attempt, len(q) - 1, p)
            attempt += 1
            if len(a) <= 1:
                continue
            if p == 2:
                # trace map T(a) = a + a^2 + ... + a^(2^(d-1)) splits q
                t = list(a)
                acc = list(a)
                for _ in range(d - 1):
                    acc = poly_mod(poly_mul(acc, acc, p), q, p)
                    t = poly_add(t, acc, p)
                cand = poly_gcd(q, t, p)
            else:
                t = poly_powmod(a, (p**d - 1) // 2, q, p)
                t = list(t) if t else [0]
                t[0] = (t[0] - 1) % p
                cand = poly_gcd(q, trim(t), p)
            if 0 < len(cand) - 1 < len(q) - 1:
                split = cand
        stack.append(split)
        stack.append(poly_divmod(q, split, p)[0])
    return done


def poly_factor(g, p):
    """Factor g over F_p: (unit, [(monic irreducible, multiplicity), ...])."""
    g = trim([c % p for c in g])
    if not g:
        raise ValueError("cannot factor the zero polynomial")
    unit = g[-1]
    g = poly_monic(g, p)
    factors = []
    for sq, mult in _squarefree_decomposition(g, p):
        if p < ROOT_SCAN_BOUND:
            # deterministic root scan pulls out the linear part first
            for l in range(p):
                if poly_eval(sq, l, p) == 0:
                    factors.append(([(-l) % p, 1], mult))
                    sq = poly_divmod(sq, [(-l) % p, 1], p)[0]
                    if len(sq) <= 1:
                        break
        for block, d in _ddf(sq, p) if len(sq) > 1 else []:
            for irr in _edf(block, d, p):
                factors.append((irr, mult))
    factors.sort(key=lambda fm: (len(fm[0]), list(reversed(fm[0]))))
    return unit, factors


# ----------------------------------------------------------------------
# binary forms mod p

@dataclass(frozen=True)
class FactorModP:
    """Factorization of a form mod p: reduction = unit * Y^k * prod q_i^e_i."""

    p: int
    factors: tuple[tuple[BinaryForm, int], ...]
    infinity_multiplicity: int
    unit: int

    @property
    def degree_sum(self) -> int:
        return self.infinity_multiplicity + sum(q.n * e for q, e in self.factors)


@dataclass(frozen=True)
class DoubleRootProfile:
    """Multiple-point classification of a form mod p.

    kind is one of SMOOTH / UNIQUE_AFFINE / DOUBLE_INF / STRONG; witness
    carries the affine double root for UNIQUE_AFFINE and "inf" for
    DOUBLE_INF; reason distinguishes the two strong cases.
    """

    p: int
    kind: str
    witness: int | str | None = None
    reason: str | None = None


def reduce_form(f: BinaryForm, p: int) -> tuple[int, ...]:
    return tuple(c % p for c in f.coeffs)


def factor_modp(f: BinaryForm, p: int) -> FactorModP:
    red = reduce_form(f, p)
    if all(c == 0 for c in red):
        raise ValueError(f"vanishing reduction: form is 0 mod {p}")
    k = 0
    while red[k] == 0:
        k += 1
    # affine polynomial of the non-Y part, low-first: coeff of x^j is a_{n-j}
    g = [red[f.n - j] for j in range(f.n - k + 1)]
    unit, facs = poly_factor(g, p)
    out = []
    for q, e in facs:
        d = len(q) - 1
        coeffs = tuple(q[d - i] % p for i in range(d + 1))  # leading-first
        out.append((BinaryForm(d, coeffs), e))
    return FactorModP(p, tuple(out), k, unit)


def double_root_profile(f: BinaryForm, p: int) -> DoubleRootProfile:
    fac = factor_modp(f, p)
    k = fac.infinity_multiplicity
    doubles = (1 if k >= 2 else 0)
    triple = k >= 3
    affine_double_root = None
    for q, e in fac.factors:
        if e >= 2:
            doubles += q.n
            if q.n == 1:
                if e >= 3:
                    triple = True
                # q = X + c Y monic in X: root is -c
                affine_double_root = (-q.coeffs[1]) % p
    if triple:
        return DoubleRootProfile(p, STRONG, reason=REASON_TRIPLE)
    if doubles >= 2:
        return DoubleRootProfile(p, STRONG, reason=REASON_TWO_DOUBLES)
    if doubles == 0:
        return DoubleRootProfile(p, SMOOTH)
    if k == 2:
        return DoubleRootProfile(p, DOUBLE_INF, witness="inf")
    return DoubleRootProfile(p, UNIQUE_AFFINE, witness=affine_double_root)


def count_H(p: int, f: int) -> int:
    """Number of monic irreducible degree-f polynomials over F_p."""
    if f < 1:
        raise ValueError("inertial degree must be >= 1")
    total = 0
    for d in range(1, f + 1):
        if f % d == 0:
            total += p**d * mobius(f // d)
    assert total % f == 0
    return total // f


# ----------------------------------------------------------------------
# scan-based profile codes (shared semantics with the _kernels backends)

CODE_SMOOTH = 0
CODE_UNIQUE_AFFINE = 1
CODE_DOUBLE_INF = 2
CODE_STRONG = 3
CODE_ZERO = 4


def profile_code(coeffs, n: int, p: int) -> tuple[int, int]:
    """(code, affine double root or -1) for a coefficient vector mod p.

    Pure-python reference of the kernel logic: rational multiplicities by
    synthetic division, then a gcd test on the root-free cofactor for
    conjugate double points (only possible when its degree is >= 4).
    """
    a = [c % p for c in coeffs]
    if all(c == 0 for c in a):
        return CODE_ZERO, -1
    k = 0
    while a[k] == 0:
        k += 1
    g = [a[n - j] for j in range(n - k + 1)]
    doubles = 1 if k >= 2 else 0
    triple = k >= 3
    root = -1
    for l in range(p):
        m = 0
        while len(g) > 1 and poly_eval(g, l, p) == 0:
            g = poly_divmod(g, [(-l) % p, 1], p)[0]
            m += 1
        if m >= 2:
            doubles += 1
            root = l
        if m >= 3:
            triple = True
    if len(g) - 1 >= 4:
        d = poly_deriv(g, p)
        if not d or len(poly_gcd(g, d, p)) > 1:
            doubles += 2
    if triple:
        return CODE_STRONG, -1
    if doubles >= 2:
        return CODE_STRONG, -1
    if doubles == 0:
        return CODE_SMOOTH, -1
    if k == 2:
        return CODE_DOUBLE_INF, -1
    return CODE_UNIQUE_AFFINE, root


def strongly_divisible_every_lift(coeffs, n: int, p: int) -> bool:
    """The every-lift definition of strong divisibility, brute force:
    p^2 | disc(f + p*g) for all g with coefficients in [0, p).

    Since disc(f + p*g) mod p^2 is affine in g mod p, this finite check
    decides the property for every integer lift.  At odd p it agrees with
    the profile classification; at p = 2 it is strictly weaker than having a
    triple/second double point (Stickelberger: disc = 0, 1 mod 4, so any
    multiple point mod 2 already forces 4 | disc of every lift).
    """
    from itertools import product as _product

    from .forms import BinaryForm, discriminant

    base = [c % p for c in coeffs]
    p2 = p * p
    for g in _product(range(p), repeat=n + 1):
        lifted = tuple(b + p * gi for b, gi in zip(base, g))
        if all(c == 0 for c in lifted):
            continue
        if discriminant(BinaryForm(n, lifted)) % p2:
            return False
    return True


def singular_density(n: int, p: int, budget: int = 10**8):
    """Brute-force |V_n(F_p)|, |W_n(F_p)| and c_p = 1 - |W_n|/p^(n+1).

    V_n is the strong-divisibility locus (profile code STRONG or the zero
    vector); W_n adds the a_0 = a_1 = 0 plane.  The full space F_p^(n+1) is
    enumerated, so p^(n+1) must stay within budget.
    """
    space = p ** (n + 1)
    if space > budget:
        raise ValueError(f"enumeration budget exceeded: p^(n+1) = {space} > {budget}")
    from . import _kernels

    v, w = _kernels.singular_counts(n, p)
    return v, w, Fraction(space - w, space)
