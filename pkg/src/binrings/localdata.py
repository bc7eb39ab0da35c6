"""Local data of binary rings: Dedekind-Kummer parts, order classification,
small-prime feasibility, and restricted sudo-maximal counting.

For a primitive form f and a prime p, the reduction factors as
unit * y^k * prod q_i^(e_i) and each factor (the y-power included) is one
"part": a prime of R_f over p with nominal ramification/inertia (e_i, deg
q_i).  The binary Dedekind criterion decides local maximality per part:
with T = (f - lift)/p (integer lift of the mod-p factorization, unit
included), a part with e_i >= 2 is non-maximal exactly when q_i divides T
mod p; parts with e_i = 1 are always maximal (etale).  The y-part is tested
through the X/Y swap.

A non-maximal part coming from a squared linear factor hides a quadratic
etale algebra over Q_p whose splitting (split / inert / ramified) is not
visible in the factorization.  It is resolved exactly: Hensel-lift the
coprime pair (x - l)^2 * cofactor to p^K, read off the lifted quadratic
x^2 + Bx + C, and classify D = B^2 - 4C by valuation and unit class.  That
yields the pseudo-maximal pattern (cases A/B/C of the rank-2 classification)
and the exact index exponent of the part: v_p(D) = d + 2r with d the local
field discriminant exponent.

Everything here works formally for primitive forms with nonzero
discriminant whether or not f is irreducible (the quotient algebra is then a
product of fields, and "maximal order" means its integral closure).

Profile file wire format, one prime per line:  ``p: (e,f,max);(e,f,max);...``
with max spelled 1/0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorint
from .forms import BinaryForm, content, discriminant, reverse, translate
from .modp import FactorModP, count_H, factor_modp, poly_divmod, poly_factor, poly_mul, trim
from .weakdiv import WeakDivWitness, witness_valid
from .zpoly import hensel_pair_lift, zpoly_mul

__all__ = [
    "SplittingPart",
    "SplittingProfile",
    "PseudoMaxDescriptor",
    "OrderClass",
    "dedekind_kummer",
    "monic_dedekind_parts",
    "classify_order",
    "small_prime_feasibility",
    "enumerate_pseudo_maximal",
    "count_restricted_sudo_maximal",
    "zeta_power_partial_sums",
    "field_profiles_from_form",
    "profiles_to_text",
    "profiles_from_text",
    "MAXIMAL",
    "PSEUDO_MAXIMAL",
    "OTHER",
]

MAXIMAL = "maximal"
PSEUDO_MAXIMAL = "pseudo-maximal"
OTHER = "other"


@dataclass(frozen=True)
class SplittingPart:
    e: int
    f: int
    locally_maximal: bool
    source_factor: int  # index into FactorModP.factors; -1 for the Y-part


@dataclass(frozen=True)
class SplittingProfile:
    p: int
    parts: tuple[SplittingPart, ...]
    factorization: FactorModP

    @property
    def ef_sum(self) -> int:
        return sum(part.e * part.f for part in self.parts)


@dataclass(frozen=True)
class PseudoMaxDescriptor:
    case: str  # 'A' split pair, 'B' inert, 'C' ramified
    conductor: tuple[int, ...]  # exponents over the valuations of the part
    index_exponent: int


@dataclass(frozen=True)
class OrderClass:
    per_prime: tuple[tuple[int, str, PseudoMaxDescriptor | None], ...]
    sudo_maximal: bool
    restricted_sudo_maximal: bool


# ----------------------------------------------------------------------
# Dedekind-Kummer with the binary Dedekind criterion

def _lift_product(fac: FactorModP, n: int, p: int) -> tuple[int, ...]:
    """Integer lift (coefficients in [0,p)) of unit * y^k * prod q_i^e_i,
    returned leading-first with formal degree n."""
    # integer product of the lifted factors; no intermediate reduction, the
    # criterion quotient (f - lift)/p depends on the exact integer lift
    poly = [fac.unit % p]
    for q, e in fac.factors:
        aff = [q.coeffs[q.n - j] % p for j in range(q.n + 1)]
        for _ in range(e):
            poly = zpoly_mul(poly, aff)
    deg = len(poly) - 1
    assert deg == n - fac.infinity_multiplicity
    out = [0] * (n + 1)
    for j, c in enumerate(poly):
        out[n - j] = c
    return tuple(out)


def _form_divides_modp(q: BinaryForm, t_coeffs: tuple[int, ...], tn: int, p: int) -> bool:
    """Does the irreducible form q (or Y for q=None) divide the degree-tn
    form with the given coefficients, over F_p?"""
    if all(c % p == 0 for c in t_coeffs):
        return True
    if q is None:  # the factor Y
        return t_coeffs[0] % p == 0
    taff = trim([t_coeffs[tn - j] % p for j in range(tn + 1)])
    qaff = [q.coeffs[q.n - j] % p for j in range(q.n + 1)]
    if not taff:
        return True
    return not poly_divmod(taff, qaff, p)[1]


def dedekind_kummer(f: BinaryForm, p: int) -> SplittingProfile:
    """One part per irreducible factor of f mod p (Y-power included), with
    local maximality decided by the binary Dedekind criterion."""
    if content(f) != 1:
        raise ValueError("imprimitive form: take primitive_part first")
    fac = factor_modp(f, p)
    n = f.n
    lift = _lift_product(fac, n, p)
    t = tuple(a - b for a, b in zip(f.coeffs, lift))
    assert all(c % p == 0 for c in t), "lift does not reduce to f mod p"
    t = tuple(c // p for c in t)
    parts = []
    for idx, (q, e) in enumerate(fac.factors):
        if e == 1:
            lm = True
        else:
            lm = not _form_divides_modp(q, t, n, p)
        parts.append(SplittingPart(e, q.n, lm, idx))
    k = fac.infinity_multiplicity
    if k:
        lm = True if k == 1 else not _form_divides_modp(None, t, n, p)
        parts.append(SplittingPart(k, 1, lm, -1))
    prof = SplittingProfile(p, tuple(parts), fac)
    assert prof.ef_sum == n
    return prof


def monic_dedekind_parts(poly_low: list[int], p: int):
    """The classical monic criterion, implemented on the affine chart only:
    [(factor poly low-first, e, locally_maximal), ...].  Used as an
    independent cross-check of the binary criterion on monic inputs."""
    if poly_low[-1] != 1:
        raise ValueError("monic polynomial required")
    red = [c % p for c in poly_low]
    _, facs = poly_factor(red, p)
    lift = [1]
    for q, e in facs:
        for _ in range(e):
            lift = zpoly_mul(lift, q)
    t = [(a - b) for a, b in zip(poly_low, lift + [0] * (len(poly_low) - len(lift)))]
    assert all(c % p == 0 for c in t)
    tbar = trim([(c // p) % p for c in t])
    out = []
    for q, e in facs:
        if e == 1:
            lm = True
        elif not tbar:
            lm = False
        else:
            lm = bool(poly_divmod(tbar, q, p)[1])
        out.append((q, e, lm))
    return out


# ----------------------------------------------------------------------
# resolving the quadratic piece behind a doubled linear factor

def _local_quadratic(f: BinaryForm, p: int, l0: int):
    """(v, unit) with B^2 - 4C = p^v * unit for the lifted quadratic factor
    of f at the double root l0 mod p (multiplicity exactly 2 required)."""
    n = f.n
    fz = [f.coeffs[n - j] for j in range(n + 1)]  # low-first over Z
    red = trim([c % p for c in fz])
    g0 = [(l0 * l0) % p, (-2 * l0) % p, 1]
    h0, rem = poly_divmod(red, g0, p)
    if rem:
        raise ValueError(f"{l0} is not a double root of f mod {p}")
    d = discriminant(f)
    base_k = _vp(abs(d), p) + 4
    K = base_k
    for _ in range(4):
        _g, _h, pK = hensel_pair_lift(fz, g0, h0, p, K)
        C, B = _g[0], _g[1]
        disc_q = (B * B - 4 * C) % pK
        if disc_q != 0:
            v = _vp(disc_q, p)
            if v <= K - 3:
                return v, disc_q // p**v
        K *= 2
    raise ArithmeticError("local quadratic discriminant needs more precision than expected")


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _quadratic_pattern(p: int, v: int, unit: int):
    """(case, d): pseudo-maximal pattern and local disc exponent of the
    quadratic etale algebra with discriminant p^v * unit."""
    if p != 2:
        if v % 2:
            return "C", 1
        return ("A", 0) if pow(unit % p, (p - 1) // 2, p) == 1 else ("B", 0)
    if v % 2:
        return "C", 3
    u8 = unit % 8
    if u8 == 1:
        return "A", 0
    if u8 == 5:
        return "B", 0
    return "C", 2


def _resolve_double_part(f: BinaryForm, p: int, part: SplittingPart, fac: FactorModP):
    """(case, d, r): pattern, local field disc exponent, and index exponent
    of the unique non-maximal part, which must be a doubled linear factor."""
    if part.source_factor == -1:
        g = reverse(f)
        l0 = 0
    else:
        q = fac.factors[part.source_factor][0]
        g = f
        l0 = (-q.coeffs[1]) % p
    v, unit = _local_quadratic(g, p, l0)
    case, d = _quadratic_pattern(p, v, unit)
    assert (v - d) % 2 == 0 and v >= d
    return case, d, (v - d) // 2


# ----------------------------------------------------------------------
# order classification

def classify_order(
    f: BinaryForm,
    w: WeakDivWitness | None = None,
    disc_factors: dict[int, int] | None = None,
) -> OrderClass:
    """Per-prime classification of R'_{(f, w)} (R_f itself for the trivial
    witness) and the sudo/restricted-sudo flags.

    Primes inspected: those with p^2 | disc(R') or p | m.  At p not dividing
    m the local ring is that of R_f; at p | m the index exponent drops by
    v_p(m).  A single non-maximal part of nominal ef = 2 is resolved into
    its pseudo-maximal pattern; anything else is reported as "other" with
    flags computed from the nominal part data.
    """
    if w is None:
        w = WeakDivWitness(1, 0)
    d = discriminant(f)
    if d == 0:
        raise ValueError("disc(f) = 0")
    if not witness_valid(f, w.m, w.l):
        raise ValueError("invalid weak-divisibility witness")
    if disc_factors is None:
        disc_factors = factorint(d)
    m_factors = factorint(w.m) if w.m > 1 else {}
    disc_r_val = {p: e - 2 * m_factors.get(p, 0) for p, e in disc_factors.items()}
    for p, mv in m_factors.items():
        if disc_factors.get(p, 0) < 2 * mv:
            raise ValueError("witness modulus square does not divide disc(f)")

    primes = sorted(set([p for p, e in disc_r_val.items() if e >= 2]) | set(m_factors))
    rows = []
    sudo = True
    restricted = True
    for p in primes:
        prof = dedekind_kummer(f, p)
        bads = [part for part in prof.parts if not part.locally_maximal]
        mp = m_factors.get(p, 0)
        if not bads:
            if mp:
                raise AssertionError("witness divides m at a locally maximal prime")
            rows.append((p, MAXIMAL, None))
            continue
        if len(bads) == 1 and bads[0].e * bads[0].f == 2:
            case, _d_loc, r = _resolve_double_part(f, p, bads[0], prof.factorization)
            r_prime = r - mp
            if r_prime < 0:
                raise AssertionError("witness exponent exceeds the local index")
            if r_prime == 0:
                rows.append((p, MAXIMAL, None))
                continue
            desc = enumerate_pseudo_maximal(
                _case_parts(case), r=r_prime
            )
            rows.append((p, PSEUDO_MAXIMAL, desc))
            restricted = restricted and True
        else:
            rows.append((p, OTHER, None))
            if any(part.e * part.f != 2 for part in bads):
                sudo = False
            if len(bads) > 1:
                restricted = False
    return OrderClass(tuple(rows), sudo, sudo and restricted)


def _case_parts(case: str):
    return {"A": ((1, 1), (1, 1)), "B": ((1, 2),), "C": ((2, 1),)}[case]


# ----------------------------------------------------------------------
# feasibility and the pseudo-maximal tables

def small_prime_feasibility(profile: SplittingProfile):
    """Check the binary-ring splitting bounds: at most H(p,1)+1 parts of
    norm p and at most H(p,f) parts of norm p^f for f >= 2.  Returns
    (ok, None) or (False, (f, count, bound))."""
    p = profile.p
    by_f: dict[int, int] = {}
    for part in profile.parts:
        by_f[part.f] = by_f.get(part.f, 0) + 1
    for fdeg in sorted(by_f):
        bound = count_H(p, 1) + 1 if fdeg == 1 else count_H(p, fdeg)
        if by_f[fdeg] > bound:
            return False, (fdeg, by_f[fdeg], bound)
    return True, None


def enumerate_pseudo_maximal(
    parts: tuple[tuple[int, int], ...],
    r: int | None = None,
    conductor: tuple[int, ...] | None = None,
) -> PseudoMaxDescriptor | None:
    """The rank-2 classification tables.

    parts: the valuations over the bad prime as (e, f) pairs with
    sum(e*f) = 2.  Exactly one of r / conductor selects the query: by index
    exponent (always answerable, unique order) or by conductor exponents
    (None when no order with that conductor exists).
    """
    shape = tuple(sorted(parts))
    if sum(e * fdeg for e, fdeg in shape) != 2:
        raise ValueError("pseudo-maximal classification needs sum(e*f) = 2")
    if (r is None) == (conductor is None):
        raise ValueError("give exactly one of r= or conductor=")
    if shape == ((1, 1), (1, 1)):
        case = "A"
    elif shape == ((1, 2),):
        case = "B"
    elif shape == ((2, 1),):
        case = "C"
    else:
        raise ValueError(f"impossible valuation shape {shape}")
    if r is not None:
        if r < 1:
            raise ValueError("index exponent must be >= 1")
        if case == "A":
            return PseudoMaxDescriptor("A", (r, r), r)
        if case == "B":
            return PseudoMaxDescriptor("B", (r,), r)
        return PseudoMaxDescriptor("C", (2 * r,), r)
    if case == "A":
        a, b = conductor
        if a != b or a < 1:
            return None
        return PseudoMaxDescriptor("A", (a, a), a)
    (a,) = conductor
    if a < 1:
        return None
    if case == "B":
        return PseudoMaxDescriptor("B", (a,), a)
    if a % 2:
        return None
    return PseudoMaxDescriptor("C", (a,), a // 2)


# ----------------------------------------------------------------------
# counting restricted sudo-maximal orders

def _c_p(valuations) -> int:
    ones = sum(1 for e, fd in valuations if e == 1 and fd == 1)
    inert = sum(1 for e, fd in valuations if e == 1 and fd == 2)
    ram = sum(1 for e, fd in valuations if e == 2 and fd == 1)
    return math.comb(ones, 2) + inert + ram


def count_restricted_sudo_maximal(profiles: dict[int, list[tuple[int, int]]], X: int):
    """Counts of restricted sudo-maximal orders by index, with the
    comparison series.

    profiles maps each prime p <= X to the valuation data [(e_v, f_v), ...]
    of p in the field.  The count of orders of index j is multiplicative
    with C_{K,p^k} = C_p for all k >= 1 (uniqueness of the rank-2 orders),
    where C_p = (#unordered (1,1) pairs) + #(1,2) + #(2,1).

    Returns (counts, partial_sums, zeta_partial_sums): counts[j] = number of
    orders of index exactly j, partial_sums cumulative, and alongside them
    the partial coefficient sums of zeta(s)^C(n,2) (n read off the
    profiles), which dominate termwise since C_p <= C(n,2).
    """
    missing = [p for p in _primes_upto(X) if p not in profiles]
    if missing:
        raise ValueError(f"missing splitting profile for primes {missing[:5]}...")
    arr = [0] * (X + 1)
    arr[1] = 1
    degree = None
    for p in _primes_upto(X):
        vals = profiles[p]
        d = sum(e * fd for e, fd in vals)
        if degree is None:
            degree = d
        elif degree != d:
            raise ValueError(f"profile degree mismatch at p={p}: {d} != {degree}")
        cp = _c_p(vals)
        for j in range(1, X // p + 1):
            if arr[j] == 0 or j % p == 0:
                continue
            base = arr[j]
            q = j * p
            while q <= X:
                arr[q] += base * cp
                q *= p
    sums = [0] * (X + 1)
    acc = 0
    for j in range(1, X + 1):
        acc += arr[j]
        sums[j] = acc
    _zc, zsums = zeta_power_partial_sums(math.comb(degree or 2, 2), X)
    return arr, sums, zsums


def zeta_power_partial_sums(B: int, X: int):
    """Partial sums of the Dirichlet coefficients of zeta(s)^B by iterated
    divisor convolution (exact integers)."""
    d = [0] + [1] * X
    for _ in range(B - 1):
        e = [0] * (X + 1)
        for k in range(1, X + 1):
            dk = d[k]
            if dk:
                for j in range(k, X + 1, k):
                    e[j] += dk
        d = e
    sums = [0] * (X + 1)
    acc = 0
    for j in range(1, X + 1):
        acc += d[j]
        sums[j] = acc
    return d, sums


def _primes_upto(X: int):
    from .arith import primes_below

    return primes_below(X + 1)


def field_profiles_from_form(
    f: BinaryForm, X: int, disc_factors: dict[int, int] | None = None
) -> dict[int, list[tuple[int, int]]]:
    """Valuation data of all primes p <= X in the maximal order over R_f,
    for forms whose non-maximal parts are all resolvable doubled linear
    factors (UWD forms qualify; so does anything p-maximal everywhere).
    """
    d = discriminant(f)
    if d == 0:
        raise ValueError("disc(f) = 0")
    out: dict[int, list[tuple[int, int]]] = {}
    for p in _primes_upto(X):
        if d % p:
            fac = factor_modp(f, p)
            vals = [(e, q.n) for q, e in fac.factors]
            if fac.infinity_multiplicity:
                vals.append((fac.infinity_multiplicity, 1))
            out[p] = vals
            continue
        prof = dedekind_kummer(f, p)
        vals = []
        for part in prof.parts:
            if part.locally_maximal:
                vals.append((part.e, part.f))
            else:
                if part.e * part.f != 2:
                    raise ValueError(
                        f"cannot resolve valuations over p={p}: non-maximal part "
                        f"with ef = {part.e * part.f}"
                    )
                case, _dd, _r = _resolve_double_part(f, p, part, prof.factorization)
                vals.extend(_case_parts(case))
        out[p] = vals
    return out


def profiles_to_text(profiles: dict[int, list[tuple[int, int]]]) -> str:
    lines = []
    for p in sorted(profiles):
        body = ";".join(f"({e},{fd},1)" for e, fd in profiles[p])
        lines.append(f"{p}: {body}")
    return "\n".join(lines) + "\n"


def profiles_from_text(text: str) -> dict[int, list[tuple[int, int]]]:
    out: dict[int, list[tuple[int, int]]] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, body = line.split(":", 1)
        p = int(head)
        vals = []
        for piece in body.strip().split(";"):
            piece = piece.strip().strip("()")
            e, fd, mx = (int(x) for x in piece.split(","))
            if not mx:
                raise ValueError(
                    f"profile for p={p} contains a non-maximal part; counting "
                    "needs resolved (maximal) valuation data"
                )
            vals.append((e, fd))
        out[p] = vals
    return out
