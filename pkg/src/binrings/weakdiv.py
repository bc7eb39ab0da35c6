"""Weak divisibility: witnesses, the divided ring, UWD tests, maximal witness.

A form f is weakly divisible by m at l when m^2 | f(l,1) and m | f'(l,1).
Both conditions only depend on l mod m, so witnesses live in [0, m).  The
associated ring R'_{(f_l, m)} has basis B_0, ..., B_(n-2), B_(n-1)/m over the
translated form f_l; its structure constants are integral exactly because of
the witness congruences, and its trace discriminant is disc(f)/m^2.

Ultra-weak divisibility asks that every prime with p^2 | disc(f) sees a
unique affine rational double point (no triple point, no second double point,
double point not at infinity).  For such forms a maximal witness modulus
exists: m_f = t where disc(f) = s t^2 with s squarefree, and the witness
l_f is assembled by CRT from per-prime double-root lifts.

Factoring disc(f) is the caller's burden in principle; a built-in trial
division + Pollard rho provider covers desk scale and raises
FactorBudgetError beyond its budget instead of stalling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import FactorBudgetError, crt, factorint
from .binring import RingPresentation, build_ring_on_basis, canonical_basis_columns, vec_mul
from .forms import BinaryForm, DegenerateFormError, content, discriminant, translate
from .modp import (
    DOUBLE_INF,
    SMOOTH,
    STRONG,
    UNIQUE_AFFINE,
    DoubleRootProfile,
    REASON_TWO_DOUBLES,
    double_root_profile,
)

__all__ = [
    "WeakDivWitness",
    "MaxWitness",
    "UwdReport",
    "find_witness",
    "witness_valid",
    "weakly_divisible_ring",
    "is_uwd",
    "max_witness",
    "VERDICT_WEAK",
    "VERDICT_REVERSE",
    "VERDICT_STRONG",
]

WITNESS_SCAN_BOUND = 10_000

VERDICT_WEAK = "weakly-divisible"
VERDICT_REVERSE = "reverse-weakly-divisible"
VERDICT_STRONG = "strongly-divisible"


@dataclass(frozen=True)
class WeakDivWitness:
    m: int
    l: int

    def __post_init__(self):
        if self.m < 1 or not 0 <= self.l < max(self.m, 1):
            raise ValueError(f"witness needs m >= 1 and 0 <= l < m, got ({self.m}, {self.l})")


@dataclass(frozen=True)
class MaxWitness:
    m_f: int
    l_f: int
    s: int  # squarefree part: disc(f) = s * m_f^2


@dataclass(frozen=True)
class UwdReport:
    is_uwd: bool
    per_prime: tuple[tuple[int, DoubleRootProfile, str], ...]


def witness_valid(f: BinaryForm, m: int, l: int) -> bool:
    return f.eval_affine(l) % (m * m) == 0 and f.deriv_affine(l) % m == 0


def _double_roots_modp(f: BinaryForm, p: int) -> list[int]:
    """Affine l in [0, p) with p | f(l,1) and p | f'(l,1)."""
    fac = None
    if p <= WITNESS_SCAN_BOUND:
        return [
            l for l in range(p) if f.eval_affine(l) % p == 0 and f.deriv_affine(l) % p == 0
        ]
    from .modp import factor_modp

    fac = factor_modp(f, p)
    out = []
    for q, e in fac.factors:
        if q.n == 1 and e >= 2:
            out.append((-q.coeffs[1]) % p)
    return sorted(out)


def _witness_solutions_prime_power(f: BinaryForm, p: int, a: int) -> list[int]:
    """All l in [0, p^a) with p^(2a) | f(l,1) and p^a | f'(l,1)."""
    pa = p**a
    if pa <= WITNESS_SCAN_BOUND:
        m2 = pa * pa
        return [
            l for l in range(pa) if f.eval_affine(l) % m2 == 0 and f.deriv_affine(l) % pa == 0
        ]
    # level-by-level lift of the congruence system
    sols = [
        l for l in _double_roots_modp(f, p) if f.eval_affine(l) % (p * p) == 0
    ]
    level = 1
    while level < a:
        level += 1
        mod = p**level
        m2 = mod * mod
        nxt = []
        for base in sols:
            step = p ** (level - 1)
            for t in range(p):
                l = base + step * t
                if f.eval_affine(l) % m2 == 0 and f.deriv_affine(l) % mod == 0:
                    nxt.append(l)
        if len(nxt) > 64:
            raise RuntimeError("witness lift branched unexpectedly wide")
        sols = sorted(set(nxt))
        if not sols:
            return []
    return sols


def find_witness(f: BinaryForm, m: int) -> WeakDivWitness | None:
    """Least l in [0, m) making f weakly divisible by m, or None.

    Composite m is handled prime-power-wise and recombined by CRT.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return WeakDivWitness(1, 0)
    per: list[tuple[int, list[int]]] = []
    for p, a in sorted(factorint(m).items()):
        sols = _witness_solutions_prime_power(f, p, a)
        if not sols:
            return None
        per.append((p**a, sols))
    best: int | None = None
    idx = [0] * len(per)

    def combos(i, residues):
        nonlocal best
        if i == len(per):
            l, _ = crt(residues, [mm for mm, _ in per])
            if best is None or l < best:
                best = l
            return
        for r in per[i][1]:
            combos(i + 1, residues + [r])

    combos(0, [])
    assert best is not None
    assert witness_valid(f, m, best)
    return WeakDivWitness(m, best)


def weakly_divisible_ring(f: BinaryForm, w: WeakDivWitness) -> RingPresentation:
    """R'_{(f_l, m)}: basis B_0..B_(n-2), B_(n-1)/m over the translate of f.

    The construction validates the witness, asserts integrality of the whole
    table, and cross-checks the closed-form multiplication rows

        (B/m)^2        = -u0 * S_(n-2) + u1 * (B/m)
        (B/m) * S_(n-i) = -m*u0 * S_(n-i-1) + c_i * (B/m)   (2 <= i <= n-2)

    on the shifted elements S_k = B_k + c_k (c_k the coefficients of the
    translated form, u0 = c_n/m^2, u1 = c_(n-1)/m), the basis in which the
    ring-closure computation is exact.
    """
    n = f.n
    if not witness_valid(f, w.m, w.l):
        raise ValueError(f"({w.m}, {w.l}) is not a weak-divisibility witness for {f}")
    h = translate(f, w.l)
    if h.coeffs[0] == 0:
        raise DegenerateFormError("leading coefficient vanishes; orient the form first")
    cols = canonical_basis_columns(h)
    cols[n - 1] = [c / w.m for c in cols[n - 1]]
    names = tuple(f"B{k}" for k in range(n - 1)) + (f"B{n - 1}/{w.m}",)
    pres = build_ring_on_basis(h, cols, names, witness=(w.m, w.l))
    _check_paper_rows(pres, h, w.m)
    d = discriminant(f)
    if pres.disc * w.m * w.m != d:
        raise AssertionError("trace discriminant is not disc(f)/m^2")
    return pres


def _check_paper_rows(pres: RingPresentation, h: BinaryForm, m: int) -> None:
    n = h.n
    c = h.coeffs
    u0 = c[n] // (m * m)
    u1 = c[n - 1] // m

    def base(k):
        return tuple(1 if i == k else 0 for i in range(n))

    def shifted(k):
        v = [0] * n
        v[k] = 1
        v[0] = c[k]
        return tuple(v)

    last = [0] * n
    last[n - 1] = 1
    last[0] = u1
    last = tuple(last)  # S_(n-1)/m in the divided basis

    def combo(alpha, u, beta, v):
        return tuple(alpha * x + beta * y for x, y in zip(u, v))

    sq = vec_mul(pres.structure, last, last)
    if n >= 3:
        want = combo(-u0, shifted(n - 2), u1, last)
    else:
        want = combo(-u0 * c[0], base(0), u1, last)
    if sq != want:
        raise AssertionError("divided-square multiplication row failed")
    for i in range(2, n - 1):
        lhs = vec_mul(pres.structure, last, shifted(n - i))
        rhs = combo(-m * u0, shifted(n - i - 1), c[n - i], last)
        if lhs != rhs:
            raise AssertionError(f"multiplication row failed at i={i}")


def _profile_or_vanishing(f: BinaryForm, p: int) -> DoubleRootProfile:
    if content(f) % p == 0:
        # the reduction is identically zero: every point is multiple
        return DoubleRootProfile(p, STRONG, reason=REASON_TWO_DOUBLES)
    return double_root_profile(f, p)


def is_uwd(f: BinaryForm, disc_factors: dict[int, int] | None = None) -> UwdReport:
    """Per-prime verdicts for every p with p^2 | disc(f).

    disc_factors, when supplied, must be the complete factorization of
    |disc(f)| as {prime: exponent}; a product mismatch is an error.
    """
    d = discriminant(f)
    if d == 0:
        raise ValueError("disc(f) = 0: ultra-weak divisibility undefined")
    if disc_factors is None:
        disc_factors = factorint(d)
    else:
        prod = 1
        for p, e in disc_factors.items():
            prod *= p**e
        if prod != abs(d):
            raise ValueError("incomplete factorization of disc(f)")
    rows = []
    ok = True
    for p in sorted(disc_factors):
        if disc_factors[p] < 2:
            continue
        prof = _profile_or_vanishing(f, p)
        if prof.kind == UNIQUE_AFFINE:
            if witness_valid(f, p, prof.witness % p):
                verdict = VERDICT_WEAK
            else:
                # Only possible at p = 2: by Stickelberger disc = 0,1 mod 4,
                # any multiple point mod 2 forces 4 | disc of every lift, so
                # a double root whose value misses the mod-4 condition is
                # strongly divisible in the every-lift sense.  For odd p the
                # structure identity makes the witness automatic.
                if p != 2:
                    raise AssertionError(
                        f"double root at {prof.witness} mod {p} without witness "
                        "(impossible for odd p)"
                    )
                verdict = VERDICT_STRONG
                ok = False
        elif prof.kind == DOUBLE_INF:
            if f.coeffs[0] % (p * p) == 0:
                verdict = VERDICT_REVERSE
            else:
                if p != 2:
                    raise AssertionError(
                        f"double point at infinity without reverse witness mod {p}"
                    )
                verdict = VERDICT_STRONG
            ok = False
        elif prof.kind == STRONG:
            verdict = VERDICT_STRONG
            ok = False
        else:
            raise AssertionError(f"p^2 | disc but profile smooth at p={p}")
        rows.append((p, prof, verdict))
    return UwdReport(ok, tuple(rows))


def max_witness(f: BinaryForm, disc_factors: dict[int, int] | None = None) -> MaxWitness:
    """Maximal modulus m_f = t (disc = s t^2, s squarefree) with its witness.

    Requires is_uwd(f) to hold.  Per prime p | t the affine double root is
    lifted through the congruence system to precision floor(v_p(disc)/2); a
    lift failure contradicts the defining theorem and is raised as such.
    """
    d = discriminant(f)
    if disc_factors is None:
        disc_factors = factorint(d)
    report = is_uwd(f, disc_factors)
    if not report.is_uwd:
        raise ValueError("form is not ultra-weakly divisible")
    t = 1
    residues = []
    moduli = []
    for p in sorted(disc_factors):
        e = disc_factors[p]
        if e < 2:
            continue
        k = e // 2
        t *= p**k
        sols = _witness_solutions_prime_power(f, p, k)
        if not sols:
            raise AssertionError(f"paper theorem violated: no witness lift at p={p}")
        residues.append(sols[0])
        moduli.append(p**k)
    if t == 1:
        return MaxWitness(1, 0, d)
    l, _ = crt(residues, moduli)
    if not witness_valid(f, t, l):
        raise AssertionError("paper theorem violated: assembled witness fails")
    assert d % (t * t) == 0
    return MaxWitness(t, l, d // (t * t))
