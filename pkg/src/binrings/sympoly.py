"""Sparse multivariate integer polynomials and the symbolic discriminant.

Polynomials live in Z[a_0, ..., a_n] and are stored as {exponent tuple:
coefficient} maps; the zero polynomial is the empty map.  Graded-lex order on
exponent tuples fixes leading terms for exact division and gives
deterministic printing.  Only what the discriminant-structure computation
needs is implemented: ring operations, exact division, evaluation, and a
fraction-free Bareiss determinant over the polynomial ring.

``symbolic_disc(n)`` produces the generic discriminant G_n of
a_0 X^n + ... + a_n Y^n as the Sylvester determinant divided by a_0, then
splits it by degree in (a_n, a_{n-1}) into

    G = a_n * D1 + a_n a_{n-1} * D2 + a_{n-1}^2 * D3 + a_n^2 * D4

with D1 free of a_{n-1}, a_n and D3 free of a_n.  The split is an exact
monomial partition, so the identity holds by construction; it is still spot
checked by random evaluation.  The relation of D1 to 4 a_{n-2}^3 times the
discriminant of the degree-(n-2) truncation, and of D3 to the discriminant of
the degree-(n-1) truncation, is verified symbolically per n and the observed
sign is recorded on the result rather than assumed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .forms import BinaryForm, discriminant

__all__ = ["MPoly", "DiscStructure", "symbolic_disc", "generic_disc"]


class MPoly:
    """Multivariate integer polynomial, sparse monomial map."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        self.terms = {} if terms is None else {e: c for e, c in terms.items() if c != 0}

    @classmethod
    def const(cls, nvars: int, c: int) -> "MPoly":
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int, exp: int = 1) -> "MPoly":
        e = [0] * nvars
        e[i] = exp
        return cls(nvars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "MPoly") -> "MPoly":
        t = dict(self.terms)
        for e, c in other.terms.items():
            nc = t.get(e, 0) + c
            if nc:
                t[e] = nc
            else:
                t.pop(e, None)
        return MPoly(self.nvars, t)

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, int):
            if other == 0:
                return MPoly(self.nvars)
            return MPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        t: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                nc = t.get(e, 0) + c1 * c2
                if nc:
                    t[e] = nc
                else:
                    t.pop(e, None)
        return MPoly(self.nvars, t)

    __rmul__ = __mul__

    @staticmethod
    def _key(e: tuple[int, ...]):
        return (sum(e), e)

    def lead(self) -> tuple[tuple[int, ...], int]:
        e = max(self.terms, key=self._key)
        return e, self.terms[e]

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Exact quotient self / other; raises if the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = MPoly(self.nvars, dict(self.terms))
        out: dict[tuple[int, ...], int] = {}
        de, dc = other.lead()
        while not rem.is_zero():
            re, rc = rem.lead()
            qe = tuple(a - b for a, b in zip(re, de))
            if any(x < 0 for x in qe) or rc % dc != 0:
                raise ArithmeticError("inexact polynomial division")
            qc = rc // dc
            out[qe] = out.get(qe, 0) + qc
            rem = rem - other * MPoly(self.nvars, {qe: qc})
        return MPoly(self.nvars, out)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def eval(self, point: tuple[int, ...]) -> int:
        maxe = [0] * self.nvars
        for e in self.terms:
            for i, x in enumerate(e):
                if x > maxe[i]:
                    maxe[i] = x
        pows = [[1] * (m + 1) for m in maxe]
        for i, m in enumerate(maxe):
            for j in range(1, m + 1):
                pows[i][j] = pows[i][j - 1] * point[i]
        acc = 0
        for e, c in self.terms.items():
            t = c
            for i, x in enumerate(e):
                if x:
                    t *= pows[i][x]
            acc += t
        return acc

    def coeffs_in(self, i: int) -> list["MPoly"]:
        """self as a polynomial in variable i: [c_0, ..., c_d], c_j in the rest."""
        d = self.degree_in(i)
        out = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            j = e[i]
            e2 = e[:i] + (0,) + e[i + 1 :]
            out[j][e2] = out[j].get(e2, 0) + c
        return [MPoly(self.nvars, t) for t in out]

    def pad_vars(self, nvars: int) -> "MPoly":
        """Reinterpret in a larger ring (new trailing variables unused)."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink variable count")
        pad = (0,) * (nvars - self.nvars)
        return MPoly(nvars, {e + pad: c for e, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=self._key, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"a{i}^{x}" if x > 1 else f"a{i}" for i, x in enumerate(e) if x)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def poly_bareiss_det(rows: list[list[MPoly]], nvars: int) -> MPoly:
    """Fraction-free determinant over Z[a_0..]; divisions are exact."""
    n = len(rows)
    if n == 0:
        return MPoly.const(nvars, 1)
    m = [list(r) for r in rows]
    sign = 1
    prev = MPoly.const(nvars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MPoly(nvars)
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = MPoly(nvars)
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _generic_sylvester(n: int, nvars: int) -> list[list[MPoly]]:
    """Sylvester matrix of the generic form and its X-derivative."""
    zero = MPoly(nvars)
    f = [MPoly.var(nvars, i) for i in range(n + 1)]
    fx = [MPoly.var(nvars, i) * (n - i) for i in range(n)]
    size = 2 * n - 1
    rows = []
    for i in range(n - 1):
        rows.append([zero] * i + f + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + fx + [zero] * (size - n - i))
    return rows


def generic_disc(n: int, nvars: int | None = None) -> MPoly:
    """G_n: the discriminant of the generic degree-n form as a polynomial
    in its coefficients a_0..a_n."""
    if nvars is None:
        nvars = n + 1
    if n == 1:
        return MPoly.const(nvars, 1)
    det = poly_bareiss_det(_generic_sylvester(n, nvars), nvars)
    g = det.exact_div(MPoly.var(nvars, 0))
    if (n * (n - 1) // 2) % 2:
        g = -g
    return g


@dataclass(frozen=True)
class DiscStructure:
    """G_n together with its split by degree in the last two coefficients.

    delta1_sign / delta3_sign record the empirically verified signs in

        D1 = delta1_sign * 4 * a_{n-2}^3 * G_{n-2}(a_0..a_{n-2})
        D3 = delta3_sign * G_{n-1}(a_0..a_{n-1})

    A sign of 0 means the corresponding identity failed symbolically (it has
    not, for any supported n, but the result records the check instead of
    assuming it).
    """

    n: int
    G: MPoly
    Delta1: MPoly
    Delta2: MPoly
    Delta3: MPoly
    Delta4: MPoly
    F: MPoly | None
    delta1_sign: int
    delta3_sign: int

    def eval_split(self, point: tuple[int, ...]) -> int:
        an = point[self.n]
        an1 = point[self.n - 1]
        return (
            an * self.Delta1.eval(point)
            + an * an1 * self.Delta2.eval(point)
            + an1 * an1 * self.Delta3.eval(point)
            + an * an * self.Delta4.eval(point)
        )


_DISC_CACHE: dict[tuple[int, bool], DiscStructure] = {}

DEFAULT_N_MAX = 6
F_N_MAX = 4


def _univariate_disc(coeffs: list[MPoly], nvars: int) -> MPoly:
    """Discriminant of sum coeffs[j] * T^j with MPoly coefficients."""
    d = len(coeffs) - 1
    while d >= 0 and coeffs[d].is_zero():
        d -= 1
    if d <= 0:
        raise ArithmeticError("degenerate polynomial")
    if d == 1:
        return MPoly.const(nvars, 1)
    zero = MPoly(nvars)
    f = [coeffs[d - i] for i in range(d + 1)]
    fx = [coeffs[d - i] * (d - i) for i in range(d)]
    size = 2 * d - 1
    rows = []
    for i in range(d - 1):
        rows.append([zero] * i + f + [zero] * (size - d - 1 - i))
    for i in range(d):
        rows.append([zero] * i + fx + [zero] * (size - d - i))
    det = poly_bareiss_det(rows, nvars)
    g = det.exact_div(coeffs[d])
    if (d * (d - 1) // 2) % 2:
        g = -g
    return g


def symbolic_disc(n: int, want_F: bool = False, n_max: int = DEFAULT_N_MAX) -> DiscStructure:
    """Generic discriminant G_n and its Delta-split; see the module docstring.

    want_F additionally computes F_n = disc_{a_n}(G_n), supported for
    n <= F_N_MAX (iterated symbolic discriminants grow quickly).
    """
    if not 2 <= n <= n_max:
        raise ValueError(f"supported degrees are 2..{n_max}, got {n}")
    if want_F and n > F_N_MAX:
        raise ValueError(f"F_n is exposed only for n <= {F_N_MAX}")
    key = (n, want_F)
    if key in _DISC_CACHE:
        return _DISC_CACHE[key]

    nv = n + 1
    g = generic_disc(n, nv)
    d1 = {}
    d2 = {}
    d3 = {}
    d4 = {}
    for e, c in g.terms.items():
        dn, dn1 = e[n], e[n - 1]
        if dn >= 2:
            d4[e[: n] + (dn - 2,)] = c
        elif dn == 1 and dn1 >= 1:
            d2[e[: n - 1] + (dn1 - 1, 0)] = c
        elif dn == 1:
            d1[e[: n] + (0,)] = c
        else:
            if dn1 < 2:
                raise AssertionError("a_n-free monomial of G_n not divisible by a_{n-1}^2")
            d3[e[: n - 1] + (dn1 - 2, 0)] = c
    D1 = MPoly(nv, d1)
    D2 = MPoly(nv, d2)
    D3 = MPoly(nv, d3)
    D4 = MPoly(nv, d4)

    # Recorded identities: signs verified symbolically, never assumed.
    trunc1 = generic_disc(n - 1, n).pad_vars(nv)
    delta3_sign = 1 if D3 == trunc1 else (-1 if D3 == -trunc1 else 0)
    trunc2 = generic_disc(n - 2, n - 1).pad_vars(nv) if n >= 3 else MPoly.const(nv, 1)
    ref = MPoly.var(nv, n - 2, 3) * trunc2 * 4
    delta1_sign = 1 if D1 == ref else (-1 if D1 == -ref else 0)

    F = _univariate_disc(g.coeffs_in(n), nv) if want_F else None

    st = DiscStructure(n, g, D1, D2, D3, D4, F, delta1_sign, delta3_sign)
    _spot_check(st)
    _DISC_CACHE[key] = st
    return st


def _spot_check(st: DiscStructure, trials: int = 25) -> None:
    rng = random.Random(0xD15C ^ st.n)
    for _ in range(trials):
        pt = tuple(rng.randint(-9, 9) for _ in range(st.n + 1))
        if pt[0] == 0 or all(x == 0 for x in pt):
            continue
        want = discriminant(BinaryForm(st.n, pt))
        if st.G.eval(pt) != want or st.eval_split(pt) != want:
            raise AssertionError(f"discriminant structure self-check failed at {pt}")
