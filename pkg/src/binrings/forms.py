"""Integral binary forms and their exact invariants.

A degree-n form is stored leading-first:

    f(X, Y) = a_0 X^n + a_1 X^(n-1) Y + ... + a_n Y^n

so ``coeffs[i]`` multiplies X^(n-i) Y^i.  All arithmetic is exact over the
integers.  The discriminant convention is fixed once and for all as

    disc(f) = (-1)^(n(n-1)/2) / a_0 * Res(f, df/dX)

with the resultant computed as the determinant of the Sylvester matrix by
fraction-free (Bareiss) elimination.  Under this convention

    disc(aX^2+bXY+cY^2) = b^2 - 4ac,
    disc(X^3+pXY^2+qY^3) = -4p^3 - 27q^2,

and disc is invariant under translation f(X+lY, Y), under the X/Y swap, and
under negation of the whole form.  A vanishing leading coefficient is handled
by swapping ends (and translating first if both ends vanish), which is exact
by GL2-invariance.

Wire format: ``"n;a_0,a_1,...,a_n"`` in decimal, one form per line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "BinaryForm",
    "discriminant",
    "resultant",
    "translate",
    "reverse",
    "content",
    "primitive_part",
    "bareiss_det",
    "form_to_text",
    "form_from_text",
    "DegenerateFormError",
]


class DegenerateFormError(ValueError):
    """Input form is zero or otherwise outside an operation's domain."""


@dataclass(frozen=True)
class BinaryForm:
    """Degree-n integral binary form, coefficients leading-first."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be >= 1")
        if len(self.coeffs) != self.n + 1:
            raise ValueError(f"need {self.n + 1} coefficients for degree {self.n}")
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if all(c == 0 for c in self.coeffs):
            raise DegenerateFormError("zero form")

    @property
    def a0(self) -> int:
        return self.coeffs[0]

    @property
    def an(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x: int, y: int) -> int:
        acc = 0
        ypow = 1
        for c in self.coeffs:
            acc = acc * x + c * ypow
            ypow *= y
        return acc

    def eval_affine(self, l: int) -> int:
        """f(l, 1) by Horner."""
        acc = 0
        for c in self.coeffs:
            acc = acc * l + c
        return acc

    def deriv_affine(self, l: int) -> int:
        """(df/dX)(l, 1) by Horner."""
        acc = 0
        for i, c in enumerate(self.coeffs[:-1]):
            acc = acc * l + (self.n - i) * c
        return acc

    def dx(self) -> "BinaryForm":
        """Formal partial derivative in X, a form of degree n-1."""
        if self.n == 1:
            raise DegenerateFormError("derivative of a linear form is a constant")
        return BinaryForm(self.n - 1, tuple((self.n - i) * c for i, c in enumerate(self.coeffs[:-1])))

    def neg(self) -> "BinaryForm":
        return BinaryForm(self.n, tuple(-c for c in self.coeffs))

    def scale(self, c: int) -> "BinaryForm":
        if c == 0:
            raise DegenerateFormError("scaling by zero")
        return BinaryForm(self.n, tuple(c * a for a in self.coeffs))

    def __str__(self) -> str:
        return form_to_text(self)


def form(*coeffs: int) -> BinaryForm:
    """Convenience constructor: form(a0, a1, ..., an)."""
    return BinaryForm(len(coeffs) - 1, tuple(coeffs))


def form_to_text(f: BinaryForm) -> str:
    return f"{f.n};" + ",".join(str(c) for c in f.coeffs)


def form_from_text(line: str) -> BinaryForm:
    line = line.strip()
    try:
        head, tail = line.split(";")
        n = int(head)
        coeffs = tuple(int(t) for t in tail.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed form line: {line!r}") from exc
    return BinaryForm(n, coeffs)


def translate(f: BinaryForm, l: int) -> BinaryForm:
    """f_l(X, Y) = f(X + lY, Y); binomial re-expansion of the coefficients."""
    n = f.n
    if l == 0:
        return f
    b = []
    for k in range(n + 1):
        acc = 0
        lp = 1
        for i in range(k, -1, -1):
            acc += math.comb(n - i, n - k) * f.coeffs[i] * lp
            lp *= l
        b.append(acc)
    return BinaryForm(n, tuple(b))


def reverse(f: BinaryForm) -> BinaryForm:
    """Swap X and Y: coefficient sequence reversed."""
    return BinaryForm(f.n, tuple(reversed(f.coeffs)))


def content(f: BinaryForm) -> int:
    return math.gcd(*f.coeffs) if len(f.coeffs) > 1 else abs(f.coeffs[0])


def primitive_part(f: BinaryForm) -> BinaryForm:
    c = content(f)
    return BinaryForm(f.n, tuple(a // c for a in f.coeffs))


def bareiss_det(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by Bareiss elimination.

    Fraction-free: every intermediate entry is an integer (a minor of the
    original matrix), so nothing overflows or loses precision.
    """
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(fc: tuple[int, ...], gc: tuple[int, ...], n: int, m: int) -> list[list[int]]:
    """Sylvester matrix of two coefficient lists with formal degrees n, m."""
    size = n + m
    rows = []
    for i in range(m):
        rows.append([0] * i + list(fc) + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + list(gc) + [0] * (size - m - 1 - i))
    return rows


def resultant(f: BinaryForm, g: BinaryForm) -> int:
    """Res(f, g) with the forms' declared degrees as formal degrees."""
    return bareiss_det(sylvester_matrix(f.coeffs, g.coeffs, f.n, g.n))


def discriminant(f: BinaryForm) -> int:
    """disc(f) = (-1)^(n(n-1)/2)/a_0 * Res(f, f_X), exactly.

    a_0 = 0 is handled by the X/Y swap; if both end coefficients vanish the
    form is translated first so that f(c,1) != 0, which leaves disc unchanged.
    """
    n = f.n
    if n == 1:
        return 1
    if f.a0 == 0:
        if f.an != 0:
            return discriminant(reverse(f))
        for c in range(1, n + 2):
            if f.eval_affine(c) != 0:
                return discriminant(translate(f, c))
        raise DegenerateFormError("form vanishes at n+1 points")  # impossible for nonzero f
    res = resultant(f, f.dx())
    quot, rem = divmod(res, f.a0)
    if rem != 0:
        raise AssertionError("Res(f, f_X) not divisible by leading coefficient")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * quot
