"""Binary rings: canonical bases, structure constants, trace discriminants.

For a degree-n form f = a_0 X^n + ... + a_n Y^n with a_0 != 0 and delta the
image of X in Q[X]/(f(X,1)), the ring R_f has Z-basis

    B_0 = 1,  B_k = a_0 delta^k + a_1 delta^(k-1) + ... + a_(k-1) delta

(k = 1..n-1).  Structure constants are computed by exact rational arithmetic:
each product B_i B_j is expanded in the power basis of Q[X]/(f(X,1)) and
converted back through the (triangular, determinant a_0^(n-1)) change of
basis; every entry must come out an integer, and a non-integer entry is an
internal error, never a data condition.

The construction itself works for any integral form with nonzero leading
coefficient (the quotient algebra may be a product of fields); the public
``canonical_basis_ring`` additionally enforces the irreducibility gate that
most callers assume.  The discriminant of a presentation
is the determinant of its trace form and, for R_f, equals disc(f) exactly.

Fractional R_f-modules (the ideal triple R_f + R_f d, R_f n R_f d^{-1} and
their product) are represented by integer generator matrices over the ring
basis together with a denominator, normalized by column-style Hermite
reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .forms import BinaryForm, discriminant, bareiss_det, reverse
from .zpoly import is_irreducible_poly

__all__ = [
    "RingPresentation",
    "IdealPresentation",
    "ReducibleFormError",
    "canonical_basis_ring",
    "build_ring_on_basis",
    "canonical_basis_columns",
    "ring_disc",
    "is_irreducible_form",
    "ideal_bases",
    "hermite_basis",
    "module_contains",
    "quotient_size",
    "vec_mul",
]


class ReducibleFormError(ValueError):
    """The form is reducible over Q (or degenerate) where a field generator
    is required."""


@dataclass(frozen=True)
class RingPresentation:
    """Rank-n ring as integer structure constants over a named basis."""

    n: int
    basis_names: tuple[str, ...]
    structure: tuple[tuple[tuple[int, ...], ...], ...]  # structure[i][j] = B_i*B_j
    disc: int
    origin: BinaryForm
    witness: tuple[int, int] | None = None  # (m, l) when this is R'_{(f_l, m)}

    def mul(self, u, v):
        return vec_mul(self.structure, u, v)

    def trace_matrix(self) -> list[list[int]]:
        n = self.n
        tr_basis = [sum(self.structure[k][j][j] for j in range(n)) for k in range(n)]
        out = []
        for i in range(n):
            out.append(
                [sum(c * t for c, t in zip(self.structure[i][j], tr_basis)) for j in range(n)]
            )
        return out


def vec_mul(structure, u, v):
    n = len(structure)
    out = [0] * n
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            c = ui * vj
            row = structure[i][j]
            for k in range(n):
                if row[k]:
                    out[k] += c * row[k]
    return tuple(out)


# ----------------------------------------------------------------------
# exact linear algebra over Q

def _mat_inv(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular basis matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _reduction_rows(f: BinaryForm) -> list[list[Fraction]]:
    """Power-basis expansions of delta^k for k = 0 .. 2n-2."""
    n = f.n
    a = f.coeffs
    if a[0] == 0:
        raise ReducibleFormError("leading coefficient vanishes; orient the form first")
    rows = [[Fraction(int(j == k)) for j in range(n)] for k in range(n)]
    # delta^n = -(a_1 delta^(n-1) + ... + a_n)/a_0, then multiply up by delta
    top = [Fraction(-a[n - j], a[0]) for j in range(n)]
    rows.append(top)
    for _ in range(n - 1):
        prev = rows[-1]
        shifted = [Fraction(0)] + prev[:-1]
        carry = prev[-1]
        nxt = [s + carry * t for s, t in zip(shifted, rows[n])]
        rows.append(nxt)
    return rows


def _poly_mul_mod(u, v, red):
    """Product of two power-basis vectors, reduced mod f via red rows."""
    n = len(u)
    conv = [Fraction(0)] * (2 * n - 1)
    for i, x in enumerate(u):
        if x:
            for j, y in enumerate(v):
                if y:
                    conv[i + j] += x * y
    out = [Fraction(0)] * n
    for d, c in enumerate(conv):
        if c:
            for j in range(n):
                out[j] += c * red[d][j]
    return out


def canonical_basis_columns(f: BinaryForm) -> list[list[Fraction]]:
    """Columns of the canonical basis in the power basis: column k is B_k."""
    n = f.n
    cols = []
    for k in range(n):
        col = [Fraction(0)] * n
        if k == 0:
            col[0] = Fraction(1)
        else:
            for j in range(1, k + 1):
                col[j] = Fraction(f.coeffs[k - j])
        cols.append(col)
    return cols


def build_ring_on_basis(
    f: BinaryForm,
    columns: list[list[Fraction]],
    names: tuple[str, ...],
    witness: tuple[int, int] | None = None,
) -> RingPresentation:
    """Structure constants of the Z-span of the given basis inside
    Q[X]/(f(X,1)); every constant must be integral."""
    n = f.n
    red = _reduction_rows(f)
    mat = [[columns[k][j] for k in range(n)] for j in range(n)]  # rows: power index
    inv = _mat_inv(mat)
    structure = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < i:
                row.append(structure[j][i])
                continue
            prod = _poly_mul_mod(columns[i], columns[j], red)
            coords = []
            for r in range(n):
                val = sum(inv[r][s] * prod[s] for s in range(n))
                if val.denominator != 1:
                    raise AssertionError(
                        f"non-integral structure constant at ({i},{j}): {val}"
                    )
                coords.append(int(val))
            row.append(tuple(coords))
        structure.append(row)
    structure = tuple(tuple(r) for r in structure)
    pres = RingPresentation(n, names, structure, 0, f, witness)
    d = _trace_form_det(pres)
    object.__setattr__(pres, "disc", d)
    _verify_presentation(pres)
    return pres


def _trace_form_det(pres: RingPresentation) -> int:
    return bareiss_det(pres.trace_matrix())


def _verify_presentation(pres: RingPresentation) -> None:
    n = pres.n
    st = pres.structure
    for j in range(n):
        if st[0][j] != tuple(1 if k == j else 0 for k in range(n)):
            raise AssertionError("B_0 is not the multiplicative identity")
    for i in range(n):
        for j in range(i):
            if st[i][j] != st[j][i]:
                raise AssertionError("structure table not symmetric")


def is_irreducible_form(f: BinaryForm) -> bool:
    """Irreducibility of f over Q as a form: no Y factor (a_0 != 0 needed
    after orientation) and f(x,1) irreducible of full degree."""
    if f.n == 1:
        return True
    g = f
    if g.coeffs[0] == 0:
        g = reverse(g)
        if g.coeffs[0] == 0:
            return False  # both X and Y divide
    return is_irreducible_poly([g.coeffs[g.n - j] for j in range(g.n + 1)])


def canonical_basis_ring(f: BinaryForm) -> RingPresentation:
    """R_f with the canonical basis; requires f irreducible over Q.

    A vanishing leading coefficient is handled by orientation through the
    X/Y swap (GL_2-invariance of the ring).
    """
    g = f
    if g.coeffs[0] == 0:
        g = reverse(g)
    if g.coeffs[0] == 0 or not is_irreducible_form(g):
        raise ReducibleFormError(f"form {f} is reducible over Q or degenerate")
    names = tuple(f"B{k}" for k in range(g.n))
    return build_ring_on_basis(g, canonical_basis_columns(g), names)


def ring_disc(pres: RingPresentation) -> int:
    """det(Tr(B_i B_j)) recomputed from the structure table."""
    return _trace_form_det(pres)


def quotient_size(pres: RingPresentation, p: int) -> int:
    """|R/pR| via the Hermite form of the multiplication-free module pZ^n."""
    gens = [[p if i == j else 0 for j in range(pres.n)] for i in range(pres.n)]
    h = hermite_basis(gens)
    out = 1
    for i, row in enumerate(h):
        out *= abs(row[i])
    return out


# ----------------------------------------------------------------------
# integer module (Hermite) utilities

def hermite_basis(gens: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the span of the generator rows.

    Returns a full-rank upper-triangular basis (positive diagonal); raises
    if the span has rank below the ambient dimension.
    """
    n = len(gens[0])
    rows = [list(r) for r in gens if any(r)]
    basis: list[list[int] | None] = [None] * n
    for row in rows:
        for col in range(n):
            if row[col] == 0:
                continue
            if basis[col] is None:
                basis[col] = row
                break
            b = basis[col]
            g, x, y = _xgcd(b[col], row[col])
            newb = [x * bb + y * rr for bb, rr in zip(b, row)]
            q1, q2 = b[col] // g, row[col] // g
            row = [q1 * rr - q2 * bb for bb, rr in zip(b, row)]
            basis[col] = newb
        # row fully reduced -> zero
    if any(b is None for b in basis):
        raise ValueError("module has deficient rank")
    out = [list(b) for b in basis]  # type: ignore[arg-type]
    for i in range(n):
        if out[i][i] < 0:
            out[i] = [-x for x in out[i]]
    for i in range(n - 1, -1, -1):
        for r in range(i):
            q = out[r][i] // out[i][i]
            if q:
                out[r] = [a - q * b for a, b in zip(out[r], out[i])]
    return out


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def module_contains(hnf: list[list[int]], vec: list[int]) -> bool:
    v = list(vec)
    n = len(v)
    for i in range(n):
        if v[i] % hnf[i][i]:
            return False
        q = v[i] // hnf[i][i]
        v = [a - q * b for a, b in zip(v, hnf[i])]
    return not any(v)


@dataclass(frozen=True)
class IdealPresentation:
    """Fractional R_f-module: rows/denominator span in the ring basis."""

    ambient: RingPresentation
    rows: tuple[tuple[int, ...], ...]  # Hermite basis of denominator * module
    denominator: int
    role: str

    def index_in_ring(self) -> Fraction:
        num = 1
        for i, r in enumerate(self.rows):
            num *= r[i]
        return Fraction(num, self.denominator ** self.ambient.n)

    def same_module(self, other: "IdealPresentation") -> bool:
        a = [[x * other.denominator for x in r] for r in self.rows]
        b = [[x * self.denominator for x in r] for r in other.rows]
        return hermite_basis(a) == hermite_basis(b)


def _module_mul(a: IdealPresentation, b: IdealPresentation, role: str) -> IdealPresentation:
    amb = a.ambient
    prods = []
    for u in a.rows:
        for v in b.rows:
            prods.append(list(amb.mul(u, v)))
    h = hermite_basis(prods)
    den = a.denominator * b.denominator
    g = den
    for row in h:
        for x in row:
            g = math.gcd(g, x)
    h = [[x // g for x in row] for row in h]
    return IdealPresentation(amb, tuple(tuple(r) for r in h), den // g, role)


def _check_module(pres: IdealPresentation) -> None:
    amb = pres.ambient
    n = amb.n
    h = [list(r) for r in pres.rows]
    for k in range(n):
        ek = tuple(1 if i == k else 0 for i in range(n))
        for row in pres.rows:
            if not module_contains(h, list(amb.mul(row, ek))):
                raise AssertionError(f"{pres.role} is not closed under B_{k}")


def ideal_bases(f: BinaryForm):
    """The module triple attached to a primitive form:

        I+ = R_f + R_f*delta          (denominator a_0: delta = B_1/a_0)
        I- = R_f n R_f*delta^(-1)     = <a_0, B_1, ..., B_(n-1)>
        I+ * I- = <1, B_1 - a_(n-1), ..., B_(n-1) - a_1> = R_f.

    Returns (I+, I-, product); the product is verified against both the
    closed form and R_f itself.
    """
    from .forms import content

    if content(f) != 1:
        raise ValueError("form is imprimitive: take primitive_part(f) first")
    ring = canonical_basis_ring(f)
    g = ring.origin
    n = g.n
    a0 = g.coeffs[0]

    def e(k):
        return [1 if i == k else 0 for i in range(n)]

    plus_rows = [[a0 if i == 0 else 0 for i in range(n)], e(1)] + [
        [a0 * x for x in e(k)] for k in range(2, n)
    ]
    i_plus = IdealPresentation(ring, tuple(map(tuple, hermite_basis(plus_rows))), abs(a0), "R_f+R_f*delta")

    # generators a_0 and the shifted elements B_k + a_k (which satisfy
    # (B_k + a_k) * delta = B_(k+1) resp. -a_n, hence lie in R_f*delta^(-1))
    minus_rows = [[a0 if i == 0 else 0 for i in range(n)]] + [
        [(g.coeffs[k] if i == 0 else 0) + (1 if i == k else 0) for i in range(n)]
        for k in range(1, n)
    ]
    i_minus = IdealPresentation(ring, tuple(map(tuple, hermite_basis(minus_rows))), 1, "R_f^R_f/delta")

    prod = _module_mul(i_plus, i_minus, "product")

    claimed_rows = [e(0)] + [
        [(-g.coeffs[n - k] if i == 0 else 0) + (1 if i == k else 0) for i in range(n)]
        for k in range(1, n)
    ]
    claimed = IdealPresentation(
        ring, tuple(map(tuple, hermite_basis(claimed_rows))), 1, "product-closed-form"
    )
    if not prod.same_module(claimed):
        raise AssertionError("product module does not match the closed form")
    for pres in (i_plus, i_minus, prod):
        _check_module(pres)
    return i_plus, i_minus, prod
