"""Archimedean reduction data: Gram-Schmidt profiles, the Normally-Minkowski-
Reduced test, scaling thresholds, translation matrices, canonical keys.

The basis B_0, ..., B_(n-2), B_(n-1)/m of a (possibly trivial, m = 1) divided
ring embeds into R^r x C^s through the roots of f(x,1); with the usual trace
norm (complex places weighted by 2) the Gram-Schmidt lengths t_1..t_n drive
everything here:

  * Normally Minkowski Reduced <=> t_2/t_1 >= 2 and t_i/t_2 >= 2 (i >= 3);
    the comparisons are taken at face value at the working precision, so a
    ratio inside the guard band just below 2 fails -- conservative for the
    dedupe soundness, and a profile with exact ratio 2 passes.
  * rho_f = max(max_{i>=3} (2 t_2/t_i)^(1/(i-2)), 2 t_1/t_2): scaling the
    coefficients a_i by lambda rho^i passes the test whenever
    rho >= m^(1/(n-2)) rho_f and lambda >= 1.

Roots come from a deterministic Durand-Kerner iteration at a configurable
working precision (default 128 bits).  Real/complex classification uses the
observed root separation; inputs whose roots are closer than the precision
can resolve raise PrecisionError instead of guessing.

Canonical keys: two reduced witnesses (f, m, l) and (g, m', d) generate the
same divided ring iff m = m' and g is a translate of f by a multiple of m up
to the orientation flip x -> -x.  The key therefore translates the witness
to l = 0, normalizes the sign of the leading coefficient, reduces the second
coefficient into [0, n*a_0*m) by translates in m*Z, does the same for the
flipped form, and keeps the lexicographically smaller coefficient tuple with
an orientation bit.  Keys are only meaningful for reduced inputs (enforced),
and carry a warning flag below degree 4 where the injectivity theorem does
not apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpf, mpc

from .forms import BinaryForm, translate
from .weakdiv import WeakDivWitness, witness_valid

__all__ = [
    "GramProfile",
    "CanonicalKey",
    "PrecisionError",
    "polynomial_roots",
    "gram_profile",
    "is_normally_minkowski_reduced",
    "rho_f",
    "translation_matrix",
    "canonical_representative",
    "scale_form",
    "DEFAULT_PRECISION",
]

DEFAULT_PRECISION = 128


class PrecisionError(ArithmeticError):
    """Roots could not be separated at the working precision."""


@dataclass(frozen=True)
class GramProfile:
    t: tuple  # mpf lengths t_1..t_n
    r: int
    s: int
    precision: int


@dataclass(frozen=True)
class CanonicalKey:
    m: int
    coeffs: tuple[int, ...]
    sigma: int
    degree_warning: bool  # injectivity is only proven for n >= 4

    def __str__(self) -> str:
        return f"{self.m}|{','.join(str(c) for c in self.coeffs)}|{self.sigma}"


def polynomial_roots(f: BinaryForm, precision: int = DEFAULT_PRECISION):
    """All complex roots of f(x,1) by deterministic Durand-Kerner.

    Returns (roots sorted by (Re, Im), separation); raises PrecisionError
    when the iteration stalls or roots collide at this precision.
    """
    n = f.n
    if f.coeffs[0] == 0:
        raise ValueError("leading coefficient vanishes; orient the form first")
    with mp.workprec(precision + 32):
        a = [mpf(c) for c in f.coeffs]
        lead = a[0]
        radius = 1 + max(abs(c / lead) for c in a)
        seed = mpc("0.4", "0.9")
        z = [radius * seed**k for k in range(1, n + 1)]
        tol = mpf(2) ** (-precision)

        def ev(x):
            acc = mpc(0)
            for c in a:
                acc = acc * x + c
            return acc

        for _ in range(200 + 20 * precision):
            moved = mpf(0)
            for i in range(n):
                num = ev(z[i]) / lead
                den = mpc(1)
                for j in range(n):
                    if j != i:
                        den *= z[i] - z[j]
                if den == 0:
                    raise PrecisionError("coincident iterates; raise the precision")
                step = num / den
                z[i] = z[i] - step
                moved = max(moved, abs(step))
            if moved < tol * radius:
                break
        else:
            raise PrecisionError("root iteration did not converge; raise the precision")
        sep = min(
            abs(z[i] - z[j]) for i in range(n) for j in range(i + 1, n)
        ) if n > 1 else mpf(1)
        if sep < mpf(2) ** (-(precision // 2)) * radius:
            raise PrecisionError(
                "root separation below working precision (repeated factor?)"
            )
        roots = sorted(z, key=lambda w: (w.real, w.imag))
        return roots, sep


def _embedding_rows(f: BinaryForm, precision: int):
    """(chosen roots, kinds, r, s): one root per real place, one per
    conjugate pair (the upper-half representative)."""
    roots, sep = polynomial_roots(f, precision)
    n = f.n
    real = [z for z in roots if abs(z.imag) < sep / 4]
    upper = [z for z in roots if z.imag >= sep / 4]
    lower = [z for z in roots if z.imag <= -sep / 4]
    if len(upper) != len(lower) or len(real) + 2 * len(upper) != n:
        raise PrecisionError("could not pair complex embeddings; raise the precision")
    chosen = [mpc(z.real, 0) for z in real] + list(upper)
    kinds = ["r"] * len(real) + ["c"] * len(upper)
    return chosen, kinds, len(real), len(upper)


def _to_real_vector(values, kinds, sq2):
    row = []
    for kind, val in zip(kinds, values):
        if kind == "r":
            row.append(val.real)
        else:
            row.append(sq2 * val.real)
            row.append(sq2 * val.imag)
    return row


def gram_profile(f: BinaryForm, m: int = 1, precision: int = DEFAULT_PRECISION) -> GramProfile:
    """Gram-Schmidt profile of B_0, ..., B_(n-2), B_(n-1)/m under the
    canonical norm on R^r x C^s."""
    n = f.n
    with mp.workprec(precision + 32):
        chosen, kinds, r, s = _embedding_rows(f, precision)
        sq2 = mp.sqrt(2)
        # B_k(delta) = a_0 delta^k + ... + a_(k-1) delta at each embedding
        vecs = []
        for k in range(n):
            vals = []
            for z in chosen:
                if k == 0:
                    vals.append(mpc(1))
                else:
                    acc = mpc(0)
                    for i in range(k):
                        acc = acc * z + f.coeffs[i]
                    acc = acc * z
                    vals.append(acc)
            row = _to_real_vector(vals, kinds, sq2)
            if k == n - 1 and m != 1:
                row = [x / m for x in row]
            vecs.append(row)
        # classical Gram-Schmidt
        t = []
        ortho: list[list] = []
        for v in vecs:
            w = list(v)
            for u in ortho:
                nu = mp.fsum(x * x for x in u)
                proj = mp.fsum(x * y for x, y in zip(w, u)) / nu
                w = [x - proj * y for x, y in zip(w, u)]
            norm = mp.sqrt(mp.fsum(x * x for x in w))
            if norm <= mpf(2) ** (-(precision // 2)):
                raise PrecisionError("degenerate Gram-Schmidt step; raise the precision")
            ortho.append(w)
            t.append(norm)
        return GramProfile(tuple(t), r, s, precision)


def is_normally_minkowski_reduced(profile: GramProfile, eps_guard: float = 1e-9) -> bool:
    """t_2/t_1 >= 2 and t_i/t_2 >= 2 for i >= 3, compared outright.

    The guard band [2*(1-eps_guard), 2) is rejected like anything below the
    threshold: a borderline measurement never rounds up to a pass.
    """
    t = profile.t
    if len(t) < 2:
        return True
    if t[1] < 2 * t[0]:
        return False
    return all(t[i] >= 2 * t[1] for i in range(2, len(t)))


def rho_f(f: BinaryForm, precision: int = DEFAULT_PRECISION):
    """Scaling threshold: lambda rho^n f(x/rho) is reduced for every
    rho >= rho_f, lambda >= 1 (and rho >= m^(1/(n-2)) rho_f for the
    m-divided basis)."""
    prof = gram_profile(f, 1, precision)
    t = prof.t
    n = len(t)
    if n < 3:
        raise ValueError("threshold needs degree >= 3")
    with mp.workprec(precision):
        best = 2 * t[0] / t[1]
        for i in range(3, n + 1):
            best = max(best, (2 * t[1] / t[i - 1]) ** (mpf(1) / (i - 2)))
        return best


def scale_form(f: BinaryForm, rho: int, lam: int = 1) -> BinaryForm:
    """Coefficients of lambda rho^n f(X/rho, Y): a_i -> lambda rho^i a_i."""
    return BinaryForm(f.n, tuple(lam * rho**i * c for i, c in enumerate(f.coeffs)))


def translation_matrix(f: BinaryForm, l: int) -> list[list[int]]:
    """Base change between the shifted canonical bases of R_f and R_(f_l).

    Unipotent upper-triangular; column k expands the k-th shifted basis
    element of R_(f_l) over those of R_f:

        M[0][k]  = C(n-1, k) l^k a_0          (k >= 1)
        M[k'][k] = C(n-k'-1, k-k') l^(k-k')   (1 <= k' <= k).
    """
    n = f.n
    a0 = f.coeffs[0]
    mat = [[0] * n for _ in range(n)]
    mat[0][0] = 1
    for k in range(1, n):
        mat[0][k] = math.comb(n - 1, k) * l**k * a0
        for kp in range(1, k + 1):
            mat[kp][k] = math.comb(n - kp - 1, k - kp) * l ** (k - kp)
    return mat


def _flip(f: BinaryForm) -> BinaryForm:
    """(-1)^n f(-X, Y): negates every odd-index coefficient."""
    return BinaryForm(f.n, tuple((-c if i % 2 else c) for i, c in enumerate(f.coeffs)))


def _normalize_translation(h: BinaryForm, m: int) -> BinaryForm:
    """Translate by the unique multiple of m putting the second coefficient
    into [0, n*a_0*m)."""
    n = h.n
    a0 = h.coeffs[0]
    modulus = n * a0 * m
    a1 = h.coeffs[1]
    target = a1 % modulus
    shift = (target - a1) // (n * a0)
    assert shift % m == 0
    return translate(h, shift)


def canonical_representative(
    f: BinaryForm,
    w: WeakDivWitness,
    profile: GramProfile | None = None,
    precision: int = DEFAULT_PRECISION,
) -> CanonicalKey:
    """Dedupe key for a reduced witness; collisions <=> identical divided
    rings (for n >= 4; lower degrees carry a warning flag).

    Raises if the witness fails the reduction test: keys for non-reduced
    inputs would not be injective and are refused outright.
    """
    if not witness_valid(f, w.m, w.l):
        raise ValueError("invalid witness")
    h = translate(f, w.l)
    if profile is None:
        profile = gram_profile(h, w.m, precision)
    if not is_normally_minkowski_reduced(profile):
        raise ValueError("input is not normally Minkowski reduced; no canonical key")
    if h.coeffs[0] < 0:
        h = h.neg()
    cand_a = _normalize_translation(h, w.m)
    cand_b = _normalize_translation(_flip(h), w.m)
    if cand_a.coeffs <= cand_b.coeffs:
        return CanonicalKey(w.m, cand_a.coeffs, 0, f.n <= 3)
    return CanonicalKey(w.m, cand_b.coeffs, 1, f.n <= 3)
