"""Hot enumeration kernels with a numba fast path and a numpy fallback.

The per-point work (multiple-point classification of a form mod p) is exact
small-integer arithmetic, so both backends produce identical counts; the
numba path just runs the per-point loop compiled, while the numpy path
vectorises over chunks of points and only drops to python for the rare rows
that need a polynomial gcd (conjugate double points, impossible below
degree 4 cofactors).

Backend selection: environment variable BINRINGS_BACKEND = "numba" or
"numpy".  Unset means numba when importable, else numpy.  The selected name
is exposed as BACKEND.

Kernel contracts (shared with binrings.modp.profile_code):

  profile_codes(coeffs, n, p) -> (codes, roots)
      coeffs: (m, n+1) int64 array of vectors mod p, leading-first.
      codes per row: 0 smooth, 1 unique affine rational double point,
      2 double point at infinity, 3 strongly divisible, 4 zero vector.
      roots: the affine double root for code 1, else -1.

  singular_counts(n, p) -> (V, W)
      V = #{points of F_p^(n+1) with code 3 or 4}; W additionally counts
      points with a_0 = a_1 = 0.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = ["BACKEND", "profile_codes", "singular_counts"]

_env = os.environ.get("BINRINGS_BACKEND", "").strip().lower()
if _env not in ("", "numba", "numpy"):
    raise ValueError(f"BINRINGS_BACKEND must be 'numba' or 'numpy', got {_env!r}")

_numba = None
if _env in ("", "numba"):
    try:
        import numba as _numba
    except ImportError:
        _numba = None
        if _env == "numba":
            raise

BACKEND = "numba" if _numba is not None else "numpy"


# ----------------------------------------------------------------------
# numba backend: straight per-point loops, compiled

if _numba is not None:
    from numba import int64, njit

    @njit(cache=True)
    def _nb_profile_one(a, n, p, work):
        # work: scratch int64 array of length >= 3*(n+1)
        allzero = True
        for i in range(n + 1):
            if a[i] != 0:
                allzero = False
                break
        if allzero:
            return 4, -1
        k = 0
        while a[k] == 0:
            k += 1
        deg = n - k
        g = work[: deg + 1]
        for j in range(deg + 1):
            g[j] = a[n - j]
        doubles = 1 if k >= 2 else 0
        triple = k >= 3
        root = -1
        for l in range(p):
            m = 0
            while deg >= 1:
                acc = int64(0)
                for j in range(deg, -1, -1):
                    acc = (acc * l + g[j]) % p
                if acc != 0:
                    break
                # g(l) == 0: divide by (x - l), quotient lands in g[0..deg-1]
                c = g[deg]
                for j in range(deg - 1, -1, -1):
                    orig = g[j]
                    g[j] = c
                    c = (orig + l * c) % p
                deg -= 1
                m += 1
            if m >= 2:
                doubles += 1
                root = l
            if m >= 3:
                triple = True
        if deg >= 4:
            # gcd(g, g') nonconstant <=> repeated (necessarily nonrational) factor
            d1 = work[n + 1 : 2 * (n + 1)]
            d1deg = -1
            for j in range(1, deg + 1):
                d1[j - 1] = (j * g[j]) % p
                if d1[j - 1] != 0:
                    d1deg = j - 1
            hdeg = deg
            h = work[2 * (n + 1) : 3 * (n + 1)]
            for j in range(deg + 1):
                h[j] = g[j]
            if d1deg < 0:
                doubles += 2
            else:
                # euclid on (h, d1)
                adeg, bdeg = hdeg, d1deg
                while bdeg >= 0:
                    inv = int64(1)
                    b_lead = d1[bdeg]
                    e = p - 2
                    base = b_lead
                    while e:
                        if e & 1:
                            inv = inv * base % p
                        base = base * base % p
                        e >>= 1
                    while adeg >= bdeg:
                        c = h[adeg] * inv % p
                        if c != 0:
                            sh = adeg - bdeg
                            for j in range(bdeg + 1):
                                h[j + sh] = (h[j + sh] - c * d1[j]) % p
                        adeg -= 1
                        while adeg >= 0 and h[adeg] == 0:
                            adeg -= 1
                    # swap (h, adeg) <-> (d1, bdeg)
                    for j in range(max(adeg, bdeg) + 1):
                        t = h[j]
                        h[j] = d1[j]
                        d1[j] = t
                    adeg, bdeg = bdeg, adeg
                if adeg >= 1:
                    doubles += 2
        if triple:
            return 3, -1
        if doubles >= 2:
            return 3, -1
        if doubles == 0:
            return 0, -1
        if k == 2:
            return 2, -1
        return 1, root

    @njit(cache=True)
    def _nb_profile_codes(coeffs, n, p):
        m = coeffs.shape[0]
        codes = np.empty(m, dtype=np.int8)
        roots = np.empty(m, dtype=np.int64)
        work = np.zeros(3 * (n + 1), dtype=np.int64)
        for i in range(m):
            c, r = _nb_profile_one(coeffs[i], n, p, work)
            codes[i] = c
            roots[i] = r
        return codes, roots

    @njit(cache=True)
    def _nb_singular_counts(n, p):
        total = 1
        for _ in range(n + 1):
            total *= p
        a = np.zeros(n + 1, dtype=np.int64)
        work = np.zeros(3 * (n + 1), dtype=np.int64)
        v = 0
        w = 0
        for _ in range(total):
            c, _r = _nb_profile_one(a, n, p, work)
            strong = c >= 3
            if strong:
                v += 1
            if strong or (a[0] == 0 and a[1] == 0):
                w += 1
            # odometer increment
            i = n
            while i >= 0:
                a[i] += 1
                if a[i] < p:
                    break
                a[i] = 0
                i -= 1
        return v, w


# ----------------------------------------------------------------------
# numpy backend: vectorised over chunks

def _np_translation_matrices(n: int, p: int) -> np.ndarray:
    """M[l][k][i] = C(n-i, n-k) l^(k-i) mod p, so b = a @ M[l].T are the
    coefficients of f(X + lY, Y)."""
    out = np.zeros((p, n + 1, n + 1), dtype=np.int64)
    for l in range(p):
        for k in range(n + 1):
            lp = 1
            for i in range(k, -1, -1):
                out[l, k, i] = (math.comb(n - i, n - k) * lp) % p
                lp = lp * l % p
    return out


def _np_profile_codes(coeffs: np.ndarray, n: int, p: int):
    m = coeffs.shape[0]
    a = np.mod(coeffs.astype(np.int64), p)
    nonzero = a != 0
    any_nonzero = nonzero.any(axis=1)
    # multiplicity at infinity: leading zeros
    first_nz = np.where(any_nonzero, nonzero.argmax(axis=1), n + 1)
    k = first_nz
    mats = _np_translation_matrices(n, p)
    mult = np.zeros((p, m), dtype=np.int64)
    for l in range(p):
        b = a @ mats[l].T % p
        # multiplicity of root l = trailing zeros of translated coefficients,
        # capped by the affine degree n - k
        bz = b[:, ::-1] != 0
        t = np.where(bz.any(axis=1), bz.argmax(axis=1), n + 1)
        mult[l] = np.minimum(t, n - np.minimum(k, n))
    doubles = (mult >= 2).sum(axis=0) + (k >= 2)
    triple = (mult >= 3).any(axis=0) | (k >= 3)
    root_candidates = np.where(mult >= 2, np.arange(p)[:, None], -1)
    roots = root_candidates.max(axis=0)

    # rows whose root-free cofactor can still hide a repeated factor
    rat_mult = mult.sum(axis=0)
    hdeg = n - np.minimum(k, n) - rat_mult
    need_gcd = any_nonzero & (hdeg >= 4)
    if need_gcd.any():
        from .modp import poly_deriv, poly_divmod, poly_eval, poly_gcd, trim

        for i in np.nonzero(need_gcd)[0]:
            row = [int(x) for x in a[i]]
            kk = int(k[i])
            g = [row[n - j] for j in range(n - kk + 1)]
            for l in range(p):
                while len(g) > 1 and poly_eval(g, l, p) == 0:
                    g = poly_divmod(g, [(-l) % p, 1], p)[0]
            d = poly_deriv(g, p)
            if not d or len(poly_gcd(g, d, p)) > 1:
                doubles[i] += 2

    codes = np.zeros(m, dtype=np.int8)
    codes[~any_nonzero] = 4
    live = any_nonzero
    strong = live & (triple | (doubles >= 2))
    codes[strong] = 3
    single = live & ~strong & (doubles == 1)
    codes[single & (k == 2)] = 2
    codes[single & (k != 2)] = 1
    roots = np.where(codes == 1, roots, -1)
    return codes, roots


def _np_singular_counts(n: int, p: int, chunk: int = 1 << 16):
    total = p ** (n + 1)
    v = 0
    w = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        cols = []
        rest = idx.copy()
        for _ in range(n + 1):
            cols.append(rest % p)
            rest //= p
        pts = np.stack(cols[::-1], axis=1)  # leading-first
        codes, _ = _np_profile_codes(pts, n, p)
        strong = codes >= 3
        v += int(strong.sum())
        w += int((strong | ((pts[:, 0] == 0) & (pts[:, 1] == 0))).sum())
    return v, w


# ----------------------------------------------------------------------
# public dispatch

def profile_codes(coeffs, n: int, p: int):
    arr = np.ascontiguousarray(np.asarray(coeffs, dtype=np.int64) % p)
    if arr.ndim != 2 or arr.shape[1] != n + 1:
        raise ValueError("coeffs must be an (m, n+1) array")
    if BACKEND == "numba":
        return _nb_profile_codes(arr, n, p)
    return _np_profile_codes(arr, n, p)


def singular_counts(n: int, p: int):
    if BACKEND == "numba":
        return _nb_singular_counts(n, p)
    return _np_singular_counts(n, p)
