import itertools

import numpy as np
import pytest

from binrings import _kernels
from binrings.forms import BinaryForm, discriminant
from binrings.modp import (
    CODE_STRONG,
    CODE_UNIQUE_AFFINE,
    DOUBLE_INF,
    SMOOTH,
    STRONG,
    UNIQUE_AFFINE,
    count_H,
    double_root_profile,
    factor_modp,
    poly_factor,
    profile_code,
    singular_density,
    strongly_divisible_every_lift,
)

from conftest import random_form


def reconstruct(fac):
    """Multiply the factorization back, as a leading-first coefficient tuple."""
    p = fac.p
    poly = [fac.unit % p]
    for q, e in fac.factors:
        aff = [q.coeffs[q.n - j] for j in range(q.n + 1)]
        for _ in range(e):
            out = [0] * (len(poly) + len(aff) - 1)
            for i, x in enumerate(poly):
                for j, y in enumerate(aff):
                    out[i + j] = (out[i + j] + x * y) % p
            poly = out
    n = fac.degree_sum
    coeffs = [0] * (n + 1)
    for j, c in enumerate(poly):
        coeffs[n - j] = c
    return tuple(coeffs)


def test_factor_examples():
    fac = factor_modp(BinaryForm(2, (1, 0, 1)), 2)
    assert [(q.coeffs, e) for q, e in fac.factors] == [((1, 1), 2)]
    fac = factor_modp(BinaryForm(2, (1, 1, 1)), 2)
    assert [(q.coeffs, e) for q, e in fac.factors] == [((1, 1, 1), 1)]
    fac = factor_modp(BinaryForm(2, (2, 1, 1)), 2)
    assert fac.infinity_multiplicity == 1
    assert [(q.coeffs, e) for q, e in fac.factors] == [((1, 1), 1)]
    with pytest.raises(ValueError):
        factor_modp(BinaryForm(2, (2, 4, 6)), 2)


def test_factor_reconstruction_random(rng):
    for _ in range(300):
        n = rng.randint(1, 6)
        p = rng.choice([2, 3, 5, 7, 11, 13])
        f = random_form(rng, n, lead_nonzero=False)
        if all(c % p == 0 for c in f.coeffs):
            continue
        fac = factor_modp(f, p)
        assert fac.degree_sum == n
        assert reconstruct(fac) == tuple(c % p for c in f.coeffs)
        # distinct monic irreducible non-Y factors
        seen = {q.coeffs for q, _ in fac.factors}
        assert len(seen) == len(fac.factors)
        for q, _ in fac.factors:
            assert q.coeffs[0] == 1


def test_factor_bigger_prime():
    f = BinaryForm(4, (1, 0, 0, 0, -1))
    fac = factor_modp(f, 65537)
    assert fac.degree_sum == 4


def test_profile_examples():
    prof = double_root_profile(BinaryForm(3, (1, 1, 0, 0)), 5)
    assert prof.kind == UNIQUE_AFFINE and prof.witness == 0
    prof = double_root_profile(BinaryForm(4, (0, 0, 1, 0, 0)), 3)  # X^2 Y^2
    assert prof.kind == STRONG and prof.reason == "two-double-points"
    prof = double_root_profile(BinaryForm(4, (1, 2, 3, 2, 1)), 2)  # (X^2+XY+Y^2)^2
    assert prof.kind == STRONG and prof.reason == "two-double-points"
    prof = double_root_profile(BinaryForm(3, (1, 0, 0, 0)), 5)  # X^3
    assert prof.kind == STRONG and prof.reason == "rational-triple"
    prof = double_root_profile(BinaryForm(2, (1, 1, 1)), 5)
    assert prof.kind == SMOOTH
    prof = double_root_profile(BinaryForm(3, (4, 2, 1, 1)), 2)  # Y^2 (X + Y) mod 2
    assert prof.kind == DOUBLE_INF and prof.witness == "inf"


def test_count_H_examples_and_enumeration():
    assert count_H(2, 1) == 2
    assert count_H(2, 2) == 1
    assert count_H(3, 3) == 8
    # exhaustive enumeration cross-check for p <= 5, f <= 4
    for p in (2, 3, 5):
        for fdeg in (1, 2, 3, 4):
            total = 0
            for coeffs in itertools.product(range(p), repeat=fdeg):
                poly = list(coeffs) + [1]
                _, facs = poly_factor(poly, p)
                if len(facs) == 1 and facs[0][1] == 1 and len(facs[0][0]) == fdeg + 1:
                    total += 1
            assert total == count_H(p, fdeg), (p, fdeg)


def test_profile_code_agrees_with_factorization_profile(rng):
    kinds = {0: SMOOTH, 1: UNIQUE_AFFINE, 2: DOUBLE_INF, 3: STRONG}
    for _ in range(400):
        n = rng.randint(2, 6)
        p = rng.choice([2, 3, 5, 7])
        f = random_form(rng, n, lead_nonzero=False)
        if all(c % p == 0 for c in f.coeffs):
            continue
        code, root = profile_code(f.coeffs, n, p)
        prof = double_root_profile(f, p)
        assert kinds[code] == prof.kind
        if code == CODE_UNIQUE_AFFINE:
            assert root == prof.witness


def test_kernel_backends_agree_exhaustive():
    for n, p in [(3, 2), (3, 3), (2, 5), (4, 3)]:
        pts = np.array(list(itertools.product(range(p), repeat=n + 1)), dtype=np.int64)
        codes, roots = _kernels.profile_codes(pts, n, p)
        for row, c, r in zip(pts, codes, roots):
            c2, r2 = profile_code([int(x) for x in row], n, p)
            assert (c, r) == (c2, r2)


def test_singular_density_examples():
    v, w, cp = singular_density(2, 3)
    assert (v, w) == (1, 3)
    assert cp == type(cp)(8, 9)
    for p in (3, 5, 7):
        v, w, cp = singular_density(2, p)
        assert w == p and cp == type(cp)(p**3 - p, p**3)
    v, w, cp = singular_density(3, 2)
    assert v + w >= v and w <= 16


def test_singular_density_budget():
    with pytest.raises(ValueError):
        singular_density(6, 101, budget=10**6)


def test_every_lift_equivalence_p3_and_p2_divergence():
    """At p = 3 the profile and every-lift notions coincide pointwise; at
    p = 2 the every-lift locus is strictly larger (Stickelberger), and both
    counts are recorded here rather than reconciled."""
    for pt in itertools.product(range(3), repeat=4):
        if all(c == 0 for c in pt):
            continue
        prof = profile_code(pt, 3, 3)[0] >= CODE_STRONG
        lift = strongly_divisible_every_lift(pt, 3, 3)
        assert prof == lift, pt
    prof_v = lift_v = 0
    for pt in itertools.product(range(2), repeat=4):
        strong_profile = all(c == 0 for c in pt) or profile_code(pt, 3, 2)[0] >= CODE_STRONG
        strong_lift = strongly_divisible_every_lift(pt, 3, 2) if any(pt) else True
        prof_v += strong_profile
        lift_v += strong_lift
        assert not (strong_profile and not strong_lift)  # profile => every-lift
    assert prof_v == 4  # the operative V_3(F_2)
    assert lift_v == 10  # the every-lift locus is strictly larger at p = 2


def test_codimension_two_density_bound():
    # 1 - c_p <= r_n / p^2 with a single observed constant per degree
    for n in (2, 3):
        ratios = []
        for p in (2, 3, 5, 7):
            _v, w, cp = singular_density(n, p)
            ratios.append((1 - cp) * p * p)
        assert max(ratios) < 4  # small observed constant; records the p^-2 decay
