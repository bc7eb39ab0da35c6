import math

import pytest

from binrings.arith import factorint, squarefree_split
from binrings.forms import BinaryForm, content, discriminant
from binrings.localdata import (
    MAXIMAL,
    OTHER,
    PSEUDO_MAXIMAL,
    classify_order,
    count_restricted_sudo_maximal,
    dedekind_kummer,
    enumerate_pseudo_maximal,
    field_profiles_from_form,
    monic_dedekind_parts,
    profiles_from_text,
    profiles_to_text,
    small_prime_feasibility,
    zeta_power_partial_sums,
)
from binrings.weakdiv import WeakDivWitness, find_witness, is_uwd

from conftest import random_irreducible_form


def test_dedekind_examples():
    prof = dedekind_kummer(BinaryForm(2, (1, 0, 1)), 2)
    assert [(pt.e, pt.f, pt.locally_maximal) for pt in prof.parts] == [(2, 1, True)]
    prof = dedekind_kummer(BinaryForm(2, (1, 0, 3)), 2)
    assert [(pt.e, pt.f, pt.locally_maximal) for pt in prof.parts] == [(2, 1, False)]
    prof = dedekind_kummer(BinaryForm(2, (1, 1, 1)), 3)
    assert [(pt.e, pt.f, pt.locally_maximal) for pt in prof.parts] == [(2, 1, True)]


def test_dedekind_errors():
    with pytest.raises(ValueError, match="imprimitive"):
        dedekind_kummer(BinaryForm(2, (2, 4, 6)), 5)
    # a primitive form never vanishes mod p; the vanishing-reduction error
    # is raised by the underlying factorization (exercised in test_modp)


def test_profile_ef_sum(rng):
    for _ in range(100):
        n = rng.randint(2, 6)
        f = random_irreducible_form(rng, n, bound=12)
        from binrings.forms import content

        if content(f) != 1:
            continue
        p = rng.choice([2, 3, 5, 7, 11])
        prof = dedekind_kummer(f, p)
        assert prof.ef_sum == n
        ok, viol = small_prime_feasibility(prof)
        assert ok, (f, p, viol)


def classical_quadratic_index(d):
    """Index of Z[x]/(x^2+d) in the maximal order, from d mod 4 and square
    parts: -d = d0 e^2 (d0 squarefree or the etale 1), index = 2e if
    d0 = 1 mod 4 else e."""
    n = -d
    sgn = 1 if n > 0 else -1
    s, e = squarefree_split(abs(n))
    d0 = sgn * s
    return 2 * e if d0 % 4 == 1 else e


def test_quadratic_ground_truth():
    agreements = 0
    for d in range(-200, 201):
        f = BinaryForm(2, (1, 0, d))
        if d == 0 or discriminant(f) == 0:
            continue
        idx = classical_quadratic_index(d)
        oc = classify_order(f)
        got = {p for p, tag, _ in oc.per_prime if tag != MAXIMAL}
        want = set(factorint(idx)) if idx > 1 else set()
        assert got == want, (d, got, want)
        # index exponents must match exactly
        for p, tag, desc in oc.per_prime:
            if tag == PSEUDO_MAXIMAL:
                assert desc.index_exponent == factorint(idx).get(p, 0), (d, p)
        agreements += 1
    assert agreements > 380


def test_classify_case_b_example():
    oc = classify_order(BinaryForm(2, (1, 0, 3)))
    assert oc.per_prime == (
        (2, PSEUDO_MAXIMAL, enumerate_pseudo_maximal(((1, 2),), r=1)),
    )
    assert oc.sudo_maximal and oc.restricted_sudo_maximal


def test_classify_squarefree_disc():
    oc = classify_order(BinaryForm(2, (1, 1, 1)))
    assert oc.per_prime == ()
    assert oc.sudo_maximal and oc.restricted_sudo_maximal


def test_classify_with_witness_reduces_index():
    # X^3 + X^2 Y + 4 Y^3: disc = -448 = -2^6 * 7, weakly divisible by 8 at 6
    f = BinaryForm(3, (1, 1, 0, 4))
    oc0 = classify_order(f)
    assert any(tag != MAXIMAL for _, tag, _ in oc0.per_prime)
    w = find_witness(f, 8)
    oc = classify_order(f, w)
    assert all(tag == MAXIMAL for _, tag, _ in oc.per_prime)
    assert oc.restricted_sudo_maximal
    # partial witness: index exponent drops by v_p(m)
    w2 = find_witness(f, 2)
    oc2 = classify_order(f, w2)
    (p, tag, desc) = oc2.per_prime[0]
    assert p == 2 and tag == PSEUDO_MAXIMAL and desc.index_exponent == 2


def test_monic_vs_binary_criterion(rng):
    """The binary criterion restricted to monic forms agrees with the
    classical monic Dedekind criterion part by part."""
    checked = 0
    while checked < 150:
        n = rng.choice([3, 4])
        coeffs = (1,) + tuple(rng.randint(-15, 15) for _ in range(n))
        f = BinaryForm(n, coeffs)
        if discriminant(f) == 0:
            continue
        p = rng.choice([2, 3, 5, 7])
        if all(c % p == 0 for c in coeffs):
            continue
        prof = dedekind_kummer(f, p)
        poly_low = [coeffs[n - j] for j in range(n + 1)]
        parts = monic_dedekind_parts(poly_low, p)
        assert prof.factorization.infinity_multiplicity == 0
        got = sorted((pt.f, pt.e, pt.locally_maximal) for pt in prof.parts)
        want = sorted((len(q) - 1, e, lm) for q, e, lm in parts)
        assert got == want, (coeffs, p)
        checked += 1


def test_pseudo_maximal_tables_all_cases():
    A = ((1, 1), (1, 1))
    B = ((1, 2),)
    C = ((2, 1),)
    for r in (1, 2, 3, 5):
        dA = enumerate_pseudo_maximal(A, r=r)
        assert dA.case == "A" and dA.conductor == (r, r) and dA.index_exponent == r
        dB = enumerate_pseudo_maximal(B, r=r)
        assert dB.case == "B" and dB.conductor == (r,) and dB.index_exponent == r
        dC = enumerate_pseudo_maximal(C, r=r)
        assert dC.case == "C" and dC.conductor == (2 * r,) and dC.index_exponent == r
    # conductor queries: existence and uniqueness per the tables
    for a in (1, 2, 3, 4):
        for b in (1, 2, 3, 4):
            d = enumerate_pseudo_maximal(A, conductor=(a, b))
            if a == b:
                assert d is not None and d.index_exponent == a
            else:
                assert d is None
    for a in (1, 2, 3, 4, 5, 6):
        d = enumerate_pseudo_maximal(C, conductor=(a,))
        if a % 2:
            assert d is None
        else:
            assert d.index_exponent == a // 2
        d = enumerate_pseudo_maximal(B, conductor=(a,))
        assert d is not None and d.index_exponent == a
    with pytest.raises(ValueError):
        enumerate_pseudo_maximal(((1, 3),), r=1)
    with pytest.raises(ValueError):
        enumerate_pseudo_maximal(A)


def test_small_prime_feasibility_bounds():
    from binrings.localdata import SplittingPart, SplittingProfile
    from binrings.modp import FactorModP

    def fake_profile(p, shapes):
        parts = tuple(SplittingPart(e, f, True, i) for i, (e, f) in enumerate(shapes))
        return SplittingProfile(p, parts, FactorModP(p, (), 0, 1))

    ok, _ = small_prime_feasibility(fake_profile(2, [(1, 1)] * 3))
    assert ok  # 3 <= H(2,1)+1 = 3
    bad, viol = small_prime_feasibility(fake_profile(2, [(1, 1)] * 4))
    assert not bad and viol == (1, 4, 3)
    bad, viol = small_prime_feasibility(fake_profile(2, [(1, 2)] * 2))
    assert not bad and viol == (2, 2, 1)


def test_counting_quadratic_floor():
    profiles = {}
    from binrings.arith import primes_below

    for i, p in enumerate(primes_below(2001)):
        profiles[p] = [(1, 1), (1, 1)] if i % 3 == 0 else ([(1, 2)] if i % 3 == 1 else [(2, 1)])
    counts, sums, zsums = count_restricted_sudo_maximal(profiles, 2000)
    assert all(counts[j] == 1 for j in range(1, 2001))
    assert sums[2000] == 2000
    assert zsums == sums  # quadratic: C(2,2) = 1, the comparison is zeta itself


def test_counting_dominated_by_zeta_power():
    # synthetic degree-5 profiles: C_p <= C(5,2) = 10 termwise domination
    from binrings.arith import primes_below

    profiles = {}
    for i, p in enumerate(primes_below(3001)):
        if i % 4 == 0:
            profiles[p] = [(1, 1)] * 5  # C_p = 10
        elif i % 4 == 1:
            profiles[p] = [(1, 1), (1, 1), (1, 1), (1, 2)]  # 3 + 1 = 4
        elif i % 4 == 2:
            profiles[p] = [(1, 2), (1, 2), (1, 1)]  # 2
        else:
            profiles[p] = [(2, 1), (1, 1), (1, 2)]  # 1 + 1 + 1 = 3
    X = 3000
    counts, sums, zsums = count_restricted_sudo_maximal(profiles, X)
    _dz, zsums2 = zeta_power_partial_sums(math.comb(5, 2), X)
    assert zsums == zsums2
    for j in range(1, X + 1):
        assert 0 <= sums[j] <= zsums[j]
    assert all(sums[j] <= sums[j + 1] for j in range(1, X))


def test_counting_missing_profile():
    with pytest.raises(ValueError, match="missing"):
        count_restricted_sudo_maximal({2: [(1, 1), (1, 1)]}, 10)


def test_profiles_roundtrip_and_from_form():
    f = BinaryForm(3, (1, 1, 0, 4))
    profiles = field_profiles_from_form(f, 50)
    text = profiles_to_text(profiles)
    back = profiles_from_text(text)
    assert back == {p: list(v) for p, v in profiles.items()}
    for p, vals in profiles.items():
        assert sum(e * fd for e, fd in vals) == 3
    with pytest.raises(ValueError, match="non-maximal"):
        profiles_from_text("2: (1,1,0)\n")


def test_local_valuation_identity(rng):
    """For the unique non-maximal part of a UWD form, the quadratic
    resolution satisfies v_p(disc f) = d + 2r exactly (all other local
    factors are etale there and contribute nothing)."""
    from binrings.localdata import _resolve_double_part
    from binrings.weakdiv import is_uwd

    checked = 0
    while checked < 60:
        n = rng.choice([3, 4, 5])
        c = tuple(rng.randint(-20, 20) for _ in range(n + 1))
        if not any(c) or c[0] == 0:
            continue
        f = BinaryForm(n, c)
        if content(f) != 1:
            continue
        d = discriminant(f)
        if d == 0:
            continue
        facs = factorint(d)
        try:
            rep = is_uwd(f, facs)
        except ValueError:
            continue
        if not rep.is_uwd or not rep.per_prime:
            continue
        for p, _prof, _verdict in rep.per_prime:
            prof = dedekind_kummer(f, p)
            bads = [pt for pt in prof.parts if not pt.locally_maximal]
            if len(bads) != 1 or bads[0].e * bads[0].f != 2:
                continue
            _case, dloc, r = _resolve_double_part(f, p, bads[0], prof.factorization)
            assert facs[p] == dloc + 2 * r, (f, p)
            checked += 1


def test_classify_multi_bad_prime_tagged_other():
    # a quartic with two non-maximal parts over the same prime: per-prime
    # tag "other", restricted flag off, no crash
    import itertools as it

    found = None
    for c in it.product(range(-6, 7), repeat=5):
        try:
            g = BinaryForm(4, (1,) + c[:4])
        except Exception:
            continue
        if discriminant(g) == 0 or content(g) != 1:
            continue
        prof_ok = False
        try:
            prof = dedekind_kummer(g, 5)
        except ValueError:
            continue
        bads = [pt for pt in prof.parts if not pt.locally_maximal]
        if len(bads) >= 2:
            found = g
            break
    assert found is not None
    oc = classify_order(found)
    tags = {p: tag for p, tag, _ in oc.per_prime}
    assert tags.get(5) == OTHER
    assert not oc.restricted_sudo_maximal


def test_classical_field_ground_truths():
    """Named examples with textbook-known local behaviour."""
    # Z[cbrt 2] is the maximal order of Q(cbrt 2), disc -108
    oc = classify_order(BinaryForm(3, (1, 0, 0, -2)))
    assert all(tag == MAXIMAL for _, tag, _ in oc.per_prime)
    # the classical non-monogenic cubic x^3 + x^2 - 2x + 8: index 2,
    # with 2 totally split in the maximal order (three degree-1 primes)
    g = BinaryForm(3, (1, 1, -2, 8))
    assert discriminant(g) == -4 * 503
    oc = classify_order(g)
    assert oc.per_prime == (
        (2, PSEUDO_MAXIMAL, enumerate_pseudo_maximal(((1, 1), (1, 1)), r=1)),
    )
    assert field_profiles_from_form(g, 3)[2] == [(1, 1), (1, 1), (1, 1)]
    # x^3 - x - 1: disc -23, 23 ramifies as e=2 over one prime
    h = BinaryForm(3, (1, 0, -1, -1))
    prof = field_profiles_from_form(h, 25)
    assert sorted(prof[23]) == [(1, 1), (2, 1)]
    # quadratic splitting at 2 by residue of -d mod 8:
    for d, case in [(7, "A"), (3, "B"), (4, "C")]:
        oc = classify_order(BinaryForm(2, (1, 0, d)))
        assert oc.per_prime[0][2].case == case, d
    oc = classify_order(BinaryForm(2, (1, 0, 2)))  # disc -8 already maximal
    assert oc.per_prime == ((2, MAXIMAL, None),)


def test_classify_uwd_corpus_restricted(rng):
    found = 0
    while found < 30:
        f = random_irreducible_form(rng, 3, bound=12)
        from binrings.forms import content

        if content(f) != 1 or discriminant(f) == 0:
            continue
        try:
            rep = is_uwd(f)
        except ValueError:
            continue
        if not rep.is_uwd:
            continue
        oc = classify_order(f)
        assert oc.restricted_sudo_maximal, f
        found += 1
