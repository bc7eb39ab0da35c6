import itertools

import pytest

from binrings.arith import factorint
from binrings.binring import canonical_basis_ring
from binrings.forms import BinaryForm, discriminant, translate
from binrings.weakdiv import (
    VERDICT_STRONG,
    VERDICT_WEAK,
    WeakDivWitness,
    find_witness,
    is_uwd,
    max_witness,
    weakly_divisible_ring,
    witness_valid,
)

from conftest import random_form, random_irreducible_form


def test_find_witness_examples():
    f = BinaryForm(3, (1, 1, 0, 4))
    assert find_witness(f, 1) == WeakDivWitness(1, 0)
    g = BinaryForm(3, (1, 0, 0, 25))  # X^3 + 5^2 Y^3
    assert find_witness(g, 5) == WeakDivWitness(5, 0)
    h = BinaryForm(2, (1, 1, 1))
    assert find_witness(h, 2) is None


def test_find_witness_composite_crt():
    # f(x) = (x-2)^2 * 9 + small: engineered to be weakly divisible by 6
    # build via translate: g weakly divisible by 2 at 0 and 3 at 1
    f = BinaryForm(3, (1, 1, 0, 4))  # weakly divisible by 8 at 6
    w = find_witness(f, 2)
    assert w is not None and witness_valid(f, 2, w.l)
    w8 = find_witness(f, 8)
    assert w8 == WeakDivWitness(8, 6)


def test_weakly_divisible_ring_disc(rng):
    f = BinaryForm(3, (1, 1, 0, 4))
    w = find_witness(f, 8)
    R = weakly_divisible_ring(f, w)
    assert R.disc * 64 == discriminant(f) == -448
    # m = 1 gives the canonical table of the translate
    f2 = random_irreducible_form(rng, 3, bound=8)
    R1 = weakly_divisible_ring(f2, WeakDivWitness(1, 0))
    RC = canonical_basis_ring(f2)
    assert R1.structure == RC.structure


def test_weakly_divisible_ring_corpus(rng):
    """Every found witness on a random corpus yields an integral table with
    ring disc = disc(f)/m^2 (reducible forms included)."""
    built = 0
    tried = 0
    while built < 120 and tried < 4000:
        tried += 1
        n = rng.randint(2, 5)
        f = random_form(rng, n, bound=12)
        if discriminant(f) == 0:
            continue
        for m in (2, 3, 4, 5, 6):
            w = find_witness(f, m)
            if w is None:
                continue
            R = weakly_divisible_ring(f, w)
            assert R.disc * m * m == discriminant(f)
            built += 1
    assert built >= 120


def test_find_witness_large_prime_power():
    # prime above the scan bound: structured double-root path
    p = 10007
    f = BinaryForm(3, (1, 0, 0, p * p))
    assert find_witness(f, p) == WeakDivWitness(p, 0)
    # prime power above the scan bound: level-by-level lift
    q = 101
    g = BinaryForm(3, (1, 0, 0, q**4))
    assert find_witness(g, q * q) == WeakDivWitness(q * q, 0)
    assert find_witness(BinaryForm(3, (1, 0, 0, q)), q * q) is None


def test_invalid_witness_rejected():
    f = BinaryForm(2, (1, 1, 1))
    with pytest.raises(ValueError):
        weakly_divisible_ring(f, WeakDivWitness(2, 0))


def test_is_uwd_examples():
    # squarefree disc: vacuous
    f = BinaryForm(2, (1, 1, 1))
    rep = is_uwd(f)
    assert rep.is_uwd and rep.per_prime == ()
    # X^2 Y^2-style strong reduction
    g = BinaryForm(4, (1, 0, -2, 0, 1))  # (x^2-1)^2: disc 0 -> error
    with pytest.raises(ValueError):
        is_uwd(g)
    h = BinaryForm(3, (1, 1, 0, 4))  # disc -448 = -2^6*7, x^2(x+y) mod 2
    rep = is_uwd(h)
    assert rep.is_uwd
    assert [(p, v) for p, _prof, v in rep.per_prime] == [(2, VERDICT_WEAK)]


def test_is_uwd_incomplete_factorization():
    f = BinaryForm(3, (1, 1, 0, 4))
    with pytest.raises(ValueError, match="incomplete"):
        is_uwd(f, {2: 6})  # missing the 7


def test_is_uwd_p2_strong_via_stickelberger():
    # unique affine double at 0 mod 2 whose value misses the mod-4 witness:
    # strongly divisible in the every-lift sense, hence not UWD
    f = BinaryForm(3, (5, 1, 2, 6))
    assert discriminant(f) == -23400
    rep = is_uwd(f)
    assert not rep.is_uwd
    verdicts = {p: v for p, _prof, v in rep.per_prime}
    assert verdicts[2] == VERDICT_STRONG


def test_max_witness_example():
    f = BinaryForm(3, (1, 1, 0, 4))
    mw = max_witness(f)
    assert (mw.m_f, mw.l_f) == (8, 6)
    assert f.eval_affine(6) == 256 and f.deriv_affine(6) == 120
    assert mw.s == -7
    # squarefree disc
    g = BinaryForm(2, (1, 1, 1))
    mw = max_witness(g)
    assert (mw.m_f, mw.l_f, mw.s) == (1, 0, -3)


def test_max_witness_valuation_and_squarefree(rng):
    """The defining theorem's conclusion m_f = t holds at odd primes; at
    p = 2 the unit argument behind it carries an explicit factor 4 and
    genuinely fails for a positive fraction of UWD forms, which the
    operation reports as 'paper theorem violated'.  This test pins both
    behaviours: successes satisfy every stated invariant, and every failure
    is a 2-adic one with v_2(disc) >= 4."""
    from binrings.arith import squarefree_split

    found = 0
    cracks = 0
    tries = 0
    while found < 40 and tries < 6000:
        tries += 1
        f = random_form(rng, 3, bound=15)
        d = discriminant(f)
        if d == 0:
            continue
        facs = factorint(d)
        try:
            rep = is_uwd(f, facs)
        except ValueError:
            continue
        if not rep.is_uwd:
            continue
        try:
            mw = max_witness(f, facs)
        except AssertionError as exc:
            assert "paper theorem violated" in str(exc)
            assert facs.get(2, 0) >= 4, (f, facs)
            cracks += 1
            continue
        s, t = squarefree_split(d)
        assert mw.m_f == t
        for p, e in facs.items():
            assert factorint(mw.m_f).get(p, 0) == e // 2
        assert witness_valid(f, mw.m_f, mw.l_f)
        assert all(e <= 1 for e in factorint(d // (mw.m_f**2)).values())
        found += 1
    assert found >= 40


def test_max_witness_p2_crack_is_real():
    """Witnessed counterexample to the maximal-witness theorem at p = 2:
    disc = 2^5 * 31^2 but no l has 16 | f(l), so the form is weakly
    divisible by 2 and not by 4."""
    f = BinaryForm(3, (-7, -12, 5, 2))
    assert discriminant(f) == 2**5 * 31**2
    assert is_uwd(f).is_uwd
    # the double root sits at l = 1 mod 2; on that branch the value's
    # 2-adic valuation caps at 3 < 4 = 2*floor(5/2)
    assert max(val2(f.eval_affine(l)) for l in range(1, 16, 2)) == 3
    assert find_witness(f, 2) is not None
    assert find_witness(f, 4) is None
    assert find_witness(f, 62) is not None  # the honest maximal modulus
    with pytest.raises(AssertionError, match="paper theorem violated"):
        max_witness(f)


def val2(x):
    v = 0
    while x and x % 2 == 0:
        x //= 2
        v += 1
    return v


def test_trichotomy_small_exhaustive():
    """n = 3, p in {2, 3}, coefficients in [0, p^2): p^2 | disc iff strongly
    (every-lift sense) or weakly or reverse-weakly divisible by p."""
    from binrings.modp import strongly_divisible_every_lift

    for p in (2, 3):
        p2 = p * p
        for coeffs in itertools.product(range(p2), repeat=4):
            if all(c == 0 for c in coeffs):
                continue
            f = BinaryForm(3, coeffs)
            d = discriminant(f)
            weakly = any(
                f.eval_affine(l) % p2 == 0 and f.deriv_affine(l) % p == 0
                for l in range(p)
            )
            reverse_weak = coeffs[0] % p2 == 0 and coeffs[1] % p == 0
            strong = strongly_divisible_every_lift(coeffs, 3, p)
            assert (d % p2 == 0) == (strong or weakly or reverse_weak), (coeffs, p)
