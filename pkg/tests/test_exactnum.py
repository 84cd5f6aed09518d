import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cayley_bundles import exactnum as en

SMALL_PRIMES = en.primes_up_to(60)


def test_is_prime_matches_sieve():
    sieve = set(en.primes_up_to(5000))
    assert all(en.is_prime(n) == (n in sieve) for n in range(-3, 5001))


def test_large_primes():
    assert en.is_prime(2**61 - 1)
    assert not en.is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@pytest.mark.parametrize("x,p,want", [(0, 5, math.inf), (50, 5, 2), (Fraction(7, 25), 5, -2), (-81, 3, 4), (1, 7, 0)])
def test_ord_p(x, p, want):
    assert en.ord_p(x, p) == want


def test_ord_p_rejects_composite():
    with pytest.raises(ValueError):
        en.ord_p(10, 4)


@given(st.integers(0, 300), st.integers(-5, 305))
def test_binomial_matches_math_comb(n, k):
    want = math.comb(n, k) if 0 <= k <= n else 0
    assert en.binomial(n, k) == want


@given(st.integers(0, 3000), st.integers(0, 3000), st.sampled_from(SMALL_PRIMES))
def test_kummer_counts_the_valuation(m, r, p):
    assert en.kummer_carries(m, r, p) == en.ord_p(math.comb(m + r, m), p)


@given(st.integers(0, 2000), st.integers(0, 2000), st.sampled_from(SMALL_PRIMES))
def test_lucas(n, k, p):
    assert en.lucas_residue(n, k, p) == en.binomial(n, k) % p


@given(st.integers(0, 3000), st.sampled_from([5, 7, 11, 13]), st.integers(1, 3))
def test_generalized_factorial_shortcut(n, p, q):
    mod = p**q
    assert en.generalized_factorial_p(n, p, mod) == en.generalized_factorial_literal(n, p, mod)


def test_generalized_factorial_rejects_bad_modulus():
    with pytest.raises(ValueError):
        en.generalized_factorial_p(10, 5, 50)


@settings(max_examples=300)
@given(st.integers(0, 2000), st.data(), st.sampled_from(SMALL_PRIMES), st.integers(1, 3))
def test_granville_reconstructs_binomial(n, data, p, q):
    if p == 2 and q == 3:
        q = 2
    m = data.draw(st.integers(0, n))
    e0, unit = en.granville_binomial(n, m, p, q)
    c = math.comb(n, m)
    assert e0 == en.ord_p(c, p)
    assert (c // p**e0) % p**q == unit


def test_granville_worked_instance():
    # C(p^i - 1, p^(i-1) + p^(i-2)) is a unit congruent to 1 - p mod p^2
    for p in (5, 7, 11):
        for i in (2, 3):
            e0, unit = en.granville_binomial(p**i - 1, p ** (i - 1) + p ** (i - 2), p, 2)
            assert (e0, unit) == (0, (1 - p) % p**2)


def test_granville_rejects_p2_q3():
    with pytest.raises(ValueError):
        en.granville_binomial(10, 3, 2, 3)


@pytest.mark.parametrize("p", [p for p in en.primes_up_to(200) if p >= 5])
def test_wolstenholme_and_morley(p):
    assert en.wolstenholme_check(p)
    assert en.morley_check(p)


def test_wolstenholme_fails_at_three():
    with pytest.raises(ValueError):
        en.wolstenholme_check(3)
    assert en.ord_p(en.harmonic(2).numerator, 3) == 1


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_named_congruences(p):
    results = en.named_congruences(p, (1, 2, 3))
    assert len(results) == 9
    assert all(ok for _, ok in results), [label for label, ok in results if not ok]


def test_named_congruence_detects_wrong_residue():
    assert not en.congruent(en.binomial(6, 2) - en.binomial(6, 4), Fraction(5 * 5, 12) + 1, 25)


@given(st.integers(-10**12, 10**12), st.integers(-10**12, 10**12))
def test_ext_gcd(a, b):
    g, x, y = en.ext_gcd(a, b)
    assert g == math.gcd(a, b)
    assert a * x + b * y == g


@given(st.lists(st.integers(-10**9, 10**9), min_size=1, max_size=8))
def test_bezout_fold(values):
    g, coeffs = en.bezout(values)
    assert g == math.gcd(*values)
    assert sum(c * v for c, v in zip(coeffs, values)) == g


def test_mod_rational():
    assert en.mod_rational(Fraction(1, 2), 25) == 13
    with pytest.raises(ValueError):
        en.mod_rational(Fraction(1, 5), 25)


def test_digits_roundtrip():
    rng = random.Random(1)
    for _ in range(200):
        n, p = rng.randint(0, 10**6), rng.choice(SMALL_PRIMES)
        assert en.from_digits(en.digits(n, p), p) == n
