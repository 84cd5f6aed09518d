import pytest

from cayley_bundles import gcdlaws as gl
from cayley_bundles.exactnum import odd_primes_up_to, ord_p


@pytest.mark.parametrize("n,want", [(2, 10), (3, 7)])
def test_gcd_row_examples(n, want):
    assert gl.gcd_row(n) == want


def test_gcd_row_nine():
    assert ord_p(gl.gcd_row(4), 3) == 1


@pytest.mark.parametrize("n,want", [(7, 91), (3, 15), (2, 6)])
def test_gcd_even_examples(n, want):
    assert gl.gcd_even(n) == want


@pytest.mark.parametrize("n,primes", [(8, {17}), (12, {5, 23}), (9, {3, 17, 19})])
def test_gcd_diff_examples(n, primes):
    g = gl.gcd_diff(n)
    assert {p for p in odd_primes_up_to(2 * n + 1) if ord_p(g, p)} == primes


@pytest.mark.parametrize("kind,n,p", [("diff", 12, 5), ("even", 7, 13), ("even", 7, 7), ("row", 5, 11)])
def test_predicted_ord_examples(kind, n, p):
    assert gl.predicted_ord(kind, n, p) == 1


def test_classifier_names():
    assert gl.classify("diff", 12, 5).classifier is gl.Classifier.PowerMinusOne
    assert gl.classify("even", 7, 13).classifier is gl.Classifier.TwoPrimePowers
    assert gl.classify("row", 4, 3).classifier is gl.Classifier.RowPower
    assert gl.classify("row", 4, 5).predicted_ord == 0


@pytest.mark.parametrize("bad", [("row", 5, 2), ("row", 5, 9), ("nope", 5, 3), ("diff", 3, 5)])
def test_predicted_ord_rejects(bad):
    with pytest.raises(ValueError):
        gl.predicted_ord(*bad)


@pytest.mark.parametrize("fn,n", [(gl.gcd_row, 1), (gl.gcd_even, 1), (gl.gcd_diff, 3)])
def test_gcd_ranges(fn, n):
    with pytest.raises(ValueError):
        fn(n)


@pytest.mark.parametrize("n,want", [(14, (2, 1)), (15, (5, 0)), (16, (0, 2)), (17, (3, 1))])
def test_two_three_squares_examples(n, want):
    assert gl.two_three_squares(n) == want


def test_two_three_squares_range():
    for n in range(14, 10_001):
        a, b = gl.two_three_squares(n)
        assert a >= 0 and b >= 0 and 3 * a + 8 * b == n
        assert n + a + b == 4 * a + 9 * b


def test_two_three_squares_rejects_small():
    with pytest.raises(ValueError):
        gl.two_three_squares(13)


@pytest.mark.parametrize("n,want", [(25, 48), (26, 8), (30, 72), (31, 48)])
def test_four_square_examples(n, want):
    assert gl.four_square_gcd(n) == want


def test_four_square_reps_are_sorted_and_exact():
    for d in gl.four_square_reps(4 * 40 + 5):
        assert list(d) == sorted(d) and sum(x * x for x in d) == 165


def test_four_square_rejects_small():
    with pytest.raises(ValueError):
        gl.four_square_gcd(24)
