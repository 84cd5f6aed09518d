from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from cayley_bundles import bundles as bd
from cayley_bundles.pushforward import closed_form_sn

CI = bd.CompleteIntersection


def newton_power_sum(V: CI, k: int) -> Fraction:
    """Degree-k power sum of the Chern roots of TV from c(TV) = (1+x)^(m+r+1) / prod(1 + d x)."""
    N = V.m + V.r + 1
    c = [Fraction(0)] * (k + 1)
    for i in range(k + 1):
        c[i] = Fraction(comb(N, i))
    for d in V.degrees:
        inv = [Fraction((-d) ** i) for i in range(k + 1)]
        c = [sum(c[a] * inv[i - a] for a in range(i + 1)) for i in range(k + 1)]
    p = [Fraction(0)] * (k + 1)
    for i in range(1, k + 1):
        acc = (-1) ** (i - 1) * i * c[i]
        for a in range(1, i):
            acc += (-1) ** (a - 1) * c[a] * p[i - a]
        p[i] = acc
    return p[k]


@pytest.mark.parametrize("V,n,want", [(CI(2), 1, 3), (CI(2, (2,) * 5), 1, -12), (CI(4, (3,)), 2, 6 - 81)])
def test_ci_sn_examples(V, n, want):
    assert bd.ci_sn_coefficient(V, n) == want


@given(st.integers(0, 10), st.lists(st.integers(1, 4), max_size=4), st.integers(1, 4))
def test_ci_sn_matches_newton_identities(m, degrees, n):
    V = CI(m, tuple(degrees))
    assert bd.ci_sn_coefficient(V, n) == newton_power_sum(V, 2 * n)


def test_string_defect_examples():
    assert bd.string_defect(bd.CayleyBundleSpec(3, CI(2, (2,) * 5), CI(2, (2,) * 5))) == (0, 0)
    assert bd.string_defect(bd.CayleyBundleSpec(1, CI(0), CI(0))) == (5, 5)


def test_make_string_bundle():
    spec = bd.make_string_bundle(0, 0, 4)
    assert spec.V.degrees == (2, 2, 2, 3)
    assert bd.is_string(spec)
    with pytest.raises(ValueError, match="raise n_f"):
        bd.make_string_bundle(2, 20, 1)
    with pytest.raises(ValueError):
        bd.make_string_bundle(1, 2, 4)


@given(st.integers(0, 15).map(lambda k: 2 * k), st.integers(0, 15).map(lambda k: 2 * k), st.integers(0, 3))
def test_string_bundles_are_string(m, mp, extra):
    n_f = bd.min_string_nf(m, mp) + extra
    assert bd.is_string(bd.make_string_bundle(m, mp, n_f))


@pytest.mark.parametrize("m,mp,n_f", [(0, 0, 4), (2, 4, 3), (6, 2, 4), (10, 0, 5)])
def test_s_n_is_closed_form_times_degrees(m, mp, n_f):
    spec = bd.make_string_bundle(m, mp, n_f)
    n = 4 + (m + mp) // 2
    want = spec.degree_product * closed_form_sn(n, n_f).coefficient((m, mp))
    assert bd.s_n_total_space(spec, n) == want


def test_odd_base_dimensions_give_zero():
    spec = bd.CayleyBundleSpec(2, CI(1, (2,)), CI(3))
    assert bd.s_n_total_space(spec, 6) == 0
    assert bd.s_n1n2_total_space(spec, 4, 2) == 0


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        bd.s_n_total_space(bd.make_string_bundle(0, 0, 4), 5)


@pytest.mark.parametrize("m,mp,pair", [(2, 4, (5, 2)), (0, 6, (4, 3)), (4, 4, (4, 4)), (8, 2, (6, 3))])
def test_swap_symmetry(m, mp, pair):
    spec = bd.make_string_bundle(m, mp, 4)
    assert bd.s_n1n2_total_space(spec, *pair) == bd.s_n1n2_total_space(spec.swapped(), *pair)
    assert bd.s_n1n2_total_space(spec, *pair) == bd.s_n1n2_total_space(spec, *reversed(pair))


def test_trivial_base_reduces_to_fibre_number():
    # over a point-like base only the fibre term survives
    spec = bd.CayleyBundleSpec(1, CI(0), CI(0))
    assert bd.s_n_total_space(spec, 4) == -84
    assert bd.s_I_total_space(spec, (2, 2)) == bd.s_n1n2_total_space(spec, 2, 2)


def test_combination_linearity():
    a, b = bd.make_string_bundle(0, 4, 4), bd.make_string_bundle(2, 2, 4)
    combo = bd.BordismCombination(((3, a), (-2, b)))
    assert combo.s_number((6,)) == 3 * bd.s_n_total_space(a, 6) - 2 * bd.s_n_total_space(b, 6)
    assert combo.scaled(-5).s_number((4, 2)) == -5 * combo.s_number((4, 2))
    with pytest.raises(ValueError):
        bd.BordismCombination(((1, a), (1, bd.make_string_bundle(0, 0, 4))))


@pytest.mark.parametrize("i,n,want", [(2, 2, -10), (3, 3, -35), (2, 3, -21)])
def test_milnor(i, n, want):
    assert bd.milnor_sn(i, n) == want


def test_milnor_range():
    with pytest.raises(ValueError):
        bd.milnor_sn(1, 3)
