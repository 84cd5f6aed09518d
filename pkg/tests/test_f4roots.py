from fractions import Fraction

import pytest

from cayley_bundles import f4roots as fr
from cayley_bundles.polyalg import E_VARS, Poly

H = Fraction(1, 2)


def half(*signs):
    return fr.weight(*(H * s for s in signs))


PRINTED_SIGMA4 = [fr.unit(i) for i in range(4)] + [
    half(1, 1, 1, -1), half(1, 1, -1, 1), half(1, -1, 1, 1), half(-1, 1, 1, 1)]
PRINTED_SIGMA434 = [fr.unit(i) for i in range(4)] + [
    half(1, 1, 1, 1), half(1, 1, -1, -1), half(1, -1, 1, -1), half(-1, 1, 1, -1)]


def up_to_sign(ws):
    return sorted(max(w, fr.neg(w)) for w in ws)


def test_root_counts():
    assert len(fr.spin9_positive_roots()) == 16
    assert len(fr.complementary_roots()) == 8
    assert len(set(fr.all_roots())) == 48


def test_simple_reflections_preserve_roots():
    roots = set(fr.all_roots())
    for i in range(1, 5):
        s = fr.sigma(i)
        assert fr.is_orthogonal(s) and fr.weyl_sign(s) == -1
        assert {fr.apply(s, r) for r in roots} == roots


def test_coset_reps_are_the_printed_matrices():
    assert fr.coset_reps() == fr.PRINTED_COSET_REPS
    assert [fr.weyl_sign(m) for m in fr.coset_reps()] == [1, -1, -1]


@pytest.mark.parametrize("rep,printed", [(1, PRINTED_SIGMA4), (2, PRINTED_SIGMA434)])
def test_coset_images_of_complementary_roots(rep, printed):
    images = [fr.apply(fr.coset_reps()[rep], r) for r in fr.complementary_roots()]
    assert up_to_sign(images) == up_to_sign(printed)


def test_sigma434_sends_a_root_to_minus_e4():
    # the printed list shows e4; the matrix action produces -e4 (irrelevant up to sign)
    images = [fr.apply(fr.coset_reps()[2], r) for r in fr.complementary_roots()]
    assert fr.neg(fr.unit(3)) in images


def test_weyl_group_order():
    group = fr.generate_weyl_f4()
    assert len(group) == 1152
    roots = set(fr.all_roots())
    assert all({fr.apply(g, r) for r in roots} == roots for g in list(group)[::37])


def test_spin9_stabilizer_and_cosets():
    group = fr.generate_weyl_f4()
    stab = fr.spin9_stabilizer(group)
    assert len(stab) == 384
    assert all(fr.is_signed_permutation(m) for m in stab)
    cosets = fr.left_cosets(group, stab)
    assert len(cosets) == 3
    # each coset rep lies in the same coset as one of 1, sigma4, sigma4 sigma3 sigma4
    members = [set(c) for _, c in cosets]
    for rep in fr.coset_reps():
        assert sum(rep in m for m in members) == 1


def test_signed_permutation_data():
    m = ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))
    m = tuple(tuple(Fraction(x) for x in row) for row in m)
    perm, signs = fr.signed_permutation_data(m)
    for j in range(4):
        assert fr.apply(m, fr.unit(j)) == tuple(signs[j] * x for x in fr.unit(perm[j]))


def test_act_on_poly_matches_apply():
    for m in fr.coset_reps():
        for r in fr.complementary_roots():
            assert fr.act_on_poly(m, fr.to_poly(r)) == fr.to_poly(fr.apply(m, r))


def test_euler_product_degree():
    e = fr.euler_product(fr.ROOTS.positive)
    assert e.degree() == 24 and e.is_homogeneous()


def test_weight_validation():
    with pytest.raises(ValueError):
        fr.weight(1, 2, 3)
    bad = tuple(tuple(Fraction(2 * (i == j)) for j in range(4)) for i in range(4))
    with pytest.raises(ValueError):
        fr.weyl_sign(bad)
