import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cayley_bundles.polyalg import (
    E_VARS,
    X_VARS,
    NotDivisible,
    Poly,
    divide_linear,
    exact_divide,
    linear_power,
    linear_substitute,
    pack,
    partition,
    s_I_enumerate,
    s_I_eval,
    thom_splits,
    unpack,
)

XYZ = ("x", "y", "z")
coeffs = st.one_of(st.integers(-20, 20), st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6)))
monos = st.tuples(*(st.integers(0, 4) for _ in XYZ))
polys = st.dictionaries(monos, coeffs, max_size=6).map(lambda d: Poly(XYZ, d))
forms = st.tuples(*(st.integers(-3, 3) for _ in XYZ)).map(lambda c: Poly.linear(XYZ, c if any(c) else (1, 0, 0)))


def test_pack_order_is_grlex():
    ms = list(itertools.product(range(4), repeat=3))
    by_key = sorted(ms, key=pack)
    by_grlex = sorted(ms, key=lambda e: (sum(e), e))
    assert by_key == by_grlex
    assert all(unpack(pack(m), 3) == m for m in ms)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Poly.zero(XYZ)


@given(polys, polys, st.tuples(coeffs, coeffs, coeffs))
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


@given(polys, polys)
def test_exact_divide_roundtrip(a, b):
    if b.is_zero():
        return
    assert exact_divide(a * b, b) == a


@given(polys, forms)
def test_divide_linear_roundtrip(a, f):
    assert divide_linear(a * f, f) == a


def test_divide_linear_reports_remainder():
    x = Poly.var(XYZ, 0)
    with pytest.raises(NotDivisible) as err:
        divide_linear(x * x + 1, x)
    assert err.value.remainder == Poly.const(XYZ, 1)


def test_exact_divide_reports_remainder():
    x, y = Poly.var(XYZ, 0), Poly.var(XYZ, 1)
    with pytest.raises(NotDivisible):
        exact_divide(x * x + y, x + y * y)


@given(forms, st.integers(0, 9))
def test_linear_power_matches_repeated_product(f, k):
    acc = Poly.const(XYZ, 1)
    for _ in range(k):
        acc = acc * f
    assert linear_power(f, k) == acc
    assert f**k == acc


@settings(max_examples=60)
@given(polys, polys, st.lists(forms, min_size=3, max_size=3))
def test_linear_substitute_is_a_ring_map(a, b, images):
    sub = lambda p: linear_substitute(p, images)  # noqa: E731
    assert sub(a * b) == sub(a) * sub(b)
    assert sub(a + b) == sub(a) + sub(b)


def test_permute_signs():
    x, y, z = (Poly.var(XYZ, i) for i in range(3))
    p = x**2 * y + 3 * z
    assert p.permute_signs((1, 2, 0), (-1, -1, 1)) == y**2 * -z + 3 * x


def test_arity_mismatch():
    with pytest.raises(ValueError):
        Poly.var(XYZ, 0) + Poly.var(X_VARS, 0)
    with pytest.raises(ValueError):
        Poly(XYZ, {(1, 2): 3})


def test_to_str_canonical():
    x1, x2 = Poly.var(X_VARS, 0), Poly.var(X_VARS, 1)
    assert (-330 * x1**2 - 330 * x2**2).to_str() == "-330*x1^2 - 330*x2^2"
    assert (x1 * Fraction(1, 2) - 1).to_str() == "1/2*x1 - 1"
    assert Poly.zero(X_VARS).to_str() == "0"


def test_degree_and_homogeneity():
    x, y, _ = (Poly.var(XYZ, i) for i in range(3))
    assert Poly.zero(XYZ).degree() == -1
    assert (x * y + x).degree() == 2
    assert not (x * y + x).is_homogeneous()
    assert (x * y + x * x).homogeneous_part(2) == x * y + x * x


def test_partition_normalises():
    assert partition([2, 5, 3]) == (5, 3, 2)
    with pytest.raises(ValueError):
        partition([2, 0])


VALUES = [Poly.linear(E_VARS, c) for c in [(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0), (0, 0, 1, -1), (1, -2, 3, 1)]]


@pytest.mark.parametrize("parts", [(1,), (3,), (2, 1), (2, 2), (3, 1, 1), (2, 2, 1), (1, 1, 1, 1)])
def test_s_I_fast_path_matches_enumeration(parts):
    assert s_I_eval(parts, VALUES) == s_I_enumerate(parts, VALUES)


def test_s_I_by_definition():
    a, b, c = (Poly.var(XYZ, i) for i in range(3))
    assert s_I_eval((2, 1), [a, b, c]) == a * a * b + a * a * c + b * b * a + b * b * c + c * c * a + c * c * b
    assert s_I_eval((1, 1), [a, b, c]) == a * b + a * c + b * c
    assert s_I_eval((1, 1, 1, 1), [a, b, c]).is_zero()


def _all_partitions(max_parts, max_part=3):
    for r in range(1, max_parts + 1):
        for combo in itertools.combinations_with_replacement(range(1, max_part + 1), r):
            yield partition(combo)


@pytest.mark.parametrize("parts", sorted(set(_all_partitions(4))))
@pytest.mark.parametrize("split", [(1, 1), (2, 2), (3, 3), (1, 3)])
def test_thom_concatenation(parts, split):
    """s_I(U + V) = sum over I = J + K of s_J(U) s_K(V), symbolically."""
    nu, nv = split
    names = tuple(f"u{i}" for i in range(nu)) + tuple(f"v{i}" for i in range(nv))
    gens = [Poly.var(names, i) for i in range(nu + nv)]
    u, v = gens[:nu], gens[nu:]
    one = Poly.const(names, 1)

    def s(p, vals):
        return s_I_eval(p, vals) if p else one

    lhs = s(parts, u + v)
    rhs = sum((s(j, u) * s(k, v) for j, k in thom_splits(parts)), Poly.zero(names))
    assert lhs == rhs


def test_thom_splits_are_distinct():
    assert sorted(thom_splits((2, 2))) == [((), (2, 2)), ((2,), (2,)), ((2, 2), ())]
    assert len(thom_splits((3, 2, 1))) == 8
