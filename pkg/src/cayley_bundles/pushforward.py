"""Pushforward of s_I(eta) along BSpin(9) -> BF4, restricted to BT.

The three-coset sum is assembled over the least common multiple of the three
coset denominators (each a product of eight short roots, the lcm being the
product of the twelve short positive roots up to sign) and divided exactly
once at the end.  All arithmetic is done on integer-coefficient forms: short
roots are normalised to primitive integer vectors whose leading coefficient
is 1, so the final exact division never leaves the integers.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import f4roots
from .exactnum import binomial
from .f4roots import Matrix, Weight
from .polyalg import (
    E_VARS,
    X_VARS,
    Poly,
    SLOT,
    divide_linear,
    linear_power,
    linear_substitute,
    pack,
    partition,
    poly_sum,
    s_I_eval,
    unpack,
)


@dataclass(frozen=True)
class PushforwardResult:
    parts: tuple
    e_poly: Poly
    x_poly: Poly
    n_f: int


def _primitive(w: Weight) -> tuple[Fraction, tuple[int, ...]]:
    """Write w = lam * v with v a primitive integer vector, first nonzero entry > 0."""
    den = math.lcm(*(c.denominator for c in w))
    ints = [int(c * den) for c in w]
    g = math.gcd(*ints)
    v = [x // g for x in ints]
    first = next(x for x in v if x)
    if first < 0:
        v = [-x for x in v]
        g = -g
    return Fraction(g, den), tuple(v)


def _form(v: Sequence[int]) -> Poly:
    return Poly.linear(E_VARS, v)


class _CosetTerm:
    """One summand w(s_I(r^2) / prod r) with its roots in primitive form."""

    def __init__(self, rep: Matrix):
        self.rep = rep
        self.images = [f4roots.apply(rep, r) for r in f4roots.complementary_roots()]
        prim = [_primitive(w) for w in self.images]
        self.scales = [lam for lam, _ in prim]
        self.forms = [v for _, v in prim]
        self.den_scale = math.prod(self.scales, start=Fraction(1))


def _coset_terms() -> list[_CosetTerm]:
    return [_CosetTerm(rep) for rep in f4roots.coset_reps()]


def _lcm_factors(terms: Sequence[_CosetTerm]) -> list[tuple[int, ...]]:
    seen: list = []
    for t in terms:
        for v in t.forms:
            if v not in seen:
                seen.append(v)
    return seen


def coset_sum(parts: Sequence[int]) -> Poly:
    """sum over the three coset representatives of w(s_I(r^2)/prod r), as a polynomial in e."""
    parts = partition(parts)
    wt = sum(parts)
    terms = _coset_terms()
    lcm = _lcm_factors(terms)
    numer = []
    for t in terms:
        # Y = 4 r^2 has integer coefficients; s_I(Y) = 4^|I| s_I(r^2).
        forms = [_form(v) for v in t.forms]
        sq = [int((2 * lam) ** 2) for lam in t.scales]
        values = [f * f * c for f, c in zip(forms, sq)]
        num = s_I_eval(parts, values, lambda i, k: linear_power(forms[i], 2 * k).scale(sq[i] ** k))
        # lcm / den = (1/den_scale) * product of the lcm factors missing from this coset
        cof_scale = 1 / t.den_scale
        assert cof_scale.denominator == 1
        num = num.scale(cof_scale.numerator)
        for v in lcm:
            if v not in t.forms:
                num = num * _form(v)
        numer.append(num)
    total = poly_sum(numer, E_VARS)
    for v in lcm:
        total = divide_linear(total, _form(v))
    return total.scale(Fraction(1, 4**wt))


_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def coset_pushforward(parts: Sequence[int]) -> Poly:
    """Bi_{T,F4}^* Bi_{Spin(9),F4 *} s_I(eta) in e1..e4 (memoised per partition)."""
    key = partition(parts)
    with _CACHE_LOCK:
        hit = _CACHE.get(key)
    if hit is not None:
        return hit
    value = coset_sum(key)
    with _CACHE_LOCK:
        return _CACHE.setdefault(key, value)


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


def substitute_f(poly: Poly, n_f: int) -> Poly:
    """Pull back along e -> n_f * (x1, x1, x2, -x2)."""
    if poly.names != E_VARS:
        raise ValueError("substitute_f expects a polynomial in e1..e4")
    out: dict = {}
    for k, c in poly.terms.items():
        a, b, cc, d = unpack(k, 4)
        key = pack((a + b, cc + d))
        coeff = c * n_f ** (a + b + cc + d)
        if d & 1:
            coeff = -coeff
        out[key] = out.get(key, 0) + coeff
    return Poly(X_VARS, {unpack(k, 2): c for k, c in out.items() if c})


def f_images(n_f: int) -> list[Poly]:
    """The images of e1..e4 under f, as linear forms in x1, x2."""
    return [
        Poly.linear(X_VARS, (n_f, 0)),
        Poly.linear(X_VARS, (n_f, 0)),
        Poly.linear(X_VARS, (0, n_f)),
        Poly.linear(X_VARS, (0, -n_f)),
    ]


def pushforward(parts: Sequence[int], n_f: int = 1) -> PushforwardResult:
    e_poly = coset_pushforward(parts)
    return PushforwardResult(partition(parts), e_poly, substitute_f(e_poly, n_f), n_f)


def pulled_back(parts: Sequence[int], n_f: int = 1) -> Poly:
    """f^* Bi_* s_I(eta) as a polynomial in x1, x2."""
    return substitute_f(coset_pushforward(parts), n_f)


# -- the full Weyl-group oracle ------------------------------------------------


def euler_class_f4() -> Poly:
    """Product of the 24 positive roots (16 of Spin(9), 8 complementary)."""
    return f4roots.euler_product(f4roots.ROOTS.positive)


def euler_class_spin9() -> Poly:
    return f4roots.euler_product(f4roots.ROOTS.spin9_positive)


def _divide_by_roots(poly: Poly, roots: Sequence[Weight]) -> Poly:
    scale = Fraction(1)
    for r in roots:
        lam, v = _primitive(r)
        poly = divide_linear(poly, _form(v))
        scale *= lam
    return poly.scale(1 / scale)


def _signed_permutation_sum(t: Poly, subgroup: Sequence[Matrix]) -> Poly:
    parts = []
    for h in subgroup:
        perm, signs = f4roots.signed_permutation_data(h)
        term = t.permute_signs(perm, signs)
        parts.append(term if f4roots.weyl_sign(h) > 0 else -term)
    return poly_sum(parts, E_VARS)


def weyl_alternating_sum(t: Poly) -> Poly:
    """sum over all 1152 w in W(F4) of sgn(w) w(t).

    The group is split into left cosets g*B of the signed-permutation
    subgroup B; sgn(gh) (gh)(t) = sgn(g) g(sgn(h) h(t)) lets the inner sum
    over B run as cheap monomial permutations.
    """
    group = f4roots.generate_weyl_f4()
    sub = [h for h in group if f4roots.is_signed_permutation(h)]
    inner = _signed_permutation_sum(t, sub)
    cosets = f4roots.left_cosets(group, sub)
    if sum(len(c) for _, c in cosets) != len(group):
        raise RuntimeError("cosets do not cover the Weyl group")
    out = []
    for g, _ in cosets:
        term = f4roots.act_on_poly(g, inner)
        out.append(term if f4roots.weyl_sign(g) > 0 else -term)
    return poly_sum(out, E_VARS)


def weyl_alternating_sum_literal(t: Poly) -> Poly:
    """The same sum with every group element applied separately (slow)."""
    out = []
    for w in f4roots.generate_weyl_f4():
        term = f4roots.act_on_poly(w, t)
        out.append(term if f4roots.weyl_sign(w) > 0 else -term)
    return poly_sum(out, E_VARS)


def full_weyl_oracle(t: Poly) -> Poly:
    """(1 / e~(F4/T)) * sum_w sgn(w) w(t), divided exactly."""
    return _divide_by_roots(weyl_alternating_sum(t), f4roots.ROOTS.positive)


def oracle_pushforward(parts: Sequence[int]) -> Poly:
    """Pushforward via the full Weyl sum: oracle(e~(Spin9/T) s_I(r^2)) / |W(Spin9)|."""
    parts = partition(parts)
    values = [f4roots.to_poly(r) ** 2 for r in f4roots.complementary_roots()]
    t = euler_class_spin9() * s_I_eval(parts, values)
    return full_weyl_oracle(t).scale(Fraction(1, 384))


def series_pushforward_sn(n: int) -> Poly:
    """Second route for I = (n): expand the restricted coset sum as a series.

    With n_f = 1 and (x1, x2) = (x, 1), two complementary roots vanish on
    the image of f; the polynomial is recovered from the regularised series
    -(1/x^4)(1 + x^2 + x^4 + ...) * [...] truncated at degree 2n.
    """
    # Bracketed numerator from the proof, as a univariate polynomial in x.
    c2 = binomial(2 * n, 2)
    coeffs = [0] * (2 * n + 3)

    def add_binom_expansion(sign_x: int, scale: int, shift: int) -> None:
        for i in range(2 * n + 1):
            coeffs[i + shift] += scale * binomial(2 * n, i) * sign_x**i

    # -2 + (x+1)^{2n} + (x-1)^{2n}
    coeffs[0] += -2
    add_binom_expansion(1, 1, 0)
    add_binom_expansion(-1, 1, 0)
    # -x^2 [ -2 + (x+1)^{2n} + (x-1)^{2n} + 2 C(2n,2) ]
    coeffs[2] += 2 - 2 * c2
    add_binom_expansion(1, -1, 2)
    add_binom_expansion(-1, -1, 2)
    # + x^{2n} [2 C(2n,2) - 2] + 2 x^{2n+2}
    coeffs[2 * n] += 2 * c2 - 2
    coeffs[2 * n + 2] += 2
    # multiply by -(1 + x^2 + x^4 + ...), truncated, then divide by x^4
    series = [0] * (2 * n + 3)
    for i, c in enumerate(coeffs):
        if c:
            for j in range(i, 2 * n + 3, 2):
                series[j] -= c
    for low in range(4):
        if series[low]:
            raise ArithmeticError("series has a pole; regularisation failed")
    terms = {}
    for deg in range(4, 2 * n - 3):
        if series[deg]:
            x_exp = deg - 4
            terms[(x_exp, 2 * n - 8 - x_exp)] = series[deg]
    return Poly(X_VARS, terms)


# -- closed forms ------------------------------------------------------------------


def closed_form_sn(n: int, n_f: int = 1) -> Poly:
    """2 n_f^(2n-8) sum_{k=2}^{n-2} [C(2n,2) - C(2n,2k)] x1^(2k-4) x2^(2n-2k-4)."""
    if n < 2:
        raise ValueError("closed_form_sn needs n >= 2")
    terms = {}
    scale = 2 * n_f ** max(2 * n - 8, 0)
    c2 = binomial(2 * n, 2)
    for k in range(2, n - 1):
        terms[(2 * k - 4, 2 * n - 2 * k - 4)] = scale * (c2 - binomial(2 * n, 2 * k))
    return Poly(X_VARS, terms)


class ClosedFormDiscrepancy(ArithmeticError):
    """The literal closed form produced a term the polynomial cannot hold."""


def _b(n: int, k: int) -> int:
    return binomial(n, k) if n >= 0 else 0


def sn1n2_bracket(n1: int, n2: int, k: int) -> Fraction:
    """The bracketed coefficient of the k-th summand in the s_{n1,n2} closed form."""
    delta = lambda cond: 1 if cond else 0  # noqa: E731
    c = Fraction(
        _b(2 * n1, 2 * k) + _b(2 * n2, 2 * k) + _b(2 * n2, 2 * k - 2 * n1) + _b(2 * n1, 2 * k - 2 * n2)
    )
    c += Fraction(1, 2) * sum((-1) ** l * _b(2 * n2, l) * _b(2 * n1 - 2 * n2, 2 * k - 2 * l) for l in range(k + 1))
    c -= _b(2 * n1, 2) * sum(_b(2 * n2, 2 * k - 2 * l) for l in range(1, n1))
    c -= _b(2 * n2, 2) * sum(_b(2 * n1, 2 * k - 2 * l) for l in range(1, n2))
    c -= _b(2 * n2, 2) * (1 - delta(n2 <= k <= n1))
    c -= _b(2 * n1, 2) * (1 + delta(n2 + 1 <= k <= n1 - 1))
    c += Fraction(1, 2) * _b(2 * n1 + 2 * n2, 2)
    c -= 3 * delta(k in (n1, n2))
    return c


def closed_form_sn1n2(n1: int, n2: int, n_f: int = 1) -> Poly:
    """-4 n_f^(2(n1+n2)-8) sum_{k=2}^{n1+n2-1} [bracket] x1^(2k-4) x2^(2n1+2n2-2k-4).

    A summand whose x2 exponent would be negative must have a zero bracket;
    otherwise ClosedFormDiscrepancy is raised with the offending k.
    """
    if not n1 > n2 >= 1:
        raise ValueError("closed_form_sn1n2 needs n1 > n2 >= 1")
    deg = 2 * (n1 + n2) - 8
    scale = -4 * n_f ** max(deg, 0)
    terms = {}
    for k in range(2, n1 + n2):
        c = sn1n2_bracket(n1, n2, k)
        ex1, ex2 = 2 * k - 4, 2 * n1 + 2 * n2 - 2 * k - 4
        if ex2 < 0:
            if c:
                raise ClosedFormDiscrepancy(f"k={k}: bracket {c} on x1^{ex1} x2^{ex2}")
            continue
        terms[(ex1, ex2)] = scale * c
    return Poly(X_VARS, terms)
