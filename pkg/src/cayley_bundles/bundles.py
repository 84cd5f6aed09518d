"""Cayley-plane bundles over products of complete intersections.

A bundle spec is (n_f, V, V') where V = V^m(d_1..d_r), V' = V^m'(d'_1..d'_r')
and the classifying map pulls e1..e4 back to n_f (x1, x1, x2, -x2).  Evaluation
against [W] uses (i x i')^* x1^m x2^m' = (prod d)(prod d') [W].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactnum import binomial
from .gcdlaws import two_three_squares
from .polyalg import Poly, partition
from .pushforward import pulled_back

STRING_THRESHOLD = 14


@dataclass(frozen=True)
class CompleteIntersection:
    m: int
    degrees: tuple = ()

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("complex dimension must be non-negative")
        if any(d < 1 for d in self.degrees):
            raise ValueError("degrees must be positive")
        object.__setattr__(self, "degrees", tuple(self.degrees))

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def degree_product(self) -> int:
        return math.prod(self.degrees)

    def to_json(self) -> dict:
        return {"m": self.m, "degrees": list(self.degrees)}


@dataclass(frozen=True)
class CayleyBundleSpec:
    n_f: int
    V: CompleteIntersection
    Vp: CompleteIntersection

    def __post_init__(self):
        if self.n_f < 1:
            raise ValueError("n_f must be a positive integer")

    @property
    def dimension(self) -> int:
        return 16 + 2 * (self.V.m + self.Vp.m)

    @property
    def degree_product(self) -> int:
        return self.V.degree_product * self.Vp.degree_product

    def swapped(self) -> "CayleyBundleSpec":
        return CayleyBundleSpec(self.n_f, self.Vp, self.V)

    def to_json(self) -> dict:
        return {"n_f": self.n_f, "V": self.V.to_json(), "Vp": self.Vp.to_json(), "dimension": self.dimension}


@dataclass(frozen=True)
class BordismCombination:
    terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        terms = tuple((int(c), s) for c, s in self.terms)
        dims = {s.dimension for _, s in terms}
        if len(dims) > 1:
            raise ValueError(f"mixed dimensions in combination: {sorted(dims)}")
        object.__setattr__(self, "terms", terms)

    @property
    def dimension(self) -> int:
        return self.terms[0][1].dimension if self.terms else 0

    def scaled(self, c: int) -> "BordismCombination":
        return BordismCombination(tuple((c * k, s) for k, s in self.terms))

    def s_number(self, parts: Sequence[int]) -> int:
        return sum(c * s_I_total_space(s, parts) for c, s in self.terms)

    def to_json(self) -> list:
        return [{"coefficient": str(c), "spec": s.to_json()} for c, s in self.terms]


def ci_sn_coefficient(V: CompleteIntersection, n: int) -> int:
    """s_n(TV) = (m + r + 1 - sum d^(2n)) x^(2n)."""
    return V.m + V.r + 1 - sum(d ** (2 * n) for d in V.degrees)


def p1_eta_coefficient(n_f: int) -> int:
    """Coefficient of x1^2 (and x2^2) in the pulled-back p1(eta), as the string condition uses it."""
    return 4 * n_f


def string_defect(spec: CayleyBundleSpec) -> tuple[int, int]:
    """Coefficients of x1^2, x2^2 in p1(TE); the bundle is string iff both vanish."""
    c = p1_eta_coefficient(spec.n_f)
    return (
        c + spec.V.m + 1 + spec.V.r - sum(d * d for d in spec.V.degrees),
        c + spec.Vp.m + 1 + spec.Vp.r - sum(d * d for d in spec.Vp.degrees),
    )


def is_string(spec: CayleyBundleSpec) -> bool:
    return string_defect(spec) == (0, 0)


def string_degrees(m: int, n_f: int) -> tuple:
    a, b = two_three_squares(p1_eta_coefficient(n_f) + m + 1)
    return (2,) * a + (3,) * b


def min_string_nf(m: int, mp: int) -> int:
    """Smallest n_f for which make_string_bundle(m, mp, n_f) is defined."""
    need = STRING_THRESHOLD - 1 - min(m, mp)
    n_f = 1
    while p1_eta_coefficient(n_f) < need:
        n_f += 1
    return n_f


def make_string_bundle(m: int, mp: int, n_f: int) -> CayleyBundleSpec:
    for label, v in (("m", m), ("m'", mp)):
        if v < 0 or v % 2:
            raise ValueError(f"{label} must be a non-negative even integer, got {v}")
    for v in (m, mp):
        total = p1_eta_coefficient(n_f) + v + 1
        if total < STRING_THRESHOLD:
            raise ValueError(
                f"4*n_f + m + 1 = {total} < {STRING_THRESHOLD}; raise n_f to at least {min_string_nf(m, mp)}"
            )
    return CayleyBundleSpec(
        n_f,
        CompleteIntersection(m, string_degrees(m, n_f)),
        CompleteIntersection(mp, string_degrees(mp, n_f)),
    )


def _check_dimension(spec: CayleyBundleSpec, weight: int) -> None:
    if spec.dimension != 4 * weight:
        raise ValueError(f"bundle has dimension {spec.dimension}, the number needs {4 * weight}")


def _integral(c) -> int:
    c = Fraction(c)
    if c.denominator != 1:
        raise ArithmeticError(f"characteristic number {c} is not an integer")
    return int(c)


def _coeff(poly: Poly, a: int, b: int):
    if a < 0 or b < 0:
        return 0
    return poly.coefficient((a, b))


def s_n_total_space(spec: CayleyBundleSpec, n: int) -> int:
    """s_n[E]: only s_n(eta) contributes, base classes drop out."""
    _check_dimension(spec, n)
    poly = pulled_back((n,), spec.n_f)
    return _integral(spec.degree_product * _coeff(poly, spec.V.m, spec.Vp.m))


def s_n1n2_total_space(spec: CayleyBundleSpec, n1: int, n2: int) -> int:
    """s_{n1,n2}[E] = <P_{n1,n2} + s_{n1}(TW) P_{n2} + s_{n2}(TW) P_{n1}, [W]>.

    Here P_I is the pulled-back pushforward of s_I(eta).  The pushforward
    to a point factors through the fibre integral, so evaluating this
    class on [W] is the number of E itself.  For n1 = n2 there is a single
    cross term.
    """
    n1, n2 = partition((n1, n2))
    _check_dimension(spec, n1 + n2)
    m, mp = spec.V.m, spec.Vp.m
    value = Fraction(_coeff(pulled_back((n1, n2), spec.n_f), m, mp))
    pairs = [(n1, n2)] if n1 == n2 else [(n1, n2), (n2, n1)]
    for base_n, fibre_n in pairs:
        poly = pulled_back((fibre_n,), spec.n_f)
        value += ci_sn_coefficient(spec.V, base_n) * _coeff(poly, m - 2 * base_n, mp)
        value += ci_sn_coefficient(spec.Vp, base_n) * _coeff(poly, m, mp - 2 * base_n)
    return _integral(spec.degree_product * value)


def s_I_total_space(spec: CayleyBundleSpec, parts: Sequence[int]) -> int:
    parts = partition(parts)
    if len(parts) == 1:
        return s_n_total_space(spec, parts[0])
    if len(parts) == 2:
        return s_n1n2_total_space(spec, *parts)
    raise NotImplementedError("only s_n and s_{n1,n2} numbers are supported")


def milnor_sn(i: int, n: int) -> int:
    """s_n[H] = -C(2n+1, i) for the degree-(1,1) hypersurface H in CP^i x CP^(2n+1-i)."""
    if not 1 < i < 2 * n:
        raise ValueError("milnor_sn needs 1 < i < 2n")
    return -binomial(2 * n + 1, i)
