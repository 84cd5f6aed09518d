"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are packed into a single int: one 20-bit slot per variable plus a
top slot holding the total degree.  With that layout, comparing packed keys
is graded-lexicographic comparison and multiplying monomials is adding keys.
Coefficients are Python ints where possible and ``Fraction`` otherwise.
"""

from __future__ import annotations

import heapq
import itertools
import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence, Union

Coeff = Union[int, Fraction]

SLOT = 20
_SLOT_MASK = (1 << SLOT) - 1
MAX_EXPONENT = (1 << (SLOT - 1)) - 1

E_VARS = ("e1", "e2", "e3", "e4")
X_VARS = ("x1", "x2")


class NotDivisible(ArithmeticError):
    """Raised by exact division when a nonzero remainder is left."""

    def __init__(self, remainder: "Poly"):
        super().__init__(f"nonzero remainder: {remainder}")
        self.remainder = remainder


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def pack(exps: Sequence[int]) -> int:
    key = sum(exps)
    for e in exps:
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range")
        key = (key << SLOT) | e
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & _SLOT_MASK
        key >>= SLOT
    return tuple(out)


class Poly:
    """Immutable sparse polynomial in the variables ``names``."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[Sequence[int], Coeff] = None):
        self.names = tuple(names)
        packed = {}
        for exps, c in (terms or {}).items():
            if len(exps) != len(self.names):
                raise ValueError("exponent vector has wrong length")
            c = _norm(c)
            if c:
                k = pack(exps)
                packed[k] = _norm(packed.get(k, 0) + c)
                if not packed[k]:
                    del packed[k]
        self.terms = packed

    @classmethod
    def _raw(cls, names: tuple, terms: dict) -> "Poly":
        obj = cls.__new__(cls)
        obj.names = names
        obj.terms = terms
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, names: Sequence[str]) -> "Poly":
        return cls._raw(tuple(names), {})

    @classmethod
    def const(cls, names: Sequence[str], c: Coeff) -> "Poly":
        c = _norm(c)
        return cls._raw(tuple(names), {pack([0] * len(names)): c} if c else {})

    @classmethod
    def var(cls, names: Sequence[str], i: int) -> "Poly":
        exps = [0] * len(names)
        exps[i] = 1
        return cls._raw(tuple(names), {pack(exps): 1})

    @classmethod
    def linear(cls, names: Sequence[str], coeffs: Sequence[Coeff]) -> "Poly":
        """The linear form sum coeffs[i] * names[i]."""
        n = len(names)
        if len(coeffs) != n:
            raise ValueError("arity mismatch")
        terms = {}
        for i, c in enumerate(coeffs):
            c = _norm(Fraction(c))
            if c:
                exps = [0] * n
                exps[i] = 1
                terms[pack(exps)] = c
        return cls._raw(tuple(names), terms)

    # -- inspection -------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.names)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[tuple[tuple[int, ...], Coeff]]:
        """(exponents, coefficient) pairs in descending graded-lex order."""
        n = self.nvars
        for k in sorted(self.terms, reverse=True):
            yield unpack(k, n), self.terms[k]

    def coefficient(self, exps: Sequence[int]) -> Coeff:
        if any(e < 0 for e in exps):
            return 0
        return self.terms.get(pack(exps), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.terms) >> (SLOT * self.nvars)

    def is_homogeneous(self) -> bool:
        shift = SLOT * self.nvars
        return len({k >> shift for k in self.terms}) <= 1

    def leading(self) -> tuple[tuple[int, ...], Coeff]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self.terms)
        return unpack(k, self.nvars), self.terms[k]

    def constant_value(self) -> Coeff:
        """The value of a constant polynomial."""
        if self.degree() > 0:
            raise ValueError("polynomial is not constant")
        return self.terms.get(pack([0] * self.nvars), 0)

    def coefficients_are_integers(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def evaluate(self, point: Sequence[Coeff]) -> Coeff:
        total = 0
        for exps, c in self.items():
            term = c
            for v, e in zip(point, exps):
                if e:
                    term *= v**e
            total += term
        return _norm(total) if isinstance(total, Fraction) else total

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.names != other.names:
            raise ValueError(f"arity mismatch: {self.names} vs {other.names}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.names, other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return Poly._raw(self.names, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.names, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c: Coeff) -> "Poly":
        c = _norm(c)
        if not c:
            return Poly.zero(self.names)
        return Poly._raw(self.names, {k: _norm(v * c) for k, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return Poly._raw(self.names, {k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        if self.degree() == 1 and self.is_homogeneous():
            return linear_power(self, k)
        result = Poly.const(self.names, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.names, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.names, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.to_str()})"

    def __str__(self) -> str:
        return self.to_str()

    # -- structure --------------------------------------------------------

    def permute_signs(self, perm: Sequence[int], signs: Sequence[int]) -> "Poly":
        """Substitute x_i -> signs[i] * x_{perm[i]} (a monomial substitution)."""
        n = self.nvars
        out = {}
        for k, c in self.terms.items():
            exps = unpack(k, n)
            new = [0] * n
            sgn = 1
            for i, e in enumerate(exps):
                new[perm[i]] += e
                if signs[i] < 0 and e & 1:
                    sgn = -sgn
            out[pack(new)] = c if sgn > 0 else -c
        return Poly._raw(self.names, out)

    def homogeneous_part(self, d: int) -> "Poly":
        shift = SLOT * self.nvars
        return Poly._raw(self.names, {k: c for k, c in self.terms.items() if k >> shift == d})

    def to_str(self) -> str:
        """Canonical text form: terms in descending graded-lex order."""
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.items():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.names, exps)
                if e
            )
            c = Fraction(c)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            text = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if mono:
                text = mono if mag == 1 else f"{text}*{mono}"
            parts.append((sign, text))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out


_FACT = [1]


def _factorial(n: int) -> int:
    while len(_FACT) <= n:
        _FACT.append(_FACT[-1] * len(_FACT))
    return _FACT[n]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def linear_power(form: Poly, k: int) -> Poly:
    """k-th power of a homogeneous linear form by the multinomial theorem."""
    n = form.nvars
    support = []
    for exps, c in form.items():
        support.append((exps.index(1), c))
    if not support:
        return Poly.const(form.names, 1) if k == 0 else Poly.zero(form.names)
    fk = _factorial(k)
    out = {}
    for comp in _compositions(k, len(support)):
        coeff = fk
        exps = [0] * n
        for (idx, c), a in zip(support, comp):
            coeff //= _factorial(a)
        for (idx, c), a in zip(support, comp):
            if a:
                coeff *= c**a
                exps[idx] = a
        coeff = _norm(coeff)
        if coeff:
            out[pack(exps)] = coeff
    return Poly._raw(form.names, out)


def poly_sum(polys: Iterable[Poly], names: Sequence[str]) -> Poly:
    acc: dict = {}
    for p in polys:
        for k, c in p.terms.items():
            acc[k] = acc.get(k, 0) + c
    return Poly._raw(tuple(names), {k: _norm(c) for k, c in acc.items() if c})


def _monomial_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exact_divide(num: Poly, den: Poly) -> Poly:
    """Return q with num == q * den, else raise NotDivisible.

    Multivariate division by a single divisor in graded-lex order.
    """
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = num.nvars
    lead_key = max(den.terms)
    lead_exps = unpack(lead_key, n)
    lead_c = den.terms[lead_key]
    rest = [(k - lead_key, c) for k, c in den.terms.items() if k != lead_key]
    rem = dict(num.terms)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict = {}
    leftover: dict = {}
    while heap:
        k = -heapq.heappop(heap)
        c = rem.pop(k, 0)
        if not c:
            continue
        exps = unpack(k, n)
        if not _monomial_divides(lead_exps, exps):
            leftover[k] = c
            continue
        qk = k - lead_key
        if isinstance(c, int) and isinstance(lead_c, int) and c % lead_c == 0:
            qc = c // lead_c
        else:
            qc = _norm(Fraction(c) / lead_c)
        quot[qk] = qc
        for dk, dc in rest:
            t = k + dk
            old = rem.get(t)
            if old is None:
                rem[t] = -qc * dc
                heapq.heappush(heap, -t)
            else:
                v = old - qc * dc
                rem[t] = _norm(v) if v else 0
    if leftover:
        raise NotDivisible(Poly._raw(num.names, leftover))
    return Poly._raw(num.names, quot)


def divide_linear(num: Poly, form: Poly) -> Poly:
    """Exact division by a linear form via synthetic division in its lead variable."""
    num._check(form)
    if form.degree() != 1 or not form.is_homogeneous():
        raise ValueError("divisor must be a nonzero homogeneous linear form")
    n = num.nvars
    lead_exps, lead_c = form.leading()
    v = lead_exps.index(1)
    vshift = SLOT * (n - 1 - v)
    vunit = (1 << vshift) + (1 << (SLOT * n))  # packed key of the variable itself
    beta = [(k - (1 << (SLOT * n)), c) for k, c in form.terms.items() if k != vunit]
    # beta keys are stored without their degree bit so adding them to a
    # v-free key raises the degree by one; fix up below with +deg_unit.
    deg_unit = 1 << (SLOT * n)
    groups: dict[int, dict] = {}
    for k, c in num.terms.items():
        e = (k >> vshift) & _SLOT_MASK
        base = k - e * vunit
        groups.setdefault(e, {})[base] = c
    if not groups:
        return Poly.zero(num.names)
    top = max(groups)
    integral_lead = isinstance(lead_c, int) and lead_c in (1, -1)
    q_coeffs: dict[int, dict] = {}
    carry: dict = {}
    for j in range(top, 0, -1):
        pj = groups.get(j, {})
        cur = dict(pj)
        for k, c in carry.items():
            cur[k] = cur.get(k, 0) - c
        qj = {}
        for k, c in cur.items():
            if c:
                qj[k] = c * lead_c if integral_lead else _norm(Fraction(c) / lead_c)
        q_coeffs[j - 1] = qj
        carry = {}
        for k, c in qj.items():
            for bk, bc in beta:
                t = k + bk + deg_unit
                carry[t] = carry.get(t, 0) + c * bc
    tail = dict(groups.get(0, {}))
    for k, c in carry.items():
        tail[k] = tail.get(k, 0) - c
    leftover = {k: _norm(c) for k, c in tail.items() if c}
    if leftover:
        raise NotDivisible(Poly._raw(num.names, leftover))
    out = {}
    for j, qj in q_coeffs.items():
        for k, c in qj.items():
            c = _norm(c)
            if c:
                out[k + j * vunit] = c
    return Poly._raw(num.names, out)


def linear_substitute(poly: Poly, images: Sequence[Poly]) -> Poly:
    """Ring homomorphism sending variable i to images[i] (Horner scheme)."""
    if len(images) != poly.nvars:
        raise ValueError("need one image per variable")
    if not images:
        raise ValueError("no variables to substitute")
    target = images[0].names
    for img in images:
        if img.names != target:
            raise ValueError("images live in different rings")
    n = poly.nvars
    power_cache: dict[tuple[int, int], Poly] = {}

    def img_pow(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in power_cache:
            power_cache[key] = images[i] ** e
        return power_cache[key]

    def rec(terms: list, idx: int) -> Poly:
        if idx == n:
            return Poly.const(target, sum(c for _, c in terms))
        groups: dict[int, list] = {}
        for exps, c in terms:
            groups.setdefault(exps[idx], []).append((exps, c))
        degs = sorted(groups, reverse=True)
        acc = None
        prev = None
        for d in degs:
            part = rec(groups[d], idx + 1)
            if acc is None:
                acc = part
            else:
                acc = acc * img_pow(idx, prev - d) + part
            prev = d
        if prev:
            acc = acc * img_pow(idx, prev)
        return acc

    if poly.is_zero():
        return Poly.zero(target)
    return rec([(unpack(k, n), c) for k, c in poly.terms.items()], 0)


# -- partitions and monomial symmetric functions -----------------------------


def partition(parts: Iterable[int]) -> tuple[int, ...]:
    """Normalize to a non-increasing tuple of positive integers."""
    out = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p <= 0 for p in out):
        raise ValueError("partition parts must be positive")
    return out


def weight(parts: Sequence[int]) -> int:
    return sum(parts)


PowerFn = Callable[[int, int], Poly]


def _power_sum(values: Sequence[Poly], k: int, cache: dict, power: PowerFn) -> Poly:
    if k not in cache:
        cache[k] = poly_sum((power(i, k) for i in range(len(values))), values[0].names)
    return cache[k]


def s_I_eval(parts: Sequence[int], values: Sequence[Poly], power: Optional[PowerFn] = None) -> Poly:
    """Monomial symmetric polynomial m_I evaluated at ``values``.

    Sums each distinct monomial once.  Partitions with at most two parts go
    through power sums; longer ones are enumerated directly.  ``power(i, k)``
    may supply values[i]**k when the caller knows a cheaper route.
    """
    parts = partition(parts)
    if not values:
        raise ValueError("need at least one value")
    names = values[0].names
    if len(values) < len(parts):
        return Poly.zero(names)
    if not parts:
        return Poly.const(names, 1)
    if power is None:
        power = lambda i, k: values[i] ** k  # noqa: E731
    cache: dict = {}
    if len(parts) == 1:
        return _power_sum(values, parts[0], cache, power)
    if len(parts) == 2:
        a, b = parts
        pa = _power_sum(values, a, cache, power)
        if a != b:
            return pa * _power_sum(values, b, cache, power) - _power_sum(values, a + b, cache, power)
        return (pa * pa - _power_sum(values, 2 * a, cache, power)).scale(Fraction(1, 2))
    return s_I_enumerate(parts, values, power)


def s_I_enumerate(parts: Sequence[int], values: Sequence[Poly], power: Optional[PowerFn] = None) -> Poly:
    """m_I by direct enumeration of distinct exponent assignments."""
    parts = partition(parts)
    names = values[0].names
    k = len(values)
    mult: dict[int, int] = {}
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
    distinct = sorted(mult, reverse=True)
    pow_cache: dict = {}

    def vpow(i: int, e: int) -> Poly:
        if (i, e) not in pow_cache:
            pow_cache[(i, e)] = power(i, e) if power is not None else values[i] ** e
        return pow_cache[(i, e)]

    total = []

    def rec(level: int, free: tuple, acc: Poly) -> None:
        if level == len(distinct):
            total.append(acc)
            return
        e = distinct[level]
        for chosen in itertools.combinations(free, mult[e]):
            term = acc
            for i in chosen:
                term = term * vpow(i, e)
            rec(level + 1, tuple(i for i in free if i not in chosen), term)

    rec(0, tuple(range(k)), Poly.const(names, 1))
    return poly_sum(total, names)


def thom_splits(parts: Sequence[int]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ways to split the multiset I into sub-multisets (J, K), J + K = I."""
    parts = partition(parts)
    mult: dict[int, int] = {}
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
    keys = sorted(mult, reverse=True)
    out = []
    for counts in itertools.product(*(range(mult[v] + 1) for v in keys)):
        j = [v for v, c in zip(keys, counts) for _ in range(c)]
        kk = [v for v, c in zip(keys, counts) for _ in range(mult[v] - c)]
        out.append((partition(j), partition(kk)))
    return out
