"""Binomial GCD laws, their predicted p-adic orders, and degree selection."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import reduce

from .exactnum import binomial, is_prime

KINDS = ("row", "even", "diff")


class Classifier(enum.Enum):
    RowPower = "2n+1 = p^i"
    TwoPrimePowers = "2n = p^i + p^j"
    PowerMinusOne = "2n = p^i - 1"
    NONE = "none"


@dataclass(frozen=True)
class OrdPattern:
    classifier: Classifier
    witness: tuple = ()

    @property
    def predicted_ord(self) -> int:
        return 0 if self.classifier is Classifier.NONE else 1


def _gcd(values) -> int:
    return reduce(math.gcd, values, 0)


def gcd_row(n: int) -> int:
    """GCD of C(2n+1, i) over 1 < i < 2n."""
    if n <= 1:
        raise ValueError("gcd_row needs n > 1")
    return _gcd(binomial(2 * n + 1, i) for i in range(2, 2 * n))


def gcd_even(n: int) -> int:
    """GCD of C(2n, 2k) over 0 < k < n."""
    if n <= 1:
        raise ValueError("gcd_even needs n > 1")
    return _gcd(binomial(2 * n, 2 * k) for k in range(1, n))


def gcd_diff(n: int) -> int:
    """GCD of C(2n, 2) - C(2n, 2k) over 1 < k < n - 1."""
    if n < 4:
        raise ValueError("gcd_diff needs n >= 4")
    c2 = binomial(2 * n, 2)
    return _gcd(c2 - binomial(2 * n, 2 * k) for k in range(2, n - 1))


GCD_FUNCTIONS = {"row": gcd_row, "even": gcd_even, "diff": gcd_diff}
MIN_N = {"row": 2, "even": 2, "diff": 4}


def _powers(p: int, limit: int) -> list[tuple[int, int]]:
    """(i, p**i) for p**i <= limit, starting at i = 0."""
    out, i, v = [], 0, 1
    while v <= limit:
        out.append((i, v))
        i += 1
        v *= p
    return out


def _two_powers(p: int, target: int):
    pw = _powers(p, target)
    for a, (i, pi) in enumerate(pw):
        for j, pj in pw[a:]:
            if pi + pj == target:
                return (i, j)
    return None


def classify(kind: str, n: int, p: int) -> OrdPattern:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if p == 2 or not is_prime(p):
        raise ValueError(f"predicted orders are stated for odd primes, got {p}")
    if n < MIN_N[kind]:
        raise ValueError(f"{kind} law needs n >= {MIN_N[kind]}")
    if kind == "row":
        for i, v in _powers(p, 2 * n + 1):
            if i > 0 and v == 2 * n + 1:
                return OrdPattern(Classifier.RowPower, (i,))
        return OrdPattern(Classifier.NONE)
    hit = _two_powers(p, 2 * n)
    if hit is not None:
        return OrdPattern(Classifier.TwoPrimePowers, hit)
    if kind == "diff":
        for i, v in _powers(p, 2 * n + 1):
            if v == 2 * n + 1:
                return OrdPattern(Classifier.PowerMinusOne, (i,))
    return OrdPattern(Classifier.NONE)


def predicted_ord(kind: str, n: int, p: int) -> int:
    return classify(kind, n, p).predicted_ord


def two_three_squares(n: int) -> tuple[int, int]:
    """(a, b) >= 0 with n = 3a + 8b, i.e. n + a + b = 4a + 9b."""
    if n < 14:
        raise ValueError("two_three_squares needs n >= 14")
    c = -(-n // 3)
    a, b = 3 * n - 8 * c, 3 * c - n
    assert a >= 0 and b >= 0 and 3 * a + 8 * b == n
    return a, b


def four_square_reps(total: int) -> list[tuple[int, int, int, int]]:
    """All d1 <= d2 <= d3 <= d4, all positive, with sum of squares = total."""
    reps = []
    d1 = 1
    while 4 * d1 * d1 <= total:
        d2 = d1
        while d1 * d1 + 3 * d2 * d2 <= total:
            d3 = d2
            while d1 * d1 + d2 * d2 + 2 * d3 * d3 <= total:
                rest = total - d1 * d1 - d2 * d2 - d3 * d3
                d4 = math.isqrt(rest)
                if d4 * d4 == rest and d4 >= d3:
                    reps.append((d1, d2, d3, d4))
                d3 += 1
            d2 += 1
        d1 += 1
    return reps


def four_square_gcd(n: int) -> int:
    """GCD of d1 d2 d3 d4 over the representations 4n + 5 = sum d_i^2."""
    if n < 25:
        raise ValueError("four_square_gcd needs n >= 25")
    reps = four_square_reps(4 * n + 5)
    if not reps:
        raise ArithmeticError(f"{4 * n + 5} has no representation as four positive squares")
    return _gcd(math.prod(r) for r in reps)


FOUR_SQUARE_CYCLE = (48, 8, 144, 24, 16, 72)


def is_2a3b(v: int) -> bool:
    if v <= 0:
        return False
    for q in (2, 3):
        while v % q == 0:
            v //= q
    return v == 1
