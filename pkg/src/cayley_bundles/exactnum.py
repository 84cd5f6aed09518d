"""Exact integer/rational helpers, p-adic orders and binomial congruences.

Everything here is exact.  ``ord_p`` of zero is ``INFINITY`` (``math.inf``),
which compares greater than every integer.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Union[int, Fraction]

INFINITY = math.inf

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact below 3.3e24)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int) -> list[int]:
    """Primes <= limit by a plain sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def odd_primes_up_to(limit: int) -> list[int]:
    return [p for p in primes_up_to(limit) if p != 2]


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _ord_int(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def ord_p(x: Rational, p: int) -> Union[int, float]:
    """p-adic order of an integer or rational; ``INFINITY`` for zero."""
    _check_prime(p)
    if x == 0:
        return INFINITY
    x = Fraction(x)
    return _ord_int(x.numerator, p) - _ord_int(x.denominator, p)


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0; zero when k is outside [0, n]."""
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    num, den = 1, 1
    for i in range(1, k + 1):
        num *= n - k + i
        den *= i
        g = math.gcd(num, den)
        if g > 1:
            num //= g
            den //= g
    return num // den


def digits(n: int, p: int) -> list[int]:
    """Base-p digits of n, least significant first ([0] for n = 0)."""
    if n < 0:
        raise ValueError("negative integer has no digit expansion")
    if n == 0:
        return [0]
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


def from_digits(ds: list[int], p: int) -> int:
    return sum(d * p**i for i, d in enumerate(ds))


def _carry_flags(m: int, r: int, p: int) -> list[bool]:
    """carry_flags[i] is True when adding m and r in base p carries out of digit i."""
    flags = []
    carry = 0
    while m or r or carry:
        m, a = divmod(m, p)
        r, b = divmod(r, p)
        carry = 1 if a + b + carry >= p else 0
        flags.append(bool(carry))
    return flags


def kummer_carries(m: int, r: int, p: int) -> int:
    """Number of carries when adding m and r in base p."""
    _check_prime(p)
    if m < 0 or r < 0:
        raise ValueError("kummer_carries needs non-negative arguments")
    return sum(_carry_flags(m, r, p))


def lucas_residue(n: int, k: int, p: int) -> int:
    """C(n, k) mod p as the product of digit-wise binomials."""
    _check_prime(p)
    if k < 0 or k > n:
        return 0
    res = 1
    while n or k:
        n, a = divmod(n, p)
        k, b = divmod(k, p)
        if b > a:
            return 0
        res = res * binomial(a, b) % p
    return res


@lru_cache(maxsize=None)
def _unit_block_product(p: int, modulus: int) -> int:
    prod = 1
    for i in range(1, modulus + 1):
        if i % p:
            prod = prod * i % modulus
    return prod


def generalized_factorial_literal(n: int, p: int, modulus: int) -> int:
    """(n!)_p mod modulus by the plain product."""
    prod = 1
    for i in range(1, n + 1):
        if i % p:
            prod = prod * i % modulus
    return prod % modulus


def generalized_factorial_p(n: int, p: int, modulus: int) -> int:
    """Product of the integers <= n not divisible by p, reduced mod ``modulus``.

    ``modulus`` must be a power of p; the product is periodic in blocks of
    length ``modulus`` so only the tail is multiplied out.
    """
    _check_prime(p)
    if modulus < p or modulus % p or _is_not_power(modulus, p):
        raise ValueError(f"modulus {modulus} is not a positive power of {p}")
    blocks, tail = divmod(n, modulus)
    head = pow(_unit_block_product(p, modulus), blocks, modulus)
    return head * generalized_factorial_literal(tail, p, modulus) % modulus


def _is_not_power(modulus: int, p: int) -> bool:
    while modulus % p == 0:
        modulus //= p
    return modulus != 1


def granville_binomial(n: int, m: int, p: int, q: int) -> tuple[int, int]:
    """Return (e0, unit) with C(n, m) = p**e0 * u and u = unit mod p**q.

    The unit comes from the product of generalized factorials of the
    residues of n // p**j, m // p**j, (n - m) // p**j mod p**q, with sign
    (-1)**e_{q-1} where e_j counts the carries at or beyond digit j.
    """
    _check_prime(p)
    if q < 1:
        raise ValueError("q must be positive")
    if not 0 <= m <= n:
        raise ValueError("granville_binomial needs 0 <= m <= n")
    if p == 2 and q >= 3:
        raise ValueError("the sign rule differs for p = 2, q >= 3; not supported")
    r = n - m
    mod = p**q
    flags = _carry_flags(m, r, p)
    e0 = sum(flags)
    e_tail = sum(flags[q - 1 :])
    num, den = 1, 1
    j = 0
    while n // p**j:
        pj = p**j
        num = num * generalized_factorial_p(n // pj % mod, p, mod) % mod
        den = den * generalized_factorial_p(m // pj % mod, p, mod) % mod
        den = den * generalized_factorial_p(r // pj % mod, p, mod) % mod
        j += 1
    # den is a product of units, so the inverse always exists.
    unit = num * pow(den, -1, mod) % mod
    if e_tail % 2:
        unit = -unit % mod
    return e0, unit


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def wolstenholme_check(p: int) -> bool:
    """True iff p**2 divides the numerator of H_{p-1}."""
    _check_prime(p)
    if p <= 3:
        raise ValueError("Wolstenholme's congruence needs p > 3")
    return ord_p(harmonic(p - 1).numerator, p) >= 2


def morley_check(p: int, modulus_exponent: int = 2) -> bool:
    """(-1)**((p-1)/2) C(p-1, (p-1)/2) == 4**(p-1) mod p**modulus_exponent."""
    _check_prime(p)
    if p <= 3:
        raise ValueError("Morley's congruence needs p > 3")
    mod = p**modulus_exponent
    h = (p - 1) // 2
    lhs = (-1) ** h * binomial(p - 1, h)
    return (lhs - pow(2, 2 * (p - 1), mod)) % mod == 0


def mod_rational(x: Rational, modulus: int) -> int:
    """Reduce a rational with denominator prime to ``modulus``."""
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def congruent(a: Rational, b: Rational, modulus: int) -> bool:
    return mod_rational(Fraction(a) - Fraction(b), modulus) == 0


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        qt, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - qt * x1
        y0, y1 = y1, y0 - qt * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def bezout(values: list[int]) -> tuple[int, list[int]]:
    """Fold ext_gcd left to right; returns (g, coeffs) with sum c_i v_i = g."""
    if not values:
        raise ValueError("bezout needs at least one value")
    g, coeffs = values[0], [1]
    if g < 0:
        g, coeffs = -g, [-1]
    for v in values[1:]:
        g, x, y = ext_gcd(g, v)
        coeffs = [c * x for c in coeffs] + [y]
    return g, coeffs


def named_congruences(p: int, exponents=(1, 2, 3)) -> list[tuple[str, bool]]:
    """The mod-p^2 binomial congruences used for the GCD and N arguments."""
    _check_prime(p)
    mod = p * p
    F = Fraction
    checks = [
        (f"C(p+1,2)-C(p+1,4) = 5p/12, p={p}", binomial(p + 1, 2) - binomial(p + 1, 4), F(5 * p, 12)),
        (f"C(2p,2)-C(2p,4) = -p/2, p={p}", binomial(2 * p, 2) - binomial(2 * p, 4), F(-p, 2)),
        (f"C(p^2+p,2)-C(p^2+p,4) = -p/4, p={p}", binomial(p * p + p, 2) - binomial(p * p + p, 4), F(-p, 4)),
        (f"C(p-1,4) = 1-25p/12, p={p}", binomial(p - 1, 4), 1 - F(25 * p, 12)),
    ]
    for i in exponents:
        q = p**i
        checks.append((f"C(p^{i}-1,2) = 1-3p^{i}/2, p={p}", binomial(q - 1, 2), 1 - F(3 * q, 2)))
        if i >= 2:
            checks.append(
                (f"C(p^{i}-1,p^{i - 1}+p^{i - 2}) = 1-p, p={p}", binomial(q - 1, p ** (i - 1) + p ** (i - 2)), F(1 - p))
            )
    return [(label, congruent(lhs, rhs, mod)) for label, lhs, rhs in checks]
