"""Root data of F4 containing Spin(9), Weyl group closure and Euler classes.

Weights are 4-tuples of Fractions in the e1..e4 basis.  Weyl elements are
4x4 Fraction matrices acting on column vectors of coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .polyalg import E_VARS, Poly

Weight = tuple  # tuple[Fraction, Fraction, Fraction, Fraction]
Matrix = tuple  # 4 rows of 4 Fractions

HALF = Fraction(1, 2)
GROUP_SIZE_GUARD = 10_000


def weight(*coords) -> Weight:
    if len(coords) != 4:
        raise ValueError("weights have four coordinates")
    return tuple(Fraction(c) for c in coords)


def unit(i: int) -> Weight:
    return tuple(Fraction(1 if j == i else 0) for j in range(4))


def dot(a: Weight, b: Weight) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def neg(a: Weight) -> Weight:
    return tuple(-x for x in a)


def to_poly(w: Weight) -> Poly:
    """The degree-1 polynomial sum w_i e_i."""
    return Poly.linear(E_VARS, w)


# -- root data ---------------------------------------------------------------


def spin9_positive_roots() -> list[Weight]:
    """e_i and e_i -+ e_j (i < j): 16 roots."""
    roots = [unit(i) for i in range(4)]
    for i, j in itertools.combinations(range(4), 2):
        roots.append(tuple(a + b for a, b in zip(unit(i), unit(j))))
        roots.append(tuple(a - b for a, b in zip(unit(i), unit(j))))
    return roots


def complementary_roots() -> list[Weight]:
    """The eight roots (e1 +- e2 +- e3 +- e4)/2."""
    out = []
    for signs in itertools.product((1, -1), repeat=3):
        out.append(weight(HALF, *(s * HALF for s in signs)))
    return out


def simple_roots() -> list[Weight]:
    return [
        weight(0, 1, -1, 0),
        weight(0, 0, 1, -1),
        weight(0, 0, 0, 1),
        weight(HALF, -HALF, -HALF, -HALF),
    ]


def all_roots() -> list[Weight]:
    """All 48 roots of F4."""
    pos = spin9_positive_roots() + complementary_roots()
    return pos + [neg(r) for r in pos]


def spin9_roots() -> list[Weight]:
    pos = spin9_positive_roots()
    return pos + [neg(r) for r in pos]


@dataclass(frozen=True)
class RootSystemData:
    spin9_positive: tuple = field(default_factory=lambda: tuple(spin9_positive_roots()))
    complementary: tuple = field(default_factory=lambda: tuple(complementary_roots()))
    simple: tuple = field(default_factory=lambda: tuple(simple_roots()))

    @property
    def positive(self) -> tuple:
        return self.spin9_positive + self.complementary


ROOTS = RootSystemData()


# -- Weyl elements -------------------------------------------------------------


def identity() -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(4)) for i in range(4))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(4)), Fraction(0)) for j in range(4))
        for i in range(4)
    )


def apply(m: Matrix, w: Weight) -> Weight:
    return tuple(sum((m[i][k] * w[k] for k in range(4)), Fraction(0)) for i in range(4))


def transpose(m: Matrix) -> Matrix:
    return tuple(tuple(m[j][i] for j in range(4)) for i in range(4))


def reflection(root: Weight) -> Matrix:
    """Orthogonal reflection in the hyperplane perpendicular to ``root``."""
    rr = dot(root, root)
    return tuple(
        tuple(Fraction(int(i == j)) - 2 * root[i] * root[j] / rr for j in range(4))
        for i in range(4)
    )


def det(m: Matrix) -> Fraction:
    """Determinant by cofactor expansion (4x4 only needs this)."""
    rows = [list(r) for r in m]

    def rec(rows: list, cols: tuple) -> Fraction:
        if len(cols) == 1:
            return rows[0][cols[0]]
        total = Fraction(0)
        for idx, c in enumerate(cols):
            if rows[0][c]:
                rest = cols[:idx] + cols[idx + 1 :]
                total += (-1) ** idx * rows[0][c] * rec(rows[1:], rest)
        return total

    return rec(rows, tuple(range(4)))


def weyl_sign(m: Matrix) -> int:
    d = det(m)
    if d not in (1, -1):
        raise ValueError(f"matrix has determinant {d}, not a Weyl element")
    return int(d)


def is_orthogonal(m: Matrix) -> bool:
    return matmul(m, transpose(m)) == identity()


def sigma(i: int) -> Matrix:
    """Simple reflection sigma_i, i in 1..4."""
    return reflection(simple_roots()[i - 1])


def coset_reps() -> list[Matrix]:
    """Representatives 1, sigma4, sigma4 sigma3 sigma4 of W(F4)/W(Spin(9))."""
    s3, s4 = sigma(3), sigma(4)
    return [identity(), s4, matmul(matmul(s4, s3), s4)]


# The representative matrices exactly as printed, kept for cross-checks.
PRINTED_COSET_REPS = [
    identity(),
    tuple(tuple(HALF * x for x in row) for row in ((1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1))),
    tuple(tuple(HALF * x for x in row) for row in ((1, 1, 1, -1), (1, 1, -1, 1), (1, -1, 1, 1), (-1, 1, 1, 1))),
]


@lru_cache(maxsize=1)
def generate_weyl_f4() -> frozenset:
    """Closure of the four simple reflections (1152 matrices)."""
    gens = [sigma(i) for i in range(1, 5)]
    seen = {identity()}
    frontier = [identity()]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = matmul(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > GROUP_SIZE_GUARD:
                        raise RuntimeError("Weyl group closure exceeded guard; root data corrupted")
        frontier = nxt
    return frozenset(seen)


def _root_set(m: Matrix, roots: Iterable[Weight]) -> frozenset:
    return frozenset(apply(m, r) for r in roots)


def spin9_stabilizer(group: Iterable[Matrix]) -> list[Matrix]:
    """Elements mapping the Spin(9) root system onto itself."""
    target = frozenset(spin9_roots())
    return [g for g in group if _root_set(g, target) == target]


def is_signed_permutation(m: Matrix) -> bool:
    for row in m:
        nonzero = [x for x in row if x]
        if len(nonzero) != 1 or abs(nonzero[0]) != 1:
            return False
    return True


def signed_permutation_data(m: Matrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(perm, signs) with m e_j = signs[j] e_{perm[j]}."""
    perm, signs = [], []
    for j in range(4):
        col = [m[i][j] for i in range(4)]
        i = next(i for i, x in enumerate(col) if x)
        perm.append(i)
        signs.append(int(col[i]))
    return tuple(perm), tuple(signs)


def left_cosets(group: Iterable[Matrix], subgroup: Sequence[Matrix]) -> list[tuple[Matrix, list[Matrix]]]:
    """Partition ``group`` into left cosets g*H; each rep is the coset's sorted-first element."""
    remaining = set(group)
    out = []
    while remaining:
        g = min(remaining)
        coset = [matmul(g, h) for h in subgroup]
        for c in coset:
            remaining.discard(c)
        out.append((min(coset), coset))
    return out


# -- Euler classes --------------------------------------------------------------


def euler_product(roots: Sequence[Weight]) -> Poly:
    """Product of the linear forms of ``roots``."""
    acc = Poly.const(E_VARS, 1)
    for r in roots:
        acc = acc * to_poly(r)
    return acc


def act_on_poly(m: Matrix, poly: Poly) -> Poly:
    """w(f)(e) = f(w^T e): the induced action on H*(BT) sending e_j to w(e_j)."""
    from .polyalg import linear_substitute

    images = [to_poly(tuple(m[i][j] for i in range(4))) for j in range(4)]
    return linear_substitute(poly, images)
