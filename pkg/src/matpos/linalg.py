"""Exact rational dense linear algebra.

Matrices are square tuples of tuples of :class:`fractions.Fraction`. All
routines are pure and never touch floating point, so PD/PSD decisions are
exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotSymmetric

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(tuple(to_fraction(x) for x in row) for row in rows)
    if not m or any(len(row) != len(m) for row in m):
        raise DimensionMismatch("matrix must be square with size >= 1")
    return m


def sym_matrix(rows: Iterable[Iterable]) -> Matrix:
    m = to_matrix(rows)
    if not is_symmetric(m):
        raise NotSymmetric("matrix is not symmetric")
    return m


def is_symmetric(m: Matrix) -> bool:
    t = len(m)
    return all(m[i][j] == m[j][i] for i in range(t) for j in range(i + 1, t))


def zeros(t: int) -> Matrix:
    z = Fraction(0)
    return tuple((z,) * t for _ in range(t))


def identity(t: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(t)) for i in range(t))


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


def coordinate_matrix(t: int, k: int, l: int) -> Matrix:
    """The matrix unit with a 1 in row ``k``, column ``l`` (1-based)."""
    if not (1 <= k <= t and 1 <= l <= t):
        raise IndexError(f"coordinate ({k}, {l}) out of range for size {t}")
    return tuple(
        tuple(Fraction(int(i == k - 1 and j == l - 1)) for j in range(t)) for i in range(t)
    )


def _check_same(a: Matrix, b: Matrix) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"sizes {len(a)} and {len(b)} differ")


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    _check_same(a, b)
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    _check_same(a, b)
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    _check_same(a, b)
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def outer(v: Sequence[Fraction]) -> Matrix:
    return tuple(tuple(Fraction(x) * Fraction(y) for y in v) for x in v)


def trace(m: Matrix) -> Fraction:
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def trace_product(a: Matrix, b: Matrix) -> Fraction:
    """tr(A B) without forming the product."""
    _check_same(a, b)
    t = len(a)
    return sum((a[i][j] * b[j][i] for i in range(t) for j in range(t)), Fraction(0))


def quadratic_form(m: Matrix, v: Sequence[Fraction]) -> Fraction:
    t = len(m)
    if len(v) != t:
        raise DimensionMismatch("vector length does not match matrix size")
    return sum((v[i] * m[i][j] * v[j] for i in range(t) for j in range(t) if v[i] and v[j]), Fraction(0))


@dataclass(frozen=True)
class Witness:
    """A nonzero vector v with v^T M v = value <= 0."""

    vector: Vector
    value: Fraction


@dataclass(frozen=True)
class Decision:
    holds: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.holds


_YES = Decision(True)


def is_pd(m: Matrix) -> Decision:
    """Decide positive definiteness by unpivoted symmetric elimination.

    The matrix is PD iff every pivot of its LDL^T factorization is strictly
    positive. At the first pivot ``d <= 0`` (index ``k``) the vector solving
    ``L^T v = e_k`` on the leading block gives ``v^T M v = d``.
    """
    if not is_symmetric(m):
        raise NotSymmetric("is_pd expects a symmetric matrix")
    t = len(m)
    a = [list(row) for row in m]
    lower = [[Fraction(0)] * t for _ in range(t)]
    for k in range(t):
        d = a[k][k]
        if d <= 0:
            # back-substitute the unit lower factor of the leading (k+1) block
            v = [Fraction(0)] * t
            v[k] = Fraction(1)
            for i in range(k - 1, -1, -1):
                v[i] = -sum((lower[j][i] * v[j] for j in range(i + 1, k + 1)), Fraction(0))
            return Decision(False, Witness(tuple(v), quadratic_form(m, v)))
        for i in range(k + 1, t):
            lower[i][k] = a[i][k] / d
        for i in range(k + 1, t):
            if a[i][k] == 0:
                continue
            f = lower[i][k]
            for j in range(k + 1, t):
                a[i][j] -= f * a[k][j]
    return _YES


def is_psd(m: Matrix) -> Decision:
    """Decide positive semidefiniteness exactly.

    Repeatedly eliminates a positive diagonal pivot and recurses on the Schur
    complement. Reduced-coordinate witnesses are lifted back so that the
    returned vector refers to the original matrix.
    """
    if not is_symmetric(m):
        raise NotSymmetric("is_psd expects a symmetric matrix")
    t = len(m)
    a = [list(row) for row in m]
    active = list(range(t))
    # each entry: (pivot index, {other index: a[p][other] / a[p][p]}) in elimination order
    eliminated: list[tuple[int, dict[int, Fraction]]] = []

    def lift(local: dict[int, Fraction]) -> Witness:
        v = dict(local)
        for p, ratios in reversed(eliminated):
            v[p] = -sum((r * v.get(j, Fraction(0)) for j, r in ratios.items()), Fraction(0))
        vec = tuple(v.get(i, Fraction(0)) for i in range(t))
        return Witness(vec, quadratic_form(m, vec))

    while active:
        neg = next((i for i in active if a[i][i] < 0), None)
        if neg is not None:
            return Decision(False, lift({neg: Fraction(1)}))
        pivot = next((i for i in active if a[i][i] > 0), None)
        if pivot is None:
            for x in active:
                for y in active:
                    if x < y and a[x][y] != 0:
                        sign = 1 if a[x][y] > 0 else -1
                        return Decision(False, lift({x: Fraction(1), y: Fraction(-sign)}))
            return _YES
        active.remove(pivot)
        d = a[pivot][pivot]
        ratios = {j: a[pivot][j] / d for j in active if a[pivot][j] != 0}
        for i, ri in ratios.items():
            for j in active:
                a[i][j] -= ri * a[pivot][j]
        eliminated.append((pivot, ratios))
    return _YES


def format_matrix(m: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in m) + "]"
