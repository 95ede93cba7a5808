"""Sparse multivariate matrix polynomials with exact rational coefficients.

A :class:`MatPoly` maps exponent tuples to nonzero ``t x t`` coefficient
matrices. Scalar polynomials are the ``t = 1`` case.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import DegreeExceeded, DimensionMismatch, ZeroPolynomial
from .linalg import Matrix, identity, is_zero, mat_add, mat_scale, to_fraction, to_matrix, zeros

MultiIndex = tuple[int, ...]


def compositions(total: int, parts: int):
    """Exponent tuples of length ``parts`` summing to ``total``, lexicographically."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class MatPoly:
    """Immutable sparse matrix polynomial ``sum_alpha A_alpha X^alpha``."""

    __slots__ = ("nvars", "size", "_terms")

    def __init__(self, nvars: int, size: int, terms: Mapping[Sequence[int], Iterable] | None = None):
        if nvars < 0 or size < 1:
            raise ValueError("need nvars >= 0 and size >= 1")
        self.nvars = nvars
        self.size = size
        clean: dict[MultiIndex, Matrix] = {}
        for alpha, coef in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != nvars or any(a < 0 for a in alpha):
                raise DimensionMismatch(f"bad exponent {alpha} for {nvars} variables")
            m = to_matrix(coef)
            if len(m) != size:
                raise DimensionMismatch(f"coefficient of size {len(m)} in a size-{size} polynomial")
            if alpha in clean:
                m = mat_add(clean[alpha], m)
            clean[alpha] = m
        self._terms = {a: m for a, m in sorted(clean.items()) if not is_zero(m)}

    @classmethod
    def _raw(cls, nvars: int, size: int, terms: dict[MultiIndex, Matrix]) -> "MatPoly":
        # trusted constructor: terms already validated, nonzero, exact
        p = cls.__new__(cls)
        p.nvars, p.size = nvars, size
        p._terms = dict(sorted(terms.items()))
        return p

    # construction helpers

    @classmethod
    def zero(cls, nvars: int, size: int) -> "MatPoly":
        return cls._raw(nvars, size, {})

    @classmethod
    def constant(cls, matrix, nvars: int) -> "MatPoly":
        m = to_matrix(matrix)
        return cls(nvars, len(m), {(0,) * nvars: m})

    @classmethod
    def monomial(cls, alpha: Sequence[int], matrix) -> "MatPoly":
        m = to_matrix(matrix)
        return cls(len(alpha), len(m), {tuple(alpha): m})

    @classmethod
    def scalar(cls, nvars: int, coeffs: Mapping[Sequence[int], object]) -> "MatPoly":
        return cls(nvars, 1, {a: ((to_fraction(c),),) for a, c in coeffs.items()})

    @classmethod
    def univariate(cls, coeffs: Sequence) -> "MatPoly":
        """Build ``sum_i coeffs[i] x^i``; entries are matrices (or scalars for t = 1)."""
        mats = [c if isinstance(c, (tuple, list)) else ((c,),) for c in coeffs]
        size = len(mats[0]) if mats else 1
        return cls(1, size, {(i,): m for i, m in enumerate(mats)})

    # accessors

    @property
    def terms(self) -> dict[MultiIndex, Matrix]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, alpha: Sequence[int]) -> Matrix:
        return self._terms.get(tuple(alpha), zeros(self.size))

    def scalar_coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self.coefficient(alpha)[0][0]

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int | None:
        """Total degree, or ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(a) for a in self._terms)

    def var_degrees(self) -> tuple[int, ...]:
        """Per-variable degrees (all zero for the zero polynomial)."""
        degs = [0] * self.nvars
        for alpha in self._terms:
            for i, a in enumerate(alpha):
                degs[i] = max(degs[i], a)
        return tuple(degs)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatPoly):
            return NotImplemented
        return (self.nvars, self.size, self._terms) == (other.nvars, other.size, other._terms)

    def __hash__(self) -> int:
        return hash((self.nvars, self.size, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"MatPoly(nvars={self.nvars}, size={self.size}, terms={self._terms!r})"

    # arithmetic

    def _check_compatible(self, other: "MatPoly") -> None:
        if self.nvars != other.nvars or self.size != other.size:
            raise DimensionMismatch(
                f"({self.nvars} vars, size {self.size}) vs ({other.nvars} vars, size {other.size})"
            )

    def __add__(self, other: "MatPoly") -> "MatPoly":
        self._check_compatible(other)
        out = dict(self._terms)
        for alpha, m in other._terms.items():
            s = mat_add(out[alpha], m) if alpha in out else m
            if is_zero(s):
                out.pop(alpha, None)
            else:
                out[alpha] = s
        return MatPoly._raw(self.nvars, self.size, out)

    def __neg__(self) -> "MatPoly":
        return self.scale(-1)

    def __sub__(self, other: "MatPoly") -> "MatPoly":
        return self + (-other)

    def scale(self, c) -> "MatPoly":
        c = to_fraction(c)
        if c == 0:
            return MatPoly.zero(self.nvars, self.size)
        return MatPoly._raw(self.nvars, self.size, {a: mat_scale(c, m) for a, m in self._terms.items()})

    def evaluate(self, point: Sequence) -> Matrix:
        return evaluate(self, point)


def add(f: MatPoly, g: MatPoly) -> MatPoly:
    return f + g


def degree(f: MatPoly) -> int | None:
    return f.degree()


def leading_coefficient_univariate(f: MatPoly) -> Matrix:
    if f.nvars != 1:
        raise DimensionMismatch("leading coefficient is defined for univariate polynomials")
    d = f.degree()
    if d is None:
        raise ZeroPolynomial("zero polynomial has no leading coefficient")
    return f.coefficient((d,))


def mul_scalar_poly(p: MatPoly, f: MatPoly) -> MatPoly:
    """Product of a scalar polynomial ``p`` with a matrix polynomial ``f``."""
    if p.size != 1:
        raise DimensionMismatch("first factor must be a scalar polynomial")
    if p.nvars != f.nvars:
        raise DimensionMismatch(f"{p.nvars} vs {f.nvars} variables")
    t = f.size
    acc: dict[MultiIndex, list[list[Fraction]]] = {}
    for beta, pc in p.items():
        c = pc[0][0]
        for gamma, m in f.items():
            alpha = tuple(b + g for b, g in zip(beta, gamma))
            cell = acc.get(alpha)
            if cell is None:
                acc[alpha] = [[c * x for x in row] for row in m]
            else:
                for i in range(t):
                    ci, mi = cell[i], m[i]
                    for j in range(t):
                        ci[j] += c * mi[j]
    out = {}
    for alpha, cell in acc.items():
        m = tuple(tuple(row) for row in cell)
        if not is_zero(m):
            out[alpha] = m
    return MatPoly._raw(f.nvars, t, out)


def scalar_mul(p: MatPoly, q: MatPoly) -> MatPoly:
    return mul_scalar_poly(p, q)


def scalar_pow(p: MatPoly, k: int) -> MatPoly:
    out = MatPoly.scalar(p.nvars, {(0,) * p.nvars: 1})
    for _ in range(k):
        out = mul_scalar_poly(p, out)
    return out


def evaluate(f: MatPoly, point: Sequence) -> Matrix:
    if len(point) != f.nvars:
        raise DimensionMismatch(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    x = [to_fraction(c) for c in point]
    t = f.size
    acc = [[Fraction(0)] * t for _ in range(t)]
    for alpha, m in f.items():
        w = Fraction(1)
        for xi, ai in zip(x, alpha):
            if ai:
                w *= xi**ai
        if w == 0:
            continue
        for i in range(t):
            row, mi = acc[i], m[i]
            for j in range(t):
                row[j] += w * mi[j]
    return tuple(tuple(row) for row in acc)


def _linear(nvars: int, var: int, a, b) -> MatPoly:
    e = [0] * nvars
    e[var] = 1
    return MatPoly.scalar(nvars, {(0,) * nvars: b, tuple(e): a})


def substitute_affine(f: MatPoly, var: int, a, b) -> MatPoly:
    """Replace ``X_var`` by ``a * X_var + b`` and expand."""
    if not 0 <= var < f.nvars:
        raise IndexError(f"variable {var} out of range")
    lin = _linear(f.nvars, var, a, b)
    powers = [MatPoly.scalar(f.nvars, {(0,) * f.nvars: 1})]
    out = MatPoly.zero(f.nvars, f.size)
    for alpha, m in f.items():
        k = alpha[var]
        while len(powers) <= k:
            powers.append(mul_scalar_poly(lin, powers[-1]))
        rest = list(alpha)
        rest[var] = 0
        out = out + mul_scalar_poly(powers[k], MatPoly._raw(f.nvars, f.size, {tuple(rest): m}))
    return out


def goursat_transform(f: MatPoly) -> MatPoly:
    """``(1+x)^d F((1-x)/(1+x))`` computed as ``sum_i F_i (1-x)^i (1+x)^(d-i)``."""
    if f.nvars != 1:
        raise DimensionMismatch("Goursat transform is univariate")
    d = f.degree()
    if d is None:
        raise ZeroPolynomial("Goursat transform of the zero polynomial")
    out = MatPoly.zero(1, f.size)
    for (i,), m in f.items():
        basis = expand_linear_factor_product(1, (d - i, i))
        out = out + mul_scalar_poly(basis, MatPoly._raw(1, f.size, {(0,): m}))
    return out


def homogenize_univariate(g: MatPoly, total_degree: int) -> MatPoly:
    """Two-variable form ``sum_i G_i x^i y^(D-i)``, variables ordered ``(x, y)``."""
    if g.nvars != 1:
        raise DimensionMismatch("expected a univariate polynomial")
    d = g.degree()
    if d is not None and d > total_degree:
        raise DegreeExceeded(f"degree {d} exceeds requested {total_degree}")
    return MatPoly._raw(2, g.size, {(i, total_degree - i): m for (i,), m in g.items()})


def multihomogenize(f: MatPoly, degrees: Sequence[int]) -> MatPoly:
    """Substitute ``X_i = U_i - V_i`` and pad each term by ``(U_i + V_i)^(D_i - beta_i)``.

    The result has ``2n`` variables ordered ``(U_1, V_1, ..., U_n, V_n)`` and is
    homogeneous of degree ``D_i`` in each pair.
    """
    n = f.nvars
    if len(degrees) != n:
        raise DimensionMismatch("one degree bound per variable")
    vd = f.var_degrees()
    for i in range(n):
        if vd[i] > degrees[i]:
            raise DegreeExceeded(f"variable {i} has degree {vd[i]} > {degrees[i]}")
    out = MatPoly.zero(2 * n, f.size)
    for beta, m in f.items():
        acc = MatPoly._raw(2 * n, f.size, {(0,) * (2 * n): m})
        for i, b in enumerate(beta):
            acc = mul_scalar_poly(_pair_power(n, i, b, degrees[i] - b), acc)
        out = out + acc
    return out


def _pair_power(n: int, i: int, minus: int, plus: int) -> MatPoly:
    # (U_i - V_i)^minus (U_i + V_i)^plus in 2n variables
    coeffs: dict[MultiIndex, Fraction] = {}
    for j in range(minus + 1):
        cj = comb(minus, j) * (-1) ** j  # U^(minus-j) (-V)^j
        for k in range(plus + 1):
            e = [0] * (2 * n)
            e[2 * i] = minus - j + plus - k
            e[2 * i + 1] = j + k
            key = tuple(e)
            coeffs[key] = coeffs.get(key, 0) + cj * comb(plus, k)
    return MatPoly.scalar(2 * n, coeffs)


def dehomogenize_back(h: MatPoly) -> MatPoly:
    """Substitute ``U_i = (1+X_i)/2`` and ``V_i = (1-X_i)/2``."""
    if h.nvars % 2:
        raise DimensionMismatch("expected an even number of variables (U_i, V_i pairs)")
    n = h.nvars // 2
    out = MatPoly.zero(n, h.size)
    cache: dict[MultiIndex, MatPoly] = {}
    for alpha, m in h.items():
        basis = cache.get(alpha)
        if basis is None:
            basis = expand_linear_factor_product(n, alpha).scale(Fraction(1, 2 ** sum(alpha)))
            cache[alpha] = basis
        out = out + mul_scalar_poly(basis, MatPoly._raw(n, h.size, {(0,) * n: m}))
    return out


def expand_linear_factor_product(n: int, alpha: Sequence[int]) -> MatPoly:
    """Expand ``prod_i (1 + X_i)^alpha[2i] (1 - X_i)^alpha[2i+1]`` by direct multiplication."""
    if len(alpha) != 2 * n:
        raise DimensionMismatch(f"need {2 * n} exponents, got {len(alpha)}")
    out = MatPoly.scalar(n, {(0,) * n: 1})
    for i in range(n):
        out = mul_scalar_poly(_binomial_product(n, i, alpha[2 * i], alpha[2 * i + 1]), out)
    return out


def _binomial_product(n: int, i: int, plus: int, minus: int) -> MatPoly:
    # (1 + X_i)^plus (1 - X_i)^minus as a scalar polynomial in n variables
    coeffs = [Fraction(0)] * (plus + minus + 1)
    for a in range(plus + 1):
        for b in range(minus + 1):
            coeffs[a + b] += comb(plus, a) * comb(minus, b) * (-1) ** b
    terms = {}
    for k, c in enumerate(coeffs):
        e = [0] * n
        e[i] = k
        terms[tuple(e)] = c
    return MatPoly.scalar(n, terms)


def unit_interval_basis(a: int, b: int) -> MatPoly:
    """``x^a (1 - x)^b`` as a univariate scalar polynomial."""
    return mul_scalar_poly(
        MatPoly.scalar(1, {(a,): 1}), expand_linear_factor_product(1, (0, b))
    )


def as_constant(matrix: Matrix, nvars: int) -> MatPoly:
    return MatPoly._raw(nvars, len(matrix), {} if is_zero(matrix) else {(0,) * nvars: matrix})


def identity_poly(nvars: int, size: int) -> MatPoly:
    return as_constant(identity(size), nvars)
