"""Search for and verify Bernstein / Handelman positivity certificates.

A certificate writes a symmetric matrix polynomial ``F`` as a finite sum of
positive definite constant matrices times products of the domain's
nonnegative linear forms. Every certificate returned here has already been
verified by exact reconstruction, so search heuristics never affect
soundness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    CertificateInvalid,
    CertificateNotFound,
    DimensionMismatch,
    NotPositiveOnDomain,
    NotSymmetric,
)
from .linalg import Matrix, Witness, is_pd, is_symmetric, mat_scale
from .matpoly import (
    MatPoly,
    MultiIndex,
    as_constant,
    compositions,
    evaluate,
    expand_linear_factor_product,
    goursat_transform,
    homogenize_univariate,
    mul_scalar_poly,
    multihomogenize,
    substitute_affine,
    unit_interval_basis,
)

INTERVAL = "interval"
UNIT_INTERVAL = "unit-interval"
HYPERCUBE = "hypercube"
KINDS = (INTERVAL, UNIT_INTERVAL, HYPERCUBE)

DEFAULT_N_MAX = 64
DEFAULT_GRID = 33


@dataclass(frozen=True)
class Domain:
    kind: str
    nvars: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}; expected one of {KINDS}")
        if self.nvars < 1:
            raise ValueError("domain needs at least one variable")
        if self.kind != HYPERCUBE and self.nvars != 1:
            raise ValueError(f"{self.kind} domain is univariate")

    @property
    def bounds(self) -> tuple[Fraction, Fraction]:
        return (Fraction(0), Fraction(1)) if self.kind == UNIT_INTERVAL else (Fraction(-1), Fraction(1))

    def contains(self, point: Sequence) -> bool:
        lo, hi = self.bounds
        return len(point) == self.nvars and all(lo <= Fraction(x) <= hi for x in point)

    def center(self) -> tuple[Fraction, ...]:
        lo, hi = self.bounds
        return ((lo + hi) / 2,) * self.nvars

    def axis_grid(self, m: int) -> list[Fraction]:
        """``m`` equispaced points per axis, endpoints included, plus the midpoint."""
        if m < 2:
            raise ValueError("grid needs at least 2 points per axis")
        lo, hi = self.bounds
        pts = {lo + (hi - lo) * Fraction(k, m - 1) for k in range(m)}
        pts.add((lo + hi) / 2)
        return sorted(pts)

    def basis(self, alpha: Sequence[int]) -> MatPoly:
        """Product of linear forms indexed by ``alpha`` (length ``2n``)."""
        if len(alpha) != 2 * self.nvars:
            raise DimensionMismatch(f"alpha must have length {2 * self.nvars}")
        if self.kind == UNIT_INTERVAL:
            return unit_interval_basis(alpha[0], alpha[1])
        return expand_linear_factor_product(self.nvars, alpha)


@dataclass(frozen=True)
class DomainViolation:
    point: tuple[Fraction, ...]
    witness: Witness

    def point_str(self) -> str:
        return "(" + ", ".join(str(x) for x in self.point) + ")"


@dataclass(frozen=True)
class Certificate:
    domain: Domain
    size: int
    terms: tuple[tuple[MultiIndex, Matrix], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(sorted((tuple(a), g) for a, g in self.terms)))

    def reconstruct(self) -> MatPoly:
        out = MatPoly.zero(self.domain.nvars, self.size)
        for alpha, g in self.terms:
            out = out + mul_scalar_poly(self.domain.basis(alpha), as_constant(g, self.domain.nvars))
        return out

    def order(self) -> int:
        """Largest total exponent ``N + d`` appearing among the terms."""
        return max((sum(a) for a, _ in self.terms), default=0)

    def polya_exponent(self, f: MatPoly) -> int:
        return self.order() - (f.degree() or 0)


@dataclass(frozen=True)
class PolyaResult:
    N: int
    coefficients: MatPoly


@dataclass(frozen=True)
class Verification:
    holds: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.holds


# Polya loop


def _multiplier_groups(mult: MatPoly) -> list[list[int]]:
    """Recover the variable groups of ``prod_g (sum_{j in g} z_j)``."""
    n = mult.nvars
    support = [alpha for alpha, _ in mult.items()]
    if not support or any(mult.scalar_coefficient(a) != 1 or max(a) > 1 for a in support):
        raise ValueError("multiplier must be a product of sums of distinct variables")
    together = [set() for _ in range(n)]
    for alpha in support:
        on = [i for i, a in enumerate(alpha) if a]
        for i in on:
            together[i].update(on)
    groups: list[list[int]] = []
    seen: set[int] = set()
    for j in range(n):
        if j in seen:
            continue
        if not together[j]:
            raise ValueError(f"variable {j} does not occur in the multiplier")
        g = [i for i in range(n) if together[i] and (i == j or i not in together[j])]
        seen.update(g)
        groups.append(g)
    expected = {}
    for pick in itertools.product(*groups):
        e = [0] * n
        for i in pick:
            e[i] += 1
        expected[tuple(e)] = expected.get(tuple(e), 0) + 1
    if MatPoly.scalar(n, expected) != mult:
        raise ValueError("multiplier must be a product of sums of disjoint variable groups")
    return groups


def _group_degrees(h: MatPoly, groups: list[list[int]]) -> list[int]:
    degs = None
    for alpha, _ in h.items():
        d = [sum(alpha[i] for i in g) for g in groups]
        if degs is None:
            degs = d
        elif d != degs:
            raise ValueError("polynomial is not homogeneous in the multiplier's variable groups")
    return degs or [0] * len(groups)


def _full_support(nvars: int, groups: list[list[int]], degs: list[int]) -> list[MultiIndex]:
    per_group = [list(compositions(d, len(g))) for g, d in zip(groups, degs)]
    out = []
    for choice in itertools.product(*per_group):
        e = [0] * nvars
        for g, comp in zip(groups, choice):
            for i, c in zip(g, comp):
                e[i] = c
        out.append(tuple(e))
    return sorted(out)


def polya_loop(h: MatPoly, multiplier: MatPoly, n_max: int = DEFAULT_N_MAX) -> PolyaResult:
    """Multiply ``h`` by ``multiplier`` until every coefficient is positive definite.

    Every monomial of the right multidegree must be present; an absent
    monomial has the zero matrix as coefficient and fails the test.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if multiplier.nvars != h.nvars:
        raise DimensionMismatch("multiplier and polynomial have different variable counts")
    groups = _multiplier_groups(multiplier)
    degs = _group_degrees(h, groups)
    current = h
    bad_alpha, bad_coef = None, None
    for n in range(n_max + 1):
        bad_alpha = None
        for alpha in _full_support(h.nvars, groups, [d + n for d in degs]):
            coef = current.coefficient(alpha)
            if not is_pd(coef):
                bad_alpha, bad_coef = alpha, coef
                break
        if bad_alpha is None:
            return PolyaResult(n, current)
        if n < n_max:
            current = mul_scalar_poly(multiplier, current)
    raise CertificateNotFound(n_max, bad_alpha, bad_coef)


def pair_sum_multiplier(npairs: int) -> MatPoly:
    """``prod_i (U_i + V_i)`` in ``2 * npairs`` variables."""
    coeffs = {}
    for pick in itertools.product((0, 1), repeat=npairs):
        e = [0] * (2 * npairs)
        for i, p in enumerate(pick):
            e[2 * i + p] = 1
        coeffs[tuple(e)] = 1
    return MatPoly.scalar(2 * npairs, coeffs)


# grid fast-fail


def find_violation(f: MatPoly, domain: Domain, grid_points_per_axis: int = DEFAULT_GRID) -> DomainViolation | None:
    """First grid point (lexicographic) where ``f`` is not positive definite.

    A ``None`` result is only the absence of evidence, never a positivity proof.
    """
    if f.nvars != domain.nvars:
        raise DimensionMismatch("polynomial and domain have different variable counts")
    axis = domain.axis_grid(grid_points_per_axis)
    for point in itertools.product(axis, repeat=domain.nvars):
        dec = is_pd(evaluate(f, point))
        if not dec:
            return DomainViolation(tuple(point), dec.witness)
    return None


def _check_point(f: MatPoly, point) -> None:
    dec = is_pd(evaluate(f, point))
    if not dec:
        raise NotPositiveOnDomain(DomainViolation(tuple(Fraction(x) for x in point), dec.witness))


def _fast_fail(f: MatPoly, domain: Domain, grid: int | None) -> None:
    _check_point(f, domain.center())
    if grid is not None:
        v = find_violation(f, domain, grid)
        if v is not None:
            raise NotPositiveOnDomain(v)


def _require_symmetric(f: MatPoly) -> None:
    for alpha, m in f.items():
        if not is_symmetric(m):
            raise NotSymmetric(f"coefficient of {alpha} is not symmetric")


def _checked(cert: Certificate, f: MatPoly) -> Certificate:
    v = verify_certificate(cert, f)
    if not v:
        raise CertificateInvalid(f"internal error, constructed certificate fails: {v.reason}")
    return cert


# certifiers


def certify_interval(f: MatPoly, n_max: int = DEFAULT_N_MAX, grid: int | None = DEFAULT_GRID) -> Certificate:
    """Certificate ``F = sum_i G_i (1+x)^a_i (1-x)^b_i`` on ``[-1, 1]``.

    Goursat transform, homogenize, run the Polya loop with ``x + y``, then
    rescale the coefficients by ``2^-(N+d)``.
    """
    if f.nvars != 1:
        raise DimensionMismatch("interval certificates need a univariate polynomial")
    _require_symmetric(f)
    domain = Domain(INTERVAL)
    _fast_fail(f, domain, grid)
    d = f.degree()
    if d == 0:
        return _checked(Certificate(domain, f.size, (((0, 0), f.coefficient((0,))),)), f)
    _check_point(f, (-1,))
    h = homogenize_univariate(goursat_transform(f), d)
    res = polya_loop(h, MatPoly.scalar(2, {(1, 0): 1, (0, 1): 1}), n_max)
    top = res.N + d
    scale = Fraction(1, 2**top)
    # t^k pairs with (1 - x)^k (1 + x)^(top - k)
    terms = tuple(((l, k), mat_scale(scale, m)) for (k, l), m in res.coefficients.items())
    return _checked(Certificate(domain, f.size, terms), f)


def certify_unit_interval(f: MatPoly, n_max: int = DEFAULT_N_MAX, grid: int | None = DEFAULT_GRID) -> Certificate:
    """Certificate ``F = sum G_i x^a_i (1-x)^b_i`` on ``[0, 1]`` via ``x = (y+1)/2``."""
    if f.nvars != 1:
        raise DimensionMismatch("unit-interval certificates need a univariate polynomial")
    _require_symmetric(f)
    domain = Domain(UNIT_INTERVAL)
    _fast_fail(f, domain, grid)
    g = substitute_affine(f, 0, Fraction(1, 2), Fraction(1, 2))
    try:
        inner = certify_interval(g, n_max, grid=None)
    except NotPositiveOnDomain as exc:
        y = exc.violation.point[0]
        raise NotPositiveOnDomain(DomainViolation(((y + 1) / 2,), exc.violation.witness)) from None
    # 1 + y = 2x and 1 - y = 2(1 - x)
    terms = tuple((a, mat_scale(2 ** sum(a), m)) for a, m in inner.terms)
    return _checked(Certificate(domain, f.size, terms), f)


def certify_hypercube(f: MatPoly, n_max: int = DEFAULT_N_MAX, grid: int | None = DEFAULT_GRID) -> Certificate:
    """Handelman-type certificate on ``[-1, 1]^n`` via the multihomogeneous Polya loop.

    Variables pair as ``(U_i, V_i)`` with ``X_i = U_i - V_i``; monomials
    ``prod U_i^a_i V_i^b_i`` become ``prod (1+X_i)^a_i (1-X_i)^b_i / 2^(a_i+b_i)``.
    """
    n = f.nvars
    if n < 1:
        raise DimensionMismatch("hypercube certificates need at least one variable")
    _require_symmetric(f)
    domain = Domain(HYPERCUBE, n)
    _fast_fail(f, domain, grid)
    h = multihomogenize(f, f.var_degrees())
    res = polya_loop(h, pair_sum_multiplier(n), n_max)
    terms = tuple((alpha, mat_scale(Fraction(1, 2 ** sum(alpha)), m)) for alpha, m in res.coefficients.items())
    return _checked(Certificate(domain, f.size, terms), f)


def certify(f: MatPoly, domain: Domain, n_max: int = DEFAULT_N_MAX, grid: int | None = DEFAULT_GRID) -> Certificate:
    if domain.nvars != f.nvars:
        raise DimensionMismatch("polynomial and domain have different variable counts")
    if domain.kind == INTERVAL:
        return certify_interval(f, n_max, grid)
    if domain.kind == UNIT_INTERVAL:
        return certify_unit_interval(f, n_max, grid)
    return certify_hypercube(f, n_max, grid)


def verify_certificate(cert: Certificate, f: MatPoly) -> Verification:
    """Check that every ``G`` is PD and the certificate reconstructs ``f`` exactly."""
    if cert.domain.nvars != f.nvars or cert.size != f.size:
        raise DimensionMismatch("certificate and polynomial shapes differ")
    for alpha, g in cert.terms:
        if len(g) != cert.size:
            raise DimensionMismatch(f"term {alpha} has a coefficient of the wrong size")
        if not is_symmetric(g):
            return Verification(False, f"term {alpha}: coefficient is not symmetric")
        if not is_pd(g):
            return Verification(False, f"term {alpha}: coefficient is not positive definite")
    diff = cert.reconstruct() - f
    if not diff.is_zero():
        alpha = next(iter(diff.terms))
        return Verification(False, f"reconstruction differs from the polynomial at monomial {alpha}")
    return Verification(True)

