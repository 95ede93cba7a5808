"""Tracial moment machinery for finitely-atomic matrix-valued measures.

The trace conditions ``tr(G T) >= 0 for every PD G`` are checked as a
single exact PSD test on the localization matrix ``T``: for symmetric ``T``
the two statements are equivalent. A passing check only means there is no
obstruction up to the checked level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .certify import HYPERCUBE, INTERVAL, UNIT_INTERVAL, Certificate, Domain, verify_certificate
from .errors import AtomOutsideDomain, CertificateInvalid, DimensionMismatch, LevelTooHigh, NotSymmetric
from .linalg import (
    Matrix,
    Witness,
    identity,
    is_psd,
    is_symmetric,
    mat_add,
    mat_scale,
    outer,
    quadratic_form,
    sym_matrix,
    to_fraction,
    trace,
    trace_product,
    zeros,
)
from .matpoly import MatPoly, MultiIndex, compositions, evaluate, expand_linear_factor_product


def graded_indices(nvars: int, level: int) -> list[MultiIndex]:
    """All multi-indices with ``|alpha| <= level``, by degree then lexicographically."""
    out = []
    for d in range(level + 1):
        out.extend(compositions(d, nvars))
    return out


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite sum of point masses with PSD matrix weights."""

    nvars: int
    size: int
    atoms: tuple[tuple[tuple[Fraction, ...], Matrix], ...]

    def __post_init__(self):
        clean = []
        for point, weight in self.atoms:
            point = tuple(to_fraction(x) for x in point)
            weight = sym_matrix(weight)
            if len(point) != self.nvars or len(weight) != self.size:
                raise DimensionMismatch("atom shape does not match the measure")
            dec = is_psd(weight)
            if not dec:
                raise ValueError(f"atom weight at {point} is not positive semidefinite")
            clean.append((point, weight))
        object.__setattr__(self, "atoms", tuple(clean))

    def total_mass(self) -> Matrix:
        out = zeros(self.size)
        for _, w in self.atoms:
            out = mat_add(out, w)
        return out


@dataclass(frozen=True)
class MomentSeq:
    """Truncated sequence of symmetric matrices ``S_alpha``, complete up to ``level``."""

    nvars: int
    size: int
    level: int
    S: Mapping[MultiIndex, Matrix]

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be nonnegative")
        clean = {}
        for alpha, m in self.S.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.nvars or any(a < 0 for a in alpha):
                raise DimensionMismatch(f"bad index {alpha}")
            if sum(alpha) > self.level:
                raise LevelTooHigh(f"index {alpha} is beyond level {self.level}")
            m = sym_matrix(m)
            if len(m) != self.size:
                raise DimensionMismatch(f"S{alpha} has the wrong size")
            clean[alpha] = m
        missing = [a for a in graded_indices(self.nvars, self.level) if a not in clean]
        if missing:
            raise ValueError(f"sequence incomplete: missing S{missing[0]} (and {len(missing) - 1} more)")
        object.__setattr__(self, "S", dict(sorted(clean.items(), key=lambda kv: (sum(kv[0]), kv[0]))))

    def __getitem__(self, alpha: Sequence[int]) -> Matrix:
        alpha = tuple(alpha)
        if sum(alpha) > self.level:
            raise LevelTooHigh(f"S{alpha} needs level {sum(alpha)}, sequence has {self.level}")
        return self.S[alpha]

    def scale(self, c) -> "MomentSeq":
        return MomentSeq(self.nvars, self.size, self.level, {a: mat_scale(c, m) for a, m in self.S.items()})


@dataclass(frozen=True)
class Failure:
    index: tuple[int, ...]
    matrix: Matrix
    witness: Witness


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    level_checked: int
    first_failure: Failure | None = None


def moment_seq_from_atomic(measure: AtomicMeasure, level: int) -> MomentSeq:
    """``S_alpha = sum_atoms point^alpha * weight`` for every ``|alpha| <= level``."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    seq = {}
    for alpha in graded_indices(measure.nvars, level):
        acc = zeros(measure.size)
        for point, weight in measure.atoms:
            w = Fraction(1)
            for x, a in zip(point, alpha):
                w *= x**a
            if w:
                acc = mat_add(acc, mat_scale(w, weight))
        seq[alpha] = acc
    return MomentSeq(measure.nvars, measure.size, level, seq)


def _check_poly(nvars: int, size: int, f: MatPoly) -> None:
    if f.nvars != nvars or f.size != size:
        raise DimensionMismatch(f"polynomial is ({f.nvars} vars, size {f.size}), expected ({nvars}, {size})")


def tracial_integral(measure: AtomicMeasure, f: MatPoly) -> Fraction:
    _check_poly(measure.nvars, measure.size, f)
    return sum((trace_product(evaluate(f, p), w) for p, w in measure.atoms), Fraction(0))


def riesz_eval(seq: MomentSeq, f: MatPoly) -> Fraction:
    """Riesz functional ``sum_alpha tr(F_alpha S_alpha)``."""
    _check_poly(seq.nvars, seq.size, f)
    d = f.degree()
    if d is not None and d > seq.level:
        raise LevelTooHigh(f"polynomial degree {d} exceeds sequence level {seq.level}")
    return sum((trace_product(m, seq[alpha]) for alpha, m in f.items()), Fraction(0))


def _combine(seq: MomentSeq, coeffs: Iterable[tuple[MultiIndex, Fraction]]) -> Matrix:
    out = zeros(seq.size)
    for alpha, c in coeffs:
        if c:
            out = mat_add(out, mat_scale(c, seq[alpha]))
    return out


def _need(seq: MomentSeq, nvars: int, level: int) -> None:
    if seq.nvars != nvars:
        raise DimensionMismatch(f"expected a sequence in {nvars} variable(s), got {seq.nvars}")
    if level > seq.level:
        raise LevelTooHigh(f"level {level} exceeds stored level {seq.level}")


def interval_localization_matrix(seq: MomentSeq, k: int, l: int) -> Matrix:
    """``sum_{i,j} (-1)^j C(k,i) C(l,j) S_{i+j}``, the pairing of ``S`` with ``(1+x)^k (1-x)^l``."""
    _need(seq, 1, k + l)
    coeffs: dict[MultiIndex, Fraction] = {}
    for i in range(k + 1):
        for j in range(l + 1):
            key = (i + j,)
            coeffs[key] = coeffs.get(key, 0) + (-1) ** j * comb(k, i) * comb(l, j)
    return _combine(seq, coeffs.items())


def unit_interval_localization_matrix(seq: MomentSeq, k: int, l: int) -> Matrix:
    """``sum_i (-1)^i C(k,i) S_{i+l}``, the pairing with ``x^l (1-x)^k``."""
    _need(seq, 1, k + l)
    return _combine(seq, (((i + l,), Fraction((-1) ** i * comb(k, i))) for i in range(k + 1)))


def hypercube_localization_matrix(seq: MomentSeq, alpha: Sequence[int]) -> Matrix:
    n = seq.nvars
    if len(alpha) != 2 * n:
        raise DimensionMismatch(f"alpha must have length {2 * n}")
    _need(seq, n, sum(alpha))
    basis = expand_linear_factor_product(n, alpha)
    return _combine(seq, ((beta, c[0][0]) for beta, c in basis.items()))


def _report(level: int, indexed: Iterable[tuple[tuple[int, ...], Matrix]]) -> CheckReport:
    for index, mat in indexed:
        dec = is_psd(mat)
        if not dec:
            return CheckReport(False, level, Failure(index, mat, dec.witness))
    return CheckReport(True, level)


def check_interval_moment(seq: MomentSeq, level: int | None = None) -> CheckReport:
    level = seq.level if level is None else level
    _need(seq, 1, level)
    pairs = graded_indices(2, level)
    return _report(level, ((kl, interval_localization_matrix(seq, *kl)) for kl in pairs))


def check_unit_interval_moment(seq: MomentSeq, level: int | None = None) -> CheckReport:
    level = seq.level if level is None else level
    _need(seq, 1, level)
    pairs = graded_indices(2, level)
    return _report(level, ((kl, unit_interval_localization_matrix(seq, *kl)) for kl in pairs))


def check_hypercube_moment(seq: MomentSeq, level: int | None = None) -> CheckReport:
    level = seq.level if level is None else level
    _need(seq, seq.nvars, level)
    alphas = graded_indices(2 * seq.nvars, level)
    return _report(level, ((a, hypercube_localization_matrix(seq, a)) for a in alphas))


def check_moment(seq: MomentSeq, domain: Domain, level: int | None = None) -> CheckReport:
    if domain.nvars != seq.nvars:
        raise DimensionMismatch("sequence and domain have different variable counts")
    if domain.kind == INTERVAL:
        return check_interval_moment(seq, level)
    if domain.kind == UNIT_INTERVAL:
        return check_unit_interval_moment(seq, level)
    assert domain.kind == HYPERCUBE
    return check_hypercube_moment(seq, level)


def separating_matrix(t_matrix: Matrix, witness: Witness, eps=Fraction(1, 1000)) -> Matrix:
    """A positive definite ``G`` with ``tr(G T) < 0``.

    Uses ``G = eps * I + c^2 v v^T``; the witness is scaled by ``c`` just enough
    that ``c^2 v^T T v`` outweighs ``eps * tr(T)``.
    """
    if not is_symmetric(t_matrix):
        raise NotSymmetric("localization matrix must be symmetric")
    value = quadratic_form(t_matrix, witness.vector)
    if value >= 0:
        raise ValueError("witness does not certify a negative direction")
    eps = Fraction(eps)
    c2 = Fraction(1)
    while eps * trace(t_matrix) + c2 * value >= 0:
        c2 *= 4
    return mat_add(mat_scale(eps, identity(len(t_matrix))), mat_scale(c2, outer(witness.vector)))


def haviland_necessity_check(measure: AtomicMeasure, cert: Certificate, f: MatPoly) -> Fraction:
    """Tracial integral of a certified-positive ``f``; necessarily nonnegative."""
    if not verify_certificate(cert, f):
        raise CertificateInvalid("certificate does not verify against the polynomial")
    for point, _ in measure.atoms:
        if not cert.domain.contains(point):
            raise AtomOutsideDomain(f"atom at {point} lies outside the {cert.domain.kind} domain")
    value = tracial_integral(measure, f)
    if value < 0:
        raise AssertionError(f"tracial integral {value} of a positive polynomial is negative")
    return value
