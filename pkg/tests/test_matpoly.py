import itertools
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from matpos.errors import DegreeExceeded, DimensionMismatch, ZeroPolynomial
from matpos.linalg import identity, is_psd, mat_scale, mat_mul, to_matrix, zeros
from matpos.matpoly import (
    MatPoly,
    add,
    degree,
    dehomogenize_back,
    evaluate,
    expand_linear_factor_product,
    goursat_transform,
    homogenize_univariate,
    leading_coefficient_univariate,
    mul_scalar_poly,
    multihomogenize,
    substitute_affine,
)

from oracles import det, rand_fraction, rand_matrix, sympy_scalar

I2 = identity(2)
x_, y_ = sp.symbols("x y")


def uni(*coeffs):
    return MatPoly.univariate(list(coeffs))


def rand_poly(rng, nvars, size, maxdeg, nterms=4):
    terms = {}
    for _ in range(nterms):
        alpha = tuple(rng.randint(0, maxdeg) for _ in range(nvars))
        while sum(alpha) > maxdeg:
            alpha = tuple(max(0, a - 1) for a in alpha)
        terms[alpha] = rand_matrix(rng, size)
    return MatPoly(nvars, size, terms)


def rand_uni_invertible_at_minus_one(rng):
    while True:
        t = rng.randint(1, 3)
        d = rng.randint(0, 5)
        f = MatPoly(1, t, {(i,): rand_matrix(rng, t) for i in range(d + 1)})
        if not f.is_zero() and det(evaluate(f, (-1,))) != 0:
            return f


def test_degree():
    assert degree(uni(mat_scale(2, I2), I2)) == 1
    assert degree(MatPoly.zero(1, 2)) is None
    w12 = to_matrix([[0, 1], [0, 0]])
    assert degree(MatPoly.monomial((2, 1), w12)) == 3


def test_leading_coefficient():
    assert leading_coefficient_univariate(uni(mat_scale(2, I2), I2)) == I2
    assert leading_coefficient_univariate(MatPoly.scalar(1, {(0,): 3})) == ((3,),)
    with pytest.raises(ZeroPolynomial):
        leading_coefficient_univariate(MatPoly.zero(1, 1))


def test_add():
    f = uni(mat_scale(2, I2), I2)
    assert add(f, MatPoly.zero(1, 2)) == f
    x = uni(zeros(2), I2)
    assert add(x, x.scale(-1)).is_zero()
    assert add(MatPoly.constant(mat_scale(2, I2), 1), x) == f
    with pytest.raises(DimensionMismatch):
        add(f, MatPoly.zero(2, 2))


def test_mul_scalar_poly_examples():
    one = MatPoly.scalar(1, {(0,): 1})
    f = uni(mat_scale(2, I2), I2)
    assert mul_scalar_poly(one, f) == f
    p = MatPoly.scalar(1, {(0,): 1, (1,): 1})
    q = MatPoly.scalar(1, {(0,): 1, (1,): -1})
    assert mul_scalar_poly(mul_scalar_poly(p, q), MatPoly.constant(I2, 1)) == uni(I2, zeros(2), mat_scale(-1, I2))
    assert mul_scalar_poly(p, f) == uni(mat_scale(2, I2), mat_scale(3, I2), I2)


def test_evaluate_examples():
    f = uni(mat_scale(2, I2), I2)
    assert evaluate(f, (Fraction(1, 2),)) == mat_scale(Fraction(5, 2), I2)
    assert evaluate(f, (0,)) == mat_scale(2, I2)
    assert evaluate(uni(I2, zeros(2), mat_scale(-1, I2)), (1,)) == zeros(2)
    with pytest.raises(DimensionMismatch):
        evaluate(f, (1, 2))


def test_substitute_affine_examples():
    f = uni(mat_scale(2, I2), I2)
    assert substitute_affine(f, 0, 1, 0) == f
    assert substitute_affine(uni(zeros(2), I2), 0, 2, -1) == uni(mat_scale(-1, I2), mat_scale(2, I2))
    sq = MatPoly.scalar(1, {(2,): 1})
    half = Fraction(1, 2)
    assert substitute_affine(sq, 0, half, half) == MatPoly.scalar(1, {(0,): Fraction(1, 4), (1,): half, (2,): Fraction(1, 4)})


def test_substitute_affine_against_sympy():
    rng = random.Random(5)
    for _ in range(20):
        f = rand_poly(rng, 2, 1, 4)
        a, b = rand_fraction(rng), rand_fraction(rng)
        got = sympy_scalar(substitute_affine(f, 1, a, b), (x_, y_))
        want = sp.expand(sympy_scalar(f, (x_, y_)).subs(y_, sp.Rational(a.numerator, a.denominator) * y_
                                                         + sp.Rational(b.numerator, b.denominator)))
        assert sp.expand(got - want) == 0


def test_goursat_examples():
    assert goursat_transform(uni(zeros(2), I2)) == uni(I2, mat_scale(-1, I2))
    assert goursat_transform(MatPoly.constant(I2, 1)) == MatPoly.constant(I2, 1)
    f = uni(mat_scale(2, I2), I2)
    assert goursat_transform(goursat_transform(f)) == uni(mat_scale(4, I2), mat_scale(2, I2))
    with pytest.raises(ZeroPolynomial):
        goursat_transform(MatPoly.zero(1, 2))


def test_goursat_against_definition():
    # (1+x)^d F((1-x)/(1+x)) simplified by sympy
    rng = random.Random(8)
    for _ in range(20):
        f = rand_poly(rng, 1, 1, 5)
        if f.is_zero():
            continue
        d = f.degree()
        fx = sympy_scalar(f, (x_,))
        want = sp.expand(sp.cancel((1 + x_) ** d * fx.subs(x_, (1 - x_) / (1 + x_))))
        assert sp.expand(sympy_scalar(goursat_transform(f), (x_,)) - want) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_goursat_laws(seed):
    rng = random.Random(seed)
    f = rand_uni_invertible_at_minus_one(rng)
    d = f.degree()
    g = goursat_transform(f)
    assert g.degree() == d
    assert leading_coefficient_univariate(g) == evaluate(f, (-1,))
    assert goursat_transform(g) == f.scale(2**d)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.fractions(min_value=0, max_value=20, max_denominator=7))
def test_goursat_pointwise(seed, t):
    rng = random.Random(seed)
    f = rand_uni_invertible_at_minus_one(rng)
    d = f.degree()
    x = (1 - t) / (1 + t)
    assert evaluate(goursat_transform(f), (t,)) == mat_scale((1 + t) ** d, evaluate(f, (x,)))


def test_homogenize_examples():
    two_plus_x = MatPoly.scalar(1, {(0,): 2, (1,): 1})
    assert homogenize_univariate(two_plus_x, 1) == MatPoly.scalar(2, {(0, 1): 2, (1, 0): 1})
    assert homogenize_univariate(MatPoly.scalar(1, {(2,): 1}), 2) == MatPoly.scalar(2, {(2, 0): 1})
    assert homogenize_univariate(MatPoly.scalar(1, {(0,): 1, (2,): 1}), 3) == MatPoly.scalar(2, {(0, 3): 1, (2, 1): 1})
    with pytest.raises(DegreeExceeded):
        homogenize_univariate(MatPoly.scalar(1, {(2,): 1}), 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.fractions(min_value=-5, max_value=5, max_denominator=5))
def test_homogenize_at_y_one(seed, x):
    rng = random.Random(seed)
    g = rand_poly(rng, 1, 2, 4)
    D = (g.degree() or 0) + rng.randint(0, 2)
    h = homogenize_univariate(g, D)
    assert all(sum(a) == D for a, _ in h.items())
    assert evaluate(h, (x, 1)) == evaluate(g, (x,))


def test_multihomogenize_examples():
    assert multihomogenize(MatPoly.scalar(1, {(0,): 2, (1,): 1}), (1,)) == MatPoly.scalar(2, {(1, 0): 3, (0, 1): 1})
    assert multihomogenize(MatPoly.scalar(1, {(1,): 1}), (1,)) == MatPoly.scalar(2, {(1, 0): 1, (0, 1): -1})
    got = multihomogenize(MatPoly.scalar(2, {(1, 1): 1}), (1, 1))
    assert got == MatPoly.scalar(4, {(1, 0, 1, 0): 1, (1, 0, 0, 1): -1, (0, 1, 1, 0): -1, (0, 1, 0, 1): 1})
    with pytest.raises(DegreeExceeded):
        multihomogenize(MatPoly.scalar(1, {(2,): 1}), (1,))


def test_dehomogenize_examples():
    assert dehomogenize_back(MatPoly.scalar(2, {(1, 0): 3, (0, 1): 1})) == MatPoly.scalar(1, {(0,): 2, (1,): 1})
    assert dehomogenize_back(MatPoly.scalar(2, {(1, 0): 1, (0, 1): 1})) == MatPoly.scalar(1, {(0,): 1})
    assert dehomogenize_back(MatPoly.scalar(2, {(1, 0): 1, (0, 1): -1})) == MatPoly.scalar(1, {(1,): 1})


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_multihomogenize_roundtrip(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    f = rand_poly(rng, n, rng.randint(1, 2), 3)
    D = tuple(d + rng.randint(0, 1) for d in f.var_degrees())
    h = multihomogenize(f, D)
    for alpha, _ in h.items():
        assert all(alpha[2 * i] + alpha[2 * i + 1] == D[i] for i in range(n))
    assert dehomogenize_back(h) == f


def test_expand_linear_factor_product_examples():
    assert expand_linear_factor_product(1, (1, 1)) == MatPoly.scalar(1, {(0,): 1, (2,): -1})
    assert expand_linear_factor_product(1, (2, 0)) == MatPoly.scalar(1, {(0,): 1, (1,): 2, (2,): 1})
    assert expand_linear_factor_product(2, (1, 0, 0, 1)) == MatPoly.scalar(
        2, {(0, 0): 1, (1, 0): 1, (0, 1): -1, (1, 1): -1}
    )


def test_expand_linear_factor_product_against_sympy():
    xs = sp.symbols("x1:4")
    for alpha in itertools.product(range(3), repeat=4):
        want = sp.expand((1 + xs[0]) ** alpha[0] * (1 - xs[0]) ** alpha[1] * (1 + xs[1]) ** alpha[2] * (1 - xs[1]) ** alpha[3])
        assert sp.expand(sympy_scalar(expand_linear_factor_product(2, alpha), xs[:2]) - want) == 0


def test_expand_linear_factor_product_nonnegative_on_grid():
    grid = [Fraction(k, 4) for k in range(-4, 5)]
    for alpha in itertools.product(range(3), repeat=4):
        p = expand_linear_factor_product(2, alpha)
        for pt in itertools.product(grid, repeat=2):
            assert evaluate(p, pt)[0][0] >= 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_evaluate_is_multiplicative(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    p = rand_poly(rng, n, 1, 3)
    f = rand_poly(rng, n, rng.randint(1, 3), 3)
    pt = tuple(rand_fraction(rng) for _ in range(n))
    assert evaluate(mul_scalar_poly(p, f), pt) == mat_scale(evaluate(p, pt)[0][0], evaluate(f, pt))


def test_constructor_drops_zero_terms_and_merges():
    f = MatPoly(1, 1, {(0,): [[0]], (1,): [[2]]})
    assert f.terms == {(1,): ((2,),)}
    with pytest.raises(DimensionMismatch):
        MatPoly(2, 1, {(1,): [[1]]})
    with pytest.raises(DimensionMismatch):
        MatPoly(1, 2, {(1,): [[1]]})


def test_psd_of_square_on_grid():
    # sanity link between modules: F = A(x)^T A(x) is PSD at every point
    rng = random.Random(2)
    a0, a1 = rand_matrix(rng, 2), rand_matrix(rng, 2)
    for k in range(-4, 5):
        x = Fraction(k, 4)
        a = tuple(tuple(a0[i][j] + x * a1[i][j] for j in range(2)) for i in range(2))
        at = tuple(zip(*a))
        assert is_psd(mat_mul(at, a))
