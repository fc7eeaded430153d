from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from surface_census.series import (
    IncompatibleVariablesError,
    NoUniqueBranchError,
    NonCubicMonomialError,
    Poly,
    PolynomialSystem,
    TruncatedSeries,
    discriminant,
    newton_solve,
    resultant,
    theta_v_check,
    univariate_substitute,
)

ORDER = 8
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
coeff_lists = st.lists(fractions, min_size=1, max_size=ORDER + 1)


def series(coeffs, order=ORDER):
    return TruncatedSeries.from_coefficients(list(coeffs), "y", order)


def unit_series(coeffs):
    c = list(coeffs)
    c[0] = c[0] or Fraction(1)
    return series(c)


# -- oracles ------------------------------------------------------------------


def test_catalan_from_newton():
    sys_ = PolynomialSystem(["C"], ["y"], "y", ["C - 1 - y*C**2"])
    (C,) = newton_solve(sys_, 12, seed=[1])
    assert C.coefficients() == [comb(2 * n, n) // (n + 1) for n in range(13)]


def test_binary_trees_two_unknowns():
    # A = 1 + y*B, B = A**2 ; A is Catalan again
    sys_ = PolynomialSystem(["A", "B"], ["y"], "y", ["A - 1 - y*B", "B - A**2"])
    A, B = newton_solve(sys_, 10, seed=[1, 1])
    assert A.coefficients() == [comb(2 * n, n) // (n + 1) for n in range(11)]
    assert B == (A * A).truncate(10)


def test_bad_seed_raises():
    sys_ = PolynomialSystem(["C"], ["y"], "y", ["C - 1 - y*C**2"])
    with pytest.raises(NoUniqueBranchError):
        newton_solve(sys_, 5, seed=[0])


def test_quadratic_discriminant():
    p = Poly.parse("a*x**2 + b*x + c", ("x", "a", "b", "c"))
    assert discriminant(p, "x") == Poly.parse("b**2 - 4*a*c", ("x", "a", "b", "c"))


def test_resultant_of_linear_factors():
    vars_ = ("x",)
    p = Poly.parse("(x-1)*(x-2)", vars_)
    q = Poly.parse("x-5", vars_)
    assert resultant(p, q, "x").constant_value() in (12, -12)
    assert resultant(p, Poly.parse("x-2", vars_), "x").is_zero()


def test_poly_serialize_roundtrip():
    p = Poly.parse("S**4 + 3*S**3 - y*(1-16*y**3)", ("y", "S"))
    assert Poly.deserialize(p.serialize()) == p


def test_exp_of_y():
    e = series([0, 1]).exp()
    from math import factorial
    assert e.coefficients() == [Fraction(1, factorial(n)) for n in range(ORDER + 1)]


def test_json_roundtrip():
    s = series([1, Fraction(2, 3), 0, -4])
    assert TruncatedSeries.from_json(s.to_json()) == s


def test_theta_identity_on_pure_monomials():
    F = TruncatedSeries(("x", "y"), {(2, 3): 1, (4, 6): Fraction(1, 2)}, "y", 6)
    assert theta_v_check(F)


def test_theta_rejects_noncubic():
    F = TruncatedSeries(("x", "y"), {(1, 3): 1}, "y", 6)
    with pytest.raises(NonCubicMonomialError):
        theta_v_check(F)
    G = TruncatedSeries(("x", "q"), {(2, 3): 1}, "x", 6)
    with pytest.raises(IncompatibleVariablesError):
        theta_v_check(G)


def test_weighted_substitution_modes():
    # x^2 y z : one vertex pair, one double edge -> weight 1/2
    F = TruncatedSeries(("x", "y", "z", "w"), {(2, 1, 1, 0): 3, (2, 3, 0, 0): 1}, "x", 2)
    assert univariate_substitute(F, "weighted").coefficient(1) == Fraction(5, 2)
    assert univariate_substitute(F, "unweighted").coefficient(1) == 4
    assert univariate_substitute(F, "simple").coefficient(1) == 1


# -- invariants -----------------------------------------------------------------


@given(coeff_lists, coeff_lists)
def test_product_commutes(a, b):
    assert series(a) * series(b) == series(b) * series(a)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_product_associates_and_distributes(a, b, c):
    A, B, C = series(a), series(b), series(c)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C


@given(coeff_lists)
def test_inverse(a):
    A = unit_series(a)
    assert (A * A.inverse()).coefficients() == [1] + [0] * ORDER


@given(coeff_lists, coeff_lists)
def test_exp_is_a_homomorphism(a, b):
    A, B = series([0] + a[:ORDER]), series([0] + b[:ORDER])
    assert (A + B).exp() == A.exp() * B.exp()


@given(coeff_lists)
def test_substitute_identity_is_noop(a):
    A = series(a)
    assert A.substitute("y", series([0, 1])) == A


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=3),
       st.lists(st.integers(-6, 6), min_size=1, max_size=3))
def test_resultant_is_product_of_root_differences(roots_p, roots_q):
    vars_ = ("x",)
    p = Poly.const(1, vars_)
    q = Poly.const(1, vars_)
    for r in roots_p:
        p = p * Poly.parse(f"x - ({r})", vars_)
    for r in roots_q:
        q = q * Poly.parse(f"x - ({r})", vars_)
    expected = 1
    for a in roots_p:
        for b in roots_q:
            expected *= a - b
    assert resultant(p, q, "x").constant_value() == expected
