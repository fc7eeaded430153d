from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import given, strategies as st

from surface_census import asymptotics as asy
from surface_census import gf
from surface_census.series import Poly, TruncatedSeries

FINE = Fraction(1, 2 ** 300)


def tree_curve(a, k):
    """F = 1 + a z F^k: a-coloured k-ary trees."""
    return Poly.parse(f"F - 1 - {a}*z*F**{k}", ("z", "F"))


def tree_series(a, k, order=60):
    # Fuss-Catalan numbers times a^n
    return TruncatedSeries.from_coefficients(
        [Fraction(a ** n * comb(k * n, n), (k - 1) * n + 1) for n in range(order + 1)], "z")


def catalan():
    return tree_curve(1, 2), tree_series(1, 2)


# -- root isolation --------------------------------------------------------------------


def test_isolation_brackets_every_positive_root():
    p = [Fraction(2, 3), Fraction(-5, 3), Fraction(-4, 3), Fraction(1)]  # (x-1/3)(x-2)(x+1)
    roots = asy.isolate_positive_roots(p, Fraction(1, 10 ** 15))
    assert len(roots) == 2
    assert roots[0].contains(Fraction(1, 3)) and roots[1].contains(Fraction(2))
    assert all(r.width <= Fraction(1, 10 ** 15) for r in roots)


def test_rational_root_on_a_bisection_point():
    roots = asy.isolate_positive_roots([Fraction(-1, 2), Fraction(1)])
    assert roots[0].contains(Fraction(1, 2))
    roots = asy.isolate_positive_roots([Fraction(1, 8), Fraction(-3, 4), Fraction(1)])
    assert [r.contains(x) for r, x in zip(roots, (Fraction(1, 4), Fraction(1, 2)))] == [True, True]


def test_no_positive_root():
    with pytest.raises(asy.NoSingularityError):
        asy.smallest_positive_root([Fraction(1), Fraction(1)])


# -- singular expansions ---------------------------------------------------------------


def test_catalan_expansion_and_transfer():
    P, br = catalan()
    rho = asy.dominant_singularity(P, br, width=FINE)
    assert rho.contains(Fraction(1, 4))
    e = asy.puiseux_expand(P, rho, br, depth=4)
    assert [float(asy._mid(e.coefficient(Fraction(k, 2)))) for k in range(5)] == [2, -2, 2, -2, 2]
    t = asy.transfer(e)
    assert t.exponent == Fraction(-3, 2)
    assert abs(asy._mid(t.constant) - 1 / mpmath.sqrt(mpmath.pi)) < mpmath.mpf(10) ** -30


def test_central_binomial_transfer_error_goes_to_zero():
    # (1 - 4z)^(-1/2) = sum C(2n, n) z^n, as a singular expansion with one term
    rho = asy.RealInterval(Fraction(1, 4), Fraction(1, 4))
    e = asy.SingularExpansion(rho, (asy.Term(Fraction(-1, 2), mpmath.mpf(1)),), Fraction(1, 2))
    errs = [abs(asy.transfer(e, n) / comb(2 * n, n) - 1) for n in (10, 100, 1000)]
    assert errs[0] > errs[1] > errs[2]


def test_quarter_grid_is_reported():
    curve = Poly.parse("F**4 - 1 + z", ("z", "F"))
    c = [Fraction(1)]
    for n in range(1, 30):
        c.append(-c[-1] * (Fraction(1, 4) - (n - 1)) / n)
    with pytest.raises(asy.GridError) as info:
        asy.puiseux_expand(curve, asy.RealInterval(Fraction(1), Fraction(1)),
                           TruncatedSeries.from_coefficients(c, "z"))
    assert info.value.grid == "quarter"


def test_polynomial_only_has_no_singular_part():
    rho = asy.RealInterval(Fraction(1), Fraction(1))
    e = asy.SingularExpansion(rho, (asy.Term(Fraction(0), mpmath.mpf(1)), asy.Term(Fraction(1), mpmath.mpf(2))),
                              Fraction(2))
    with pytest.raises(asy.NoSingularPartError):
        asy.transfer(e)


def test_log_term_from_integration():
    rho = asy.RealInterval(Fraction(1), Fraction(1))
    e = asy.SingularExpansion(rho, (asy.Term(Fraction(-1), mpmath.mpf(1)),), Fraction(0))
    i = asy.integrate(e)
    assert any(t.log == 1 and t.exponent == 0 for t in i.terms)
    assert not i.constant_known


def test_mismatched_rho():
    a = asy.SingularExpansion(asy.RealInterval(Fraction(1), Fraction(1)), (), Fraction(1))
    b = asy.SingularExpansion(asy.RealInterval(Fraction(2), Fraction(2)), (), Fraction(1))
    with pytest.raises(asy.RhoMismatchError):
        asy.add(a, b)


def test_s0_expansion_values():
    S0 = gf.solve_S0(60)
    rho = asy.dominant_singularity(gf.curve("s0_quartic"), S0, width=FINE, stride=3)
    e = asy.puiseux_expand(gf.curve("s0_quartic"), rho, S0)
    assert asy.interval_contains(e.coefficient(0), Fraction(1, 8), 1e-20)
    assert asy.interval_contains(e.coefficient(1), Fraction(-9, 16), 1e-20)
    assert e.coefficient(Fraction(1, 2)) == 0


# -- growth fits -------------------------------------------------------------------------


def test_fit_growth_on_exact_shape():
    rho, e = asy.fit_growth([Fraction(2 ** n, n * n) if n else 0 for n in range(40)])
    assert abs(rho - 0.5) < 1e-9 and abs(e + 2) < 1e-9


def test_fit_growth_needs_terms():
    with pytest.raises(asy.TooFewTermsError):
        asy.fit_growth([1, 2, 3])


def test_growth_constant_rejects_nonpositive():
    with pytest.raises(ValueError):
        asy.growth_constant(asy.RealInterval(Fraction(-1), Fraction(1)))


# -- invariants ------------------------------------------------------------------------------


@given(st.integers(1, 4), st.integers(2, 3), st.sampled_from([0.1, 0.2, 0.3]))
def test_expansion_agrees_with_taylor_sum(a, k, X):
    P, br = tree_curve(a, k), tree_series(a, k, 400)
    rho = asy.dominant_singularity(P, br, width=FINE)
    e = asy.puiseux_expand(P, rho, br, depth=4)
    z = asy._q(rho.mid) * (1 - mpmath.mpf(X))
    taylor = sum(asy._q(c) * z ** n for n, c in enumerate(br.coefficients()))
    # truncation error O(X^(5/2)); the Taylor tail is below 1e-18 here
    assert abs(e.evaluate(X) - taylor) <= 10 * X ** 2.5 * (1 + abs(taylor))


@given(st.integers(1, 4))
def test_derivative_then_integral_keeps_singular_terms(a):
    P, br = tree_curve(a, 2), tree_series(a, 2, 60)
    rho = asy.dominant_singularity(P, br, width=FINE)
    e = asy.puiseux_expand(P, rho, br, depth=4)
    back = asy.integrate(asy.differentiate(e))
    for t in back.terms:
        if t.exponent > 0 and t.exponent < back.error_exponent and not t.log:
            assert abs(asy._mid(t.coefficient) - asy._mid(e.coefficient(t.exponent))) < 1e-30
