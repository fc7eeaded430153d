from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from surface_census import gf
from surface_census.series import Poly, TruncatedSeries

S0_HEAD = [0, 0, 0, 1, 0, 0, 1, 0, 0, 3, 0, 0, 13]


# -- closed equations against independent routes ------------------------------------


def test_s0_coefficients():
    s = gf.solve_S0(60)
    assert s.coefficients()[:13] == S0_HEAD
    assert s.coefficient(60) == 860593023907540


def test_catalytic_iteration_matches_quartic():
    closure = gf.solve_quasi_P0(30).coefficient_series("u", 3)
    assert {e[0]: c for e, c in closure.terms.items()} == {e[0]: c for e, c in gf.solve_S0(30).terms.items()}


def test_loopless_iteration_matches_cubic():
    assert gf.solve_Shat0(30) == gf.solve_Shat0_closed(30)
    assert [gf.solve_Shat0(12).coefficient(m) for m in (3, 6, 9, 12)] == [1, 4, 24, 176]


def test_shat0_cubic_derivation_equals_golden():
    assert gf.derive_shat0_cubic() == gf._normalize(gf.golden("shat0_cubic").to_vars(("y", "S")))


def test_octic_is_elimination_of_loop_rooted_system():
    assert gf.derive_octic() == gf._normalize(gf.curve("a_octic"))


def test_network_sextic_is_elimination_of_pair():
    assert gf.derive_network_sextic() == gf._normalize(gf.curve("n_sextic"))


def test_q_curve_equals_golden():
    assert gf.q_curve() == gf._normalize(gf.golden("q_curve").to_vars(("v", "Q")))


def test_quadratic_method_and_residuals():
    assert gf.quadratic_method_identity(12)


def test_guess_annihilator_recovers_catalan():
    c = TruncatedSeries.from_coefficients([comb(2 * n, n) // (n + 1) for n in range(20)], "y")
    p = gf.guess_annihilator(c, 2, 1, "C")
    assert gf._normalize(p) == gf._normalize(Poly.parse("y*C**2 - C + 1", ("y", "C")))


# -- series against census oracles ----------------------------------------------------


def test_network_and_q_against_graph_census():
    assert gf.network_oracle(8) == gf.solve_network(4)
    assert gf.q_oracle(8) == gf.solve_Q(4).Q


def test_network_head():
    assert gf.solve_network(4).coefficients()[1:] == [Fraction(1, 2), Fraction(5, 4), Fraction(21, 4),
                                                       Fraction(459, 16)]


def test_solvers_match_census(cache_dir):
    for cls, solver in (("S", gf.solve_S0), ("Shat", gf.solve_Shat0)):
        assert gf.map_class_series(cls, 0, 9, cache_dir=cache_dir) == solver(9)


def test_all_named_systems_solve():
    for name in gf.systems():
        sols = gf.solve_system(name, 12)
        assert sols and all(s.order == 12 for s in sols)


# -- identities ---------------------------------------------------------------------


def test_planar_substitution():
    assert gf.planar_substitution_check(45)


def test_root_substitution_identity_at_genus_zero_counterexample():
    # the double-edge correction factor over-counts at y^6: 1 vs 4
    assert not gf.check_rtot(0, 6)
    assert gf.check_rtot(0, 5)


def test_root_substitution_identity_vacuous_at_genus_one_to_nine(cache_dir):
    assert gf.check_rtot(1, 9, cache_dir=cache_dir)


def test_g0_assembly():
    census = gf.g0_census(3)
    assert census.coefficients() == [1, Fraction(5, 24), Fraction(385, 1152), Fraction(83933, 82944)]
    assert gf.assemble_G0(3) == census
    assert gf.assemble_G0(3, "sixth").coefficient(1) == Fraction(7, 24)
    assert gf.weighted_total(census, 1) == Fraction(5, 12)
    with pytest.raises(gf.CensusOrderError):
        gf.assemble_G0(5)


def test_bound_checks():
    assert gf.two_connected_bound_check()
    assert gf.connected_bound_check()


def test_cube_reduction():
    c = gf.cube_reduced(gf.curve("s0_quartic"))
    assert c.vars[0] == "w"
    with pytest.raises(gf.GFError):
        gf.cube_reduced(Poly.parse("S - y", ("y", "S")))


# -- dominance ------------------------------------------------------------------------

nonneg = st.lists(st.fractions(min_value=0, max_value=5, max_denominator=5), min_size=1, max_size=7)


def _ser(c):
    return TruncatedSeries.from_coefficients(c, "v", 6)


@given(nonneg, nonneg)
def test_dominance_is_monotone(a, b):
    A, B = _ser(a), _ser(b)
    assert gf.dominance_check(A, A)
    assert gf.dominance_check(A, A + B)
    if A != B:
        assert not (gf.dominance_check(A, B) and gf.dominance_check(B, A))


def test_dominance_needs_matching_series():
    with pytest.raises(TypeError):
        gf.dominance_check(_ser([1]), TruncatedSeries.from_coefficients([1], "v", 3))
