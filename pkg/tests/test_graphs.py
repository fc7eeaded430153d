from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from surface_census.graphs import (
    PHI,
    GraphBudgetError,
    GraphError,
    LabelledMultigraph,
    NotCubicError,
    class_count,
    compensation_factor,
    connected_cubic,
    connectivity_profile,
    enumerate_cubic,
    genus_range,
    min_genus,
    pairing_identity_check,
    pairing_total,
    three_connected_map_counts,
)

K4 = LabelledMultigraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
K33 = LabelledMultigraph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])
DUMBBELL = LabelledMultigraph.from_edges(2, [(0, 0), (0, 1), (1, 1)])


def test_connected_cubic_counts():
    # connected cubic multigraphs (loops allowed) up to isomorphism
    assert [len(connected_cubic(n)) for n in (2, 4, 6, 8)] == [2, 5, 17, 71]


def test_compensation_factors():
    assert compensation_factor(PHI) == Fraction(1, 6)
    assert compensation_factor(DUMBBELL) == Fraction(1, 4)
    assert compensation_factor(K4) == 1


def test_two_vertex_total_is_five_twelfths():
    assert class_count("G", 0, 2, include_phi=True).weighted == Fraction(5, 12)
    assert class_count("G", 0, 2, include_phi=False).weighted == Fraction(1, 4)


def test_simple_labelled_six_vertices():
    # 60 labelled prisms are planar; the 10 labelled K33 need the torus
    assert class_count("G", 0, 6).simple == 60
    assert class_count("G", 1, 6).simple == 70


def test_genus_of_small_graphs():
    assert min_genus(K4) == 0
    assert min_genus(K33) == 1
    assert genus_range(K33)[0] == 1


def test_connectivity():
    p = connectivity_profile(K4)
    assert p.three_connected and not p.has_bridge
    q = connectivity_profile(DUMBBELL)
    assert q.connected and q.has_bridge and not q.two_connected


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("source", ["labelled", "census"])
def test_pairing_identity(n, source):
    assert pairing_identity_check(n, source)


def test_pairing_total_first_value():
    assert pairing_total(1) == Fraction(5, 12)


def test_three_connected_maps():
    counts = three_connected_map_counts(6)
    assert counts[0] == 1 and counts[1] == 7


def test_rejects_non_cubic_and_budget():
    with pytest.raises(NotCubicError):
        compensation_factor(LabelledMultigraph.from_edges(2, [(0, 1)]))
    with pytest.raises(GraphError):
        class_count("G", 0, 3)
    with pytest.raises(GraphBudgetError):
        list(enumerate_cubic(40))


# -- invariants -----------------------------------------------------------------

small = st.sampled_from([info.graph for n in (2, 4) for info in connected_cubic(n)])


@given(small, small)
def test_min_genus_is_additive(a, b):
    assert min_genus(a.disjoint_union(b)) == min_genus(a) + min_genus(b)


@given(small, small)
def test_compensation_is_multiplicative(a, b):
    u = a.disjoint_union(b)
    assert compensation_factor(u) == compensation_factor(a) * compensation_factor(b)


@given(small, st.randoms())
def test_canonical_code_ignores_labels(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert g.permuted(perm).canonical_code() == g.canonical_code()
