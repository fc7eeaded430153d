from math import factorial

import pytest
from hypothesis import assume, given, strategies as st

from surface_census.maps import (
    BudgetExceededError,
    CountTable,
    DartMap,
    DisconnectedMapError,
    MapError,
    classes_of,
    cubic_maps,
    double_edges,
    dual,
    edgewidth,
    facewidth,
    generate_census,
    genus,
    glue_double_edge,
    is_triangulation,
    triangulations,
    zip_double_edge,
    zipping_correspondence,
)


def planar_maps(m):
    """Rooted planar maps with m edges: 2 * 3^m (2m)! / (m! (m+2)!)."""
    return 2 * 3 ** m * factorial(2 * m) // (factorial(m) * factorial(m + 2))


TORUS_MAPS = {2: 1, 3: 20, 4: 307, 5: 4280}  # rooted maps on the torus by edges
PLANAR_CUBIC = {3: 4, 6: 32, 9: 336}  # rooted planar cubic maps by edges


@st.composite
def random_maps(draw, max_edges=5):
    m = draw(st.integers(1, max_edges))
    n = 2 * m
    sigma = draw(st.permutations(range(n)))
    pairing = draw(st.permutations(range(n)))
    alpha = [0] * n
    for i in range(0, n, 2):
        a, b = pairing[i], pairing[i + 1]
        alpha[a], alpha[b] = b, a
    mp = DartMap(tuple(sigma), tuple(alpha), draw(st.integers(0, n - 1)))
    assume(mp.is_connected())
    return mp


# -- oracles --------------------------------------------------------------------


@pytest.mark.parametrize("m", range(1, 6))
def test_planar_general_census(m, cache_dir):
    assert generate_census(m, 0, "all", family="general", cache_dir=cache_dir).get(0, m, "all") == planar_maps(m)


@pytest.mark.parametrize("m", sorted(TORUS_MAPS))
def test_torus_general_census(m, cache_dir):
    assert generate_census(m, 1, "all", family="general", cache_dir=cache_dir).get(1, m, "all") == TORUS_MAPS[m]


@pytest.mark.parametrize("m", sorted(PLANAR_CUBIC))
def test_planar_cubic_and_triangulations(m, cache_dir):
    assert sum(1 for mp in cubic_maps(m) if genus(mp) == 0) == PLANAR_CUBIC[m]
    assert generate_census(m, 0, "T", cache_dir=cache_dir).get(0, m, "T") == PLANAR_CUBIC[m]


def test_theta_map_is_on_the_torus_or_sphere():
    # two vertices joined by three edges; both cyclic orders of one vertex
    planar = DartMap.from_rotations([(0, 2, 4), (1, 5, 3)], [1, 0, 3, 2, 5, 4])
    toroidal = DartMap.from_rotations([(0, 2, 4), (1, 3, 5)], [1, 0, 3, 2, 5, 4])
    assert genus(planar) == 0 and len(planar.faces()) == 3
    assert genus(toroidal) == 1 and len(toroidal.faces()) == 1


def test_invalid_maps():
    with pytest.raises(MapError):
        DartMap((0, 1), (0, 1))
    with pytest.raises(MapError):
        DartMap((0, 0), (1, 0))
    disconnected = DartMap((0, 1, 2, 3), (1, 0, 3, 2))
    with pytest.raises(DisconnectedMapError):
        genus(disconnected)


def test_budget_is_enforced():
    with pytest.raises(BudgetExceededError):
        generate_census(12, 0, "T")
    with pytest.raises(BudgetExceededError):
        generate_census(20, 0, "T", budget=20)


def test_count_table_csv_is_sorted():
    t = CountTable()
    t.add(1, 6, "S", 2)
    t.add(0, 3, "S", 1)
    assert t.to_csv().splitlines() == ["genus,edges,class,count", "0,3,S,1", "1,6,S,2"]
    with pytest.raises(ValueError):
        t.add(0, 3, "S", -1)


def test_class_chains_on_census():
    chains = [("S", "N"), ("N", "R"), ("R", "Shat"), ("Shat", "T"), ("N", "M"), ("M", "T")]
    for m in (3, 6):
        for t in triangulations(m):
            cl = set(classes_of(t))
            assert "T" in cl
            assert all(b in cl for a, b in chains if a in cl)


def test_zip_then_glue_restores_map():
    seen = 0
    for t in triangulations(6):
        for pair in double_edges(t):
            z = zip_double_edge(t, pair)
            if not z.separated:
                continue
            first, second = z.pieces
            for twist in (False, True):
                for r in z.other_roots:
                    glued, _ = glue_double_edge(first, z.marked, second.reroot(r), twist)
                    if glued.canonical_code() == t.canonical_code():
                        seen += 1
                        break
                else:
                    continue
                break
            else:
                pytest.fail("no gluing restores the zipped map")
    assert seen


def test_zipping_is_two_to_two():
    reports = zipping_correspondence(6)
    assert reports and all(r.holds for r in reports)


def test_facewidth_is_dual_edgewidth():
    for m in (3, 6):
        for mp in cubic_maps(m):
            assert facewidth(mp) == edgewidth(dual(mp))


def test_planar_width_is_infinite():
    mp = next(mp for mp in cubic_maps(3) if genus(mp) == 0)
    assert edgewidth(mp) == float("inf")


# -- invariants -------------------------------------------------------------------


@given(random_maps())
def test_euler_formula(mp):
    chi = len(mp.vertices()) - mp.edge_count + len(mp.faces())
    assert chi == 2 - 2 * genus(mp)


@given(random_maps())
def test_dual_is_involution(mp):
    d = dual(mp)
    assert genus(d) == genus(mp)
    assert len(d.vertices()) == len(mp.faces())
    assert dual(d).canonical_code() == mp.canonical_code()


@given(random_maps(), st.randoms())
def test_canonical_code_ignores_labels(mp, rnd):
    perm = list(range(mp.dart_count))
    rnd.shuffle(perm)
    other = mp.relabel(perm)
    assert other.canonical_code() == mp.canonical_code()
    assert DartMap.from_code(mp.canonical_code()).canonical_code() == mp.canonical_code()


@given(random_maps())
def test_triangulation_iff_dual_cubic(mp):
    assert is_triangulation(mp) == all(len(v) == 3 for v in dual(mp).vertices())
