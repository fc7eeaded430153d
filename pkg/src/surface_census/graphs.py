"""Vertex-labelled cubic multigraphs: census, weights, genus and connectivity.

Connected cubic multigraphs are read off as underlying graphs of rooted
cubic maps and deduplicated up to isomorphism; disconnected ones are
multisets of connected ones.  For small sizes there is also a direct
enumeration of labelled multiplicity matrices, which shares no code with
the map route and serves as its cross-check.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import comb, factorial, inf
from typing import Callable, Iterator, Sequence

from .maps import DartMap, cubic_maps, facewidth, genus as map_genus

__all__ = [
    "GraphError",
    "NotCubicError",
    "GraphBudgetError",
    "LabelledMultigraph",
    "WeightedCount",
    "ConnectivityProfile",
    "compensation_factor",
    "embeddings",
    "min_genus",
    "max_genus",
    "genus_range",
    "connectivity_profile",
    "connected_cubic",
    "enumerate_cubic",
    "enumerate_labelled",
    "class_count",
    "pairing_identity_check",
    "pairing_total",
    "three_connected_map_counts",
    "strongly_embeddable",
    "embeddable",
    "graph_facewidth",
    "PHI",
]

GENUS_BUDGET = 12  # vertices, for rotation-system enumeration
CENSUS_BUDGET = 10  # vertices, for the cubic census
LABELLED_BUDGET = 6  # vertices, for the direct labelled enumeration


class GraphError(Exception):
    pass


class NotCubicError(GraphError, ValueError):
    pass


class GraphBudgetError(GraphError, RuntimeError):
    pass


@dataclass(frozen=True)
class LabelledMultigraph:
    """Multigraph on vertices ``0..n-1``.

    ``mult[i][j]`` (i != j) is the number of edges between i and j and
    ``mult[i][i]`` the number of loops at i.  A loop adds two to the degree.
    """

    mult: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.mult)
        object.__setattr__(self, "mult", rows)
        n = len(rows)
        for i in range(n):
            if len(rows[i]) != n:
                raise GraphError("multiplicity matrix must be square")
            for j in range(n):
                if rows[i][j] != rows[j][i] or rows[i][j] < 0:
                    raise GraphError("multiplicity matrix must be symmetric and non-negative")

    @property
    def n(self) -> int:
        return len(self.mult)

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[tuple[int, int]]) -> "LabelledMultigraph":
        m = [[0] * n for _ in range(n)]
        for i, j in edges:
            if i == j:
                m[i][i] += 1
            else:
                m[i][j] += 1
                m[j][i] += 1
        return cls(tuple(map(tuple, m)))

    @classmethod
    def from_map(cls, mp: DartMap) -> "LabelledMultigraph":
        vof = mp.vertex_of()
        n = max(vof) + 1 if vof else 0
        return cls.from_edges(n, [(vof[d], vof[e]) for d, e in mp.edges()])

    def loops(self, i: int) -> int:
        return self.mult[i][i]

    def degree(self, i: int) -> int:
        return sum(self.mult[i]) + self.mult[i][i]

    def edge_count(self) -> int:
        return sum(self.mult[i][j] for i in range(self.n) for j in range(i, self.n))

    def edge_list(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.n):
            for j in range(i, self.n):
                out.extend([(i, j)] * self.mult[i][j])
        return out

    def is_cubic(self) -> bool:
        return all(self.degree(i) == 3 for i in range(self.n))

    def loop_count(self) -> int:
        return sum(self.mult[i][i] for i in range(self.n))

    def double_edge_count(self) -> int:
        return sum(comb(self.mult[i][j], 2) for i in range(self.n) for j in range(i + 1, self.n))

    def is_simple(self) -> bool:
        return self.loop_count() == 0 and all(
            self.mult[i][j] <= 1 for i in range(self.n) for j in range(i + 1, self.n))

    def is_phi(self) -> bool:
        return self.n == 2 and self.mult[0][1] == 3

    def components(self) -> list["LabelledMultigraph"]:
        return [self.induced(c) for c in self.component_vertex_sets()]

    def component_vertex_sets(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in range(self.n):
                    if w != v and self.mult[v][w] and not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def induced(self, vertices: Sequence[int]) -> "LabelledMultigraph":
        return LabelledMultigraph(tuple(tuple(self.mult[i][j] for j in vertices) for i in vertices))

    def permuted(self, perm: Sequence[int]) -> "LabelledMultigraph":
        """Vertex ``i`` becomes ``perm[i]``."""
        n = self.n
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m[perm[i]][perm[j]] = self.mult[i][j]
        return LabelledMultigraph(tuple(map(tuple, m)))

    def disjoint_union(self, other: "LabelledMultigraph") -> "LabelledMultigraph":
        n, k = self.n, other.n
        rows = [tuple(r) + (0,) * k for r in self.mult] + [(0,) * n + tuple(r) for r in other.mult]
        return LabelledMultigraph(tuple(rows))

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.component_vertex_sets()) == 1

    # canonical form --------------------------------------------------------
    def canonical(self) -> tuple["LabelledMultigraph", int]:
        code, aut = _canonical(self.mult)
        n = self.n
        rows = tuple(tuple(code[i * n:(i + 1) * n]) for i in range(n))
        return LabelledMultigraph(rows), aut

    def canonical_code(self) -> tuple[int, ...]:
        return _canonical(self.mult)[0]

    def automorphism_count(self) -> int:
        return _canonical(self.mult)[1]

    def labelled_count(self) -> int:
        """Number of distinct labellings, n!/|Aut|."""
        return factorial(self.n) // self.automorphism_count()

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "edges": [[i, j, self.mult[i][j]] for i in range(self.n) for j in range(i + 1, self.n) if self.mult[i][j]],
            "loops": [[i, self.mult[i][i]] for i in range(self.n) if self.mult[i][i]],
        }


def _refine(mult, colors):
    n = len(mult)
    while True:
        sigs = []
        for i in range(n):
            nb = tuple(sorted((colors[j], mult[i][j]) for j in range(n) if j != i and mult[i][j]))
            sigs.append((colors[i], mult[i][i], nb))
        ranks = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


@lru_cache(maxsize=200000)
def _canonical(mult) -> tuple[tuple[int, ...], int]:
    """Individualisation-refinement canonical code and automorphism count."""
    n = len(mult)
    if n == 0:
        return (), 1
    start = _refine(mult, [0] * n)
    leaves: list[tuple[int, ...]] = []

    def search(colors):
        if len(set(colors)) == n:
            order = sorted(range(n), key=lambda i: colors[i])
            leaves.append(tuple(mult[i][j] for i in order for j in order))
            return
        cells = Counter(colors)
        target = min(c for c, k in cells.items() if k > 1)
        for v in range(n):
            if colors[v] != target:
                continue
            ind = [2 * c + 1 for c in colors]
            ind[v] = 2 * target
            search(_refine(mult, ind))

    search(start)
    best = min(leaves)
    return best, leaves.count(best)


PHI = LabelledMultigraph(((0, 3), (3, 0)))


def compensation_factor(G: LabelledMultigraph) -> Fraction:
    """1/6 per triple-edge component, 2^-(doubles + loops) for every other component."""
    if not G.is_cubic():
        raise NotCubicError("compensation factor is defined for cubic multigraphs")
    w = Fraction(1)
    for comp in G.components():
        if comp.is_phi():
            w *= Fraction(1, 6)
        else:
            w /= 2 ** (comp.double_edge_count() + comp.loop_count())
    return w


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------


def _darts(G: LabelledMultigraph):
    """Darts per vertex and the edge pairing for a fixed edge ordering."""
    at: list[list[int]] = [[] for _ in range(G.n)]
    alpha = []
    for i, j in G.edge_list():
        d = len(alpha)
        alpha.extend([d + 1, d])
        at[i].append(d)
        at[j].append(d + 1)
    return at, alpha


def _cyclic_orders(darts: Sequence[int]) -> list[tuple[int, ...]]:
    if len(darts) <= 2:
        return [tuple(darts)]
    from itertools import permutations

    first = darts[0]
    return [(first,) + p for p in permutations(darts[1:])]


def embeddings(G: LabelledMultigraph) -> Iterator[DartMap]:
    """All rotation systems of a connected multigraph as dart maps."""
    if G.n > GENUS_BUDGET:
        raise GraphBudgetError(f"{G.n} vertices exceeds the rotation-system budget of {GENUS_BUDGET}")
    if not G.is_connected():
        raise GraphError("embeddings are enumerated for connected multigraphs")
    at, alpha = _darts(G)
    for rot in product(*[_cyclic_orders(a) for a in at]):
        yield DartMap.from_rotations([r for r in rot if r], alpha)


def genus_range(G: LabelledMultigraph) -> tuple[int, int]:
    """(minimum, maximum) genus over all 2-cell embeddings of a connected multigraph."""
    if G.edge_count() == 0:
        return 0, 0
    gs = [map_genus(m) for m in embeddings(G)]
    return min(gs), max(gs)


def min_genus(G: LabelledMultigraph) -> int:
    """Minimum genus; for a disconnected graph the sum over components."""
    return sum(genus_range(c)[0] for c in G.components())


def max_genus(G: LabelledMultigraph) -> int:
    if not G.is_connected():
        raise GraphError("maximum genus is used for connected multigraphs only")
    return genus_range(G)[1]


def strongly_embeddable(G: LabelledMultigraph, g: int) -> bool:
    """Connected G has a 2-cell embedding of genus g (genera form an interval)."""
    lo, hi = genus_range(G)
    return lo <= g <= hi


def embeddable(G: LabelledMultigraph, g: int) -> bool:
    """Embeddable on the genus-g surface: component minimum genera sum to at most g."""
    return min_genus(G) <= g


def graph_facewidth(G: LabelledMultigraph, g: int) -> float | int | None:
    """Largest facewidth over 2-cell embeddings of genus g (None if there is none)."""
    best = None
    for m in embeddings(G):
        if map_genus(m) == g:
            fw = facewidth(m)
            if best is None or fw > best:
                best = fw
    return best


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConnectivityProfile:
    connected: bool
    two_connected: bool
    three_connected: bool
    three_edge_connected: bool
    has_bridge: bool


def _connected_without(G: LabelledMultigraph, vertices=(), edges=()) -> bool:
    removed = set(vertices)
    keep = [v for v in range(G.n) if v not in removed]
    if len(keep) <= 1:
        return True
    cut = Counter()
    for i, j in edges:
        cut[(min(i, j), max(i, j))] += 1
    seen = {keep[0]}
    stack = [keep[0]]
    while stack:
        v = stack.pop()
        for w in keep:
            if w != v and w not in seen:
                if G.mult[v][w] - cut[(min(v, w), max(v, w))] > 0:
                    seen.add(w)
                    stack.append(w)
    return len(seen) == len(keep)


def connectivity_profile(G: LabelledMultigraph) -> ConnectivityProfile:
    connected = G.is_connected()
    loopless = G.loop_count() == 0
    nonloop = [(i, j) for i, j in G.edge_list() if i != j]
    has_bridge = connected and any(not _connected_without(G, edges=[e]) for e in set(nonloop)
                                   if G.mult[e[0]][e[1]] == 1)
    two = connected and loopless and (G.n <= 2 or all(_connected_without(G, vertices=[v]) for v in range(G.n)))
    three = (connected and loopless and G.n >= 4
             and all(_connected_without(G, vertices=c) for k in (1, 2) for c in combinations(range(G.n), k)))
    three_edge = connected and G.n >= 2 and not has_bridge and all(
        _connected_without(G, edges=pair) for pair in combinations(nonloop, 2))
    return ConnectivityProfile(connected, two, three, three_edge, has_bridge)


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphInfo:
    graph: LabelledMultigraph  # canonical representative
    aut: int
    genus_min: int
    genus_max: int

    @property
    def labelled(self) -> int:
        return factorial(self.graph.n) // self.aut

    @property
    def weight(self) -> Fraction:
        return compensation_factor(self.graph)


@lru_cache(maxsize=None)
def connected_cubic(n: int) -> tuple[GraphInfo, ...]:
    """Isomorphism classes of connected cubic multigraphs on n vertices, canonically ordered."""
    if n % 2:
        raise GraphError("cubic multigraphs have an even number of vertices")
    if n > CENSUS_BUDGET:
        raise GraphBudgetError(f"{n} vertices exceeds the cubic census budget of {CENSUS_BUDGET}")
    if n == 0:
        return ()
    found: dict[tuple, tuple[LabelledMultigraph, int]] = {}
    for mp in cubic_maps(3 * n // 2):
        g = LabelledMultigraph.from_map(mp)
        code, aut = _canonical(g.mult)
        if code not in found:
            canon, _ = g.canonical()
            found[code] = (canon, aut)
    out = []
    for code in sorted(found):
        canon, aut = found[code]
        lo, hi = genus_range(canon)
        out.append(GraphInfo(canon, aut, lo, hi))
    return tuple(out)


@dataclass(frozen=True)
class CensusEntry:
    """An isomorphism class of (possibly disconnected) cubic multigraphs."""

    components: tuple[GraphInfo, ...]

    @property
    def graph(self) -> LabelledMultigraph:
        g = LabelledMultigraph(())
        for c in self.components:
            g = g.disjoint_union(c.graph)
        return g

    @property
    def n(self) -> int:
        return sum(c.graph.n for c in self.components)

    @property
    def labelled(self) -> int:
        denom = 1
        for c in self.components:
            denom *= c.aut
        for k in Counter(self.components).values():
            denom *= factorial(k)
        return factorial(self.n) // denom

    @property
    def weight(self) -> Fraction:
        w = Fraction(1)
        for c in self.components:
            w *= c.weight
        return w

    @property
    def genus_min(self) -> int:
        return sum(c.genus_min for c in self.components)


def _partitions(n: int, max_part: int | None = None):
    max_part = n if max_part is None else max_part
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -2):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def enumerate_cubic(n: int, filter: Callable[[CensusEntry], bool] | None = None,
                    connected: bool = False) -> Iterator[tuple[CensusEntry, int]]:
    """Every isomorphism class on n vertices with its labelled multiplicity n!/|Aut|."""
    if n % 2:
        raise GraphError("cubic multigraphs have an even number of vertices")
    if n > CENSUS_BUDGET:
        raise GraphBudgetError(f"{n} vertices exceeds the cubic census budget of {CENSUS_BUDGET}")
    if n == 0:
        entry = CensusEntry(())
        if filter is None or filter(entry):
            yield entry, 1
        return
    parts = [(n,)] if connected else list(_partitions(n))
    for part in parts:
        sizes = Counter(part)
        pools = []
        for size, k in sorted(sizes.items(), reverse=True):
            pools.append(list(combinations_with_replacement(connected_cubic(size), k)))
        for choice in product(*pools):
            comps = tuple(c for group in choice for c in group)
            entry = CensusEntry(comps)
            if filter is None or filter(entry):
                yield entry, entry.labelled


def enumerate_labelled(n: int) -> Iterator[LabelledMultigraph]:
    """All cubic multiplicity matrices on n labelled vertices (direct, small n)."""
    if n % 2:
        raise GraphError("cubic multigraphs have an even number of vertices")
    if n > LABELLED_BUDGET:
        raise GraphBudgetError(f"{n} vertices exceeds the labelled enumeration budget of {LABELLED_BUDGET}")
    m = [[0] * n for _ in range(n)]
    deg = [0] * n
    cells = [(i, j) for i in range(n) for j in range(i, n)]

    def rec(k):
        if k == len(cells):
            if all(d == 3 for d in deg):
                yield LabelledMultigraph(tuple(map(tuple, m)))
            return
        i, j = cells[k]
        # once all cells of row i are decided, vertex i must be full
        step = 2 if i == j else 1
        top = (3 - deg[i]) // 2 if i == j else min(3 - deg[i], 3 - deg[j])
        for c in range(top + 1):
            m[i][j] = m[j][i] = c
            deg[i] += step * c
            if i != j:
                deg[j] += c
            if j < n - 1 or deg[i] == 3:
                yield from rec(k + 1)
            deg[i] -= step * c
            if i != j:
                deg[j] -= c
        m[i][j] = m[j][i] = 0

    yield from rec(0)


@dataclass(frozen=True)
class WeightedCount:
    unweighted: int
    weighted: Fraction
    simple: int

    def __post_init__(self):
        if self.simple > self.unweighted or self.weighted > self.unweighted:
            raise GraphError("inconsistent weighted count")

    def value(self, mode: str):
        if mode == "weighted":
            return self.weighted
        if mode == "unweighted":
            return self.unweighted
        if mode == "simple":
            return self.simple
        raise ValueError(f"unknown mode {mode!r}")


def _in_class(entry: CensusEntry, cls: str, g: int, include_phi: bool,
              fw_min: int | None) -> bool:
    if cls == "G":
        if not include_phi and any(c.graph.is_phi() for c in entry.components):
            return False
        return entry.genus_min <= g
    if len(entry.components) != 1:
        return False
    info = entry.components[0]
    G = info.graph
    if G.is_phi():
        return include_phi and cls in ("C", "B", "D") and info.genus_min <= g <= info.genus_max
    if not info.genus_min <= g <= info.genus_max:
        return False
    prof = connectivity_profile(G)
    if cls == "B" and not prof.two_connected:
        return False
    if cls == "D" and not prof.three_connected:
        return False
    if cls not in ("C", "B", "D"):
        raise ValueError(f"unknown class {cls!r}")
    if fw_min is not None:
        fw = graph_facewidth(G, g)
        if fw is None or fw < fw_min:
            return False
    return True


def class_count(cls: str, g: int, n: int, include_phi: bool = False,
                fw_min: int | None = None) -> WeightedCount:
    """Labelled counts of class C, B, D (connected / 2-connected / 3-connected,
    strongly embeddable on the genus-g surface) or G (all, embeddable) on n vertices.

    ``include_phi`` toggles whether the triple edge is counted (as a class
    member of C, B, D, or as an allowed component of G).
    """
    if cls not in ("C", "B", "D", "G"):
        raise ValueError(f"unknown class {cls!r}")
    if fw_min is not None and n > 8:
        raise GraphBudgetError("facewidth filtering is limited to 8 vertices")
    unweighted = 0
    weighted = Fraction(0)
    simple = 0
    for entry, count in enumerate_cubic(n, connected=cls != "G"):
        if not _in_class(entry, cls, g, include_phi, fw_min):
            continue
        unweighted += count
        weighted += entry.weight * count
        if all(c.graph.is_simple() for c in entry.components):
            simple += count
    return WeightedCount(unweighted, weighted, simple)


def pairing_total(n: int) -> Fraction:
    """(6n)! / ((3n)! 2^(3n) 6^(2n)): pairings of 6n points in 2n cells of three."""
    return Fraction(factorial(6 * n), factorial(3 * n) * 2 ** (3 * n) * 6 ** (2 * n))


def pairing_identity_check(n: int, source: str = "labelled") -> bool:
    """Total weight over all cubic multigraphs on 2n labelled vertices vs the pairing count.

    ``source`` selects the direct labelled enumeration or the isomorphism
    class census.
    """
    if n > 3:
        raise GraphBudgetError("pairing identity is checked for n <= 3")
    if source == "labelled":
        total = sum((compensation_factor(G) for G in enumerate_labelled(2 * n)), Fraction(0))
    else:
        total = sum((e.weight * c for e, c in enumerate_cubic(2 * n)), Fraction(0))
    return total == pairing_total(n)


def three_connected_map_counts(m: int) -> Counter:
    """Rooted cubic maps with m edges whose underlying multigraph is 3-connected, by genus."""
    out: Counter = Counter()
    for mp in cubic_maps(m):
        if connectivity_profile(LabelledMultigraph.from_map(mp)).three_connected:
            out[map_genus(mp)] += 1
    return out
