"""Rooted combinatorial maps: generation, duality, surgery and widths.

A map is a pair of permutations on darts ``0..2m-1``: ``sigma`` rotates
counterclockwise around a vertex and ``alpha`` swaps the two darts of an
edge.  Faces are the orbits of ``phi = sigma o alpha`` (``phi(d) =
sigma[alpha[d]]``).  The root is a dart; the root corner is the corner
between ``sigma^-1(root)`` and ``root``.

With this convention the dual is simply ``(phi, alpha)`` and the dual of
the dual is the original map, dart for dart.
"""
from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import inf
from typing import Callable, Iterable, Iterator, Sequence

__all__ = [
    "MapError",
    "DisconnectedMapError",
    "NotADoubleEdgeError",
    "BudgetExceededError",
    "DartMap",
    "EdgeClassification",
    "CountTable",
    "TRIANGULATION_CLASSES",
    "trace_faces",
    "genus",
    "dual",
    "cut_components",
    "side_genera",
    "zip_double_edge",
    "glue_double_edge",
    "double_edges",
    "loops",
    "classify_edges",
    "is_triangulation",
    "is_in_class",
    "generate_maps",
    "cubic_maps",
    "triangulations",
    "generate_census",
    "radial_map",
    "edgewidth",
    "facewidth",
    "classes_of",
    "census_records",
    "zipping_correspondence",
    "CorrespondenceReport",
    "TRIANGULATION_BUDGET",
    "GENERAL_BUDGET",
    "HARD_CAP",
]

# default and hard budgets (edges)
TRIANGULATION_BUDGET = 9
GENERAL_BUDGET = 7
HARD_CAP = {"cubic": 15, "triangulation": 15, "general": 8}


class MapError(Exception):
    pass


class DisconnectedMapError(MapError, ValueError):
    pass


class NotADoubleEdgeError(MapError, ValueError):
    pass


class BudgetExceededError(MapError, RuntimeError):
    def __init__(self, message: str, estimate: float | None = None):
        super().__init__(message if estimate is None else f"{message} (estimated {estimate:.3g} objects)")
        self.estimate = estimate


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


def _orbit_index(orbits: Iterable[Sequence[int]], n: int) -> list[int]:
    idx = [0] * n
    for k, cyc in enumerate(orbits):
        for d in cyc:
            idx[d] = k
    return idx


@dataclass(frozen=True)
class DartMap:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    root: int = 0

    def __post_init__(self):
        n = len(self.sigma)
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "alpha", tuple(self.alpha))
        if len(self.alpha) != n or n % 2:
            raise MapError("sigma and alpha must act on the same even number of darts")
        if sorted(self.sigma) != list(range(n)):
            raise MapError("sigma is not a permutation")
        for d, e in enumerate(self.alpha):
            if not 0 <= e < n or e == d or self.alpha[e] != d:
                raise MapError("alpha must be a fixed-point-free involution")
        if n and not 0 <= self.root < n:
            raise MapError("root dart out of range")

    # structure -----------------------------------------------------------
    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @property
    def edge_count(self) -> int:
        return len(self.sigma) // 2

    @property
    def phi(self) -> tuple[int, ...]:
        s, a = self.sigma, self.alpha
        return tuple(s[a[d]] for d in range(len(s)))

    def vertices(self) -> list[tuple[int, ...]]:
        return _orbits(self.sigma)

    def faces(self) -> list[tuple[int, ...]]:
        return _orbits(self.phi)

    def edges(self) -> list[tuple[int, int]]:
        return [(d, e) for d, e in enumerate(self.alpha) if d < e]

    def vertex_of(self) -> list[int]:
        return _orbit_index(self.vertices(), self.dart_count)

    def face_of(self) -> list[int]:
        return _orbit_index(self.faces(), self.dart_count)

    def is_connected(self) -> bool:
        n = self.dart_count
        if n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.sigma[d], self.alpha[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == n

    def euler_characteristic(self) -> int:
        return len(self.vertices()) - self.edge_count + len(self.faces())

    # canonical form ------------------------------------------------------
    def traversal(self, root: int | None = None) -> list[int]:
        """Darts in breadth-first order from ``root`` (following sigma, then alpha)."""
        root = self.root if root is None else root
        order = [root]
        seen = {root}
        i = 0
        while i < len(order):
            d = order[i]
            for e in (self.sigma[d], self.alpha[d]):
                if e not in seen:
                    seen.add(e)
                    order.append(e)
            i += 1
        return order

    def canonical_code(self, root: int | None = None) -> tuple[int, ...]:
        """Relabelling-invariant code; equal codes iff root-preserving isomorphic."""
        if self.dart_count == 0:
            return ()
        order = self.traversal(root)
        if len(order) != self.dart_count:
            raise DisconnectedMapError("canonical code needs a connected map")
        idx = {d: i for i, d in enumerate(order)}
        return tuple(idx[self.sigma[d]] for d in order) + tuple(idx[self.alpha[d]] for d in order)

    def canonical(self, root: int | None = None) -> "DartMap":
        code = self.canonical_code(root)
        n = len(code) // 2
        return DartMap(code[:n], code[n:], 0)

    @classmethod
    def from_code(cls, code: Sequence[int]) -> "DartMap":
        n = len(code) // 2
        return cls(tuple(code[:n]), tuple(code[n:]), 0)

    def relabel(self, perm: Sequence[int]) -> "DartMap":
        """Same map with dart ``d`` renamed ``perm[d]``."""
        n = self.dart_count
        sigma = [0] * n
        alpha = [0] * n
        for d in range(n):
            sigma[perm[d]] = perm[self.sigma[d]]
            alpha[perm[d]] = perm[self.alpha[d]]
        return DartMap(tuple(sigma), tuple(alpha), perm[self.root])

    def reroot(self, root: int) -> "DartMap":
        return DartMap(self.sigma, self.alpha, root)

    @classmethod
    def from_rotations(cls, rotations: Sequence[Sequence[int]], alpha: Sequence[int] | dict, root: int = 0):
        """Build from per-vertex dart cycles and an edge pairing."""
        n = sum(len(r) for r in rotations)
        sigma = [0] * n
        for rot in rotations:
            for i, d in enumerate(rot):
                sigma[d] = rot[(i + 1) % len(rot)]
        if isinstance(alpha, dict):
            alpha = [alpha[d] for d in range(n)]
        return cls(tuple(sigma), tuple(alpha), root)


def trace_faces(m: DartMap) -> list[tuple[int, ...]]:
    return m.faces()


def genus(m: DartMap) -> int:
    if not m.is_connected():
        raise DisconnectedMapError("genus is defined for connected maps")
    chi = m.euler_characteristic()
    g2 = 2 - chi
    if g2 < 0 or g2 % 2:
        raise MapError(f"Euler characteristic {chi} is not that of an orientable surface")
    return g2 // 2


def dual(m: DartMap) -> DartMap:
    return DartMap(m.phi, m.alpha, m.root)


# ---------------------------------------------------------------------------
# cutting along edge sets
# ---------------------------------------------------------------------------


def cut_components(m: DartMap, cut_edges: Iterable[int]) -> list[set[int]]:
    """Components of the surface after cutting along the given edges.

    Edges are named by either of their darts.  A component is returned as
    the set of darts ``d`` whose corner (``sigma^-1 d``, ``d``) lies in it.
    Corners of one face stay together; neighbouring corners at a vertex are
    separated exactly when the dart between them lies on a cut edge.
    """
    n = m.dart_count
    cut = set()
    for d in cut_edges:
        cut.add(d)
        cut.add(m.alpha[d])
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    phi = m.phi
    for d in range(n):
        union(d, phi[d])
        # dart d lies between corner d and corner sigma(d)
        if d not in cut:
            union(d, m.sigma[d])
    groups: dict[int, set[int]] = {}
    for d in range(n):
        groups.setdefault(find(d), set()).add(d)
    return sorted(groups.values(), key=min)


def side_genera(m: DartMap, cycle_edges: Iterable[int]) -> list[int]:
    """Genera of the pieces obtained by cutting along a simple cycle.

    Every piece has one boundary circle per traversal of the cycle through
    it, so this is only meaningful for simple cycles (each vertex visited
    once) and for single loops.
    """
    cycle = set()
    for d in cycle_edges:
        cycle.add(d)
        cycle.add(m.alpha[d])
    comps = cut_components(m, cycle)
    vof = m.vertex_of()
    fof = m.face_of()
    cycle_vertices = {vof[d] for d in cycle}
    out = []
    for comp in comps:
        verts = {vof[d] for d in comp} - cycle_vertices
        edges = {min(d, m.alpha[d]) for d in comp if d not in cycle}
        faces = {fof[d] for d in comp}
        chi = len(verts) - len(edges) + len(faces)
        boundaries = 1 if len(comps) == 2 else 2
        g2 = 2 - boundaries - chi
        if g2 < 0 or g2 % 2:
            raise MapError("side genus computation failed; is the cycle simple?")
        out.append(g2 // 2)
    return out


# ---------------------------------------------------------------------------
# loops, double edges and zipping
# ---------------------------------------------------------------------------


def loops(m: DartMap) -> list[int]:
    """Loop edges, each named by its smaller dart."""
    vof = m.vertex_of()
    return [d for d, e in m.edges() if vof[d] == vof[e]]


def double_edges(m: DartMap) -> list[tuple[int, int]]:
    """All pairs of parallel non-loop edges, each edge named by its smaller dart."""
    vof = m.vertex_of()
    bundles: dict[tuple[int, int], list[int]] = {}
    for d, e in m.edges():
        u, v = vof[d], vof[e]
        if u != v:
            bundles.setdefault((min(u, v), max(u, v)), []).append(d)
    out = []
    for key in sorted(bundles):
        out.extend(combinations(bundles[key], 2))
    return out


def _zip_permutations(m: DartMap, e1: int, e2: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, int, int, int]]:
    vof = m.vertex_of()
    a, a2 = e1, m.alpha[e1]
    b = e2 if vof[e2] == vof[a] else m.alpha[e2]
    b2 = m.alpha[b]
    if vof[a] == vof[a2] or vof[b] != vof[a] or vof[b2] != vof[a2] or {a, a2} == {b, b2}:
        raise NotADoubleEdgeError(f"edges {e1} and {e2} do not form a double edge")
    sigma = list(m.sigma)
    alpha = list(m.alpha)
    # split each end vertex at the two darts: (a X b Y) -> (a X)(b Y)
    for p, q in ((a, b), (a2, b2)):
        pp = m.sigma.index(p)
        qq = m.sigma.index(q)
        sigma[pp], sigma[qq] = q, p
    # the left piece gets edge a-b2, the right piece b-a2
    alpha[a], alpha[b2] = b2, a
    alpha[b], alpha[a2] = a2, b
    return tuple(sigma), tuple(alpha), (a, b2, b, a2)


def _components(sigma, alpha) -> list[list[int]]:
    n = len(sigma)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            d = stack.pop()
            comp.append(d)
            for e in (sigma[d], alpha[d]):
                if not seen[e]:
                    seen[e] = True
                    stack.append(e)
        comps.append(sorted(comp))
    return comps


def _restrict(sigma, alpha, darts: Sequence[int], root: int) -> DartMap:
    idx = {d: i for i, d in enumerate(darts)}
    return DartMap(tuple(idx[sigma[d]] for d in darts), tuple(idx[alpha[d]] for d in darts), idx[root])


@dataclass(frozen=True)
class ZipResult:
    """Outcome of zipping; ``pieces[0]`` carries the original root.

    ``marked`` is the zipped edge of the root piece (a dart of it).  For a
    separating zip, ``other_roots`` are the two admissible root darts of
    the second piece, both on its zipped edge.
    """

    pieces: tuple[DartMap, ...]
    marked: int
    other_roots: tuple[int, ...] = ()

    @property
    def separated(self) -> bool:
        return len(self.pieces) == 2

    def rooted_outputs(self) -> list[tuple[DartMap, ...]]:
        if not self.separated:
            return [self.pieces]
        return [(self.pieces[0], self.pieces[1].reroot(r)) for r in self.other_roots]


def zip_double_edge(m: DartMap, pair: tuple[int, int]) -> ZipResult:
    """Cut along the double edge ``pair`` and close each hole with one edge."""
    sigma, alpha, (a, b2, b, a2) = _zip_permutations(m, *pair)
    comps = _components(sigma, alpha)
    if len(comps) == 1:
        piece = DartMap(sigma, alpha, m.root)
        return ZipResult((piece,), a)
    rc = next(c for c in comps if m.root in c)
    oc = next(c for c in comps if m.root not in c)
    root_piece = _restrict(sigma, alpha, rc, m.root)
    marked_dart = a if a in rc else b
    idx_r = {d: i for i, d in enumerate(rc)}
    other_edge = (b, a2) if a in rc else (a, b2)
    idx_o = {d: i for i, d in enumerate(oc)}
    other = _restrict(sigma, alpha, oc, other_edge[0])
    return ZipResult((root_piece, other), idx_r[marked_dart], (idx_o[other_edge[0]], idx_o[other_edge[1]]))


def glue_double_edge(first: DartMap, marked: int, second: DartMap, twist: bool = False) -> tuple[DartMap, tuple[int, int]]:
    """Inverse of a separating zip.

    Cuts ``first`` along the edge of dart ``marked`` and ``second`` along its
    root edge and glues the two holes; ``twist`` selects which of the two
    identifications is used.  Returns the glued map (rooted at the root of
    ``first``) and the resulting double edge.
    """
    n1 = first.dart_count
    sigma = list(first.sigma) + [d + n1 for d in second.sigma]
    alpha = list(first.alpha) + [d + n1 for d in second.alpha]
    a, b2 = marked, first.alpha[marked]
    r = second.root + n1
    b, a2 = (r, alpha[r]) if not twist else (alpha[r], r)
    # inverse of the zip: rejoin (a X)(b Y) -> (a X b Y) and restore a-a2, b-b2
    for p, q in ((a, b), (a2, b2)):
        pp = sigma.index(p)
        qq = sigma.index(q)
        sigma[pp], sigma[qq] = q, p
    alpha[a], alpha[a2] = a2, a
    alpha[b], alpha[b2] = b2, b
    return DartMap(tuple(sigma), tuple(alpha), first.root), (a, b)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

PLANAR = "planar"
NONPLANAR_SEPARATING = "nonplanar-separating"
NONSEPARATING = "nonseparating"
SEPARATING = "separating"


@dataclass(frozen=True)
class EdgeClassification:
    """Kinds of edges of an embedded multigraph.

    Edges are named by their smaller dart.  ``double_topology`` maps each
    double edge (pair of edge names) to planar / nonplanar-separating /
    nonseparating; ``loop_topology`` maps each loop to separating /
    nonseparating; ``separating_loop_pairs`` lists pairs of loops which,
    cut together, disconnect the surface.
    """

    kind: dict = field(default_factory=dict)
    double_topology: dict = field(default_factory=dict)
    loop_topology: dict = field(default_factory=dict)
    separating_loop_pairs: frozenset = frozenset()

    def has_loop(self) -> bool:
        return bool(self.loop_topology)

    def has_double(self, *kinds: str) -> bool:
        return any(t in kinds for t in self.double_topology.values()) if kinds else bool(self.double_topology)

    def has_separating_loop(self) -> bool:
        return SEPARATING in self.loop_topology.values()

    def signature(self) -> tuple:
        """Counts by kind; equal for all rootings of one embedded graph."""
        return (tuple(sorted(Counter(self.kind.values()).items())),
                tuple(sorted(Counter(self.double_topology.values()).items())),
                tuple(sorted(Counter(self.loop_topology.values()).items())),
                len(self.separating_loop_pairs))


def _double_topology(m: DartMap, pair: tuple[int, int]) -> str:
    z = zip_double_edge(m, pair)
    if not z.separated:
        return NONSEPARATING
    if any(genus(p) == 0 for p in z.pieces):
        return PLANAR
    return NONPLANAR_SEPARATING


def classify_edges(m: DartMap) -> EdgeClassification:
    vof = m.vertex_of()
    lps = loops(m)
    dbl = double_edges(m)
    in_double = {e for p in dbl for e in p}
    kind = {}
    for d, e in m.edges():
        if vof[d] == vof[e]:
            kind[d] = "loop"
        elif d in in_double:
            kind[d] = "double"
        else:
            kind[d] = "single"
    double_topology = {p: _double_topology(m, p) for p in dbl}
    loop_topology = {
        l: SEPARATING if len(cut_components(m, [l])) > 1 else NONSEPARATING for l in lps
    }
    sep_pairs = frozenset(
        (l1, l2) for l1, l2 in combinations(lps, 2) if len(cut_components(m, [l1, l2])) > 1
    )
    return EdgeClassification(kind, double_topology, loop_topology, sep_pairs)


TRIANGULATION_CLASSES = ("T", "S", "Shat", "N", "R", "M")


def is_triangulation(m: DartMap) -> bool:
    return m.dart_count > 0 and all(len(f) == 3 for f in m.faces())


def is_in_class(m: DartMap, cls: str, classification: EdgeClassification | None = None) -> bool:
    """Membership in the triangulation classes.

    T: any triangulation.  S: no loops or double edges.  Shat: no loops.
    R: no loops, no planar double edges.  N: no loops, no separating double
    edges.  M: no separating loops, separating double edges, or separating
    pairs of loops.
    """
    if cls not in TRIANGULATION_CLASSES:
        raise ValueError(f"unknown class {cls!r}; expected one of {TRIANGULATION_CLASSES}")
    if not is_triangulation(m):
        return False
    if cls == "T":
        return True
    c = classification or classify_edges(m)
    if cls == "S":
        return not c.has_loop() and not c.has_double()
    if cls == "Shat":
        return not c.has_loop()
    if cls == "R":
        return not c.has_loop() and not c.has_double(PLANAR)
    if cls == "N":
        return not c.has_loop() and not c.has_double(PLANAR, NONPLANAR_SEPARATING)
    return (not c.has_separating_loop() and not c.has_double(PLANAR, NONPLANAR_SEPARATING)
            and not c.separating_loop_pairs)


def classes_of(m: DartMap) -> list[str]:
    c = classify_edges(m)
    return [k for k in TRIANGULATION_CLASSES if is_in_class(m, k, c)]


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------


def _estimate_rooted(m: int, family: str) -> float:
    """Rough count of rooted maps with m edges over all genera."""
    from math import factorial

    n = 2 * m
    pairings = 1.0
    for k in range(n - 1, 0, -2):
        pairings *= k
    if family == "cubic":
        v = n // 3
        return pairings * n / (3 ** v * factorial(v))
    # general maps: (2m)! * 2m / ... grows like (2m-1)!! * m, adequate as an order of magnitude
    return pairings * m


def generate_maps(m: int, family: str = "general", partition: tuple[int, int] = (0, 1),
                  split_depth: int = 2) -> Iterator[DartMap]:
    """Every rooted map with ``m`` edges exactly once (all genera).

    Darts are created in breadth-first order: the root vertex gets darts
    ``0..k-1``; the smallest unpaired dart is then paired either with a
    later unpaired dart or with the first dart of a brand-new vertex.  The
    labels are thus the canonical traversal labels, so no map is produced
    twice and no isomorphism test is needed.

    ``family`` is ``general`` or ``cubic`` (all vertices of degree three).
    ``partition=(i, k)`` keeps only the branches numbered ``i mod k`` at
    ``split_depth`` decisions, for parallel runs.
    """
    if family not in ("general", "cubic"):
        raise ValueError("family must be 'general' or 'cubic'")
    total = 2 * m
    if m == 0:
        if family == "general" and partition[0] == 0:
            yield DartMap((), (), 0)
        return
    if family == "cubic" and m % 3:
        return
    degrees = (3,) if family == "cubic" else None
    sigma: list[int] = []
    alpha: list[int] = []
    part_i, part_k = partition
    counter = [0]

    def add_vertex(k):
        start = len(sigma)
        for i in range(k):
            sigma.append(start + (i + 1) % k)
            alpha.append(-1)
        return start

    def drop_vertex(k):
        del sigma[-k:]
        del alpha[-k:]

    def choices_for_degree():
        room = total - len(sigma)
        return degrees if degrees is not None else range(1, room + 1)

    def rec(pos, depth):
        if depth == split_depth and part_k > 1:
            c = counter[0]
            counter[0] += 1
            if c % part_k != part_i:
                return
        while pos < len(alpha) and alpha[pos] != -1:
            pos += 1
        if pos == len(alpha):
            if len(alpha) == total:
                yield DartMap(tuple(sigma), tuple(alpha), 0)
            return
        d = pos
        for e in range(d + 1, len(alpha)):
            if alpha[e] == -1:
                alpha[d], alpha[e] = e, d
                yield from rec(d + 1, depth + 1)
                alpha[d] = alpha[e] = -1
        for k in choices_for_degree():
            if len(sigma) + k > total:
                continue
            start = add_vertex(k)
            alpha[d], alpha[start] = start, d
            yield from rec(d + 1, depth + 1)
            alpha[d] = -1
            drop_vertex(k)

    for k in choices_for_degree():
        if k > total:
            continue
        add_vertex(k)
        yield from rec(0, 0)
        drop_vertex(k)


def cubic_maps(m: int, genus_filter: int | None = None, **kw) -> Iterator[DartMap]:
    for mp in generate_maps(m, "cubic", **kw):
        if genus_filter is None or genus(mp) == genus_filter:
            yield mp


def triangulations(m: int, genus_filter: int | None = None, **kw) -> Iterator[DartMap]:
    """Rooted triangulations with ``m`` edges, as duals of rooted cubic maps."""
    for mp in cubic_maps(m, genus_filter, **kw):
        yield dual(mp)


@dataclass
class CountTable:
    rows: dict = field(default_factory=dict)  # (genus, edges, label) -> count
    metadata: dict = field(default_factory=dict)

    def add(self, g: int, m: int, label: str, count: int):
        if count < 0:
            raise ValueError("counts are non-negative")
        key = (g, m, label)
        self.rows[key] = self.rows.get(key, 0) + count

    def get(self, g: int, m: int, label: str) -> int:
        return self.rows.get((g, m, label), 0)

    def merge(self, other: "CountTable") -> "CountTable":
        out = CountTable(dict(self.rows), dict(self.metadata))
        for (g, m, label), c in other.rows.items():
            out.add(g, m, label, c)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["genus", "edges", "class", "count"])
        for (g, m, label) in sorted(self.rows):
            w.writerow([g, m, label, self.rows[(g, m, label)]])
        return buf.getvalue()


CENSUS_VERSION = 1


def _census_records(m: int, family: str, partition=(0, 1)) -> list[dict]:
    out = []
    if family == "triangulation":
        for mp in triangulations(m, partition=partition):
            g = genus(mp)
            out.append({"code": list(mp.canonical_code()), "g": g, "m": m, "classes": classes_of(mp)})
    else:
        for mp in generate_maps(m, family, partition=partition):
            out.append({"code": list(mp.canonical_code()), "g": genus(mp), "m": m, "classes": [family]})
    return out


def _census_worker(args):
    return _census_records(*args)


def census_records(m: int, family: str = "triangulation", jobs: int = 1,
                   cache_dir: str | None = None) -> list[dict]:
    """Per-map records (canonical code, genus, classes) for all genera, cached on disk."""
    if family not in ("triangulation", "cubic", "general"):
        raise ValueError(f"unknown family {family!r}")
    budget = HARD_CAP[family]
    if m > budget:
        raise BudgetExceededError(f"{family} census with {m} edges exceeds the hard cap {budget}",
                                  _estimate_rooted(m, "general" if family == "general" else "cubic"))
    path = None
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        path = os.path.join(cache_dir, f"{family}-m{m}-v{CENSUS_VERSION}.jsonl")
        if os.path.exists(path):
            with open(path) as fh:
                return [json.loads(line) for line in fh if line.strip()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_census_worker, [(m, family, (i, jobs)) for i in range(jobs)]))
        records = [r for p in parts for r in p]
    else:
        records = _census_records(m, family)
    records.sort(key=lambda r: (r["g"], r["code"]))
    if path:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            for r in records:
                fh.write(json.dumps(r, separators=(",", ":")) + "\n")
        os.replace(tmp, path)
    return records


def generate_census(edges: int, genus_: int, predicate: str | Callable[[DartMap], bool] = "T",
                    family: str = "triangulation", jobs: int = 1, cache_dir: str | None = None,
                    budget: int | None = None) -> CountTable:
    """Count rooted maps with the given edges and genus satisfying ``predicate``.

    ``predicate`` is a class label (T, S, Shat, N, R, M for triangulations;
    ``all`` for any family) or a callable on :class:`DartMap`.
    """
    if budget is None:
        budget = GENERAL_BUDGET if family == "general" else TRIANGULATION_BUDGET
    if edges > budget:
        raise BudgetExceededError(f"{edges} edges exceeds the budget of {budget}",
                                  _estimate_rooted(edges, "general" if family == "general" else "cubic"))
    table = CountTable(metadata={"version": CENSUS_VERSION, "family": family,
                                 "predicate": predicate if isinstance(predicate, str) else getattr(predicate, "__name__", "callable")})
    label = predicate if isinstance(predicate, str) else table.metadata["predicate"]
    count = 0
    # V + F = 2 - 2g + m must leave room for at least one vertex and one face
    if 2 - 2 * genus_ + edges >= 2:
        if isinstance(predicate, str):
            for rec in census_records(edges, family, jobs, cache_dir):
                if rec["g"] != genus_:
                    continue
                if predicate == "all" or predicate in rec["classes"]:
                    count += 1
        else:
            for rec in census_records(edges, family, jobs, cache_dir):
                if rec["g"] == genus_ and predicate(DartMap.from_code(rec["code"])):
                    count += 1
    table.add(genus_, edges, label, count)
    return table


# ---------------------------------------------------------------------------
# widths
# ---------------------------------------------------------------------------


def radial_map(m: DartMap) -> DartMap:
    """Vertex-face incidence map: one edge per corner.

    Corner ``c`` (the one in front of dart ``c``) gives radial darts ``2c``
    (at the vertex) and ``2c+1`` (at the face).  Around a vertex the radial
    darts follow sigma, around a face they follow phi backwards (the
    orientation for which every radial face is a quadrangle).
    """
    n = m.dart_count
    phi_inv = [0] * n
    for d, e in enumerate(m.phi):
        phi_inv[e] = d
    sigma = [0] * (2 * n)
    alpha = [0] * (2 * n)
    for c in range(n):
        sigma[2 * c] = 2 * m.sigma[c]
        sigma[2 * c + 1] = 2 * phi_inv[c] + 1
        alpha[2 * c] = 2 * c + 1
        alpha[2 * c + 1] = 2 * c
    return DartMap(tuple(sigma), tuple(alpha), 2 * m.root)


def _simple_cycles_by_length(m: DartMap, length: int, limit: int) -> Iterator[list[int]]:
    """Simple cycles with ``length`` edges, each given as a list of darts (one per edge)."""
    vof = m.vertex_of()
    nv = max(vof) + 1 if vof else 0
    out_darts: list[list[int]] = [[] for _ in range(nv)]
    for d in range(m.dart_count):
        out_darts[vof[d]].append(d)
    produced = [0]
    seen_sets = set()

    def extend(start, v, path_darts, used_vertices):
        if len(path_darts) == length:
            return
        for d in out_darts[v]:
            w = vof[m.alpha[d]]
            edge = min(d, m.alpha[d])
            if any(min(p, m.alpha[p]) == edge for p in path_darts):
                continue
            if w == start and len(path_darts) + 1 == length:
                key = frozenset(min(p, m.alpha[p]) for p in path_darts + [d])
                if key not in seen_sets:
                    seen_sets.add(key)
                    produced[0] += 1
                    if produced[0] > limit:
                        raise BudgetExceededError("too many cycles to enumerate", produced[0])
                    yield path_darts + [d]
                continue
            if w in used_vertices or w < start:
                continue
            used_vertices.add(w)
            yield from extend(start, w, path_darts + [d], used_vertices)
            used_vertices.discard(w)

    for s in range(nv):
        yield from extend(s, s, [], {s})


def is_essential(m: DartMap, cycle: Sequence[int]) -> bool:
    """A simple cycle is essential unless cutting along it splits off a disc."""
    comps = cut_components(m, cycle)
    if len(comps) == 1:
        return True
    return all(g >= 1 for g in side_genera(m, cycle))


def edgewidth(m: DartMap, limit: int = 200000) -> float | int:
    """Length of a shortest essential cycle (``inf`` on the sphere)."""
    if genus(m) == 0:
        return inf
    for length in range(1, m.edge_count + 1):
        for cyc in _simple_cycles_by_length(m, length, limit):
            if is_essential(m, cyc):
                return length
    raise MapError("no essential cycle found on a surface of positive genus")


def facewidth(m: DartMap, limit: int = 200000) -> float | int:
    """Fewest intersections of an essential closed curve with the map."""
    if genus(m) == 0:
        return inf
    ew = edgewidth(radial_map(m), limit)
    return ew // 2


# ---------------------------------------------------------------------------
# zipping as a 2-to-2 correspondence
# ---------------------------------------------------------------------------


def _marked_key(m: DartMap, marked: int) -> tuple:
    order = m.traversal()
    idx = {d: i for i, d in enumerate(order)}
    return m.canonical_code(), tuple(sorted((idx[marked], idx[m.alpha[marked]])))


@dataclass(frozen=True)
class CorrespondenceReport:
    case: str
    genus: int
    edges: int
    sources: int  # triangulations with a marked double edge of this case
    target_size: int
    distinct_images: int
    multiplicities: tuple  # sorted distinct multiplicities of images
    outside_target: int

    @property
    def holds(self) -> bool:
        return (self.outside_target == 0 and self.distinct_images == self.target_size
                and self.multiplicities in ((2,), ()) and self.sources == self.target_size)


def zipping_correspondence(max_edges: int = 6) -> list[CorrespondenceReport]:
    """Check that zipping planar / nonplanar-separating double edges is 2-to-2.

    Each triangulation with a marked double edge yields two pairs (root
    piece with its zipped edge marked, other piece rooted at either dart of
    its zipped edge).  The correspondence holds when every element of the
    target product set is hit exactly twice and nothing else is hit.  The
    target pairs a triangulation with a marked non-loop edge with one rooted
    at a non-loop edge.
    """
    by_size: dict[tuple[int, int], list[DartMap]] = {}
    for m in range(3, max_edges + 1, 3):
        for t in triangulations(m):
            by_size.setdefault((genus(t), m), []).append(t)

    images: dict[tuple, Counter] = {}
    sources: Counter = Counter()
    for (g, m), ts in sorted(by_size.items()):
        for t in ts:
            for pair in double_edges(t):
                kind = _double_topology(t, pair)
                if kind == NONSEPARATING:
                    continue
                key = (kind, g, m)
                sources[key] += 1
                z = zip_double_edge(t, pair)
                bucket = images.setdefault(key, Counter())
                for first, second in z.rooted_outputs():
                    bucket[(_marked_key(first, z.marked), second.canonical_code(),
                            genus(first), first.edge_count, genus(second), second.edge_count)] += 1

    # gluing needs a non-loop edge on both sides, otherwise the two glued
    # edges share both ends and form a pair of loops instead of a double edge
    marked_sizes: Counter = Counter()
    rooted_sizes: Counter = Counter()
    for key, ts in by_size.items():
        for t in ts:
            lp = set(loops(t))
            marked_sizes[key] += t.edge_count - len(lp)
            if min(t.root, t.alpha[t.root]) not in lp:
                rooted_sizes[key] += 1

    reports = []
    genera = sorted({g for g, _ in by_size})
    for kind in (PLANAR, NONPLANAR_SEPARATING):
        for g in range(0, max(genera) + 1):
            for m in range(3, max_edges + 1, 3):
                target = 0
                admissible = set()
                for m1 in range(3, m - 2):
                    m2 = m - m1
                    if kind == PLANAR:
                        pairs = {(g, 0), (0, g)}
                    else:
                        pairs = {(g1, g - g1) for g1 in range(1, g)}
                    for g1, g2 in pairs:
                        target += marked_sizes[(g1, m1)] * rooted_sizes[(g2, m2)]
                        admissible.add((g1, m1, g2, m2))
                key = (kind, g, m)
                bucket = images.get(key, Counter())
                if not target and not bucket:
                    continue
                outside = sum(1 for k in bucket if (k[2], k[3], k[4], k[5]) not in admissible)
                reports.append(CorrespondenceReport(
                    kind, g, m, sources[key], target, len(bucket),
                    tuple(sorted(set(bucket.values()))), outside))
    return reports
