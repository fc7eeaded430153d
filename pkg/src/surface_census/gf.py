"""Exact generating-function systems for cubic maps and cubic multigraphs.

Every shipped equation lives in a :class:`NamedSystem`; solvers return exact
:class:`~surface_census.series.TruncatedSeries`.  The catalytic equations for
quasi-triangulations are iterated with the catalytic variable ``u`` kept as
exact polynomial data, and the closed equations derived from them by
elimination are cross-checked against independent routes (census, resultants,
reference polynomials shipped as text or golden files).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import factorial
from typing import Sequence

from .graphs import (
    class_count,
    connected_cubic,
    connectivity_profile,
)
from .maps import TRIANGULATION_BUDGET, generate_census
from .series import (
    Poly,
    PolynomialSystem,
    ResidualError,
    TruncatedSeries,
    newton_solve,
    resultant,
)

__all__ = [
    "GFError",
    "CensusOrderError",
    "NamedSystem",
    "systems",
    "CURVES",
    "curve",
    "golden",
    "solve_system",
    "solve_S0",
    "solve_quasi_P0",
    "solve_Shat0",
    "solve_Shat0_closed",
    "quasi_residual",
    "quadratic_method_identity",
    "catalytic_resultant",
    "guess_annihilator",
    "derive_shat0_cubic",
    "derive_octic",
    "derive_network_sextic",
    "q_curve",
    "solve_network",
    "QSolution",
    "solve_Q",
    "map_class_series",
    "graph_class_series",
    "graph_xy_series",
    "network_oracle",
    "q_oracle",
    "check_rtot",
    "planar_substitution_check",
    "connected_planar_series",
    "assemble_G0",
    "g0_census",
    "weighted_total",
    "dominance_check",
    "two_connected_bound_check",
    "connected_bound_check",
    "cube_reduced",
    "cube_reduced_series",
]


class GFError(Exception):
    """Base class for generating-function errors."""


class CensusOrderError(GFError, ValueError):
    """The census cannot supply data to the requested order."""


# ---------------------------------------------------------------------------
# shipped polynomials
# ---------------------------------------------------------------------------

# (function variable, series variable, text); the text is parsed with those
# two variables in that order.
_REFERENCE = {
    "s0_quartic": ("S", "y",
                   "S**4 + 3*S**3 + S**2*(3 + 8*y**3) + S*(1 - 20*y**3) - (1 - 16*y**3)*y**3"),
    "n_sextic": ("N", "v",
                 "16*N**6*v**2 + N**5*v*(32 + 96*v) + N**4*(16 + 56*v + 240*v**2)"
                 " + N**3*(24 - 25*v + 320*v**2) + N**2*(12 - 91*v + 240*v**2)"
                 " + N*(2 - 43*v + 96*v**2) - v*(1 - 16*v)"),
    # the unknown here is 1 + A (value 1 at v = 0)
    "a_octic": ("A", "v",
                "4 - 52*A**2 + 240*A**4 - 448*A**6 + 256*A**8"
                " + A**3*(336 + 1848*A**2 - 2400*A**4)*v + A**6*(3017 + 1024*A**2)*v**2"
                " + 4096*A**9*v**3"),
    "rho1_sextic": (None, "u",
                    "-46656 + 139968*u + 9524176*u**2 - 1763856*u**3 + 121716*u**4"
                    " + 8748*u**5 + 729*u**6"),
    "rho3_sextic": (None, "u",
                    "-46656 - 139968*u + 6043120*u**2 - 1717200*u**3 - 69228*u**4"
                    " - 8748*u**5 + 729*u**6"),
}

# derived by elimination; pinned in golden files only
_DERIVED = {
    "shat0_cubic": ("S", "y"),
    "q_curve": ("Q", "v"),
}


def golden(name: str) -> Poly:
    """The pinned polynomial ``name`` from the package data directory."""
    text = resources.files(__package__).joinpath("data").joinpath(f"{name}.poly").read_text()
    return Poly.deserialize(text)


def curve(name: str) -> Poly:
    """Polynomial of a shipped curve, variables (series variable, function)."""
    if name in _REFERENCE:
        f, z, text = _REFERENCE[name]
        if f is None:
            return Poly.parse(text, (z,))
        return Poly.parse(text, (f, z)).to_vars((z, f))
    if name in _DERIVED:
        f, z = _DERIVED[name]
        return golden(name).to_vars((z, f))
    raise KeyError(name)


CURVES = tuple(_REFERENCE) + tuple(_DERIVED)


@dataclass(frozen=True)
class NamedSystem:
    name: str
    system: PolynomialSystem
    provenance: str
    seed: tuple = ()

    def solve(self, order: int) -> list[TruncatedSeries]:
        return newton_solve(self.system, order, list(self.seed) or None)


def _curve_system(name: str) -> PolynomialSystem:
    f, z, _ = _REFERENCE[name] if name in _REFERENCE else (*_DERIVED[name], None)
    return PolynomialSystem((f,), (z,), z, [curve(name).to_vars((f, z))])


# weighted univariate forms of the parametrised systems: z -> v^(1/3)/2,
# w -> v^(1/2)/2, x^2 y^3 -> v
_NETWORK = (
    "N - u*(1-2*u)/2",
    "v*(1+N)**3 - u*(1-u)**3",
)
_QSYSTEM = (
    "Q - v/2*A - Q**2/2 - v/2",
    "A - Q - S - P - H",
    "S*(A+1) - A**2",
    "P - v/2*A**2 - v*A - v/2",
    "2*H*(1+A) - u*(1-2*u) + u*(1-u)**3",
    "v*(1+A)**3 - u*(1-u)**3",
)


@lru_cache(maxsize=None)
def _systems() -> dict[str, NamedSystem]:
    return {
        "s0_quartic": NamedSystem("s0_quartic", _curve_system("s0_quartic"),
                                  "closed quartic for rooted simple planar triangulations"),
        "shat0_cubic": NamedSystem("shat0_cubic", _curve_system("shat0_cubic"),
                                   "loopless planar triangulations, eliminated from the catalytic equation"),
        "n_sextic": NamedSystem("n_sextic", _curve_system("n_sextic"),
                                "closed sextic for planar networks"),
        "a_octic": NamedSystem("a_octic", _curve_system("a_octic"),
                               "closed equation for one plus the A-series of the loop-rooted system", (1,)),
        "network": NamedSystem("network", PolynomialSystem(("N", "u"), ("v",), "v", _NETWORK),
                               "parametric network pair, weighted univariate form"),
        "q_system": NamedSystem("q_system",
                                PolynomialSystem(("Q", "A", "S", "P", "H", "u"), ("v",), "v", _QSYSTEM),
                                "loop-rooted connected planar system, weighted univariate form"),
    }


def systems() -> dict[str, NamedSystem]:
    return dict(_systems())


def solve_system(name: str, order: int) -> list[TruncatedSeries]:
    return _systems()[name].solve(order)


# ---------------------------------------------------------------------------
# planar triangulations
# ---------------------------------------------------------------------------


def solve_S0(order: int) -> TruncatedSeries:
    """Rooted simple planar triangulations by edges, from the closed quartic."""
    if order < 3:
        raise ValueError("order must be at least 3")
    return solve_system("s0_quartic", order)[0]


def solve_Shat0_closed(order: int) -> TruncatedSeries:
    """Loopless planar triangulations from the eliminated cubic."""
    if order < 3:
        raise ValueError("order must be at least 3")
    return solve_system("shat0_cubic", order)[0]


def _add_into(acc: list, poly: Sequence[int], scale: int = 1, shift: int = 0):
    if len(acc) < len(poly) + shift:
        acc.extend([0] * (len(poly) + shift - len(acc)))
    for i, c in enumerate(poly):
        if c:
            acc[i + shift] += scale * c


def _conv(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _catalytic(order: int, loopless: bool) -> tuple[list[list[int]], list[int]]:
    """Iterate the quasi-triangulation equation degree by degree in y.

    Returns the u-polynomials [y^k]P and the closure coefficients
    S_k = [u^3 y^k]P.  ``loopless`` selects the double-edge variant.
    """
    P: list[list[int]] = [[1]]
    S = [0]
    for k in range(1, order + 1):
        acc: list[int] = []
        sq: list[int] = []
        for i in range(k):
            _add_into(sq, _conv(P[i], P[k - 1 - i]))
        _add_into(acc, sq, shift=2)
        prev = list(P[k - 1])
        if k == 1:
            prev[0] -= 1
        if prev and prev[0]:
            raise ResidualError("catalytic division by u is not exact")
        _add_into(acc, prev[1:])
        if k >= 2:
            _add_into(acc, P[k - 2], -1, 1)
        if loopless:
            for j in range(3, k - 1):
                if S[j]:
                    _add_into(acc, P[k - 2 - j], -S[j], 1)
        else:
            for j in range(3, k):
                if S[j]:
                    _add_into(acc, P[k - j], -S[j])
        while acc and acc[-1] == 0:
            acc.pop()
        P.append(acc)
        S.append(acc[3] if len(acc) > 3 else 0)
    return P, S


def _catalytic_series(P: list[list[int]], order: int, max_u_degree: int | None) -> TruncatedSeries:
    terms = {}
    for k, row in enumerate(P):
        for d, c in enumerate(row):
            if c and (max_u_degree is None or d <= max_u_degree):
                terms[(k, d)] = c
    return TruncatedSeries(("y", "u"), terms, "y", order)


def solve_quasi_P0(order: int, max_u_degree: int | None = None) -> TruncatedSeries:
    """Planar quasi-triangulations P0(y, u) by edges (y) and root-face valency (u).

    The closure S0 = [u^3]P0 is checked against the quartic solution; a
    mismatch raises :class:`ResidualError`.  ``max_u_degree`` only trims the
    returned series.
    """
    if order < 3:
        raise ValueError("order must be at least 3")
    P, S = _catalytic(order, loopless=False)
    if S != solve_S0(order).coefficients():
        raise ResidualError("[u^3]P0 disagrees with the quartic for S0")
    return _catalytic_series(P, order, max_u_degree)


def solve_Shat0(order: int) -> TruncatedSeries:
    """Loopless planar triangulations from the double-edge catalytic equation.

    Validated against the eliminated cubic; disagreement raises.
    """
    if order < 3:
        raise ValueError("order must be at least 3")
    _, S = _catalytic(order, loopless=True)
    out = TruncatedSeries.from_coefficients(S, "y", order)
    if out != solve_Shat0_closed(order):
        raise ResidualError("catalytic iteration disagrees with the eliminated cubic")
    return out


def _embed(s: TruncatedSeries, order: int) -> TruncatedSeries:
    return TruncatedSeries(("y", "u"), {(e[0], 0): c for e, c in s.terms.items()}, "y", order)


def quasi_residual(P: TruncatedSeries, closure: TruncatedSeries, loopless: bool) -> TruncatedSeries:
    """u times (right-hand side minus P) of the catalytic equation."""
    order = P.order
    y = TruncatedSeries.gen("y", ("y", "u"), "y", order)
    u = TruncatedSeries.gen("u", ("y", "u"), "y", order)
    one = TruncatedSeries.const(1, ("y", "u"), "y", order)
    S = _embed(closure, order)
    rhs = u + y * u ** 3 * P * P + y * (P - one) - y * y * u * u * P
    if loopless:
        rhs = rhs - y * y * u * u * S * P
    else:
        rhs = rhs - u * S * (P - one)
    return rhs - u * P


def quadratic_method_identity(order: int) -> bool:
    """(2yu^3 P0 + q)^2 == q^2 + 4y^2u^3 - 4yu^4 - 4yu^4 S0 with q = y - y^2u^2 - u - uS0."""
    P = solve_quasi_P0(order)
    S = _embed(solve_S0(order), order)
    y = TruncatedSeries.gen("y", ("y", "u"), "y", order)
    u = TruncatedSeries.gen("u", ("y", "u"), "y", order)
    q = y - y * y * u * u - u - u * S
    lhs = (2 * y * u ** 3 * P + q) ** 2
    rhs = q * q + 4 * y * y * u ** 3 - 4 * y * u ** 4 - 4 * y * u ** 4 * S
    return lhs == rhs


def catalytic_resultant(loopless: bool) -> Poly:
    """Res_u(D, dD/du) of the discriminant D of the catalytic quadratic in P."""
    V = ("S", "u", "y")
    if loopless:
        b = Poly.parse("y - u - y**2*u**2*(1+S)", V)
        D = b * b - Poly.parse("4*y*u**3*(u - y)", V)
    else:
        q = Poly.parse("y - y**2*u**2 - u - u*S", V)
        D = q * q + Poly.parse("4*y**2*u**3 - 4*y*u**4 - 4*y*u**4*S", V)
    return resultant(D, D.derivative("u"), "u").to_vars(("S", "y"))


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def guess_annihilator(s: TruncatedSeries, deg_f: int, deg_z: int, fname: str = "S") -> Poly | None:
    """Smallest-support polynomial P(z, F) with P(z, s) = 0 to the known order.

    Solves for the coefficients by exact linear algebra; returns ``None``
    unless the solution space is one-dimensional.  The result is only a
    guess until checked by other means.
    """
    z = s.progress
    order = s.order
    powers = [TruncatedSeries.const(1, s.vars, z, order)]
    for _ in range(deg_f):
        powers.append(powers[-1] * s)
    cols = [(i, j) for i in range(deg_f + 1) for j in range(deg_z + 1)]
    if len(cols) >= order + 1:
        raise ValueError("not enough terms to determine the annihilator")
    rows = []
    for n in range(order + 1):
        rows.append([powers[i].coefficient(n - j) if n >= j else Fraction(0) for i, j in cols])
    basis = _nullspace(rows, len(cols))
    if len(basis) != 1:
        return None
    terms = {(j, i): c for (i, j), c in zip(cols, basis[0]) if c}
    return Poly((z, fname), terms).primitive()


def _normalize(p: Poly) -> Poly:
    p = p.primitive()
    lead = p.terms[max(p.terms)]
    return p * -1 if lead < 0 else p


def derive_shat0_cubic(order: int = 30) -> Poly:
    """Annihilating cubic of the loopless series, variables (y, S).

    Guessed from the catalytic solution in y^3-sparse form, then proven a
    factor of the catalytic resultant by exact division.
    """
    _, S = _catalytic(order, loopless=True)
    s = TruncatedSeries.from_coefficients(S, "y", order)
    cand = guess_annihilator(s, 3, 6)
    if cand is None:
        raise ResidualError("no unique annihilating polynomial of degree (3, 6)")
    full = catalytic_resultant(loopless=True)
    full.exact_div(cand.to_vars(("S", "y")))
    return _normalize(cand)


def derive_octic() -> Poly:
    """Eliminate every unknown but A from the loop-rooted system.

    Returns the primitive polynomial in (v, B) with B = 1 + A.
    """
    V = ("A", "u", "v")
    A, u, v = (Poly.var(n, V) for n in V)
    P = v * A * A / 2 + v * A + v / 2
    two_h = u * (1 - 2 * u) - u * (1 - u) ** 3
    # 2(1+A) Q, with S and H cleared of their (1+A) denominators
    num = 2 * (A - P) * (1 + A) - 2 * A * A - two_h
    e1 = 4 * num * (1 + A) - 4 * (v * A + v) * (1 + A) ** 2 - num * num
    e2 = v * (1 + A) ** 3 - u * (1 - u) ** 3
    r = resultant(e1, e2, "u").to_vars(("A", "v"))
    r = r.substitute("A", Poly.parse("A - 1", ("A", "v")))
    return _normalize(r.to_vars(("v", "A")))


def derive_network_sextic() -> Poly:
    """Eliminate u from the parametric network pair; primitive, in (v, N)."""
    V = ("N", "u", "v")
    e1 = Poly.parse(_NETWORK[0], V) * 2
    e2 = Poly.parse(_NETWORK[1], V)
    r = resultant(e1, e2, "u").to_vars(("N", "v"))
    return _normalize(r.to_vars(("v", "N")))


def q_curve() -> Poly:
    """Curve for Q(v) from the octic via v(1 + A) = 2Q - Q^2."""
    oct_ = curve("a_octic")  # (v, A)
    deg = oct_.degree("A")
    V = ("v", "Q")
    num = Poly.parse("2*Q - Q**2", V)
    out = Poly(V)
    for e, c in oct_.terms.items():
        j, i = e
        out = out + num ** i * Poly(V, {(j + deg - i, 0): c})
    low = min(e[0] for e in out.terms)
    out = Poly(V, {(e[0] - low, e[1]): c for e, c in out.terms.items()})
    return _normalize(out)


# ---------------------------------------------------------------------------
# networks and the loop-rooted system
# ---------------------------------------------------------------------------


def solve_network(order: int) -> TruncatedSeries:
    """N(v) from the parametric pair; checked against the reference sextic."""
    if order < 1:
        raise ValueError("order must be at least 1")
    N, _ = solve_system("network", order)
    sys_ = _systems()["n_sextic"].system
    if not sys_.residuals([N], order)[0].is_zero():
        raise ResidualError("network series does not satisfy the sextic")
    return N


@dataclass(frozen=True)
class QSolution:
    Q: TruncatedSeries
    A: TruncatedSeries
    S: TruncatedSeries
    P: TruncatedSeries
    H: TruncatedSeries
    u: TruncatedSeries


def solve_Q(order: int) -> QSolution:
    """Loop-rooted connected planar system; 1 + A is checked against the octic."""
    if order < 1:
        raise ValueError("order must be at least 1")
    sol = QSolution(*solve_system("q_system", order))
    one = TruncatedSeries.const(1, ("v",), "v", order)
    sys_ = _systems()["a_octic"].system
    if not sys_.residuals([sol.A + one], order)[0].is_zero():
        raise ResidualError("A-series does not satisfy the octic")
    return sol


# ---------------------------------------------------------------------------
# census-backed series
# ---------------------------------------------------------------------------


def map_class_series(cls: str, g: int, max_edges: int, jobs: int = 1,
                     cache_dir: str | None = None, budget: int | None = None) -> TruncatedSeries:
    """Rooted triangulations of class ``cls`` and genus g counted by edges."""
    budget = TRIANGULATION_BUDGET if budget is None else budget
    if max_edges > budget:
        raise CensusOrderError(f"census goes to {budget} edges, asked for {max_edges}")
    coeffs = [0] * (max_edges + 1)
    for m in range(3, max_edges + 1, 3):
        table = generate_census(m, g, cls, jobs=jobs, cache_dir=cache_dir, budget=budget)
        coeffs[m] = table.get(g, m, cls)
    return TruncatedSeries.from_coefficients(coeffs, "y", max_edges)


def _check_vertices(max_vertices: int, cap: int = 8):
    if max_vertices > cap:
        raise CensusOrderError(f"graph census goes to {cap} vertices, asked for {max_vertices}")


def graph_class_series(cls: str, g: int, max_vertices: int, mode: str = "weighted",
                       include_phi: bool = False, fw_min: int | None = None) -> TruncatedSeries:
    """Exponential series in v with [v^k] = (count on 2k vertices)/(2k)!."""
    _check_vertices(max_vertices)
    order = max_vertices // 2
    coeffs = [Fraction(0)] * (order + 1)
    for k in range(1, order + 1):
        wc = class_count(cls, g, 2 * k, include_phi=include_phi, fw_min=fw_min)
        coeffs[k] = Fraction(wc.value(mode)) / factorial(2 * k)
    if cls == "G":
        coeffs[0] = Fraction(1)
    return TruncatedSeries.from_coefficients(coeffs, "v", order)


def graph_xy_series(max_vertices: int, g: int = 0) -> TruncatedSeries:
    """Connected cubic multigraphs of minimum genus <= g, sum of x^n y^m / n! over labellings."""
    _check_vertices(max_vertices)
    terms = {}
    for n in range(2, max_vertices + 1, 2):
        total = sum(info.labelled for info in connected_cubic(n) if info.genus_min <= g)
        terms[(n, 3 * n // 2)] = Fraction(total, factorial(n))
    return TruncatedSeries(("x", "y"), terms, "y", 3 * max_vertices // 2)


def network_oracle(max_vertices: int) -> TruncatedSeries:
    """Edge-rooted 2-connected planar graphs, weighted: [v^k] = sum 3n W labelled / (2k)!."""
    _check_vertices(max_vertices)
    order = max_vertices // 2
    coeffs = [Fraction(0)] * (order + 1)
    for k in range(1, order + 1):
        n = 2 * k
        tot = Fraction(0)
        for info in connected_cubic(n):
            if info.genus_min == 0 and connectivity_profile(info.graph).two_connected:
                tot += 3 * n * info.weight * info.labelled
        coeffs[k] = tot / factorial(n)
    return TruncatedSeries.from_coefficients(coeffs, "v", order)


def q_oracle(max_vertices: int) -> TruncatedSeries:
    """Loop-rooted connected planar graphs, weighted: [v^k] = sum 2 loops W labelled / (2k)!."""
    _check_vertices(max_vertices)
    order = max_vertices // 2
    coeffs = [Fraction(0)] * (order + 1)
    for k in range(1, order + 1):
        n = 2 * k
        tot = Fraction(0)
        for info in connected_cubic(n):
            if info.genus_min == 0:
                tot += 2 * info.graph.loop_count() * info.weight * info.labelled
        coeffs[k] = tot / factorial(n)
    return TruncatedSeries.from_coefficients(coeffs, "v", order)


def check_rtot(g: int, order: int, R: TruncatedSeries | None = None,
               Shat: TruncatedSeries | None = None, jobs: int = 1,
               cache_dir: str | None = None, budget: int | None = None) -> bool:
    """R_g(y(1 + Shat0)) == Shat_g (1 + Shat0) / (1 + Shat0 + y Shat0').

    For g = 0 both sides default to solver output; for g >= 1 to the census.
    Explicit ``R`` / ``Shat`` series override the defaults.
    """
    if g == 0:
        R = solve_S0(order) if R is None else R
        Shat = solve_Shat0(order) if Shat is None else Shat
    else:
        if R is None:
            R = map_class_series("R", g, order, jobs, cache_dir, budget)
        if Shat is None:
            Shat = map_class_series("Shat", g, order, jobs, cache_dir, budget)
    if R.order < order or Shat.order < order:
        raise CensusOrderError("series too short for the requested order")
    R, Shat = R.truncate(order), Shat.truncate(order)
    h0 = solve_Shat0(max(order, 3)).truncate(order)
    one = TruncatedSeries.const(1, ("y",), "y", order)
    y = TruncatedSeries.gen("y", ("y",), "y", order)
    lhs = R.substitute("y", y * (one + h0))
    rhs = Shat * (one + h0) / (one + h0 + h0.pointing("y"))
    return lhs == rhs


def planar_substitution_check(order: int) -> bool:
    """Shat0 == S0(y (1 + Shat0)): loopless planar triangulations are simple
    ones with every edge optionally replaced by a loopless planar one."""
    S, H = solve_S0(order), solve_Shat0(order)
    one = TruncatedSeries.const(1, ("y",), "y", order)
    y = TruncatedSeries.gen("y", ("y",), "y", order)
    return S.substitute("y", y * (one + H)) == H


# ---------------------------------------------------------------------------
# all planar cubic multigraphs
# ---------------------------------------------------------------------------


def connected_planar_series(order: int) -> TruncatedSeries:
    """Weighted connected planar cubic multigraphs without the triple edge."""
    return graph_class_series("C", 0, 2 * order, "weighted", include_phi=False)


def assemble_G0(order: int, phi_term: Fraction | int | str = "census") -> TruncatedSeries:
    """exp(C0 + c v) for the planar class including disconnected graphs.

    ``phi_term`` is the v-coefficient added for the triple edge: ``"census"``
    uses its own weighted contribution W/2! = 1/12, ``"sixth"`` uses 1/6,
    or pass a number.
    """
    if 2 * order > 8:
        raise CensusOrderError("connected census goes to 8 vertices")
    if phi_term == "census":
        phi_term = Fraction(1, 12)
    elif phi_term == "sixth":
        phi_term = Fraction(1, 6)
    C0 = connected_planar_series(order)
    v = TruncatedSeries.gen("v", ("v",), "v", order)
    return (C0 + v * Fraction(phi_term)).exp()


def g0_census(order: int) -> TruncatedSeries:
    """All planar cubic multigraphs (components may be triple edges), weighted."""
    if 2 * order > 6:
        raise CensusOrderError("disconnected census comparison goes to 6 vertices")
    return graph_class_series("G", 0, 2 * order, "weighted", include_phi=True)


def weighted_total(series: TruncatedSeries, k: int) -> Fraction:
    """(2k)! [v^k]: the labelled weighted total on 2k vertices."""
    return series.coefficient(k) * factorial(2 * k)


def dominance_check(lhs: TruncatedSeries, rhs: TruncatedSeries) -> bool:
    """0 <= [t]lhs <= [t]rhs for every monomial t in the common range."""
    if lhs.vars != rhs.vars or lhs.progress != rhs.progress or lhs.order != rhs.order:
        raise TypeError("dominance needs series with the same variables and truncation")
    for e in set(lhs.terms) | set(rhs.terms):
        a = lhs.terms.get(e, Fraction(0))
        if a < 0 or a > rhs.terms.get(e, Fraction(0)):
            return False
    return True


def _compose_univariate(F: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    return F.substitute(F.progress, inner)


def two_connected_bound_check(g: int = 1, max_vertices: int = 6) -> bool:
    """B_g^{fw>=3}(v) is dominated by D_g^{fw>=3}(v (1 + N(v))^3)."""
    order = max_vertices // 2
    B = graph_class_series("B", g, max_vertices, fw_min=3)
    D = graph_class_series("D", g, max_vertices, fw_min=3)
    N = solve_network(order)
    v = TruncatedSeries.gen("v", ("v",), "v", order)
    one = TruncatedSeries.const(1, ("v",), "v", order)
    return dominance_check(B, _compose_univariate(D, v * (one + N) ** 3))


def connected_bound_check(g: int = 1, max_vertices: int = 6) -> bool:
    """C_g^{fw>=2}(v) is dominated by B_g^{fw>=2}(v / (1 - Q(v))^3)."""
    order = max_vertices // 2
    C = graph_class_series("C", g, max_vertices, fw_min=2)
    B = graph_class_series("B", g, max_vertices, fw_min=2)
    Q = solve_Q(order).Q
    v = TruncatedSeries.gen("v", ("v",), "v", order)
    one = TruncatedSeries.const(1, ("v",), "v", order)
    return dominance_check(C, _compose_univariate(B, v / (one - Q) ** 3))


def cube_reduced(p: Poly) -> Poly:
    """Rewrite a curve in (y, F) whose y-exponents are multiples of 3 as a curve in (w, F), w = y^3."""
    terms = {}
    for (a, b), c in p.terms.items():
        if a % 3:
            raise GFError("curve has a y-exponent that is not a multiple of 3")
        terms[(a // 3, b)] = c
    return Poly(("w", p.vars[1]), terms)


def cube_reduced_series(s: TruncatedSeries) -> TruncatedSeries:
    coeffs = s.coefficients()
    if any(c for n, c in enumerate(coeffs) if n % 3):
        raise GFError("series has a y-exponent that is not a multiple of 3")
    return TruncatedSeries.from_coefficients(coeffs[::3], "w", s.order // 3)
