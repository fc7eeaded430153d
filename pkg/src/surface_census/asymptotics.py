"""Dominant singularities, singular expansions and coefficient asymptotics.

Singularities of algebraic series are located exactly: positive roots of the
discriminant (and of the leading coefficient) are isolated with Sturm
sequences and refined by rational bisection, so a returned :class:`RealInterval`
has exact endpoints.  Singular expansions are computed with interval
arithmetic (``mpmath`` interval context) by a Newton-polygon iteration in
``s = X^(1/2)``, ``X = 1 - z/rho``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath
import numpy as np
from mpmath.ctx_iv import MPIntervalContext

from .series import Poly, TruncatedSeries, discriminant

__all__ = [
    "AsymptoticsError",
    "NoSingularityError",
    "BranchMismatchError",
    "GridError",
    "NoSingularPartError",
    "TooFewTermsError",
    "RhoMismatchError",
    "RealInterval",
    "AlgebraicCurve",
    "isolate_positive_roots",
    "smallest_positive_root",
    "dominant_singularity",
    "Term",
    "SingularExpansion",
    "puiseux_expand",
    "CoefficientAsymptotic",
    "transfer",
    "add",
    "multiply",
    "differentiate",
    "integrate",
    "fit_growth",
    "growth_constant",
    "interval_contains",
    "constants_report",
    "FIT_WINDOW",
]

DEFAULT_PREC = 256
FIT_WINDOW = 8


class AsymptoticsError(Exception):
    """Base class for singularity-analysis errors."""


class NoSingularityError(AsymptoticsError, ValueError):
    pass


class BranchMismatchError(AsymptoticsError, ValueError):
    pass


class GridError(AsymptoticsError, ValueError):
    """The singular expansion needs a finer exponent grid than requested."""

    def __init__(self, message: str, grid: str):
        super().__init__(message)
        self.grid = grid


class NoSingularPartError(AsymptoticsError, ValueError):
    pass


class RhoMismatchError(AsymptoticsError, ValueError):
    pass


class TooFewTermsError(AsymptoticsError, ValueError):
    pass


def _iv(prec: int = DEFAULT_PREC) -> MPIntervalContext:
    ctx = MPIntervalContext()
    ctx.prec = prec
    return ctx


# ---------------------------------------------------------------------------
# exact univariate polynomials (coefficient lists, low degree first)
# ---------------------------------------------------------------------------


def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _peval(p: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pderiv(p: Sequence[Fraction]) -> list[Fraction]:
    return [k * c for k, c in enumerate(p)][1:]


def _pdivmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = [Fraction(c) for c in a]
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
    return _trim(q), _trim(a)


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return [c / a[-1] for c in a]


def _squarefree(p):
    p = _trim([Fraction(c) for c in p])
    g = _pgcd(p, _pderiv(p))
    return _pdivmod(p, g)[0] if len(g) > 1 else p


def _sturm(p):
    seq = [p, _pderiv(p)]
    while len(_trim(seq[-1])) > 1:
        r = _pdivmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _variations(seq, x) -> int:
    signs = [v for v in (_peval(s, x) for s in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


@dataclass(frozen=True)
class RealInterval:
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_root(self, k: int, value: Fraction) -> bool:
        """Whether the positive k-th root of ``value`` lies in the interval."""
        if self.hi < 0:
            return False
        lo = max(self.lo, Fraction(0))
        return lo ** k <= value <= self.hi ** k

    def to_iv(self, ctx: MPIntervalContext):
        return ctx.mpf(self.lo.numerator) / self.lo.denominator if self.lo == self.hi else \
            _hull(ctx, ctx.mpf(self.lo.numerator) / self.lo.denominator,
                  ctx.mpf(self.hi.numerator) / self.hi.denominator)

    def __float__(self):
        return float(self.mid)


def _hull(ctx, a, b):
    return ctx.mpf((min(a.a, b.a), max(a.b, b.b)))


def _refine(p, lo: Fraction, hi: Fraction, width: Fraction) -> RealInterval:
    """Bisect a sign change of the squarefree ``p`` on [lo, hi]."""
    flo = _peval(p, lo)
    if flo == 0:
        return RealInterval(lo, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = _peval(p, mid)
        if fm == 0:
            return RealInterval(mid, mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return RealInterval(lo, hi)


def isolate_positive_roots(coeffs: Sequence, width: Fraction = Fraction(1, 10 ** 12)) -> list[RealInterval]:
    """All distinct positive real roots, each in an interval of at most ``width``."""
    p = _squarefree([Fraction(c) for c in coeffs])
    if len(p) <= 1:
        return []
    bound = 1 + max(abs(c / p[-1]) for c in p[:-1])
    seq = _sturm(p)
    out = []

    def split(lo, hi, vlo, vhi):
        n = vlo - vhi
        if n == 0:
            return
        if n == 1:
            # lo is never a root here: it is 0 or a bisection point with nonzero value
            out.append(_refine(p, lo, hi, width))
            return
        mid = (lo + hi) / 2
        vm = _variations(seq, mid)
        if _peval(p, mid) == 0:
            out.append(RealInterval(mid, mid))
            eps = (hi - lo) / 4
            while _variations(seq, mid - eps) - _variations(seq, mid + eps) != 1:
                eps /= 2
            split(lo, mid - eps, vlo, _variations(seq, mid - eps))
            split(mid + eps, hi, _variations(seq, mid + eps), vhi)
            return
        split(lo, mid, vlo, vm)
        split(mid, hi, vm, vhi)

    zero = Fraction(0)
    if _peval(p, zero) == 0:
        p0 = _pdivmod(p, [zero, Fraction(1)])[0]
        return isolate_positive_roots(p0, width)
    split(zero, Fraction(bound), _variations(seq, zero), _variations(seq, Fraction(bound)))
    out.sort(key=lambda r: r.lo)
    return out


def smallest_positive_root(coeffs: Sequence, width: Fraction = Fraction(1, 10 ** 12)) -> RealInterval:
    roots = isolate_positive_roots(coeffs, width)
    if not roots:
        raise NoSingularityError("polynomial has no positive root")
    return roots[0]


# ---------------------------------------------------------------------------
# curves and singularities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraicCurve:
    """P(z, F) = 0 with integer coefficients; ``poly.vars == (z, F)``."""

    poly: Poly

    def __post_init__(self):
        if len(self.poly.vars) != 2:
            raise ValueError("a curve has exactly two variables")
        if self.poly.is_zero():
            raise ValueError("zero polynomial")
        if discriminant(self.poly, self.fvar).is_zero():
            raise ValueError("curve polynomial is not squarefree in the function variable")

    @property
    def zvar(self) -> str:
        return self.poly.vars[0]

    @property
    def fvar(self) -> str:
        return self.poly.vars[1]

    def critical_polynomials(self) -> list[list[Fraction]]:
        disc = discriminant(self.poly, self.fvar).to_vars((self.zvar,))
        lead = self.poly.coefficients(self.fvar)[-1].to_vars((self.zvar,))
        return [disc.univariate(), lead.univariate()]

    def candidates(self, width: Fraction) -> list[RealInterval]:
        found = []
        for p in self.critical_polynomials():
            if len(_trim(p)) > 1:
                found.extend(isolate_positive_roots(p, width))
        found.sort(key=lambda r: r.lo)
        return found

    def taylor(self, branch: TruncatedSeries) -> list[Fraction]:
        return branch.coefficients()


def _branch_radius(coeffs: Sequence[Fraction], stride: int) -> float:
    nz = [(n, c) for n, c in enumerate(coeffs) if c != 0 and n % stride == 0]
    if len(nz) >= 12:
        return fit_growth(coeffs, stride)[0]
    # short branch: last available ratio
    (n1, c1), (n2, c2) = nz[-2], nz[-1]
    return float(abs(c1 / c2)) ** (1.0 / (n2 - n1))


def dominant_singularity(curve: AlgebraicCurve | Poly, branch: TruncatedSeries,
                         width: Fraction = Fraction(1, 10 ** 12), stride: int = 1,
                         tolerance: float = 0.05) -> RealInterval:
    """Positive real dominant singularity of the branch of ``curve``.

    The smallest candidate within ``tolerance`` (relative) of the radius
    estimated from the branch coefficients is returned.
    """
    if isinstance(curve, Poly):
        curve = AlgebraicCurve(curve)
    cands = curve.candidates(width)
    if not cands:
        raise NoSingularityError("no positive real candidate singularity")
    est = _branch_radius(curve.taylor(branch), stride)
    for c in cands:
        if abs(float(c.mid) / est - 1) <= tolerance:
            return c
    raise BranchMismatchError(
        f"no candidate near the branch radius estimate {est:.6g}: {[float(c.mid) for c in cands]}")


# ---------------------------------------------------------------------------
# singular expansions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    """coefficient * X^exponent * log(X)^log."""

    exponent: Fraction
    coefficient: object  # interval (mpmath iv) or exact Fraction
    log: int = 0


@dataclass(frozen=True)
class SingularExpansion:
    """F(z) = sum of terms + O(X^error_exponent [log X]), X = 1 - z/rho."""

    rho: RealInterval
    terms: tuple[Term, ...]
    error_exponent: Fraction
    error_log: int = 0
    constant_known: bool = True

    def __post_init__(self):
        keys = [(t.exponent, -t.log) for t in self.terms]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise ValueError("terms must have strictly increasing exponents")
        if self.rho.hi <= 0:
            raise ValueError("rho must be positive")

    def coefficient(self, exponent, log: int = 0):
        exponent = Fraction(exponent)
        for t in self.terms:
            if t.exponent == exponent and t.log == log:
                return t.coefficient
        return 0

    def evaluate(self, X: float) -> float:
        """Midpoint value of the truncated expansion at X > 0."""
        total = mpmath.mpf(0)
        for t in self.terms:
            c = _mid(t.coefficient)
            total += c * mpmath.mpf(X) ** _q(t.exponent) * mpmath.log(X) ** t.log
        return float(total)


def _q(x: Fraction) -> mpmath.mpf:
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def _mid(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    if hasattr(c, "mid"):
        return mpmath.mpf(c.mid)
    return mpmath.mpf(c)


def _is_zero(c, ctx) -> bool:
    """Zero recognition: an enclosure that straddles 0 is treated as 0."""
    return bool(c.a <= 0 <= c.b)


def _biv_add(d, key, val):
    if key in d:
        d[key] = d[key] + val
    else:
        d[key] = val


def _substitute_shift(ctx, H: dict, a) -> dict:
    """H(s, a + T) as a polynomial in s and T."""
    out: dict = {}
    for (i, j), c in H.items():
        for k in range(j + 1):
            _biv_add(out, (i, k), c * math.comb(j, k) * a ** (j - k))
    return out


def _substitute_scale(ctx, H: dict, gamma: int) -> dict:
    """H(s, s^gamma T) divided by the largest power of s."""
    out = {(i + gamma * j, j): c for (i, j), c in H.items()}
    return out


def _clean(ctx, H: dict) -> dict:
    H = {k: v for k, v in H.items() if not _is_zero(v, ctx)}
    if not H:
        return H
    low = min(i for i, _ in H)
    return {(i - low, j): v for (i, j), v in H.items()}


def _lower_hull_edges(points: list[tuple[int, int]]) -> list[tuple[Fraction, list[tuple[int, int]]]]:
    """Edges of the lower convex hull of (j, i) points with negative slope.

    Returns (gamma, points on the edge) with gamma = -slope > 0.
    """
    best: dict[int, int] = {}
    for j, i in points:
        best[j] = min(best.get(j, i), i)
    pts = sorted(best.items())
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    edges = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        if slope < 0:
            on = [(x, y) for x, y in pts if x1 <= x <= x2 and (y - y1) * (x2 - x1) == (x - x1) * (y2 - y1)]
            edges.append((-slope, on))
    return edges


def _interval_newton(ctx, f: Callable, df: Callable, x0, radius) -> object | None:
    """Certified enclosure of a simple root near x0 (Krawczyk step), or None."""
    X = ctx.mpf((x0 - radius, x0 + radius))
    for _ in range(8):
        m = ctx.mpf(X.mid)
        dX = df(X)
        if _is_zero(dX, ctx):
            return None
        N = m - f(m) / dX
        if N.a >= X.a and N.b <= X.b:
            # contraction: iterate once more for a tight enclosure
            X = N
            if X.delta < ctx.mpf(2) ** (-ctx.prec // 2):
                return X
            continue
        inter_lo, inter_hi = max(N.a, X.a), min(N.b, X.b)
        if inter_lo > inter_hi:
            return None
        X = ctx.mpf((inter_lo, inter_hi))
    return X if X.delta < ctx.mpf(2) ** (-ctx.prec // 3) else None


def _horner(ctx, coeffs, x):
    acc = ctx.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_roots_real(ctx, coeffs: list, nonzero: bool = True) -> list[tuple[object, int]]:
    """Real roots (with multiplicity) of an interval-coefficient polynomial.

    Roots of the midpoint polynomial are clustered; a cluster of
    multiplicity m is enclosed as a simple root of the (m-1)-th derivative.
    """
    coeffs = list(coeffs)
    while coeffs and _is_zero(coeffs[-1], ctx):
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    # deflate the root at zero; polyroots does not converge on it when it is multiple
    k = 0
    while _is_zero(coeffs[k], ctx):
        k += 1
    if k:
        rest = _poly_roots_real(ctx, coeffs[k:], nonzero)
        return rest if nonzero else [(ctx.mpf(0), k)] + rest
    deg = len(coeffs) - 1
    if deg == 1:
        return [(-coeffs[0] / coeffs[1], 1)]
    with mpmath.workprec(ctx.prec):
        mids = [mpmath.mpf(c.mid) for c in reversed(coeffs)]
        roots = mpmath.polyroots(mids, maxsteps=400, extraprec=2 * ctx.prec)
        tol = mpmath.mpf(2) ** (-ctx.prec // 4)
        reals = sorted(mpmath.re(r) for r in roots if abs(mpmath.im(r)) < tol)
    out = []
    with mpmath.workprec(ctx.prec):
        clusters: list[list] = []
        for r in reals:
            if clusters and abs(r - clusters[-1][-1]) < tol * (1 + abs(r)):
                clusters[-1].append(r)
            else:
                clusters.append([r])
        for cl in clusters:
            m = len(cl)
            c0 = sum(cl) / m
            if nonzero and abs(c0) < tol:
                continue
            dc = list(coeffs)
            for _ in range(m - 1):
                dc = [k * c for k, c in enumerate(dc)][1:]
            ddc = [k * c for k, c in enumerate(dc)][1:]
            enc = _interval_newton(ctx, lambda x, p=dc: _horner(ctx, p, x),
                                   lambda x, p=ddc: _horner(ctx, p, x), c0, abs(c0) * tol + tol)
            if enc is None:
                enc = ctx.mpf((c0 - tol, c0 + tol))
            out.append((enc, m))
    return out


def _curve_at_rho(ctx, poly: Poly, rho) -> dict:
    """G(s, F) = P(rho (1 - s^2), F) with interval coefficients."""
    G: dict = {}
    for (a, j), c in poly.terms.items():
        base = ctx.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else ctx.mpf(c)
        base = base * rho ** a
        for k in range(a + 1):
            coef = base * math.comb(a, k) * (-1) ** k
            _biv_add(G, (2 * k, j), coef)
    return G


def _expand_branches(ctx, H: dict, depth: int, prefix: list, out: list, budget: list):
    """Depth-first Newton-polygon expansion; ``prefix`` holds (s-exponent, coeff)."""
    budget[0] -= 1
    if budget[0] < 0:
        raise AsymptoticsError("Puiseux search exceeded its branch budget")
    last = prefix[-1][0] if prefix else 0
    H = _clean(ctx, H)
    if not H:
        out.append(list(prefix))
        return
    if not any(j == 0 for _, j in H):
        # T = 0 solves exactly: the expansion terminates
        out.append(list(prefix))
        return
    edges = _lower_hull_edges([(j, i) for i, j in H])
    progressed = False
    for gamma, pts in edges:
        if gamma.denominator != 1:
            continue
        g = int(gamma)
        exp_total = last + g if prefix else g
        if exp_total > depth:
            continue
        jmin = min(j for j, _ in pts)
        jmax = max(j for j, _ in pts)
        ep = [ctx.mpf(0)] * (jmax - jmin + 1)
        for j, i in pts:
            ep[j - jmin] = H[(i, j)]
        for c, _mult in _poly_roots_real(ctx, ep):
            progressed = True
            H2 = _substitute_shift(ctx, _substitute_scale(ctx, H, g), c)
            _expand_branches(ctx, H2, depth, prefix + [(exp_total, c)], out, budget)
    if not progressed:
        fractional = [gm for gm, _ in edges if gm.denominator != 1]
        total = [last + gm for gm in fractional]
        if fractional and min(total) <= depth:
            raise GridError("expansion needs exponents off the half-integer grid in X "
                            f"(next s-exponent {min(total)})", "quarter" if min(total).denominator == 2 else "finer")
        out.append(list(prefix))


def _taylor_value(coeffs: Sequence[Fraction], z) -> mpmath.mpf:
    acc = mpmath.mpf(0)
    for c in reversed(coeffs):
        acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
    return acc


def puiseux_expand(curve: AlgebraicCurve | Poly, rho: RealInterval, branch: TruncatedSeries,
                   depth: int = 3, prec: int = DEFAULT_PREC,
                   sample_points: Sequence[float] = (0.2, 0.25, 0.3, 0.35)) -> SingularExpansion:
    """Singular expansion of ``branch`` at ``rho`` on the grid X^(k/2), k <= depth.

    ``rho`` must be a narrow enclosure (refine it first; a width near
    2^-prec keeps every coefficient tight).  The branch is picked among
    all real Newton-polygon branches through the singular point by
    comparing with the Taylor sum of ``branch`` at ``z = rho (1 - X)``.
    """
    if isinstance(curve, AlgebraicCurve):
        curve = curve.poly
    ctx = _iv(prec)
    rho_iv = rho.to_iv(ctx)
    G = _curve_at_rho(ctx, curve, rho_iv)
    coeffs = branch.coefficients()
    rho_mid = mpmath.mpf(rho.mid.numerator) / rho.mid.denominator
    samples = []
    with mpmath.workprec(prec):
        for X in sample_points:
            samples.append((X, _taylor_value(coeffs, rho_mid * (1 - mpmath.mpf(X)))))
    # constant term: real roots of P(rho, F)
    g0 = [ctx.mpf(0)] * (1 + max(j for _, j in G))
    for (i, j), c in G.items():
        if i == 0:
            g0[j] = g0[j] + c
    candidates = []
    for f0, mult in _poly_roots_real(ctx, g0, nonzero=False):
        if mult < 2:
            continue
        leaves: list = []
        _expand_branches(ctx, _substitute_shift(ctx, G, f0), depth, [], leaves, [5000])
        for leaf in leaves:
            candidates.append([(0, f0)] + leaf)
    if not candidates:
        raise BranchMismatchError("no multiple root of the curve at rho")

    def score(cand):
        worst = 0.0
        for X, target in samples:
            s = mpmath.sqrt(X)
            val = sum(_mid(c) * s ** e for e, c in cand)
            worst = max(worst, float(abs(val - target) / (1 + abs(target))))
        return worst

    best = min(candidates, key=score)
    terms = tuple(Term(Fraction(e, 2), c) for e, c in best)
    return SingularExpansion(rho, terms, Fraction(depth + 1, 2))


# ---------------------------------------------------------------------------
# transfer and expansion arithmetic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientAsymptotic:
    """[z^n] F ~ constant * n^exponent * rho^-n (times ``period`` on its residue class)."""

    rho: RealInterval
    exponent: Fraction
    constant: object
    period: int = 1
    error_quarter: bool = False

    def estimate(self, n: int) -> mpmath.mpf:
        if n % self.period:
            return mpmath.mpf(0)
        rho = mpmath.mpf(self.rho.mid.numerator) / self.rho.mid.denominator
        return self.period * _mid(self.constant) * mpmath.mpf(n) ** _q(self.exponent) * rho ** (-n)


def _dominant_singular_term(exp: SingularExpansion) -> Term:
    for t in exp.terms:
        if t.log or t.exponent.denominator != 1 or t.exponent < 0:
            if _mid(t.coefficient) != 0:
                return t
    raise NoSingularPartError("no singular part")


def transfer(expansion: SingularExpansion, n: int | None = None, period: int = 1):
    """Map the dominant singular term to c/Gamma(alpha) n^(alpha-1) rho^-n.

    With ``n`` given, returns the numeric estimate instead of the formula.
    ``period`` multiplies by the number of conjugate singularities and
    restricts to multiples of it.
    """
    t = _dominant_singular_term(expansion)
    if t.log:
        if t.exponent != 0 or t.log != 1:
            raise NoSingularPartError("only a plain log X term is supported")
        asym = CoefficientAsymptotic(expansion.rho, Fraction(-1), -_mid(t.coefficient), period)
    else:
        alpha = -t.exponent
        const = _mid(t.coefficient) / mpmath.gamma(_q(alpha))
        asym = CoefficientAsymptotic(expansion.rho, alpha - 1, const, period)
    return asym if n is None else asym.estimate(n)


def _same_rho(a: SingularExpansion, b: SingularExpansion):
    if a.rho != b.rho:
        raise RhoMismatchError("expansions live at different singularities")


def _collect(terms, limit: Fraction, limit_log: int) -> tuple[Term, ...]:
    """Sum like terms, dropping those absorbed by O(X^limit log^limit_log)."""
    acc: dict = {}
    for t in terms:
        if t.exponent > limit or (t.exponent == limit and t.log <= limit_log):
            continue
        key = (t.exponent, t.log)
        acc[key] = acc[key] + t.coefficient if key in acc else t.coefficient
    return tuple(Term(e, c, l) for (e, l), c in sorted(acc.items(), key=lambda kv: (kv[0][0], -kv[0][1])))


def add(a: SingularExpansion, b: SingularExpansion) -> SingularExpansion:
    _same_rho(a, b)
    err, elog = min((a.error_exponent, -a.error_log), (b.error_exponent, -b.error_log))
    return SingularExpansion(a.rho, _collect(a.terms + b.terms, err, -elog), err, -elog,
                             a.constant_known and b.constant_known)


def multiply(a: SingularExpansion, b: SingularExpansion) -> SingularExpansion:
    """Term-wise product; the error is the smaller of err(a) + lead(b), err(b) + lead(a)."""
    _same_rho(a, b)
    lead_a = a.terms[0].exponent if a.terms else a.error_exponent
    lead_b = b.terms[0].exponent if b.terms else b.error_exponent
    err = min(a.error_exponent + lead_b, b.error_exponent + lead_a)
    prods = [Term(s.exponent + t.exponent, s.coefficient * t.coefficient, s.log + t.log)
             for s in a.terms for t in b.terms]
    logs = a.error_log + b.error_log
    return SingularExpansion(a.rho, _collect(prods, err, logs), err, logs)


def differentiate(a: SingularExpansion) -> SingularExpansion:
    """d/dz with dX/dz = -1/rho: c X^e -> -(e/rho) c X^(e-1)."""
    rho = a.rho.mid
    out = []
    for t in a.terms:
        if t.log:
            if t.exponent != 0 or t.log != 1:
                raise ValueError("only plain log terms can be differentiated")
            out.append(Term(Fraction(-1), t.coefficient * (-1 / rho) if isinstance(t.coefficient, Fraction)
                            else t.coefficient * float(-1 / rho)))
        elif t.exponent != 0:
            f = -t.exponent / rho
            out.append(Term(t.exponent - 1, t.coefficient * (f if isinstance(t.coefficient, Fraction) else float(f))))
    return SingularExpansion(a.rho, tuple(out), a.error_exponent - 1, a.error_log)


def integrate(a: SingularExpansion) -> SingularExpansion:
    """A primitive in z, up to an additive constant.

    c X^e -> -rho c X^(e+1)/(e+1), and c X^-1 -> -c rho log X.  The error
    O(X^b) becomes O(X^(b+1)), or O(log X) when b = -1.
    """
    rho = a.rho.mid
    out = []
    for t in a.terms:
        if t.log:
            raise ValueError("integration of log terms is not supported")
        if t.exponent == -1:
            out.append(Term(Fraction(0), _scale(t.coefficient, -rho), 1))
        else:
            out.append(Term(t.exponent + 1, _scale(t.coefficient, -rho / (t.exponent + 1))))
    if a.error_exponent == -1:
        err, elog = Fraction(0), 1
    else:
        err, elog = a.error_exponent + 1, a.error_log
    out.sort(key=lambda t: (t.exponent, -t.log))
    return SingularExpansion(a.rho, tuple(out), err, elog, constant_known=False)


def _scale(c, f: Fraction):
    if isinstance(c, Fraction):
        return c * f
    return c * (mpmath.mpf(f.numerator) / f.denominator)


# ---------------------------------------------------------------------------
# empirical growth and constants
# ---------------------------------------------------------------------------


def fit_growth(coeffs: Sequence, stride: int = 1, window: int = FIT_WINDOW) -> tuple[float, float]:
    """Least-squares fit of log a_n = -n log rho + e log n + const.

    Uses the last ``window`` nonzero terms at the given stride; needs at
    least 12 nonzero terms there.
    """
    pts = [(n, c) for n, c in enumerate(coeffs) if n % stride == 0 and c != 0 and n > 0]
    if len(pts) < 12:
        raise TooFewTermsError(f"need at least 12 nonzero terms at stride {stride}, got {len(pts)}")
    pts = pts[-window:]
    n = np.array([float(p[0]) for p in pts])
    y = np.array([math.log(abs(Fraction(p[1]).numerator)) - math.log(Fraction(p[1]).denominator)
                  for p in pts])
    A = np.column_stack([-n, np.log(n), np.ones_like(n)])
    sol, *_ = np.linalg.lstsq(A, y, rcond=None)
    return math.exp(sol[0]), float(sol[1])


def growth_constant(rho: RealInterval, prec: int = DEFAULT_PREC):
    """rho^(-1/2) as an interval."""
    if rho.lo <= 0:
        raise ValueError("growth constant needs a positive interval")
    ctx = _iv(prec)
    return 1 / ctx.sqrt(rho.to_iv(ctx))


def interval_contains(enclosure, value, tol: float) -> bool:
    """``enclosure`` (interval) lies within ``tol`` of ``value`` and is narrower than tol."""
    lo, hi = mpmath.mpf(enclosure.a), mpmath.mpf(enclosure.b)
    v = mpmath.mpf(value) if not isinstance(value, Fraction) else mpmath.mpf(value.numerator) / value.denominator
    return hi - lo <= tol and lo - tol <= v <= hi + tol


def _fmt(x, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits, strip_zeros=False)


@dataclass
class ConstantCheck:
    name: str
    closed_form: str
    lo: object
    hi: object
    passed: bool
    digits: int = 15
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        if isinstance(self.lo, Fraction):
            lo = mpmath.mpf(self.lo.numerator) / self.lo.denominator
            hi = mpmath.mpf(self.hi.numerator) / self.hi.denominator
        else:
            lo, hi = self.lo, self.hi
        out = {"name": self.name, "closed_form": self.closed_form,
               "interval": [_fmt(lo, self.digits), _fmt(hi, self.digits)],
               "digits": self.digits, "pass": self.passed}
        out.update(self.extra)
        return out


def constants_report(checks: Sequence[ConstantCheck]) -> str:
    return json.dumps([c.to_dict() for c in checks], indent=2, sort_keys=True) + "\n"
