"""Exact truncated power series and exact multivariate polynomials.

Everything here works over :class:`fractions.Fraction`; there is no floating
point anywhere in this module.  A :class:`TruncatedSeries` is truncated in a
single *progress variable* (``y`` for edge-counted series, ``v`` for the
univariate vertex-counted ones); all other variables (``x``, ``z``, ``w``,
catalytic ``u``) are carried as exact polynomial data.
"""
from __future__ import annotations

import ast
import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "SeriesError",
    "IncompatibleVariablesError",
    "UnknownVariableError",
    "SubstitutionError",
    "NonCubicMonomialError",
    "NoUniqueBranchError",
    "ResidualError",
    "Poly",
    "TruncatedSeries",
    "PolynomialSystem",
    "newton_solve",
    "multiply",
    "pointing",
    "substitute",
    "univariate_substitute",
    "theta_v_check",
    "resultant",
    "discriminant",
]


class SeriesError(Exception):
    """Base class for errors raised by the series layer."""


class IncompatibleVariablesError(SeriesError, ValueError):
    pass


class UnknownVariableError(SeriesError, ValueError):
    pass


class SubstitutionError(SeriesError, ValueError):
    pass


class NonCubicMonomialError(SeriesError, ValueError):
    def __init__(self, monomial: str):
        super().__init__(f"monomial {monomial} violates the cubic parity condition")
        self.monomial = monomial


class NoUniqueBranchError(SeriesError, ArithmeticError):
    pass


class ResidualError(SeriesError, RuntimeError):
    pass


def _norm(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


def _monomial_str(vars: Sequence[str], e: Sequence[int]) -> str:
    parts = []
    for name, k in zip(vars, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# exact polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Sparse multivariate polynomial with rational coefficients.

    Monomials are exponent tuples aligned with ``vars``; the monomial order
    used for division is lexicographic in that variable order.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise ValueError("exponent length does not match variables")
                    clean[e] = _norm(c)
        self.terms = clean

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c, vars: Iterable[str]) -> "Poly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name: str, vars: Iterable[str]) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise UnknownVariableError(name)
        return cls(vars, {tuple(int(v == name) for v in vars): 1})

    @classmethod
    def parse(cls, text: str, vars: Iterable[str]) -> "Poly":
        """Parse an arithmetic expression such as ``"S**4 + 3*S**3 - y*(1-16*y**3)"``.

        Only ``+ - * **`` with non-negative integer exponents, ``/`` by a
        constant, integer literals and the given variable names are accepted.
        """
        vars = tuple(vars)
        gens = {v: cls.var(v, vars) for v in vars}

        def ev(node):
            if isinstance(node, ast.Expression):
                return ev(node.body)
            if isinstance(node, ast.Constant) and isinstance(node.value, int):
                return cls.const(node.value, vars)
            if isinstance(node, ast.Name):
                if node.id not in gens:
                    raise UnknownVariableError(node.id)
                return gens[node.id]
            if isinstance(node, ast.UnaryOp):
                val = ev(node.operand)
                if isinstance(node.op, ast.USub):
                    return -val
                if isinstance(node.op, ast.UAdd):
                    return val
            if isinstance(node, ast.BinOp):
                a = ev(node.left)
                if isinstance(node.op, ast.Pow):
                    b = node.right
                    if not (isinstance(b, ast.Constant) and isinstance(b.value, int) and b.value >= 0):
                        raise ValueError("exponents must be non-negative integer literals")
                    return a ** b.value
                b = ev(node.right)
                if isinstance(node.op, ast.Add):
                    return a + b
                if isinstance(node.op, ast.Sub):
                    return a - b
                if isinstance(node.op, ast.Mult):
                    return a * b
                if isinstance(node.op, ast.Div):
                    c = b.constant_value()
                    if c is None:
                        raise ValueError("division only by constants")
                    return a * Fraction(1, 1) / c
            raise ValueError(f"unsupported syntax in polynomial: {ast.dump(node)}")

        return ev(ast.parse(text, mode="eval"))

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self):
        """The value if the polynomial is constant, else ``None``."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if not any(e):
                return c
        return None

    def _idx(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None

    def degree(self, name: str) -> int:
        """Degree in ``name``; -1 for the zero polynomial."""
        i = self._idx(name)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficients(self, name: str) -> list["Poly"]:
        """Coefficients in ``name`` (low to high) as polynomials without ``name``."""
        i = self._idx(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        d = max(buckets, default=-1)
        return [Poly(rest, buckets.get(k, {})) for k in range(d + 1)]

    @classmethod
    def from_coefficients(cls, name: str, coeffs: Sequence["Poly"], position: int = 0) -> "Poly":
        """Inverse of :meth:`coefficients`; ``name`` is inserted at ``position``."""
        if not coeffs:
            raise ValueError("need at least one coefficient")
        rest = coeffs[0].vars
        vars = rest[:position] + (name,) + rest[position:]
        terms = {}
        for k, p in enumerate(coeffs):
            for e, c in p.terms.items():
                terms[e[:position] + (k,) + e[position:]] = c
        return cls(vars, terms)

    def univariate(self) -> list:
        """Coefficient list (low to high) of a polynomial in at most one variable."""
        active = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        if len(active) > 1:
            raise ValueError("polynomial is not univariate")
        i = active[0] if active else 0
        d = max((e[i] for e in self.terms), default=0) if self.vars else 0
        out = [0] * (d + 1)
        for e, c in self.terms.items():
            out[e[i] if self.vars else 0] = c
        return out

    # arithmetic -----------------------------------------------------------
    def to_vars(self, vars: Iterable[str]) -> "Poly":
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for i, v in enumerate(self.vars):
            if v not in vars:
                if any(e[i] for e in self.terms):
                    raise IncompatibleVariablesError(f"variable {v} missing from {vars}")
                pos.append(None)
            else:
                pos.append(vars.index(v))
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, k in enumerate(e):
                if pos[i] is not None:
                    ne[pos[i]] = k
            terms[tuple(ne)] = c
        return Poly(vars, terms)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars == self.vars:
                return other
            return other.to_vars(self.vars)
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(self.vars, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("non-negative integer exponent required")
        result = Poly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.vars)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.vars != self.vars:
            try:
                other = other.to_vars(self.vars)
            except IncompatibleVariablesError:
                return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def derivative(self, name: str) -> "Poly":
        i = self._idx(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return Poly(self.vars, terms)

    def evaluate(self, **values) -> "Poly":
        """Partially evaluate at exact scalar values; the variables stay in ``vars``."""
        idx = {self._idx(k): _norm(v) if not isinstance(v, Fraction) else v for k, v in values.items()}
        terms: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, val in idx.items():
                if e[i]:
                    c = c * val ** e[i]
                    ne[i] = 0
            ne = tuple(ne)
            terms[ne] = terms.get(ne, 0) + c
        return Poly(self.vars, terms)

    def __call__(self, **values):
        p = self.evaluate(**values)
        v = p.constant_value()
        if v is None:
            raise ValueError("not all variables were assigned")
        return v

    def substitute(self, name: str, replacement: "Poly") -> "Poly":
        replacement = self._coerce(replacement)
        coeffs = self.coefficients(name)
        i = self._idx(name)
        out = Poly(self.vars)
        for c in reversed(coeffs):
            lifted = Poly(self.vars, {e[:i] + (0,) + e[i:]: v for e, v in c.terms.items()})
            out = out * replacement + lifted
        return out

    def exact_div(self, other: "Poly") -> "Poly":
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = max(other.terms)
        lc = other.terms[lead]
        rest = [(e, c) for e, c in other.terms.items() if e != lead]
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            e = max(rem)
            shift = tuple(a - b for a, b in zip(e, lead))
            if any(s < 0 for s in shift):
                raise ArithmeticError("polynomial division is not exact")
            c = rem.pop(e)
            q = Fraction(c, lc) if isinstance(c, int) and isinstance(lc, int) else c / lc
            q = _norm(q)
            quot[shift] = q
            for e2, c2 in rest:
                t = tuple(a + b for a, b in zip(e2, shift))
                v = rem.get(t, 0) - q * c2
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Poly(self.vars, quot)

    def primitive(self) -> "Poly":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        if ints[max(ints)] < 0:
            g = -g
        return Poly(self.vars, {e: c // g for e, c in ints.items()})

    # output ----------------------------------------------------------------
    def serialize(self) -> str:
        """Canonical text: variable order, then monomials sorted by exponent."""
        lines = ["vars: " + ",".join(self.vars)]
        for e in sorted(self.terms):
            c = self.terms[e]
            lines.append(" ".join(str(k) for k in e) + " : " + str(c))
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text: str) -> "Poly":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines[0].startswith("vars:"):
            raise ValueError("missing header")
        vars = tuple(v for v in lines[0][5:].strip().split(",") if v)
        terms = {}
        for ln in lines[1:]:
            lhs, rhs = ln.split(":")
            terms[tuple(int(k) for k in lhs.split())] = _norm(Fraction(rhs.strip()))
        return cls(vars, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = _monomial_str(self.vars, e)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _det_bareiss(m: list[list[Poly]], zero: Poly) -> Poly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(m)
    if n == 0:
        return zero + 1
    a = [row[:] for row in m]
    sign = 1
    prev = zero + 1
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * piv - aik * a[k][j]
                a[i][j] = num.exact_div(prev) if not num.is_zero() else num
            a[i][k] = zero
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant(p: Poly, q: Poly, name: str) -> Poly:
    """Sylvester resultant of ``p`` and ``q`` with respect to ``name``."""
    if p.vars != q.vars:
        q = q.to_vars(p.vars)
    a = p.coefficients(name)
    b = q.coefficients(name)
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        raise ValueError("resultant of the zero polynomial")
    rest = a[0].vars
    zero = Poly(rest)
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return _det_bareiss(rows, zero)


def discriminant(p: Poly, name: str) -> Poly:
    """Discriminant of ``p`` in ``name`` (up to the usual sign convention)."""
    d = p.degree(name)
    if d < 1:
        raise ValueError("discriminant needs positive degree")
    r = resultant(p, p.derivative(name), name)
    lc = p.coefficients(name)[-1]
    disc = r.exact_div(lc)
    return disc if (d * (d - 1) // 2) % 2 == 0 else -disc


# ---------------------------------------------------------------------------
# truncated series
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """Multivariate power series truncated in one progress variable.

    ``order`` is the largest progress-degree that is known exactly; ``None``
    marks an exact polynomial (no truncation).  Instances are immutable.
    """

    __slots__ = ("vars", "progress", "order", "terms", "_p")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple, object], progress: str,
                 order: int | None):
        vars = tuple(vars)
        if progress not in vars:
            raise UnknownVariableError(progress)
        if order is not None and order < 0:
            raise ValueError("truncation order must be non-negative")
        p = vars.index(progress)
        clean = {}
        for e, c in terms.items():
            if not c:
                continue
            e = tuple(e)
            if len(e) != len(vars):
                raise ValueError("exponent length does not match variables")
            if order is not None and e[p] > order:
                continue
            clean[e] = _frac(c)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "progress", progress)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_p", p)

    def __setattr__(self, *_):
        raise AttributeError("TruncatedSeries is immutable")

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, vars, progress, order):
        return cls(vars, {}, progress, order)

    @classmethod
    def const(cls, c, vars, progress, order):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c}, progress, order)

    @classmethod
    def gen(cls, name, vars, progress, order):
        vars = tuple(vars)
        if name not in vars:
            raise UnknownVariableError(name)
        return cls(vars, {tuple(int(v == name) for v in vars): 1}, progress, order)

    @classmethod
    def from_poly(cls, poly: Poly, progress: str, order: int | None, vars=None):
        if vars is not None:
            poly = poly.to_vars(vars)
        return cls(poly.vars, poly.terms, progress, order)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, var: str = "y", order: int | None = None):
        """Univariate series from a coefficient list; order defaults to len-1."""
        if order is None:
            order = len(coeffs) - 1
        return cls((var,), {(k,): c for k, c in enumerate(coeffs)}, var, order)

    def like(self, terms, order="same") -> "TruncatedSeries":
        return TruncatedSeries(self.vars, terms, self.progress, self.order if order == "same" else order)

    # queries -------------------------------------------------------------
    def coefficient(self, *exps, **named) -> Fraction:
        if named:
            e = [0] * len(self.vars)
            for k, v in named.items():
                e[self._idx(k)] = v
            exps = tuple(e)
        elif len(exps) == 1 and isinstance(exps[0], tuple):
            exps = exps[0]
        if len(exps) != len(self.vars):
            raise ValueError("exponent length does not match variables")
        if self.order is not None and exps[self._p] > self.order:
            raise ValueError("coefficient beyond the truncation order")
        return self.terms.get(tuple(exps), Fraction(0))

    def coefficients(self) -> list[Fraction]:
        """Coefficient list of a univariate series, indices 0..order."""
        if len(self.vars) != 1:
            raise ValueError("coefficients() needs a univariate series")
        top = self.order if self.order is not None else max((e[0] for e in self.terms), default=0)
        return [self.terms.get((k,), Fraction(0)) for k in range(top + 1)]

    def _idx(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    def valuation(self) -> int | None:
        """Smallest progress-degree present (None for the zero series)."""
        return min((e[self._p] for e in self.terms), default=None)

    def degree(self, name: str) -> int:
        i = self._idx(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def slice(self, k: int) -> "TruncatedSeries":
        """Part of progress-degree exactly ``k`` (as an exact polynomial)."""
        return TruncatedSeries(self.vars, {e: c for e, c in self.terms.items() if e[self._p] == k},
                               self.progress, None)

    def coefficient_series(self, name: str, k: int) -> "TruncatedSeries":
        """Coefficient of ``name**k``, with ``name`` kept at exponent 0."""
        i = self._idx(name)
        if i == self._p:
            raise ValueError("use slice() for the progress variable")
        terms = {e[:i] + (0,) + e[i + 1:]: c for e, c in self.terms.items() if e[i] == k}
        return self.like(terms)

    def truncate(self, order: int | None) -> "TruncatedSeries":
        if order is None:
            return self
        if self.order is not None and order > self.order:
            raise ValueError("cannot raise truncation order")
        return self.like(self.terms, order)

    def with_order(self, order: int | None) -> "TruncatedSeries":
        """Reinterpret as known to ``order`` (used when the caller knows more)."""
        return self.like(self.terms, order)

    # arithmetic ------------------------------------------------------------
    def _compat(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.vars != self.vars or other.progress != self.progress:
                raise IncompatibleVariablesError(
                    f"series over {self.vars}/{self.progress} and {other.vars}/{other.progress}")
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.const(other, self.vars, self.progress, None)
        return NotImplemented

    @staticmethod
    def _min_order(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other):
        other = self._compat(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return self.like(terms, self._min_order(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return self.like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._compat(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.like({e: c * other for e, c in self.terms.items()})
        other = self._compat(other)
        if other is NotImplemented:
            return other
        order = self._min_order(self.order, other.order)
        p = self._p
        right = sorted(other.terms.items(), key=lambda t: t[0][p])
        terms: dict = {}
        for e1, c1 in self.terms.items():
            room = None if order is None else order - e1[p]
            if room is not None and room < 0:
                continue
            for e2, c2 in right:
                if room is not None and e2[p] > room:
                    break
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return self.like(terms, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        other = self._compat(other)
        if other is NotImplemented:
            return other
        return self * other.inverse(self._min_order(self.order, other.order))

    def __rtruediv__(self, other):
        return self._compat(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("non-negative integer exponent required")
        result = TruncatedSeries.const(1, self.vars, self.progress, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.const(other, self.vars, self.progress, self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.vars == other.vars and self.progress == other.progress
                and self.order == other.order and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, self.progress, self.order, frozenset(self.terms.items())))

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Equality up to the smaller of the two truncation orders."""
        other = self._compat(other)
        order = self._min_order(self.order, other.order)
        return (self - other).truncate(order).is_zero() if order is not None else (self - other).is_zero()

    def inverse(self, order: int | None = None) -> "TruncatedSeries":
        """Multiplicative inverse; the progress-degree-0 part must be a nonzero constant."""
        order = self.order if order is None else order
        if order is None:
            raise ValueError("inverse of an exact polynomial needs an explicit order")
        c0 = self.slice(0)
        zero_e = (0,) * len(self.vars)
        if set(c0.terms) != {zero_e}:
            raise ZeroDivisionError("constant part is not an invertible scalar")
        s = self.truncate(order) if self.order is not None else self.with_order(order)
        inv = TruncatedSeries.const(1 / c0.terms[zero_e], self.vars, self.progress, 0)
        prec = 0
        while prec < order:
            prec = min(2 * prec + 1, order)
            inv = inv.with_order(prec)
            inv = inv * (2 - s.truncate(prec) * inv)
        return inv.with_order(order).truncate(order)

    def derivative(self, name: str) -> "TruncatedSeries":
        i = self._idx(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        order = self.order
        if i == self._p and order is not None:
            order = max(order - 1, 0) if order else 0
        return self.like(terms, order)

    def pointing(self, name: str) -> "TruncatedSeries":
        """Theta operator ``name * d/d name``."""
        i = self._idx(name)
        return self.like({e: c * e[i] for e, c in self.terms.items() if e[i]})

    def shift(self, name: str, k: int) -> "TruncatedSeries":
        """Multiply by ``name**k`` (``k`` may be negative when exact)."""
        i = self._idx(name)
        terms = {}
        for e, c in self.terms.items():
            ne = e[i] + k
            if ne < 0:
                raise ArithmeticError(f"division by {name}^{-k} is not exact")
            terms[e[:i] + (ne,) + e[i + 1:]] = c
        order = self.order
        if i == self._p and order is not None:
            order += k
            if order < 0:
                raise ArithmeticError("truncation order became negative")
        return self.like(terms, order)

    def evaluate(self, name: str, value) -> "TruncatedSeries":
        """Set ``name`` to an exact scalar (the variable stays, with exponent 0)."""
        i = self._idx(name)
        if i == self._p and self.order is not None:
            raise SubstitutionError("cannot evaluate a truncated series in its progress variable")
        value = _frac(value)
        terms: dict = {}
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            terms[ne] = terms.get(ne, 0) + c * value ** e[i]
        return self.like(terms)

    def substitute(self, name: str, replacement) -> "TruncatedSeries":
        """Formal composition ``self(..., name=replacement, ...)``."""
        i = self._idx(name)
        if isinstance(replacement, (int, Fraction)):
            replacement = TruncatedSeries.const(replacement, self.vars, self.progress, None)
        replacement = self._compat(replacement)
        polynomial_in_var = not (i == self._p and self.order is not None)
        if not polynomial_in_var and replacement.valuation() == 0:
            raise SubstitutionError(
                f"replacement for {name} has a nonzero constant term but the series is truncated in {name}")
        order = self._min_order(self.order, replacement.order)
        if polynomial_in_var and i == self._p:
            order = replacement.order
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        if not buckets:
            return self.like({}, order)
        top = max(buckets)
        out = self.like({}, order)
        for k in range(top, -1, -1):
            coeff = self.like(buckets.get(k, {}), order)
            out = out * replacement + coeff if k < top else coeff
        return out.truncate(order) if order is not None else out

    def exp(self) -> "TruncatedSeries":
        """Exponential of a series without progress-degree-0 part."""
        if self.order is None:
            raise ValueError("exp needs a truncated series")
        if any(e[self._p] == 0 for e in self.terms):
            raise ValueError("exp needs zero constant part")
        order = self.order
        slices = [self.slice(k) for k in range(order + 1)]
        one = TruncatedSeries.const(1, self.vars, self.progress, None)
        out = [one]
        for k in range(1, order + 1):
            acc = TruncatedSeries.zero(self.vars, self.progress, None)
            for j in range(1, k + 1):
                if slices[j].terms:
                    acc = acc + slices[j] * out[k - j] * j
            out.append(acc * Fraction(1, k))
        total: dict = {}
        for s in out:
            total.update(s.terms)
        return self.like(total, order)

    # serialization -------------------------------------------------------
    def to_json(self) -> str:
        terms = []
        for e in sorted(self.terms):
            c = self.terms[e]
            terms.append(list(e) + [f"{c.numerator}/{c.denominator}"])
        doc = {"vars": list(self.vars), "truncation": self.order, "terms": terms}
        if self.progress != self.vars[0]:
            doc["progress"] = self.progress
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        doc = json.loads(text)
        vars = tuple(doc["vars"])
        terms = {tuple(t[:-1]): Fraction(t[-1]) for t in doc["terms"]}
        return cls(vars, terms, doc.get("progress", vars[0]), doc["truncation"])

    def __repr__(self):
        parts = []
        for e in sorted(self.terms, key=lambda e: (e[self._p], e)):
            c = self.terms[e]
            mono = _monomial_str(self.vars, e)
            parts.append(str(c) if mono == "1" else (mono if c == 1 else f"{c}*{mono}"))
        body = " + ".join(parts) if parts else "0"
        tail = "" if self.order is None else f" + O({self.progress}^{self.order + 1})"
        return body + tail


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def pointing(s: TruncatedSeries, var: str) -> TruncatedSeries:
    return s.pointing(var)


def substitute(s: TruncatedSeries, var: str, replacement) -> TruncatedSeries:
    return s.substitute(var, replacement)


# ---------------------------------------------------------------------------
# cubic multigraph series
# ---------------------------------------------------------------------------

_GRAPH_VARS = ("x", "y", "z", "w")


def _graph_exponents(s: TruncatedSeries, e: tuple) -> tuple[int, int, int, int]:
    d = dict(zip(s.vars, e))
    extra = [v for v in s.vars if v not in _GRAPH_VARS and d[v]]
    if extra:
        raise IncompatibleVariablesError(f"unexpected variable(s) {extra} in graph series")
    return tuple(d.get(v, 0) for v in _GRAPH_VARS)


def univariate_substitute(s: TruncatedSeries, mode: str = "weighted") -> TruncatedSeries:
    """Map x^a y^m z^k w^l to v^(a/2) with the weight dictated by ``mode``.

    weighted: 2^-(k+l); unweighted: 1; simple: keep only k = l = 0.
    Every monomial must satisfy the cubic parity 2k + l + m = 3a/2.
    """
    if mode not in ("weighted", "unweighted", "simple"):
        raise ValueError(f"unknown mode {mode!r}")
    terms: dict = {}
    for e, c in s.terms.items():
        a, m, k, l = _graph_exponents(s, e)
        if a % 2 or 2 * k + l + m != 3 * (a // 2):
            raise NonCubicMonomialError(_monomial_str(s.vars, e))
        n = a // 2
        if mode == "weighted":
            c = c / 2 ** (k + l)
        elif mode == "simple" and (k or l):
            continue
        terms[(n,)] = terms.get((n,), 0) + c
    order = None
    if s.order is not None:
        if s.progress == "x":
            order = s.order // 2
        elif s.progress == "y":
            order = s.order // 3
        else:
            raise ValueError("graph series must be truncated in x or y")
    return TruncatedSeries(("v",), terms, "v", order)


def theta_v_check(F: TruncatedSeries) -> bool:
    """Check 3 Theta_v F(v) == (Theta_y F)(v^(1/4), v^(1/6)) coefficient-wise.

    ``F`` must be a series in x and y coming from a cubic class, i.e.
    3 Theta_x F == 2 Theta_y F; anything else raises NonCubicMonomialError.
    """
    if set(F.vars) - {"x", "y"}:
        raise IncompatibleVariablesError("theta_v_check expects a series in x and y")
    ix, iy = F.vars.index("x"), F.vars.index("y")
    for e in F.terms:
        if 3 * e[ix] != 2 * e[iy]:
            raise NonCubicMonomialError(_monomial_str(F.vars, e))
    lhs = univariate_substitute(F, "unweighted").pointing("v") * 3
    rhs_terms: dict = {}
    for e, c in F.pointing("y").terms.items():
        ve = Fraction(e[ix], 4) + Fraction(e[iy], 6)
        if ve.denominator != 1:
            return False
        rhs_terms[(int(ve),)] = rhs_terms.get((int(ve),), 0) + c
    rhs = TruncatedSeries(("v",), rhs_terms, "v", lhs.order)
    return lhs == rhs


# ---------------------------------------------------------------------------
# implicit systems
# ---------------------------------------------------------------------------


class PolynomialSystem:
    """Square system of polynomial equations ``E_i(unknowns, variables) = 0``.

    Each equation is a :class:`Poly` over ``unknowns + variables``; a solution
    assigns a truncated series (in ``variables``, truncated in ``progress``)
    to every unknown.
    """

    def __init__(self, unknowns: Sequence[str], variables: Sequence[str], progress: str,
                 equations: Sequence[Poly | str]):
        self.unknowns = tuple(unknowns)
        self.variables = tuple(variables)
        self.progress = progress
        if progress not in self.variables:
            raise UnknownVariableError(progress)
        allv = self.unknowns + self.variables
        eqs = []
        for eq in equations:
            eqs.append(Poly.parse(eq, allv) if isinstance(eq, str) else eq.to_vars(allv))
        if len(eqs) != len(self.unknowns):
            raise ValueError("system must be square")
        self.equations = tuple(eqs)

    def _env(self, values: Sequence[TruncatedSeries], order):
        env = {}
        for name, val in zip(self.unknowns, values):
            env[name] = val
        for name in self.variables:
            env[name] = TruncatedSeries.gen(name, self.variables, self.progress, order)
        return env

    def _as_series(self, x, order) -> TruncatedSeries:
        if isinstance(x, TruncatedSeries):
            return x
        return TruncatedSeries.const(x, self.variables, self.progress, order)

    def evaluate(self, poly: Poly, values: Sequence[TruncatedSeries], order=None) -> TruncatedSeries:
        if order is None:
            order = min((v.order for v in values if isinstance(v, TruncatedSeries) and v.order is not None),
                        default=None)
        env = self._env([self._as_series(v, order) for v in values], order)
        names = self.unknowns + self.variables
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = env[names[i]] if k == 1 else power(i, k - 1) * env[names[i]]
            return powers[key]

        out = TruncatedSeries.zero(self.variables, self.progress, order)
        for e, c in poly.terms.items():
            term = TruncatedSeries.const(c, self.variables, self.progress, order)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def residuals(self, values: Sequence[TruncatedSeries], order=None) -> list[TruncatedSeries]:
        return [self.evaluate(eq, values, order) for eq in self.equations]

    def jacobian(self) -> list[list[Poly]]:
        return [[eq.derivative(u) for u in self.unknowns] for eq in self.equations]


def _solve_scalar(a: list[list[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix (raises on singular)."""
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise NoUniqueBranchError("no unique branch: Jacobian is singular at the seed")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [vr - f * vc for vr, vc in zip(m[r], m[col])]
    return [row[n:] for row in m]


def _matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def newton_solve(system: PolynomialSystem, order: int, seed: Sequence | None = None,
                 max_iterations: int = 64) -> list[TruncatedSeries]:
    """Solve ``system`` for formal series correct through ``order``.

    ``seed`` gives the progress-degree-0 values (or longer initial segments)
    of the unknowns; it must satisfy the system at degree 0 and the formal
    Jacobian there must be an invertible scalar matrix.
    """
    vars_, prog = system.variables, system.progress
    n = len(system.unknowns)
    seed = [0] * n if seed is None else list(seed)
    x = []
    for s in seed:
        s = system._as_series(s, 0)
        x.append(s.truncate(0) if s.order is None or s.order > 0 else s)
    x = [s.with_order(0) for s in x]
    for r in system.residuals(x, 0):
        if not r.is_zero():
            raise NoUniqueBranchError("seed does not satisfy the system at order 0")
    jac = system.jacobian()
    zero_e = (0,) * len(vars_)
    j0 = []
    for row in jac:
        vals = []
        for entry in row:
            c = system.evaluate(entry, x, 0)
            if set(c.terms) - {zero_e}:
                raise NoUniqueBranchError("no unique branch: Jacobian at order 0 is not a scalar matrix")
            vals.append(c.terms.get(zero_e, Fraction(0)))
        j0.append(vals)
    j0inv = _solve_scalar(j0)

    prec = 0
    iterations = 0
    while prec < order:
        iterations += 1
        if iterations > max_iterations:
            raise ResidualError("Newton iteration did not converge")
        new = min(2 * prec + 1, order)
        xs = [s.with_order(new) for s in x]
        f = system.residuals(xs, new)
        jm = [[system.evaluate(e, xs, new) for e in row] for row in jac]
        # inverse of the Jacobian matrix by Newton's iteration for matrices
        inv = [[TruncatedSeries.const(c, vars_, prog, new) for c in row] for row in j0inv]
        known = 0
        while known < new:
            known = min(2 * known + 1, new)
            prod = _matmul(jm, inv)
            corr = [[(2 if i == j else 0) - prod[i][j] for j in range(n)] for i in range(n)]
            inv = _matmul(inv, corr)
        delta = _matmul(inv, [[r] for r in f])
        x = [xs[i] - delta[i][0] for i in range(n)]
        prec = new
    for r in system.residuals(x, order):
        if not r.is_zero():
            raise ResidualError("nonzero residual after Newton iteration")
    return x
