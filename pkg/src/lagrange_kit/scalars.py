"""Coefficient rings for the series engine.

Exact rationals are plain ``fractions.Fraction`` (already normalized: reduced,
positive denominator, structural equality).  The other supported coefficient
ring is ``MultiPoly``: a sparse polynomial in a fixed tuple of named
indeterminates with Fraction coefficients.  Everything here interoperates with
plain ints so that 0 and 1 work as universal ring constants.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .errors import DivisionByNonUnit, ParseError


def format_rational(value) -> str:
    """Render an int or Fraction: integers plainly, otherwise "p/q"."""
    f = Fraction(value)
    if f.denominator == 1:
        return "%d" % f.numerator
    return "%d/%d" % (f.numerator, f.denominator)


def parse_rational(text: str, position: int | None = None) -> Fraction:
    """Parse "p/q", "p", or a decimal literal into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        where = "" if position is None else " at position %d" % position
        raise ParseError("bad rational literal %r%s" % (text, where)) from exc


def int_binomial(a: int, k: int) -> int:
    """Binomial coefficient with integer (possibly negative) top index."""
    if k < 0:
        return 0
    if a >= 0:
        return comb(a, k)
    # (-a+k-1 choose k) with alternating sign
    return (-1) ** k * comb(k - a - 1, k)


def binomial(a, k: int):
    """Generalized binomial a(a-1)...(a-k+1)/k!; zero for k < 0.

    Works for any element of a Q-algebra: int, Fraction, or MultiPoly.
    """
    if k < 0:
        return 0
    if isinstance(a, int):
        return int_binomial(a, k)
    prod = 1
    for i in range(k):
        prod = prod * (a - i)
    return prod / factorial(k)


def multinomial(n: int, parts) -> int:
    """n! / (p_1! ... p_r!); the parts must sum to at most n, the remainder
    is treated as one more part."""
    parts = list(parts)
    rest = n - sum(parts)
    if rest < 0:
        return 0
    result = factorial(n)
    for p in parts:
        result //= factorial(p)
    return result // factorial(rest)


def scalar_inverse(c):
    """Multiplicative inverse of a scalar; raises DivisionByNonUnit."""
    if isinstance(c, MultiPoly):
        if not c.is_constant():
            raise DivisionByNonUnit("polynomial scalar %s is not invertible" % c)
        return c._like_const(scalar_inverse(c.constant_value()))
    c = Fraction(c)
    if c == 0:
        raise DivisionByNonUnit("zero scalar has no inverse")
    return Fraction(c.denominator, c.numerator)


def scalar_div_int(c, n: int):
    """Exact division of a scalar by a nonzero integer."""
    if isinstance(c, int):
        return Fraction(c, n)
    return c / n


def polynomial_from_points(points):
    """Coefficients (ascending) of the unique polynomial through the given
    (x, y) pairs, by Lagrange interpolation over exact rationals."""
    points = [(Fraction(x), Fraction(y)) for x, y in points]
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        # numerator polynomial prod_{j != i} (x - x_j), built incrementally
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            denom *= xi - xj
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d] -= c * xj
                nxt[d + 1] += c
            basis = nxt
        scale = yi / denom
        for d, c in enumerate(basis):
            coeffs[d] += c * scale
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_eval(coeffs, x):
    """Evaluate an ascending coefficient list at x (Horner)."""
    acc = 0
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


class MultiPoly:
    """Sparse multivariate polynomial over Fraction.

    Terms map exponent tuples (one entry per variable, all >= 0) to nonzero
    Fraction coefficients.  The variable tuple is fixed; mixing polynomials
    over different variable tuples is an error.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        width = len(self.vars)
        clean: dict[tuple, Fraction] = {}
        if terms:
            for exps, c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                e = tuple(int(v) for v in exps)
                if len(e) != width or any(v < 0 for v in e):
                    raise ValueError("bad exponent vector %r" % (exps,))
                prev = clean.get(e)
                tot = c if prev is None else prev + c
                if tot:
                    clean[e] = tot
                elif prev is not None:
                    del clean[e]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, vars, value):
        value = Fraction(value)
        vars = tuple(vars)
        if not value:
            return cls(vars)
        return cls(vars, {(0,) * len(vars): value})

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    def _like_const(self, value):
        return MultiPoly.const(self.vars, value)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def min_total_degree(self):
        """Smallest total degree among the terms; None for the zero poly."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        if not self.terms:
            return 0
        return max(e[i] for e in self.terms)

    # -- coercion ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError("polynomials over different variables")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.vars, other)
        return None

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            tot = terms.get(e, 0) + c
            if tot:
                terms[e] = tot
            elif e in terms:
                del terms[e]
        out = MultiPoly(self.vars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly(self.vars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[tuple, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                tot = terms.get(e, 0) + ca * cb
                if tot:
                    terms[e] = tot
                elif e in terms:
                    del terms[e]
        out = MultiPoly(self.vars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return scalar_inverse(self) ** (-k)
        result = MultiPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise DivisionByNonUnit("cannot divide by non-constant polynomial")
            other = other.constant_value()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByNonUnit("division by zero")
            inv = Fraction(1) / Fraction(other)
            out = MultiPoly(self.vars)
            out.terms = {e: c * inv for e, c in self.terms.items()}
            return out
        return NotImplemented

    def __rtruediv__(self, other):
        return self._coerce(other) * scalar_inverse(self)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- structure -------------------------------------------------------

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(int(v) for v in exps), Fraction(0))

    def truncate_total(self, max_degree: int) -> "MultiPoly":
        out = MultiPoly(self.vars)
        out.terms = {e: c for e, c in self.terms.items() if sum(e) <= max_degree}
        return out

    def subs(self, mapping) -> "MultiPoly":
        """Substitute numbers for some variables; the variable tuple is kept."""
        idx = {self.vars.index(name): Fraction(v) for name, v in mapping.items()}
        terms: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            val = c
            new_e = list(e)
            for i, v in idx.items():
                val *= v ** e[i]
                new_e[i] = 0
            if not val:
                continue
            key = tuple(new_e)
            tot = terms.get(key, 0) + val
            if tot:
                terms[key] = tot
            elif key in terms:
                del terms[key]
        out = MultiPoly(self.vars)
        out.terms = terms
        return out

    def evaluate(self, mapping) -> Fraction:
        """Substitute every variable and return the resulting Fraction."""
        res = self.subs(mapping)
        if not res.is_constant():
            missing = [v for v in self.vars if res.degree_in(v) > 0]
            raise ValueError("unassigned variables: %s" % ", ".join(missing))
        return res.constant_value()

    # -- presentation ------------------------------------------------------

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0])

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self._sorted_terms():
            factors = []
            for name, p in zip(self.vars, e):
                if p == 1:
                    factors.append(name)
                elif p > 1:
                    factors.append("%s^%d" % (name, p))
            mono = "*".join(factors)
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = "%s*%s" % (c, mono)
            parts.append(body)
        text = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                text += " - " + body[1:]
            else:
                text += " + " + body
        return text

    def __repr__(self):
        return "MultiPoly(%r, %s)" % (list(self.vars), str(self))

    def to_json(self) -> dict:
        return {
            ",".join(str(v) for v in e): format_rational(c)
            for e, c in self._sorted_terms()
        }

    @classmethod
    def from_json(cls, vars, obj) -> "MultiPoly":
        terms = {}
        for key, val in obj.items():
            e = tuple(int(part) for part in key.split(",")) if key else ()
            terms[e] = parse_rational(val)
        return cls(vars, terms)


class PolyRing:
    """Factory for MultiPoly values over one fixed variable tuple."""

    def __init__(self, *names: str):
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = tuple(names)

    def var(self, name: str) -> MultiPoly:
        return MultiPoly.variable(self.names, name)

    def gens(self):
        return tuple(self.var(n) for n in self.names)

    def const(self, value) -> MultiPoly:
        return MultiPoly.const(self.names, value)

    def zero(self) -> MultiPoly:
        return MultiPoly(self.names)

    def one(self) -> MultiPoly:
        return MultiPoly.const(self.names, 1)
