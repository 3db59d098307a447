"""Truncated power series and Laurent series over exact coefficient rings.

A ``PowerSeries`` stores the coefficients of x^0 .. x^(N-1); N is the *order*
(the exclusive truncation bound).  A ``LaurentSeries`` additionally allows a
finite range of negative exponents and stores the window
[min_exponent, order).  All series taking part in one computation must share
the same order; mixing orders raises ``OrderMismatch`` instead of silently
tracking a minimum.

Coefficients may be ints, Fractions, or MultiPoly values; ints embed into
both rings, so 0 and 1 are used as universal padding constants.

Precision notes (standard truncated-arithmetic semantics):

* addition, multiplication and division of power series with invertible
  constant term are exact through x^(N-1);
* extracting a positive valuation (Laurent division by a series of valuation
  v > 0, or ``shift`` with negative k) leaves the top v stored coefficients
  dependent on coefficients beyond the window; they are filled as if the
  operand were a polynomial.  Callers that read coefficients near the top
  after such operations must build their inputs with slack.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    BadConstantTerm,
    DivisionByNonUnit,
    DivisionByZeroSeries,
    InadmissibleComposition,
    NonIntegrableResidue,
    NotReversible,
    OrderMismatch,
    OutOfPrecision,
)
from .scalars import (
    MultiPoly,
    binomial,
    format_rational,
    parse_rational,
    scalar_div_int,
    scalar_inverse,
)


def _is_scalar(v) -> bool:
    return isinstance(v, (int, Fraction, MultiPoly))


def _same_order(a, b) -> None:
    if a.order != b.order:
        raise OrderMismatch(
            "cannot mix truncation orders %d and %d in one operation"
            % (a.order, b.order)
        )


class PowerSeries:
    """A series c_0 + c_1 x + ... + c_(N-1) x^(N-1) + O(x^N)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs)
        if order < 1:
            raise ValueError("order must be at least 1")
        if len(coeffs) > order:
            raise ValueError("more coefficients than the truncation order admits")
        coeffs.extend([0] * (order - len(coeffs)))
        self.coeffs = tuple(coeffs)
        self.order = order

    # -- simple structure ----------------------------------------------

    @property
    def constant_term(self):
        return self.coeffs[0]

    def coeff(self, n: int):
        if n >= self.order:
            raise OutOfPrecision(
                "coefficient %d requested from a series of order %d" % (n, self.order)
            )
        if n < 0:
            return 0
        return self.coeffs[n]

    def valuation(self):
        """Index of the first nonzero stored coefficient, or None if all zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def truncated(self, order: int) -> "PowerSeries":
        if not 1 <= order <= self.order:
            raise ValueError("can only truncate to a smaller positive order")
        return PowerSeries(self.coeffs[:order], order)

    def to_laurent(self) -> "LaurentSeries":
        return LaurentSeries(self.coeffs, 0, self.order)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by x^k (any integer k); the result is a Laurent series."""
        return self.to_laurent().shift(k)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if isinstance(other, LaurentSeries):
            return self.to_laurent() + other
        if isinstance(other, PowerSeries):
            _same_order(self, other)
            return PowerSeries(
                [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order
            )
        if _is_scalar(other):
            out = list(self.coeffs)
            out[0] = out[0] + other
            return PowerSeries(out, self.order)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if isinstance(other, (PowerSeries, LaurentSeries)) or _is_scalar(other):
            return self + (-other if not _is_scalar(other) else -1 * other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return self.to_laurent() * other
        if isinstance(other, PowerSeries):
            _same_order(self, other)
            n = self.order
            out = [0] * n
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j in range(n - i):
                    b = other.coeffs[j]
                    if not b:
                        continue
                    out[i + j] = out[i + j] + a * b
            return PowerSeries(out, n)
        if _is_scalar(other):
            return PowerSeries([c * other for c in self.coeffs], self.order)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return PowerSeries([other * c for c in self.coeffs], self.order)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self.to_laurent() / other
        if isinstance(other, PowerSeries):
            _same_order(self, other)
            b0 = other.coeffs[0]
            if not b0:
                raise DivisionByNonUnit(
                    "divisor has zero constant term; divide as Laurent series instead"
                )
            inv0 = scalar_inverse(b0)
            n = self.order
            q = [0] * n
            for m in range(n):
                acc = self.coeffs[m]
                for i in range(m):
                    qi = q[i]
                    if not qi:
                        continue
                    b = other.coeffs[m - i]
                    if not b:
                        continue
                    acc = acc - qi * b
                q[m] = acc * inv0
            return PowerSeries(q, n)
        if _is_scalar(other):
            inv = scalar_inverse(other)
            return PowerSeries([c * inv for c in self.coeffs], self.order)
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return PowerSeries([other], self.order) / self
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("use .pow() for non-integer exponents")
        base = self
        if k < 0:
            base = PowerSeries([1], self.order) / self
            k = -k
        result = PowerSeries([1], self.order)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def pow(self, e) -> "PowerSeries":
        """General power via the binomial series sum(binom(e, k) h^k) with
        h = self - 1; non-integer e requires constant term 1."""
        e = Fraction(e)
        if e.denominator == 1:
            return self ** int(e)
        if not (self.coeffs[0] == 1):
            raise BadConstantTerm("fractional power needs constant term 1")
        h = self - 1
        acc = PowerSeries([1], self.order)
        p = PowerSeries([1], self.order)
        for k in range(1, self.order):
            p = p * h
            if p.is_zero():
                break
            acc = acc + binomial(e, k) * p
        return acc

    # -- calculus --------------------------------------------------------

    def derivative(self) -> "PowerSeries":
        out = [(i + 1) * c for i, c in enumerate(self.coeffs[1:])]
        out.append(0)
        return PowerSeries(out, self.order)

    def integral(self) -> "PowerSeries":
        out = [0]
        out.extend(
            scalar_div_int(c, i + 1) for i, c in enumerate(self.coeffs[: self.order - 1])
        )
        return PowerSeries(out, self.order)

    def exp(self) -> "PowerSeries":
        if self.coeffs[0] != 0:
            raise BadConstantTerm("exp needs zero constant term")
        n = self.order
        y = [0] * n
        y[0] = 1
        for m in range(1, n):
            acc = 0
            for k in range(1, m + 1):
                a = self.coeffs[k]
                if not a:
                    continue
                t = y[m - k]
                if not t:
                    continue
                acc = acc + (k * a) * t
            y[m] = scalar_div_int(acc, m)
        return PowerSeries(y, n)

    def log(self) -> "PowerSeries":
        if self.coeffs[0] != 1:
            raise BadConstantTerm("log needs constant term 1")
        return (self.derivative() / self).integral()

    def reversion(self) -> "PowerSeries":
        """The unique g with self(g(x)) = x = g(self(x)), found by solving the
        triangular linear system on the coefficients of powers of self."""
        n = self.order
        if n < 2:
            raise NotReversible("order too small to determine the linear coefficient")
        if self.coeffs[0] != 0:
            raise NotReversible("constant term must vanish")
        try:
            inv_c1 = scalar_inverse(self.coeffs[1])
        except DivisionByNonUnit as exc:
            raise NotReversible("linear coefficient is not invertible") from exc
        # pw[j] holds the coefficients of self^j; entries below j are zero
        pw = [None, list(self.coeffs)]
        for j in range(2, n):
            prev = pw[j - 1]
            cur = [0] * n
            for i in range(j - 1, n):
                a = prev[i]
                if not a:
                    continue
                for t in range(1, n - i):
                    b = self.coeffs[t]
                    if not b:
                        continue
                    cur[i + t] = cur[i + t] + a * b
            pw.append(cur)
        g = [0] * n
        g[1] = inv_c1
        c1pow = inv_c1
        for m in range(2, n):
            c1pow = c1pow * inv_c1
            acc = 0
            for j in range(1, m):
                gj = g[j]
                if not gj:
                    continue
                a = pw[j][m]
                if not a:
                    continue
                acc = acc + gj * a
            g[m] = -acc * c1pow
        return PowerSeries(g, n)

    # -- comparison and display ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            _same_order(self, other)
            return all(a == b for a, b in zip(self.coeffs, other.coeffs))
        if isinstance(other, LaurentSeries):
            return self.to_laurent() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __str__(self):
        return _render(self.coeffs, 0, self.order)

    def __repr__(self):
        return "PowerSeries(order=%d: %s)" % (self.order, self)


class LaurentSeries:
    """A series with finitely many negative exponents, stored on
    [min_exponent, order).  Canonical form: either the zero series
    (min_exponent 0) or a nonzero leading stored coefficient."""

    __slots__ = ("coeffs", "min_exponent", "order")

    def __init__(self, coeffs, min_exponent: int = 0, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = min_exponent + len(coeffs)
        if order < 1:
            raise ValueError("order must be at least 1")
        if min_exponent + len(coeffs) > order:
            raise ValueError("coefficients extend beyond the truncation order")
        coeffs.extend([0] * (order - min_exponent - len(coeffs)))
        start = 0
        while start < len(coeffs) and not coeffs[start]:
            start += 1
        if start == len(coeffs):
            min_exponent = 0
            coeffs = [0] * order
        elif start:
            min_exponent += start
            coeffs = coeffs[start:]
        self.coeffs = tuple(coeffs)
        self.min_exponent = min_exponent
        self.order = order

    @classmethod
    def zero(cls, order: int) -> "LaurentSeries":
        return cls([], 0, order)

    # -- structure ---------------------------------------------------------

    def coeff(self, n: int):
        if n >= self.order:
            raise OutOfPrecision(
                "coefficient %d requested from a series of order %d" % (n, self.order)
            )
        if n < self.min_exponent:
            return 0
        return self.coeffs[n - self.min_exponent]

    def residue(self):
        """The coefficient of x^(-1)."""
        return self.coeff(-1)

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def valuation(self):
        return None if self.is_zero() else self.min_exponent

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by x^k.  For k < 0 the top |k| stored entries are filled
        as if the series were a polynomial."""
        if k == 0 or self.is_zero():
            return self
        if self.min_exponent + k >= self.order:
            return LaurentSeries.zero(self.order)
        vals = list(self.coeffs)
        if k > 0:
            vals = vals[: max(0, len(vals) - k)]
        else:
            vals = vals + [0] * (-k)
        return LaurentSeries(vals, self.min_exponent + k, self.order)

    def to_power_series(self) -> PowerSeries:
        if self.min_exponent < 0:
            raise ValueError("series has negative exponents")
        return PowerSeries(
            [0] * self.min_exponent + list(self.coeffs), self.order
        )

    # -- ring operations -----------------------------------------------------

    def _promote(self, other):
        if isinstance(other, PowerSeries):
            return other.to_laurent()
        if isinstance(other, LaurentSeries):
            return other
        return None

    def __add__(self, other):
        o = self._promote(other)
        if o is not None:
            _same_order(self, o)
            m = min(self.min_exponent, o.min_exponent)
            out = [self.coeff(n) + o.coeff(n) for n in range(m, self.order)]
            return LaurentSeries(out, m, self.order)
        if _is_scalar(other):
            m = min(self.min_exponent, 0)
            out = [self.coeff(n) for n in range(m, self.order)]
            out[0 - m] = out[0 - m] + other
            return LaurentSeries(out, m, self.order)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries([-c for c in self.coeffs], self.min_exponent, self.order)

    def __sub__(self, other):
        o = self._promote(other)
        if o is not None:
            return self + (-o)
        if _is_scalar(other):
            return self + (-1 * other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._promote(other)
        if o is not None:
            _same_order(self, o)
            n = self.order
            if self.is_zero() or o.is_zero():
                return LaurentSeries.zero(n)
            m = self.min_exponent + o.min_exponent
            if m >= n:
                return LaurentSeries.zero(n)
            out = [0] * (n - m)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                ea = self.min_exponent + i
                jmax = min(len(o.coeffs), n - ea - o.min_exponent)
                for j in range(jmax):
                    b = o.coeffs[j]
                    if not b:
                        continue
                    idx = ea + o.min_exponent + j - m
                    out[idx] = out[idx] + a * b
            return LaurentSeries(out, m, n)
        if _is_scalar(other):
            return LaurentSeries(
                [c * other for c in self.coeffs], self.min_exponent, self.order
            )
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return LaurentSeries(
                [other * c for c in self.coeffs], self.min_exponent, self.order
            )
        return NotImplemented

    def __truediv__(self, other):
        o = self._promote(other)
        if o is not None:
            _same_order(self, o)
            if o.is_zero():
                raise DivisionByZeroSeries("division by the zero series")
            if self.is_zero():
                return LaurentSeries.zero(self.order)
            inv0 = scalar_inverse(o.coeffs[0])
            m = self.min_exponent - o.min_exponent
            if m >= self.order:
                return LaurentSeries.zero(self.order)
            length = self.order - m
            num = [
                self.coeff(self.min_exponent + i)
                if self.min_exponent + i < self.order
                else 0
                for i in range(length)
            ]
            den = [o.coeffs[i] if i < len(o.coeffs) else 0 for i in range(length)]
            q = [0] * length
            for t in range(length):
                acc = num[t]
                for i in range(t):
                    qi = q[i]
                    if not qi:
                        continue
                    b = den[t - i]
                    if not b:
                        continue
                    acc = acc - qi * b
                q[t] = acc * inv0
            return LaurentSeries(q, m, self.order)
        if _is_scalar(other):
            inv = scalar_inverse(other)
            return LaurentSeries(
                [c * inv for c in self.coeffs], self.min_exponent, self.order
            )
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return LaurentSeries([other], 0, self.order) / self
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("Laurent powers take integer exponents")
        base = self
        if k < 0:
            base = LaurentSeries([1], 0, self.order) / self
            k = -k
        result = LaurentSeries([1], 0, self.order)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- calculus ------------------------------------------------------------

    def derivative(self) -> "LaurentSeries":
        if self.is_zero():
            return LaurentSeries.zero(self.order)
        m = self.min_exponent
        out = [0] * (self.order - (m - 1))
        for i, c in enumerate(self.coeffs):
            e = m + i
            if e == 0 or not c:
                continue
            out[e - 1 - (m - 1)] = e * c
        return LaurentSeries(out, m - 1, self.order)

    def integral(self) -> "LaurentSeries":
        if self.residue() != 0:
            raise NonIntegrableResidue("nonzero residue has no Laurent antiderivative")
        m = self.min_exponent
        out = [0] * (self.order - (m + 1))
        for i, c in enumerate(self.coeffs):
            e = m + i
            if e == -1 or not c or e + 1 >= self.order:
                continue
            out[e + 1 - (m + 1)] = scalar_div_int(c, e + 1)
        return LaurentSeries(out, m + 1, self.order)

    # -- comparison and display -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            other = other.to_laurent()
        if isinstance(other, LaurentSeries):
            _same_order(self, other)
            m = min(self.min_exponent, other.min_exponent)
            return all(
                self.coeff(n) == other.coeff(n) for n in range(m, self.order)
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.min_exponent, self.coeffs))

    def __str__(self):
        return _render(self.coeffs, self.min_exponent, self.order)

    def __repr__(self):
        return "LaurentSeries(order=%d: %s)" % (self.order, self)


def _render(coeffs, min_exponent, order) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        e = min_exponent + i
        if e == 0:
            body = str(c)
        else:
            xs = "x" if e == 1 else "x^%d" % e
            if c == 1:
                body = xs
            elif c == -1:
                body = "-" + xs
            else:
                body = "%s*%s" % (c, xs)
        parts.append(body)
    if not parts:
        text = "0"
    else:
        text = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                text += " - " + body[1:]
            else:
                text += " + " + body
    return text + " + O(x^%d)" % order


def compose(outer, inner: PowerSeries, outer_polynomial: bool = False):
    """Substitute ``inner`` into ``outer``.

    Admissible when the inner series has zero constant term, or when the
    caller declares the outer series to be a polynomial (its stored
    coefficients are the whole truth).  A Laurent outer series requires an
    inner series of valuation exactly 1.
    """
    if isinstance(inner, LaurentSeries):
        raise InadmissibleComposition("inner operand must be a power series")
    if isinstance(outer, LaurentSeries):
        _same_order(outer, inner)
        if inner.valuation() != 1:
            raise InadmissibleComposition(
                "a Laurent outer series needs an inner series of valuation 1"
            )
        n = outer.order
        pos = PowerSeries([outer.coeff(k) for k in range(n)], n)
        result = compose(pos, inner).to_laurent()
        if outer.min_exponent < 0:
            inv_inner = LaurentSeries([1], 0, n) / inner.to_laurent()
            p = inv_inner
            for k in range(-1, outer.min_exponent - 1, -1):
                c = outer.coeff(k)
                if c:
                    result = result + p * c
                if k > outer.min_exponent:
                    p = p * inv_inner
        return result
    if not isinstance(outer, PowerSeries):
        raise InadmissibleComposition("outer operand must be a series")
    _same_order(outer, inner)
    if inner.coeffs[0] != 0 and not outer_polynomial:
        raise InadmissibleComposition(
            "inner constant term must vanish unless outer is declared polynomial"
        )
    top = outer.valuation()
    if top is None:
        return PowerSeries([0], outer.order)
    top = max(i for i, c in enumerate(outer.coeffs) if c)
    acc = PowerSeries([outer.coeffs[top]], outer.order)
    for k in range(top - 1, -1, -1):
        acc = acc * inner
        c = outer.coeffs[k]
        if c:
            acc = acc + c
    return acc


class TruncationContext:
    """A shared truncation order together with series factories."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be at least 1")
        self.order = order

    def series(self, coeffs) -> PowerSeries:
        return PowerSeries(coeffs, self.order)

    def laurent(self, coeffs, min_exponent: int = 0) -> LaurentSeries:
        return LaurentSeries(coeffs, min_exponent, self.order)

    def zero(self) -> PowerSeries:
        return PowerSeries([0], self.order)

    def one(self) -> PowerSeries:
        return PowerSeries([1], self.order)

    def constant(self, c) -> PowerSeries:
        return PowerSeries([c], self.order)

    def x(self) -> PowerSeries:
        return PowerSeries([0, 1], self.order)

    def monomial(self, k: int, c=1) -> PowerSeries:
        if not 0 <= k < self.order:
            raise ValueError("monomial degree outside [0, order)")
        return PowerSeries([0] * k + [c], self.order)

    def geometric(self) -> PowerSeries:
        """1/(1-x)."""
        return PowerSeries([1] * self.order, self.order)

    def exponential(self) -> PowerSeries:
        """exp(x)."""
        coeffs = [Fraction(1)]
        for n in range(1, self.order):
            coeffs.append(coeffs[-1] / n)
        return PowerSeries(coeffs, self.order)


def series_to_json(s) -> dict:
    """Serialize a series to the canonical JSON shape."""
    if isinstance(s, PowerSeries):
        m, coeffs = 0, s.coeffs
    elif isinstance(s, LaurentSeries):
        m, coeffs = s.min_exponent, s.coeffs
    else:
        raise TypeError("not a series: %r" % (s,))
    variables = None
    enc = []
    for c in coeffs:
        if isinstance(c, MultiPoly):
            variables = list(c.vars)
            enc.append(c.to_json())
        else:
            enc.append(format_rational(c))
    out = {"min_exponent": m, "order": s.order, "coefficients": enc}
    if variables is not None:
        out["variables"] = variables
    return out


def series_from_json(obj: dict):
    """Inverse of series_to_json; returns a PowerSeries when no negative
    exponents are present, otherwise a LaurentSeries."""
    m = int(obj.get("min_exponent", 0))
    order = int(obj["order"])
    variables = tuple(obj["variables"]) if "variables" in obj else None
    coeffs = []
    for item in obj["coefficients"]:
        if isinstance(item, dict):
            if variables is None:
                raise ValueError("polynomial coefficients need a variables list")
            coeffs.append(MultiPoly.from_json(variables, item))
        else:
            coeffs.append(parse_rational(str(item)))
    if m >= 0:
        return PowerSeries([0] * m + coeffs, order)
    return LaurentSeries(coeffs, m, order)
