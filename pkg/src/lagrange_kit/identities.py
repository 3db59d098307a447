"""Named verification suites for classical coefficient identities.

Each public ``check_*`` routine exercises one family of identities over
exact rational (or polynomial) arithmetic and returns an
``IdentityReport``; nothing is thrown on a mathematical failure, the
report carries the first counterexample instead.  A registry maps
stable identity names to default runs.

Polynomial identities in free parameters are certified by evaluating on
integer grids exceeding the polynomial degree, so a passing grid is a
proof, not a heuristic.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd, lcm

from .errors import DegreeViolation, InsufficientRange, UnknownIdentity
from .lagrange import (
    raney_coefficient,
    schur_jabotinsky_check,
    schur_jabotinsky_window,
    solve_indeterminate,
    solve_xR,
)
from .scalars import (
    MultiPoly,
    PolyRing,
    format_rational,
    int_binomial,
    poly_eval,
    scalar_div_int,
)
from .series import LaurentSeries, PowerSeries, compose


# -- report plumbing ----------------------------------------------------------


def _json_value(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, MultiPoly):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, range):
        return list(v)
    if isinstance(v, dict):
        return {str(k): _json_value(x) for k, x in v.items()}
    return v


@dataclass
class IdentityReport:
    """Outcome of one identity check; ``status`` is "pass" or "fail"."""

    name: str
    params: dict
    order: int
    status: str
    first_failure: str | None
    elapsed_ms: float
    details: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, include_elapsed: bool = False) -> dict:
        out = {
            "identity": self.name,
            "params": _json_value(self.params),
            "order": self.order,
            "status": self.status,
            "first_failure": self.first_failure,
        }
        if self.details is not None:
            out["details"] = _json_value(self.details)
        if include_elapsed:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


class _Recorder:
    """Collects equality checks, keeping the first failure only."""

    __slots__ = ("first_failure", "count")

    def __init__(self):
        self.first_failure = None
        self.count = 0

    def expect(self, lhs, rhs, label: str) -> None:
        self.count += 1
        if self.first_failure is None and lhs != rhs:
            self.first_failure = "%s: %s != %s" % (label, lhs, rhs)

    def require(self, condition: bool, label: str) -> None:
        self.count += 1
        if self.first_failure is None and not condition:
            self.first_failure = label


def _report(name, params, order, rec, started, details=None) -> IdentityReport:
    return IdentityReport(
        name=name,
        params=params,
        order=order,
        status="pass" if rec.first_failure is None else "fail",
        first_failure=rec.first_failure,
        elapsed_ms=(time.perf_counter() - started) * 1000.0,
        details=details,
    )


# -- generating series builders ------------------------------------------------


def fuss_catalan_series(p: int, order: int) -> PowerSeries:
    """The unique series with c = 1 + x c^p (any integer p; c(0) = 1)."""
    one = PowerSeries([1], order)
    x = PowerSeries([0, 1], order)
    c = one
    for _ in range(order):
        c = one + x * c ** p
    if c != one + x * c ** p:
        raise AssertionError("fixed point failed the substitution check")
    return c


def catalan_series(order: int) -> PowerSeries:
    """c with c = 1 + x c^2, the Catalan generating function."""
    return fuss_catalan_series(2, order)


def tree_function(order: int) -> PowerSeries:
    """T with T = x e^T, the exponential series for rooted labeled trees."""
    x = PowerSeries([0, 1], order)
    t = PowerSeries([0], order)
    for _ in range(order):
        t = x * t.exp()
    if t != x * t.exp():
        raise AssertionError("fixed point failed the substitution check")
    return t


def _alternate(s: PowerSeries) -> PowerSeries:
    """s(-x)."""
    return PowerSeries(
        [c if i % 2 == 0 else -c for i, c in enumerate(s.coeffs)], s.order
    )


def _poly_series(coeffs, order: int) -> PowerSeries:
    coeffs = list(coeffs)
    if len(coeffs) > order:
        raise ValueError("polynomial degree beyond the truncation order")
    return PowerSeries(coeffs, order)


def _vectors(length: int, total_max: int):
    """All nonnegative integer vectors of the given length with entry sum
    at most total_max."""
    if length == 0:
        yield ()
        return
    for head in range(total_max + 1):
        for rest in _vectors(length - 1, total_max - head):
            yield (head,) + rest


# -- rational functions of one parameter ---------------------------------------


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """num/den over MultiPoly; equality by cross multiplication."""

    num: MultiPoly
    den: MultiPoly

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __str__(self):
        return "(%s) / (%s)" % (self.num, self.den)

    def coefficients_at(self, k_value) -> list[Fraction]:
        """Ascending u-coefficients after substituting a number for k."""
        num = self.num.subs({"k": k_value})
        den = self.den.subs({"k": k_value})
        if not den.is_constant() or den.is_zero():
            raise ZeroDivisionError("parameter value hits a pole")
        d = den.constant_value()
        iu = self.num.vars.index("u")
        out = [Fraction(0)] * (num.degree_in("u") + 1)
        for exps, c in num.terms.items():
            out[exps[iu]] += c / d
        return out


def _u_coefficients(poly: MultiPoly, k_value) -> list[Fraction]:
    """Ascending u-coefficients of a (u, k) polynomial at a numeric k."""
    sub = poly.subs({"k": k_value})
    iu = poly.vars.index("u")
    out = [Fraction(0)] * (sub.degree_in("u") + 1)
    for exps, c in sub.terms.items():
        out[exps[iu]] += c
    return out


# -- Catalan suite --------------------------------------------------------------


def _catalan_forms(k: int, n: int):
    """The four printed expressions for [x^n] c(x)^k; None marks an
    excluded index (n = -k/2 for the first, n = -k for the second)."""
    yield (
        None
        if 2 * n + k == 0
        else Fraction(k, 2 * n + k) * int_binomial(2 * n + k, n),
        "cycle form",
    )
    yield (
        None if n + k == 0 else Fraction(k, n + k) * int_binomial(2 * n + k - 1, n),
        "shifted cycle form",
    )
    yield (
        int_binomial(2 * n + k - 1, n) - int_binomial(2 * n + k - 1, n - 1),
        "ballot difference form",
    )
    yield (
        int_binomial(2 * n + k, n) - 2 * int_binomial(2 * n + k - 1, n - 1),
        "weighted difference form",
    )


def check_catalan_suite(
    k_range=range(-5, 6),
    order: int = 30,
    conv_n_max: int | None = None,
) -> IdentityReport:
    """Ballot-number formulas for c(x)^k, the central-binomial quotient,
    log c(x), both convolution identities, and the two alternative
    defining equations f = x/(1-f) and f = x(1+f^2)."""
    started = time.perf_counter()
    rec = _Recorder()
    if conv_n_max is None:
        conv_n_max = min(order + 10, 40)
    c = catalan_series(order)
    inv_root = PowerSeries([1, -4], order).pow(Fraction(-1, 2))
    for k in k_range:
        ck = c ** k
        for n in range(order):
            got = ck.coeff(n)
            for value, form in _catalan_forms(k, n):
                if value is not None:
                    rec.expect(got, value, "%s at k=%d n=%d" % (form, k, n))
        mid = ck * inv_root
        for n in range(order):
            rec.expect(
                mid.coeff(n),
                int_binomial(2 * n + k, n),
                "central binomial quotient at k=%d n=%d" % (k, n),
            )
    logc = c.log()
    for m in range(1, order):
        rec.expect(
            logc.coeff(m),
            Fraction(int_binomial(2 * m, m), 2 * m),
            "log c coefficient at m=%d" % m,
        )

    # convolutions from c^k c^l = c^(k+l) and from the quotient display
    for k in (-2, -1, 1, 2, 3):
        for l in (-2, -1, 1, 2, 3):
            for n in range(conv_n_max + 1):
                firsts = [2 * i + k for i in range(n + 1)]
                seconds = [2 * (n - i) + l for i in range(n + 1)]
                if all(a != 0 for a in firsts):
                    lhs = sum(
                        Fraction(k, 2 * i + k)
                        * int_binomial(2 * i + k, i)
                        * int_binomial(2 * (n - i) + l, n - i)
                        for i in range(n + 1)
                    )
                    rec.expect(
                        lhs,
                        int_binomial(2 * n + k + l, n),
                        "mixed convolution at k=%d l=%d n=%d" % (k, l, n),
                    )
                    if 2 * n + k + l != 0 and all(b != 0 for b in seconds):
                        lhs = sum(
                            Fraction(k, 2 * i + k)
                            * int_binomial(2 * i + k, i)
                            * Fraction(l, 2 * (n - i) + l)
                            * int_binomial(2 * (n - i) + l, n - i)
                            for i in range(n + 1)
                        )
                        rec.expect(
                            lhs,
                            Fraction(k + l, 2 * n + k + l)
                            * int_binomial(2 * n + k + l, n),
                            "cycle convolution at k=%d l=%d n=%d" % (k, l, n),
                        )

    # the same numbers from f = x/(1-f) and f = x(1+f^2)
    x = PowerSeries([0, 1], order)
    rec.expect(
        solve_xR(PowerSeries([1] * order, order)),
        x * c,
        "solution of f = x/(1-f)",
    )
    f2 = solve_xR(PowerSeries([1, 0, 1], order))
    for n in range(order):
        want = c.coeff((n - 1) // 2) if n % 2 == 1 else 0
        rec.expect(f2.coeff(n), want, "solution of f = x(1+f^2) at n=%d" % n)

    return _report(
        "catalan",
        {"k_range": list(k_range), "conv_n_max": conv_n_max},
        order,
        rec,
        started,
    )


# -- Fuss-Catalan suite ----------------------------------------------------------


def check_fuss_catalan(
    p_range=(2, 3, 4, 5),
    k_range=range(-3, 6),
    order: int = 30,
    inverse_order: int = 20,
    small_order: int = 15,
) -> IdentityReport:
    """Coefficient formulas for c_p^k, the binomial-sum quotient display
    with both substituted forms, the three compositional-inverse
    relations, the derivative display, negative-order duality, and the
    composition identity c_{p+q}(x) = c_p(x c_{p+q}(x)^q)."""
    started = time.perf_counter()
    rec = _Recorder()
    one = PowerSeries([1], order)
    x = PowerSeries([0, 1], order)
    for p in p_range:
        c = fuss_catalan_series(p, order)
        quotient = one - p * x * c ** (p - 1)
        for k in k_range:
            ck = c ** k
            for n in range(order):
                if p * n + k != 0:
                    rec.expect(
                        ck.coeff(n),
                        Fraction(k, p * n + k) * int_binomial(p * n + k, n),
                        "power coefficient at p=%d k=%d n=%d" % (p, k, n),
                    )
            binsum = PowerSeries(
                [int_binomial(p * n + k, n) for n in range(order)], order
            )
            rec.expect(
                binsum, ck / quotient, "binomial sum quotient at p=%d k=%d" % (p, k)
            )
            rec.expect(
                binsum,
                c ** (k + 1) / (one - (p - 1) * (c - one)),
                "binomial sum second quotient at p=%d k=%d" % (p, k),
            )
            inner1 = x * PowerSeries([1, 1], order) ** (-p)
            rec.expect(
                compose(binsum, inner1),
                PowerSeries([1, 1], order) ** (k + 1)
                / PowerSeries([1, -(p - 1)], order),
                "substituted display I at p=%d k=%d" % (p, k),
            )
            inner2 = x * PowerSeries([1, -1], order) ** (p - 1)
            rec.expect(
                compose(binsum, inner2),
                (PowerSeries([1, -p], order) * PowerSeries([1, -1], order) ** k)
                ** (-1),
                "substituted display II at p=%d k=%d" % (p, k),
            )
        rec.expect(
            c.derivative().truncated(order - 1),
            (c ** p / quotient).truncated(order - 1),
            "derivative display at p=%d" % p,
        )

        # compositional inverses
        ci = fuss_catalan_series(p, inverse_order)
        xi = PowerSeries([0, 1], inverse_order)
        g1 = (xi * PowerSeries([1, 1], inverse_order) ** (-p)).reversion()
        rec.expect(
            g1, ci - PowerSeries([1], inverse_order), "inverse relation I at p=%d" % p
        )
        g2 = (xi * PowerSeries([1, -1], inverse_order) ** (p - 1)).reversion()
        rec.expect(g2, xi * ci ** (p - 1), "inverse relation II at p=%d" % p)
        g3 = PowerSeries([0, 1] + [0] * (p - 2) + [-1], inverse_order).reversion()
        spread = [0] * inverse_order
        for m in range(inverse_order):
            e = 1 + m * (p - 1)
            if e < inverse_order:
                spread[e] = ci.coeff(m)
        rec.expect(
            g3,
            PowerSeries(spread, inverse_order),
            "inverse relation III at p=%d" % p,
        )

        # duality with negative order
        cm = fuss_catalan_series(-p, small_order)
        cp1 = fuss_catalan_series(p + 1, small_order)
        rec.expect(
            cm * _alternate(cp1), PowerSeries([1], small_order), "duality at p=%d" % p
        )

        # composition identity
        for q in (1, 2):
            cpq = fuss_catalan_series(p + q, small_order)
            cps = fuss_catalan_series(p, small_order)
            xs = PowerSeries([0, 1], small_order)
            rec.expect(
                compose(cps, xs * cpq ** q),
                cpq,
                "composition identity at p=%d q=%d" % (p, q),
            )
    return _report(
        "fuss-catalan",
        {
            "p_range": list(p_range),
            "k_range": list(k_range),
            "inverse_order": inverse_order,
            "small_order": small_order,
        },
        order,
        rec,
        started,
    )


def check_rothe_hagen(
    p_range=(2, 3, 4),
    k_range=range(-6, 7),
    l_range=range(-6, 7),
    n_max: int = 8,
) -> IdentityReport:
    """Both convolution identities for generalized binomial sequences;
    parameter triples are skipped when a term hits an excluded index."""
    started = time.perf_counter()
    rec = _Recorder()
    for p in p_range:
        for k in k_range:
            for l in l_range:
                for n in range(n_max + 1):
                    if any(p * i + k == 0 for i in range(n + 1)):
                        continue
                    lhs = sum(
                        Fraction(k, p * i + k)
                        * int_binomial(p * i + k, i)
                        * int_binomial(p * (n - i) + l, n - i)
                        for i in range(n + 1)
                    )
                    rec.expect(
                        lhs,
                        int_binomial(p * n + k + l, n),
                        "mixed form at p=%d k=%d l=%d n=%d" % (p, k, l, n),
                    )
                    if p * n + k + l == 0 or any(
                        p * (n - i) + l == 0 for i in range(n + 1)
                    ):
                        continue
                    lhs = sum(
                        Fraction(k, p * i + k)
                        * int_binomial(p * i + k, i)
                        * Fraction(l, p * (n - i) + l)
                        * int_binomial(p * (n - i) + l, n - i)
                        for i in range(n + 1)
                    )
                    rec.expect(
                        lhs,
                        Fraction(k + l, p * n + k + l)
                        * int_binomial(p * n + k + l, n),
                        "cycle form at p=%d k=%d l=%d n=%d" % (p, k, l, n),
                    )
    return _report(
        "rothe-hagen",
        {
            "p_range": list(p_range),
            "k_range": list(k_range),
            "l_range": list(l_range),
            "n_max": n_max,
        },
        n_max,
        rec,
        started,
    )


def check_jensen(p: int = 3, j: int = 1, r: int = 10, n_max: int = 8) -> IdentityReport:
    """sum_l C(j+pl, l) C(r-pl, n-l) = sum_i C(j+r-i, n-i) p^i for all
    n <= n_max, plus the pre-substitution form it is derived from."""
    started = time.perf_counter()
    rec = _Recorder()
    for n in range(n_max + 1):
        lhs = sum(
            int_binomial(j + p * l, l) * int_binomial(r - p * l, n - l)
            for l in range(n + 1)
        )
        rhs = sum(int_binomial(j + r - i, n - i) * p ** i for i in range(n + 1))
        rec.expect(lhs, rhs, "identity at n=%d" % n)
        k = r - p * n
        lhs2 = sum(
            int_binomial(p * l + j, l) * int_binomial(p * (n - l) + k, n - l)
            for l in range(n + 1)
        )
        rhs2 = sum(
            int_binomial(p * n + j + k - i, n - i) * p ** i for i in range(n + 1)
        )
        rec.expect(lhs2, rhs2, "pre-substitution form at n=%d" % n)
    return _report(
        "jensen", {"p": p, "j": j, "r": r, "n_max": n_max}, n_max, rec, started
    )


# -- tree function suite ---------------------------------------------------------


def _forest_cycle_term(i: int, k: int) -> int:
    """[x^i] i! e^(kT); the i = 0 value is 1 for every k."""
    if i == 0:
        return 1
    return k * (i + k) ** (i - 1)


def _lacasse_checks(rec: _Recorder, order: int) -> None:
    t = tree_function(order)
    one = PowerSeries([1], order)
    u = one / (one - t)
    for n in range(order):
        rec.expect(
            u.coeff(n), Fraction(n ** n, factorial(n)), "geometric of T at n=%d" % n
        )
    target = PowerSeries(
        [Fraction(n ** (n + 1), factorial(n)) for n in range(order)], order
    )
    rec.expect(u ** 3 - u ** 2, target, "difference of powers display")
    rec.expect(t * u ** 3, target, "product display")
    u2 = u * u
    u3 = u2 * u
    frozen = {1: 2, 2: 10, 3: 78, 4: 824}
    for n in range(min(order, 13)):
        direct = sum(comb(n, k) * k ** k * (n - k) ** (n - k) for k in range(n + 1))
        rec.expect(
            u2.coeff(n) * factorial(n),
            direct,
            "binomial self convolution at n=%d" % n,
        )
        rec.expect(
            direct,
            sum(n ** j * (factorial(n) // factorial(j)) for j in range(n + 1)),
            "partial exponential sum at n=%d" % n,
        )
        rec.expect(
            u3.coeff(n) * factorial(n),
            sum(
                (n - j + 1) * n ** j * (factorial(n) // factorial(j))
                for j in range(n + 1)
            ),
            "cubic closed form at n=%d" % n,
        )
        if n in frozen:
            rec.expect(direct, frozen[n], "frozen value at n=%d" % n)


def _abel_checks(rec: _Recorder, x_range, y_range, z_range, n_max: int) -> None:
    for n in range(n_max + 1):
        for xv in x_range:
            for yv in y_range:
                for zv in z_range:
                    total = 0
                    for i in range(n + 1):
                        if i == 0:
                            term = yv ** n
                        else:
                            term = (
                                xv
                                * (xv + i * zv) ** (i - 1)
                                * (yv - i * zv) ** (n - i)
                            )
                        total += comb(n, i) * term
                    rec.expect(
                        (xv + yv) ** n,
                        total,
                        "x=%d y=%d z=%d n=%d" % (xv, yv, zv, n),
                    )


def check_tree_function_suite(k_range=range(-3, 6), order: int = 30) -> IdentityReport:
    """T = x e^T and its coefficient identities: forests counted by
    e^(kT), powers of T, the prime parking function expansion, the
    geometrically weighted variant, both tree convolutions as certified
    polynomial identities, the cubic-power display, and Abel's identity."""
    started = time.perf_counter()
    rec = _Recorder()
    t = tree_function(order)
    one = PowerSeries([1], order)
    for n in range(order):
        want = Fraction(n ** (n - 1), factorial(n)) if n >= 1 else 0
        rec.expect(t.coeff(n), want, "tree series at n=%d" % n)
    f = t.exp()
    u = one / (one - t)
    for k in k_range:
        fk = f ** k
        rec.expect(fk.coeff(0), 1, "forest constant term at k=%d" % k)
        for n in range(1, order):
            rec.expect(
                fk.coeff(n),
                Fraction(k * (n + k) ** (n - 1), factorial(n)),
                "forest coefficient at k=%d n=%d" % (k, n),
            )
        fku = fk * u
        for n in range(order):
            rec.expect(
                fku.coeff(n),
                Fraction((n + k) ** n, factorial(n)),
                "weighted forest coefficient at k=%d n=%d" % (k, n),
            )
        if k >= 1:
            tk = t ** k
            for n in range(order):
                if n < k:
                    rec.expect(
                        tk.coeff(n), 0, "tree power low term at k=%d n=%d" % (k, n)
                    )
                else:
                    rec.expect(
                        tk.coeff(n),
                        Fraction(k * factorial(k) * comb(n, k), factorial(n))
                        * Fraction(n) ** (n - k - 1),
                        "tree power coefficient at k=%d n=%d" % (k, n),
                    )
    parking = one - PowerSeries(
        [0] + [Fraction((n - 1) ** (n - 1), factorial(n)) for n in range(1, order)],
        order,
    )
    rec.expect(f * parking, one, "prime parking expansion")

    # convolutions, certified on (degree+1)-point grids
    for n in range(9):
        for k in range(n + 2):
            for l in range(n + 2):
                rhs = sum(
                    comb(n, i) * _forest_cycle_term(i, k) * (n - i + l) ** (n - i)
                    for i in range(n + 1)
                )
                rec.expect(
                    (n + k + l) ** n,
                    rhs,
                    "mixed convolution at k=%d l=%d n=%d" % (k, l, n),
                )
                rhs = sum(
                    comb(n, i)
                    * _forest_cycle_term(i, k)
                    * _forest_cycle_term(n - i, l)
                    for i in range(n + 1)
                )
                lhs = 1 if n == 0 else (k + l) * (n + k + l) ** (n - 1)
                rec.expect(
                    lhs, rhs, "cycle convolution at k=%d l=%d n=%d" % (k, l, n)
                )

    _lacasse_checks(rec, min(order, 20))
    _abel_checks(rec, range(-3, 4), range(-3, 4), range(-2, 3), 8)
    return _report("tree-function", {"k_range": list(k_range)}, order, rec, started)


def check_lacasse(order: int = 30) -> IdentityReport:
    """U^3 - U^2 = sum n^(n+1) x^n/n! for U = 1/(1-T), with closed
    binomial-sum forms for the second and third powers."""
    started = time.perf_counter()
    rec = _Recorder()
    _lacasse_checks(rec, order)
    return _report("lacasse", {}, order, rec, started)


def check_abel(
    x_range=range(-3, 4),
    y_range=range(-3, 4),
    z_range=range(-2, 3),
    n_max: int = 8,
) -> IdentityReport:
    """(x+y)^n = sum_i C(n,i) x (x+iz)^(i-1) (y-iz)^(n-i) on integer
    grids; z = 0 points reproduce the binomial theorem."""
    started = time.perf_counter()
    rec = _Recorder()
    _abel_checks(rec, x_range, y_range, z_range, n_max)
    return _report(
        "abel",
        {
            "x_range": list(x_range),
            "y_range": list(y_range),
            "z_range": list(z_range),
            "n_max": n_max,
        },
        n_max,
        rec,
        started,
    )


# -- weighted Stirling numbers ---------------------------------------------------


def weighted_stirling(n: int, j: int, k):
    """R(n, j, k) = (1/j!) sum_i (-1)^(j-i) C(j,i) (k+i)^n.

    k may be an integer, a Fraction, or a MultiPoly parameter; R(n, j, 0)
    is the ordinary Stirling number of the second kind."""
    if n < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    total = 0
    for i in range(j + 1):
        total = total + (-1) ** (j - i) * comb(j, i) * (k + i) ** n
    return scalar_div_int(total, factorial(j))


def _stirling2(n: int, j: int) -> int:
    """Second-kind Stirling numbers by the triangular recurrence."""
    row = [1]
    for _ in range(n):
        nxt = [0] * (len(row) + 1)
        for i, v in enumerate(row):
            if v:
                nxt[i] += i * v
                nxt[i + 1] += v
        row = nxt
    return row[j] if 0 <= j < len(row) else 0


def check_ws_egf(
    j_max: int = 4, order: int = 30, k_values=(-2, -1, 0, 1, 2, 3)
) -> IdentityReport:
    """sum_n R(n,j,k) x^n/n! = e^(kx) (e^x - 1)^j / j!, at integer k and
    with k a free polynomial parameter, plus the Stirling reduction."""
    started = time.perf_counter()
    rec = _Recorder()
    expm1 = PowerSeries(
        [0] + [Fraction(1, factorial(n)) for n in range(1, order)], order
    )
    ring = PolyRing("k")
    kp = ring.var("k")
    sym_order = min(order, 16)
    for j in range(j_max + 1):
        base = (expm1 ** j) * Fraction(1, factorial(j))
        for k0 in k_values:
            ekx = PowerSeries(
                [Fraction(k0 ** n, factorial(n)) for n in range(order)], order
            )
            lhs = ekx * base
            for n in range(order):
                rec.expect(
                    lhs.coeff(n) * factorial(n),
                    weighted_stirling(n, j, k0),
                    "generating function at j=%d k=%d n=%d" % (j, k0, n),
                )
        ekx_sym = PowerSeries(
            [kp ** n / factorial(n) for n in range(sym_order)], sym_order
        )
        lhs_sym = ekx_sym * base.truncated(sym_order)
        for n in range(sym_order):
            rec.expect(
                lhs_sym.coeff(n) * factorial(n),
                weighted_stirling(n, j, kp),
                "parametric generating function at j=%d n=%d" % (j, n),
            )
        for n in range(min(order, 9)):
            rec.expect(
                weighted_stirling(n, j, 0),
                _stirling2(n, j),
                "Stirling reduction at n=%d j=%d" % (n, j),
            )
    rec.expect(weighted_stirling(4, 2, 0), 7, "frozen value R(4,2,0)")
    rec.expect(weighted_stirling(3, 1, 1), 7, "frozen value R(3,1,1)")
    for n in range(6):
        for k0 in (-2, 2, 3):
            rec.expect(
                weighted_stirling(n, 0, k0),
                Fraction(k0) ** n,
                "power reduction at n=%d k=%d" % (n, k0),
            )
    return _report(
        "weighted-stirling",
        {"j_max": j_max, "k_values": list(k_values)},
        order,
        rec,
        started,
    )


# -- negative and positive power families ----------------------------------------


def compute_p_l(l: int) -> RationalFunction:
    """The degree l-1 polynomial p_l(u) with rational-in-k coefficients
    satisfying sum_n (n+k)^(n-l) x^n/n! = e^(kT) p_l(T), built from the
    finite-difference double sum."""
    if l < 1:
        raise ValueError("l must be at least 1")
    ring = PolyRing("u", "k")
    u = ring.var("u")
    k = ring.var("k")
    num = ring.zero()
    den = ring.one()
    for j in range(l):
        for n in range(j + 1):
            t_num = (
                Fraction((-1) ** (j - n) * comb(j, n), factorial(j)) * u ** j
            )
            t_den = (k + n) ** (l - j)
            num = num * t_den + t_num * den
            den = den * t_den
    return RationalFunction(num, den)


def compute_q_l(l: int) -> MultiPoly:
    """q_l(u) = p_l(u) at k = 1; satisfies sum_{n>=1} n^(n-l) x^n/n!
    = T q_l(T)."""
    pl = compute_p_l(l)
    num = pl.num.subs({"k": 1})
    den = pl.den.subs({"k": 1}).constant_value()
    ring = PolyRing("u")
    uv = ring.var("u")
    iu = pl.num.vars.index("u")
    out = ring.zero()
    for exps, c in num.terms.items():
        out = out + (c / den) * uv ** exps[iu]
    return out


def compute_r_m(m: int) -> MultiPoly:
    """The polynomial r_m(u, k) of degree m in u and at most m in k with
    sum_j R(j+m, j, k) u^j = r_m(u, k)/(1-u)^(2m+1).

    Raises DegreeViolation if the product fails to terminate at degree m
    in u (checked over a 2m+4 window) or exceeds degree m in k."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    ring = PolyRing("u", "k")
    kp = ring.var("k")
    up = ring.var("u")
    span = 3 * m + 4
    seq = [weighted_stirling(j + m, j, kp) for j in range(span + 1)]
    sig = [(-1) ** i * comb(2 * m + 1, i) for i in range(2 * m + 2)]
    out = ring.zero()
    for d in range(span + 1):
        coeff = ring.zero()
        for i in range(min(d, 2 * m + 1) + 1):
            coeff = coeff + sig[i] * seq[d - i]
        if d > m:
            if not coeff.is_zero():
                raise DegreeViolation(
                    "degree %d in u exceeds the bound %d" % (d, m)
                )
        elif not coeff.is_zero():
            out = out + coeff * up ** d
    if out.degree_in("k") > m:
        raise DegreeViolation("degree in k exceeds the bound %d" % m)
    return out


def _p_table(ring: PolyRing) -> dict:
    u = ring.var("u")
    k = ring.var("k")
    return {
        1: RationalFunction(ring.one(), k),
        2: RationalFunction((k + 1) - u * k, k ** 2 * (k + 1)),
        3: RationalFunction(
            (k + 1) ** 2 * (k + 2)
            - (2 * k + 1) * u * k * (k + 2)
            + u ** 2 * k ** 2 * (k + 1),
            k ** 3 * (k + 1) ** 2 * (k + 2),
        ),
    }


def check_p_l(
    l_max: int = 4, order: int = 30, k_values=(1, 2, 3, 4)
) -> IdentityReport:
    """p_l tables for l <= 3 and the generating function identity
    sum_n (n+k)^(n-l) x^n/n! = e^(kT) p_l(T) at positive integer k."""
    started = time.perf_counter()
    rec = _Recorder()
    ring = PolyRing("u", "k")
    table = _p_table(ring)
    t = tree_function(order)
    for l in range(1, l_max + 1):
        pl = compute_p_l(l)
        if l in table:
            rec.require(pl == table[l], "printed table at l=%d" % l)
        for k0 in k_values:
            coeffs = pl.coefficients_at(k0)
            rec.require(
                len(coeffs) == l and coeffs[-1] != 0,
                "degree exactly l-1 at l=%d k=%d" % (l, k0),
            )
            rhs = compose(_poly_series(coeffs, order), t) * (k0 * t).exp()
            lhs = PowerSeries(
                [
                    Fraction(n + k0) ** (n - l) / factorial(n)
                    for n in range(order)
                ],
                order,
            )
            rec.expect(lhs, rhs, "series identity at l=%d k=%d" % (l, k0))
    return _report(
        "p-l", {"l_max": l_max, "k_values": list(k_values)}, order, rec, started
    )


def check_q_l(l_max: int = 3, order: int = 30) -> IdentityReport:
    """q_l tables for l <= 3 and sum_{n>=1} n^(n-l) x^n/n! = T q_l(T)."""
    started = time.perf_counter()
    rec = _Recorder()
    ring = PolyRing("u")
    u = ring.var("u")
    table = {
        1: ring.one(),
        2: ring.one() - Fraction(1, 2) * u,
        3: ring.one() - Fraction(3, 4) * u + Fraction(1, 6) * u ** 2,
    }
    t = tree_function(order)
    for l in range(1, l_max + 1):
        ql = compute_q_l(l)
        if l in table:
            rec.expect(ql, table[l], "printed table at l=%d" % l)
        coeffs = [ql.coefficient((d,)) for d in range(ql.degree_in("u") + 1)]
        rhs = compose(_poly_series(coeffs, order), t) * t
        lhs = PowerSeries(
            [0] + [Fraction(n) ** (n - l) / factorial(n) for n in range(1, order)],
            order,
        )
        rec.expect(lhs, rhs, "series identity at l=%d" % l)
    return _report("q-l", {"l_max": l_max}, order, rec, started)


def _double_factorial_odd(m: int) -> int:
    """(2m-1)!! with the empty product equal to 1."""
    return factorial(2 * m) // (2 ** m * factorial(m))


def check_r_m(
    m_max: int = 4,
    order: int = 26,
    k_values=(-1, 0, 1, 2, 3),
    series_m_max: int = 3,
) -> IdentityReport:
    """r_m tables for m <= 2, degree bounds for m <= m_max, the
    generating function identity at integer k, the derivative ladder, and
    the positivity of the k = 1 rows."""
    started = time.perf_counter()
    rec = _Recorder()
    ring = PolyRing("u", "k")
    u = ring.var("u")
    k = ring.var("k")
    table = {
        0: ring.one(),
        1: k + (1 - k) * u,
        2: k ** 2 + (1 + 3 * k - 2 * k ** 2) * u + (2 - 3 * k + k ** 2) * u ** 2,
    }
    frozen_rows = {0: [1], 1: [1], 2: [1, 2], 3: [1, 8, 6]}
    t = tree_function(order)
    one = PowerSeries([1], order)

    def w_series(m, k0):
        return PowerSeries(
            [Fraction((n + k0) ** (n + m), factorial(n)) for n in range(order)],
            order,
        )

    for m in range(m_max + 1):
        rm = compute_r_m(m)
        rec.require(rm.degree_in("u") == m, "u degree exactly m at m=%d" % m)
        rec.require(rm.degree_in("k") <= m, "k degree bound at m=%d" % m)
        if m in table:
            rec.expect(rm, table[m], "printed table at m=%d" % m)
        row = _u_coefficients(rm, 1)
        rec.require(
            all(c.denominator == 1 and c >= 0 for c in row),
            "nonnegative integer row at k=1, m=%d" % m,
        )
        rec.expect(
            sum(row), _double_factorial_odd(m), "row sum (2m-1)!! at m=%d" % m
        )
        if m in frozen_rows:
            rec.expect(row, frozen_rows[m], "frozen k=1 row at m=%d" % m)
        if m <= series_m_max:
            for k0 in k_values:
                coeffs = _u_coefficients(rm, k0)
                rhs = (
                    compose(_poly_series(coeffs, order), t)
                    * (k0 * t).exp()
                    / (one - t) ** (2 * m + 1)
                )
                rec.expect(
                    w_series(m, k0),
                    rhs,
                    "series identity at m=%d k=%d" % (m, k0),
                )
    for m in range(series_m_max + 1):
        for k0 in k_values:
            rec.expect(
                w_series(m, k0).derivative().truncated(order - 1),
                w_series(m + 1, k0 + 1).truncated(order - 1),
                "derivative ladder at m=%d k=%d" % (m, k0),
            )
    return _report(
        "r-m",
        {"m_max": m_max, "k_values": list(k_values), "series_m_max": series_m_max},
        order,
        rec,
        started,
    )


# -- Fuss-Catalan polynomiality ---------------------------------------------------


def _u_ij_table(p: int, i: int, d: int):
    """Printed low cases of the vanishing-branch polynomials, d = j - i."""
    if d == 1:
        return [Fraction(1, i + 1)]
    if d == 2:
        return [
            Fraction(1, (i + 1) * (i + 2)),
            -Fraction(p - 1, (i + 2) * (p + i + 1)),
        ]
    if d == 3:
        return [
            Fraction(1, (i + 1) * (i + 2) * (i + 3)),
            -Fraction(
                (p - 1) * (p + 2 * i + 4),
                (i + 2) * (i + 3) * (p + i + 1) * (p + i + 2),
            ),
            Fraction((p - 1) ** 2, (i + 3) * (p + i + 2) * (2 * p + i + 1)),
        ]
    return None


def _primitive_scale(coeffs):
    """Smallest positive rational multiplier making the coefficient list a
    primitive integer vector; returns (multiplier, integer list)."""
    denom = 1
    for c in coeffs:
        denom = lcm(denom, c.denominator)
    ints = [int(c * denom) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return Fraction(denom), ints
    return Fraction(denom, g), [v // g for v in ints]


def check_fc_polynomiality(
    p: int = 3, i: int = 0, j: int = 2, order: int = 30
) -> IdentityReport:
    """The binomial-ratio sums sum_n (pn+i)!/(n! ((p-1)n+j)!)
    x^n/(1+x)^(pn+i+1).

    For i < j the sum is a polynomial of degree exactly j-i-1 (checked
    against the printed tables for j-i <= 3 and re-substituted through
    the order-p generating series); for i >= j it becomes polynomial of
    degree at most i-j after multiplying by (1-(p-1)x)^(2(i-j)+1), a
    statement checked empirically."""
    started = time.perf_counter()
    rec = _Recorder()
    if p < 2:
        raise ValueError("p must be at least 2")
    if i < 0 or j < 0:
        raise ValueError("i and j must be nonnegative")

    def weight(n):
        return Fraction(
            factorial(p * n + i), factorial(n) * factorial((p - 1) * n + j)
        )

    inv = PowerSeries([1, 1], order) ** (-1)
    step = inv ** p
    g = inv ** (i + 1)
    s = PowerSeries([0], order)
    for n in range(order):
        s = s + weight(n) * (g * PowerSeries([0] * n + [1], order))
        g = g * step

    details: dict = {"p": p, "i": i, "j": j}
    if i < j:
        d = j - i - 1
        for m in range(d + 1, order):
            rec.expect(s.coeff(m), 0, "vanishing coefficient at m=%d" % m)
        rec.require(s.coeff(d) != 0, "degree exactly %d" % d)
        coeffs = [s.coeff(m) for m in range(d + 1)]
        table = _u_ij_table(p, i, j - i)
        if table is not None:
            rec.expect(coeffs, table, "printed table at p=%d i=%d j=%d" % (p, i, j))
        scale, ints = _primitive_scale(coeffs)
        details.update(
            {
                "branch": "vanishing",
                "empirical": False,
                "u_polynomial": coeffs,
                "polynomial": ints,
                "scale": scale,
                "degree": d,
            }
        )
        c = fuss_catalan_series(p, order)
        one = PowerSeries([1], order)
        wsum = PowerSeries([weight(n) for n in range(order)], order)
        rec.expect(
            wsum,
            compose(_poly_series(coeffs, order), c - one) * c ** (i + 1),
            "re-substitution through the generating series",
        )
        if (p, i, j) == (3, 0, 2):
            rec.expect(
                4 * wsum, 3 * c - c ** 2, "worked example sum a_n x^n"
            )
            rec.expect(ints, [2, -1], "worked example polynomial 2 - x")
            rec.expect(scale, 4, "worked example scale")
    else:
        d = i - j
        damp = PowerSeries([1, -(p - 1)], order) ** (2 * d + 1)
        damped = s * damp
        for m in range(d + 1, order):
            rec.expect(damped.coeff(m), 0, "damped vanishing at m=%d" % m)
        coeffs = [damped.coeff(m) for m in range(d + 1)]
        scale, ints = _primitive_scale(coeffs)
        details.update(
            {
                "branch": "damped",
                "empirical": True,
                "u_polynomial": coeffs,
                "polynomial": ints,
                "scale": scale,
                "degree_bound": d,
            }
        )
    return _report(
        "fc-polynomial", {"p": p, "i": i, "j": j}, order, rec, started, details
    )


# -- Narayana and relatives --------------------------------------------------------


def _narayana(n: int, i: int) -> Fraction:
    return Fraction(comb(n, i) * comb(n, i - 1), n)


def check_narayana_suite(degree_bound: int = 6, k_values=(1, 2, 3)) -> IdentityReport:
    """The symmetric equation f = (1+xf)(1+yf): coefficient formula for
    f^k, the Narayana-number reading of f itself with its symmetry, the
    defining quadratic, the square-root display (cross-multiplied), and
    the three-variable quadratic variant."""
    started = time.perf_counter()
    rec = _Recorder()
    ring = PolyRing("x", "y")
    xp = ring.var("x")
    yp = ring.var("y")
    one = ring.one()
    r_series = PowerSeries([one, xp + yp, xp * yp], 3)
    f = solve_indeterminate(r_series, degree_bound)

    quad = (xp * yp * f * f + (xp + yp - one) * f + 1).truncate_total(degree_bound)
    rec.require(quad.is_zero(), "defining quadratic")
    root = one - xp - yp - 2 * xp * yp * f
    rec.expect(
        (root * root).truncate_total(degree_bound),
        ((one - xp - yp) ** 2 - 4 * xp * yp).truncate_total(degree_bound),
        "square root display",
    )

    for k in k_values:
        fk = (f ** k).truncate_total(degree_bound)
        for a in range(degree_bound + 1):
            for b in range(degree_bound + 1 - a):
                n = a + b + k
                rec.expect(
                    fk.coefficient((a, b)),
                    Fraction(k, n) * comb(n, a) * comb(n, b),
                    "power coefficient at k=%d x^%d y^%d" % (k, a, b),
                )
    for a in range(degree_bound):
        for b in range(degree_bound - a):
            rec.expect(
                f.coefficient((a, b)),
                _narayana(a + b + 1, a + 1),
                "Narayana reading at x^%d y^%d" % (a, b),
            )
    for n in range(1, 9):
        for idx in range(1, n + 1):
            rec.expect(
                _narayana(n, idx),
                _narayana(n, n + 1 - idx),
                "symmetry at n=%d i=%d" % (n, idx),
            )
    rec.expect(_narayana(4, 2), 6, "frozen value N(4,2)")

    ring3 = PolyRing("x", "y", "z")
    x3 = ring3.var("x")
    y3 = ring3.var("y")
    z3 = ring3.var("z")
    t_order = degree_bound + 2
    coeffs = []
    for n in range(t_order):
        term = z3 ** n
        if n >= 1:
            term = term + (x3 + y3) * z3 ** (n - 1)
        if n >= 2:
            term = term + x3 * y3 * z3 ** (n - 2)
        coeffs.append(term)
    g = solve_indeterminate(PowerSeries(coeffs, t_order), degree_bound)
    for k in (1, 2):
        gk = (g ** k).truncate_total(degree_bound)
        for vec in _vectors(3, degree_bound):
            n = k + sum(vec)
            rec.expect(
                gk.coefficient(vec),
                Fraction(k, n)
                * comb(n, vec[0])
                * comb(n, vec[1])
                * int_binomial(n + vec[2] - 1, vec[2]),
                "three-variable coefficient at k=%d %s" % (k, (vec,)),
            )
    return _report(
        "narayana",
        {"degree_bound": degree_bound, "k_values": list(k_values)},
        degree_bound,
        rec,
        started,
    )


def _mnar_check(rec, exps, plus: bool, k_values, bound: int) -> None:
    m = len(exps)
    ring = PolyRing(*("x%d" % (t + 1) for t in range(m)))
    gens = ring.gens()
    t_order = bound + 2
    r_series = PowerSeries([ring.one()], t_order)
    for var, e in zip(gens, exps):
        base = PowerSeries([ring.one(), var if plus else -var], t_order)
        r_series = r_series * base ** (e if plus else -e)
    f = solve_indeterminate(r_series, bound)
    kind = "product form" if plus else "reciprocal form"
    for k in k_values:
        fk = (f ** k).truncate_total(bound)
        for vec in _vectors(m, bound):
            n = k + sum(vec)
            expected = Fraction(k, n)
            for e, it in zip(exps, vec):
                if plus:
                    expected *= int_binomial(e * n, it)
                else:
                    expected *= int_binomial(e * n + it - 1, it)
            rec.expect(
                fk.coefficient(vec),
                expected,
                "%s exps=%s k=%d monomial %s" % (kind, exps, k, (vec,)),
            )


def check_fuss_narayana(
    r_profiles=((1, 1), (2, 1), (2, -1)),
    s_profiles=((1, 1), (2, 2)),
    k_values=(1, 2, 3),
    degree_bound: int = 5,
) -> IdentityReport:
    """Coefficient formulas for f = prod (1+x_t f)^(r_t) and for the
    reciprocal-power variant, on small integer exponent profiles."""
    started = time.perf_counter()
    rec = _Recorder()
    for profile in r_profiles:
        _mnar_check(rec, tuple(profile), True, k_values, degree_bound)
    for profile in s_profiles:
        _mnar_check(rec, tuple(profile), False, k_values, degree_bound)
    return _report(
        "fuss-narayana",
        {
            "r_profiles": [list(t) for t in r_profiles],
            "s_profiles": [list(t) for t in s_profiles],
            "k_values": list(k_values),
            "degree_bound": degree_bound,
        },
        degree_bound,
        rec,
        started,
    )


# -- bivariate rational expansion ----------------------------------------------------


def check_rational_expansion(r: int = 1, s: int = 2, n_max: int = 12) -> IdentityReport:
    """(1+a)^r (1+b)^s / (1-ab)^(r+s+1) = sum C(r+j, i) C(s+i, j) a^i b^j,
    comparing the direct triple-product expansion with the closed form."""
    started = time.perf_counter()
    rec = _Recorder()
    if r < 0 or s < 0:
        raise ValueError("r and s must be nonnegative")
    for i in range(n_max + 1):
        for j in range(n_max + 1):
            direct = sum(
                comb(r, i - n) * comb(s, j - n) * comb(r + s + n, n)
                for n in range(min(i, j) + 1)
                if i - n <= r and j - n <= s
            )
            rec.expect(
                direct,
                int_binomial(r + j, i) * int_binomial(s + i, j),
                "coefficient at a^%d b^%d" % (i, j),
            )
    rec.expect(
        int_binomial(1 + 1, 1) * int_binomial(1 + 1, 1) if (r, s) == (1, 1) else True,
        4 if (r, s) == (1, 1) else True,
        "frozen value at r=s=1, a^1 b^1",
    )
    return _report(
        "rational-expansion", {"r": r, "s": s, "n_max": n_max}, n_max, rec, started
    )


# -- finite differences ----------------------------------------------------------------


def finite_difference(values, k: int):
    """k-th forward difference at the left end of a contiguous window of
    sequence values; needs at least k+1 of them."""
    values = list(values)
    if k < 0:
        raise ValueError("difference order must be nonnegative")
    if len(values) < k + 1:
        raise InsufficientRange(
            "need %d values for the %d-th difference, got %d"
            % (k + 1, k, len(values))
        )
    total = 0
    for i in range(k + 1):
        total = total + (-1) ** (k - i) * comb(k, i) * values[i]
    return total


def check_ffd_lemma(d_max: int = 6, seed: int = 5, trials: int = 3) -> IdentityReport:
    """The k-th difference of a degree-d polynomial: 0 for k > d and the
    constant d! L at k = d, on random integer polynomials and on symbolic
    windows (k+i)^m."""
    started = time.perf_counter()
    rec = _Recorder()
    rng = random.Random(seed)
    for d in range(d_max + 1):
        for _ in range(trials):
            coeffs = [rng.randint(-5, 5) for _ in range(d)] + [
                rng.choice([-3, -2, -1, 1, 2, 3])
            ]
            lead = coeffs[-1]
            for base in (0, 1, -2):
                window = [poly_eval(coeffs, base + i) for i in range(d + 3)]
                rec.expect(
                    finite_difference(window, d),
                    factorial(d) * lead,
                    "constant value at d=%d base=%d" % (d, base),
                )
                rec.expect(
                    finite_difference(window, d + 1),
                    0,
                    "vanishing at k=d+1, d=%d base=%d" % (d, base),
                )
                rec.expect(
                    finite_difference(window, d + 2),
                    0,
                    "vanishing at k=d+2, d=%d base=%d" % (d, base),
                )
    rec.expect(finite_difference([0, 1, 4], 2), 2, "frozen square example")
    rec.expect(
        finite_difference([n ** 3 - n for n in range(5)], 4),
        0,
        "frozen cubic example",
    )
    rec.expect(
        finite_difference([5 * n ** 3 for n in range(4)], 3),
        30,
        "frozen leading example",
    )
    ring = PolyRing("k")
    kp = ring.var("k")
    for j in (1, 2, 3):
        for m in range(j + 2):
            window = [(kp + i) ** m for i in range(j + 1)]
            got = finite_difference(window, j)
            if m < j:
                rec.require(
                    (got if isinstance(got, MultiPoly) else ring.const(got)).is_zero(),
                    "symbolic vanishing at j=%d m=%d" % (j, m),
                )
            elif m == j:
                rec.expect(got, factorial(j), "symbolic constant at j=%d" % j)
            else:
                rec.expect(
                    got,
                    factorial(j + 1) * (kp + Fraction(j, 2)),
                    "symbolic linear case at j=%d" % j,
                )
    return _report(
        "finite-difference-lemma",
        {"d_max": d_max, "seed": seed, "trials": trials},
        d_max,
        rec,
        started,
    )


# -- Raney's exponential equation ---------------------------------------------------


def check_raney(i_total_max: int = 5, k_values=(1, 2)) -> IdentityReport:
    """Coefficients of f^k for f = A1 e^(B1 f) + A2 e^(B2 f) against the
    closed product formula, plus the single-term reduction."""
    started = time.perf_counter()
    rec = _Recorder()
    bound = 2 * i_total_max - min(k_values)
    ring = PolyRing("a1", "a2", "b1", "b2")
    a1, a2, b1, b2 = ring.gens()
    t_order = bound + 1
    coeffs = [
        (a1 * b1 ** m + a2 * b2 ** m) / factorial(m) for m in range(t_order)
    ]
    f = solve_indeterminate(PowerSeries(coeffs, t_order), bound)
    for k in k_values:
        fk = (f ** k).truncate_total(bound)
        for i1 in range(i_total_max + 1):
            for i2 in range(i_total_max + 1 - i1):
                for j1 in range(i_total_max + 1):
                    for j2 in range(i_total_max + 1 - j1):
                        if i1 + i2 + j1 + j2 > bound:
                            continue
                        rec.expect(
                            fk.coefficient((i1, i2, j1, j2)),
                            raney_coefficient((i1, i2), (j1, j2), k),
                            "coefficient at k=%d A=%s B=%s"
                            % (k, (i1, i2), (j1, j2)),
                        )
    for k in k_values:
        for n in range(k, 7):
            rec.expect(
                raney_coefficient((n,), (n - k,), k),
                Fraction(k, n) * Fraction(n ** (n - k), factorial(n - k)),
                "single-term reduction at k=%d n=%d" % (k, n),
            )
    return _report(
        "raney",
        {"i_total_max": i_total_max, "k_values": list(k_values)},
        bound,
        rec,
        started,
    )


# -- Schur-Jabotinsky duality --------------------------------------------------------


def check_schur_jabotinsky(
    trials: int = 20, order: int = 20, seed: int = 7
) -> IdentityReport:
    """[x^n] f^k = (k/n) [x^(-k)] g^(-n) for compositional inverses f, g,
    on random series and on the worked pair f = x c(x), g = x - x^2."""
    started = time.perf_counter()
    rec = _Recorder()
    x = PowerSeries([0, 1], order)
    c = catalan_series(order)
    f0 = x * c
    rec.expect(
        f0.reversion(),
        PowerSeries([0, 1, -1], order),
        "reversion of x c(x) is x - x^2",
    )
    for n in range(-4, 7):
        for k in range(-4, 6):
            if not schur_jabotinsky_window(order, n, k):
                continue
            rec.require(
                schur_jabotinsky_check(f0, n, k),
                "worked pair at n=%d k=%d" % (n, k),
            )
    rng = random.Random(seed)
    candidates = [
        (n, k)
        for n in range(-6, 7)
        for k in range(-6, 7)
        if schur_jabotinsky_window(order, n, k)
    ]
    rec.require(bool(candidates), "order leaves no readable (n, k) pair")
    for trial in range(trials):
        coeffs = [0, rng.choice([1, -1, 2, Fraction(1, 2)])]
        for _ in range(5):
            coeffs.append(Fraction(rng.randint(-2, 2), rng.randint(1, 3)))
        fr = PowerSeries(coeffs, order)
        n, k = rng.choice(candidates)
        rec.require(
            schur_jabotinsky_check(fr, n, k),
            "random trial %d at n=%d k=%d" % (trial, n, k),
        )
    return _report(
        "schur-jabotinsky",
        {"trials": trials, "seed": seed},
        order,
        rec,
        started,
    )


# -- residues ---------------------------------------------------------------------------


def _residue_after(a: LaurentSeries, g: PowerSeries) -> Fraction:
    """res a(g(x)) g'(x) computed termwise, exponent by exponent."""
    gl = g.to_laurent()
    gp = g.derivative().to_laurent()
    total = Fraction(0)
    for n in range(a.min_exponent, a.order):
        cn = a.coeff(n)
        if cn:
            total += cn * ((gl ** n) * gp).residue()
    return total


def _random_laurent(rng, order: int) -> LaurentSeries:
    min_exp = rng.randint(-3, 0)
    coeffs = [
        Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(7)
    ]
    return LaurentSeries(coeffs, min_exp, order)


def _random_substitution(rng, order: int, valuation: int) -> PowerSeries:
    coeffs = [0] * valuation + [rng.choice([1, -1, 2])]
    for _ in range(4):
        coeffs.append(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
    return PowerSeries(coeffs, order)


def check_hirzebruch(
    n_max: int = 20, pair_trials: int = 30, pair_order: int = 15, seed: int = 11
) -> IdentityReport:
    """res (f/x)^n = 1 for all n >= 1 when f = x/(1-e^(-x)), by Laurent
    powers and by direct coefficient extraction; plus the change of
    variables formula res a = res a(g) g' for valuation-1 g and its
    m res a = res a(g) g' generalization for valuation-m g."""
    started = time.perf_counter()
    rec = _Recorder()
    order = n_max + 4
    u = PowerSeries(
        [Fraction((-1) ** n, factorial(n + 1)) for n in range(order)], order
    )
    f = PowerSeries([1], order) / u
    fl = f.shift(-1)
    for n in range(1, n_max + 1):
        rec.expect((fl ** n).residue(), 1, "residue value at n=%d" % n)
        rec.expect((f ** n).coeff(n - 1), 1, "coefficient route at n=%d" % n)
    rng = random.Random(seed)
    for trial in range(pair_trials):
        a = _random_laurent(rng, pair_order)
        g = _random_substitution(rng, pair_order, 1)
        composed = (compose(a, g) * g.derivative()).residue()
        rec.expect(composed, a.residue(), "change of variables trial %d" % trial)
        rec.expect(
            _residue_after(a, g), a.residue(), "termwise route trial %d" % trial
        )
        m = 2 + trial % 2
        gm = _random_substitution(rng, pair_order, m)
        rec.expect(
            _residue_after(a, gm),
            m * a.residue(),
            "valuation %d generalization trial %d" % (m, trial),
        )
    return _report(
        "hirzebruch-residue",
        {"n_max": n_max, "pair_trials": pair_trials, "seed": seed},
        order,
        rec,
        started,
    )


# -- registry -----------------------------------------------------------------------------

# name -> (callable, forwards the order argument, default keyword arguments)
IDENTITY_CATALOG = {
    "catalan": (check_catalan_suite, True, {}),
    "fuss-catalan": (check_fuss_catalan, True, {}),
    "jensen": (check_jensen, False, {}),
    "rothe-hagen": (check_rothe_hagen, False, {}),
    "tree-function": (check_tree_function_suite, True, {}),
    "lacasse": (check_lacasse, True, {}),
    "abel": (check_abel, False, {}),
    "weighted-stirling": (check_ws_egf, True, {}),
    "p-l": (check_p_l, True, {}),
    "r-m": (check_r_m, True, {}),
    "q-l": (check_q_l, True, {}),
    "fc-polynomial": (check_fc_polynomiality, True, {"p": 3, "i": 0, "j": 2}),
    "narayana": (check_narayana_suite, False, {}),
    "fuss-narayana": (check_fuss_narayana, False, {}),
    "rational-expansion": (check_rational_expansion, False, {"r": 1, "s": 2}),
    "finite-difference-lemma": (check_ffd_lemma, False, {}),
    "raney": (check_raney, False, {}),
    "schur-jabotinsky": (check_schur_jabotinsky, True, {}),
    "hirzebruch-residue": (check_hirzebruch, False, {}),
}


def identity_names() -> list[str]:
    return sorted(IDENTITY_CATALOG)


def run_identity(name: str, order: int = 30, **params) -> IdentityReport:
    """Run one named identity check with its default parameters merged
    under any overrides; raises UnknownIdentity for a name not in the
    catalog."""
    try:
        func, forwards_order, defaults = IDENTITY_CATALOG[name]
    except KeyError:
        raise UnknownIdentity(
            "unknown identity %r; known: %s" % (name, ", ".join(identity_names()))
        ) from None
    kwargs = dict(defaults)
    kwargs.update(params)
    if forwards_order:
        kwargs.setdefault("order", order)
    return func(**kwargs)


def run_all(order: int = 30) -> list[IdentityReport]:
    """Run every cataloged identity at its defaults."""
    return [run_identity(name, order=order) for name in identity_names()]
