"""Series inversion: fixed-point solvers and coefficient-extraction forms.

The central objects are the solution f of f = x * R(f) for a unit power
series R, and the equivalent ways of reading coefficients of phi(f) from
plain truncated-series arithmetic on phi and R:

* form A: (1/n) [t^(n-1)] phi'(t) R(t)^n            (n != 0)
* form B: [t^n] (1 - t R'(t)/R(t)) phi(t) R(t)^n
* form C: [t^n] phi R^n - [t^(n-1)] phi R' R^(n-1)  (coefficient of x^n in
  the expansion of phi(f) as a sum over two extractions)
* forms D/E: [t^n] psi R^n, equal to the coefficient of x^n in
  psi(f)/(1 - x R'(f)) and in psi(f)/(1 - f R'(f)/R(f))

plus the n = 0 supplement via the residue of phi' log(R/r0), the
log(f/x) extraction, the negative/positive power-coefficient duality, the
shift expansions for f = x + z H(f), product convolutions, and the closed
profile sums for coefficients of f^k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (
    BadConstantTerm,
    FormAUndefined,
    NotReversible,
    OutOfPrecision,
    UnguardedCoefficient,
)
from .scalars import MultiPoly, int_binomial, scalar_div_int, scalar_inverse
from .series import LaurentSeries, PowerSeries, compose


def solve_xR(R: PowerSeries, order: int | None = None) -> PowerSeries:
    """The unique power series f with f = x * R(f), by fixed-point iteration.

    Each pass determines at least one further coefficient, so R.order passes
    suffice; the result is verified by direct substitution before returning.
    An explicit ``order`` may request a shorter answer, never a longer one.
    """
    if order is not None:
        if order > R.order:
            raise OutOfPrecision(
                "cannot solve to order %d from data of order %d"
                % (order, R.order)
            )
        R = R.truncated(order)
    n = R.order
    if n == 1:
        return PowerSeries([0], 1)
    known = [0]
    for step in range(n):
        target = min(step + 2, n)
        rt = R.truncated(target)
        f = PowerSeries(known[:target], target)
        value = PowerSeries([0, 1], target) * compose(rt, f)
        known = list(value.coeffs)
    f = PowerSeries(known, n)
    again = PowerSeries([0, 1], n) * compose(R, f)
    if not all(a == b for a, b in zip(again.coeffs, f.coeffs)):
        raise AssertionError("fixed point failed the substitution check")
    return f


def solve_indeterminate(R: PowerSeries, degree_bound: int) -> MultiPoly:
    """The unique f with f = R(f), truncated by total degree in the formal
    parameters of R's MultiPoly coefficients.

    Every coefficient of t^n with n > 0 must carry a parameter factor in each
    of its terms; otherwise the fixed point is not determined degree by
    degree and ``UnguardedCoefficient`` is raised.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    sample = None
    for c in R.coeffs:
        if isinstance(c, MultiPoly):
            sample = c
            break
    for i in range(1, R.order):
        c = R.coeffs[i]
        if isinstance(c, MultiPoly):
            if not c.is_zero() and c.min_total_degree() == 0:
                raise UnguardedCoefficient(
                    "coefficient of t^%d has a parameter-free term" % i
                )
        elif c:
            raise UnguardedCoefficient(
                "coefficient of t^%d is a bare number" % i
            )
    if sample is None:
        return R.coeffs[0]
    vars_ = sample.vars

    def as_poly(c):
        return c if isinstance(c, MultiPoly) else MultiPoly.const(vars_, c)

    coeffs = [as_poly(c) for c in R.coeffs]
    top = 0
    for i, c in enumerate(coeffs):
        if not c.is_zero():
            top = i

    def evaluate(f: MultiPoly) -> MultiPoly:
        acc = coeffs[top]
        for i in range(top - 1, -1, -1):
            acc = (acc * f).truncate_total(degree_bound) + coeffs[i]
        return acc

    f = MultiPoly(vars_)
    for _ in range(degree_bound + 1):
        f = evaluate(f)
    if evaluate(f) != f:
        raise AssertionError("fixed point failed the substitution check")
    return f


@dataclass
class FormValues:
    """Values of every extraction form at one index n, plus the directly
    substituted values they must match."""

    n: int
    form_a: object  # None when n == 0
    form_b: object
    form_c: object
    form_d: object
    form_e: object
    direct: object          # [x^n] phi(f)
    ratio_x: object         # [x^n] phi(f) / (1 - x R'(f))
    ratio_f: object         # [x^n] phi(f) / (1 - f R'(f)/R(f))

    @property
    def agree(self) -> bool:
        ok = self.form_b == self.direct and self.form_c == self.direct
        if self.form_a is not None:
            ok = ok and self.form_a == self.direct
        return (
            ok
            and self.form_d == self.ratio_x
            and self.form_e == self.ratio_f
            and self.ratio_x == self.ratio_f
        )


def _as_laurent(phi, order: int) -> LaurentSeries:
    if isinstance(phi, PowerSeries):
        phi = phi.to_laurent()
    if phi.order != order:
        raise ValueError("phi and R must share the truncation order")
    return phi


def inversion_form_sweep(phi, R: PowerSeries, n_values) -> list[FormValues]:
    """Evaluate all extraction forms for each n in n_values.

    phi may be a Laurent series; negative exponents of phi reduce the
    reliable top of the directly substituted series, so the largest
    requested n must stay below order - 1 + min(0, phi.min_exponent).
    """
    phi = _as_laurent(phi, R.order)
    n_values = list(n_values)
    if not n_values:
        return []
    order = R.order
    if not R.coeffs[0]:
        raise BadConstantTerm("R must have an invertible constant term")
    m_phi = min(0, phi.min_exponent)
    reliable = order - 1 + m_phi if m_phi < 0 else order
    if max(n_values) >= reliable - 1:
        raise OutOfPrecision(
            "largest n %d too close to order %d for this phi"
            % (max(n_values), order)
        )
    x = PowerSeries([0, 1], order)
    rp = R.derivative()
    f = solve_xR(R)
    phi_f = compose(phi, f)
    rp_f = compose(rp, f)
    r_f = compose(R, f)
    ratio_x_series = phi_f / (1 - x * rp_f)
    ratio_f_series = phi_f / (1 - (f * rp_f) / r_f)
    weight = 1 - (x * rp) / R
    wphi = phi * weight
    phid = phi.derivative()
    phi_rp = phi * rp
    lo = min(n_values) - 1
    hi = max(n_values)
    powers = {0: PowerSeries([1], order)}
    for k in range(1, hi + 1):
        powers[k] = powers[k - 1] * R
    if lo < 0:
        r_inv = PowerSeries([1], order) / R
        for k in range(-1, lo - 1, -1):
            powers[k] = powers[k + 1] * r_inv
    out = []
    for n in n_values:
        rn = powers[n]
        rn1 = powers[n - 1]
        form_a = None
        if n != 0:
            form_a = scalar_div_int((phid * rn).coeff(n - 1), n)
        form_b = (wphi * rn).coeff(n)
        d_value = (phi * rn).coeff(n)
        form_c = d_value - (phi_rp * rn1).coeff(n - 1)
        out.append(
            FormValues(
                n=n,
                form_a=form_a,
                form_b=form_b,
                form_c=form_c,
                form_d=d_value,
                form_e=d_value,
                direct=phi_f.coeff(n),
                ratio_x=ratio_x_series.coeff(n),
                ratio_f=ratio_f_series.coeff(n),
            )
        )
    return out


def coeff_all_forms(phi, R: PowerSeries, n: int) -> FormValues:
    """All extraction forms at a single index n."""
    return inversion_form_sweep(phi, R, [n])[0]


def coefficient_form_a(phi, R: PowerSeries, n: int):
    """(1/n) [t^(n-1)] phi' R^n; undefined at n = 0."""
    if n == 0:
        raise FormAUndefined("the 1/n extraction form is undefined at n = 0")
    phi = _as_laurent(phi, R.order)
    return scalar_div_int((phi.derivative() * R ** n).coeff(n - 1), n)


def constant_term_supplement(phi, R: PowerSeries):
    """[x^0] phi(f) for f = x R(f): [t^0] phi + residue(phi' log(R/r0))."""
    r0 = R.constant_term
    if not r0:
        raise BadConstantTerm("R must have an invertible constant term")
    inv0 = scalar_inverse(r0)
    phi = _as_laurent(phi, R.order)
    log_r = (R * inv0).log()
    return phi.coeff(0) + (phi.derivative() * log_r).residue()


def log_f_over_x(R: PowerSeries, m: int):
    """[x^m] log(f/x) = (1/m) [t^m] R^m, for R with constant term 1."""
    if m < 1:
        raise ValueError("m must be positive")
    if R.coeffs[0] != 1:
        raise BadConstantTerm("this extraction requires R(0) = 1")
    return scalar_div_int((R ** m).coeff(m), m)


def _laurent_power_reliable(order: int, k: int) -> int:
    # negative powers of a valuation-1 series lose |k| + 1 top coefficients
    return order if k >= 0 else order - 1 + k


def schur_jabotinsky_window(order: int, n: int, k: int) -> bool:
    """Whether the duality at (n, k) is readable from data of this order."""
    return (
        n != 0
        and n < _laurent_power_reliable(order, k) - 1
        and -k < _laurent_power_reliable(order, -n) - 1
    )


def schur_jabotinsky_pair(f: PowerSeries, n: int, k: int):
    """Both sides of the power-coefficient duality between f and its
    compositional inverse g: ([x^n] f^k, (k/n) [x^(-k)] g^(-n))."""
    if n == 0:
        raise FormAUndefined("the duality is stated for n != 0")
    if f.valuation() != 1:
        raise NotReversible("f must have valuation exactly 1")
    order = f.order
    if n >= _laurent_power_reliable(order, k) - 1:
        raise OutOfPrecision("n = %d unreadable from f^%d at order %d" % (n, k, order))
    if -k >= _laurent_power_reliable(order, -n) - 1:
        raise OutOfPrecision(
            "-k = %d unreadable from g^%d at order %d" % (-k, -n, order)
        )
    lhs = (f.to_laurent() ** k).coeff(n)
    g = f.reversion()
    rhs_coeff = (g.to_laurent() ** (-n)).coeff(-k)
    return lhs, Fraction(k, n) * rhs_coeff


def schur_jabotinsky_check(f: PowerSeries, n: int, k: int) -> bool:
    lhs, rhs = schur_jabotinsky_pair(f, n, k)
    return lhs == rhs


# -- expansions for f = x + z H(f) -------------------------------------------
#
# Values of "series in z with power-series-in-x entries" are plain lists
# indexed by the z exponent; every entry shares one x truncation order.


def _zmul(a, b, z_order):
    out = [None] * (z_order + 1)
    for i, ai in enumerate(a):
        if ai is None or ai.is_zero():
            continue
        for j in range(z_order + 1 - i):
            bj = b[j]
            if bj is None or bj.is_zero():
                continue
            cur = out[i + j]
            out[i + j] = ai * bj if cur is None else cur + ai * bj
    zero = _zzero_entry(a, b)
    return [zero if e is None else e for e in out]


def _zzero_entry(a, b):
    for e in list(a) + list(b):
        if e is not None:
            return PowerSeries([0], e.order)
    raise ValueError("empty z-polynomial")


def _zdiv(a, b, z_order):
    inv0 = PowerSeries([1], b[0].order) / b[0]
    out = []
    for n in range(z_order + 1):
        acc = a[n]
        for i in range(n):
            acc = acc - out[i] * b[n - i]
        out.append(acc * inv0 if isinstance(acc, PowerSeries) else acc)
    return out


def _derivative_times(s: PowerSeries, m: int) -> PowerSeries:
    for _ in range(m):
        s = s.derivative()
    return s


def _taylor_apply(alpha: PowerSeries, fz, z_order):
    """alpha evaluated at a substitution whose z^0 entry is exactly x,
    via the Taylor sum of D^m(alpha)/m! against (f - x)^m."""
    order = alpha.order
    zero = PowerSeries([0], order)
    delta = [zero] + list(fz[1:])
    out = [alpha] + [zero] * z_order
    pw = delta
    for m in range(1, z_order + 1):
        cm = _derivative_times(alpha, m) * Fraction(1, factorial(m))
        if not cm.is_zero():
            for j in range(m, z_order + 1):
                entry = pw[j]
                if not entry.is_zero():
                    out[j] = out[j] + cm * entry
        if m < z_order:
            pw = _zmul(pw, delta, z_order)
    return out


@dataclass
class ShiftExpansion:
    """The z-expansions of phi(f) and psi(f)/(1 - z H'(f)) for the shifted
    equation f = x + z H(f), computed three independent ways, with every
    entry truncated to the reliable x order."""

    x_order: int
    z_order: int
    phi_direct: list
    phi_via_weight: list
    phi_via_shift: list
    ratio_direct: list
    ratio_via_powers: list

    @property
    def agree(self) -> bool:
        for alt in (self.phi_via_weight, self.phi_via_shift):
            if any(a != b for a, b in zip(self.phi_direct, alt)):
                return False
        return all(
            a == b for a, b in zip(self.ratio_direct, self.ratio_via_powers)
        )


def derivative_form(phi: PowerSeries, H: PowerSeries, z_order: int,
                    psi: PowerSeries | None = None) -> ShiftExpansion:
    """Expand phi(f) and psi(f)/(1 - z H'(f)) for f = x + z H(f) through
    z^z_order, by direct solution and by the two derivative expansions.

    psi defaults to phi.  The convention for the z^0 entry of the phi'
    expansion is phi itself.
    """
    if psi is None:
        psi = phi
    order = phi.order
    if psi.order != order or H.order != order:
        raise ValueError("phi, psi, H must share the truncation order")
    x_order = order - z_order
    if x_order < 1:
        raise ValueError("z_order too large for this truncation order")
    one_over = lambda m: Fraction(1, factorial(m))

    via_shift = [phi]
    for m in range(1, z_order + 1):
        via_shift.append(
            _derivative_times(phi.derivative() * H ** m, m - 1) * one_over(m)
        )
    hp = H.derivative()
    via_weight = [phi]
    for m in range(1, z_order + 1):
        first = _derivative_times(phi * H ** m, m) * one_over(m)
        second = _derivative_times(phi * hp * H ** (m - 1), m - 1) * one_over(m - 1)
        via_weight.append(first - second)
    ratio_via_powers = [
        _derivative_times(psi * H ** m, m) * one_over(m)
        for m in range(z_order + 1)
    ]

    x = PowerSeries([0, 1], order)
    zero = PowerSeries([0], order)
    fz = [x] + [zero] * z_order
    for _ in range(z_order + 1):
        hf = _taylor_apply(H, fz, z_order)
        fz = [x] + hf[: z_order]
    if _taylor_apply(H, fz, z_order)[: z_order] != fz[1:]:
        raise AssertionError("shifted fixed point failed the substitution check")
    phi_direct = _taylor_apply(phi, fz, z_order)
    psi_f = _taylor_apply(psi, fz, z_order)
    hp_f = _taylor_apply(hp, fz, z_order)
    denom = [PowerSeries([1], order)] + [-e for e in hp_f[: z_order]]
    ratio_direct = _zdiv(psi_f, denom, z_order)

    cut = lambda entries: [e.truncated(x_order) for e in entries]
    return ShiftExpansion(
        x_order=x_order,
        z_order=z_order,
        phi_direct=cut(phi_direct),
        phi_via_weight=cut(via_weight),
        phi_via_shift=cut(via_shift),
        ratio_direct=cut(ratio_direct),
        ratio_via_powers=cut(ratio_via_powers),
    )


def cauchy_convolution_check(phi: PowerSeries, psi: PowerSeries,
                             H: PowerSeries, n: int) -> bool:
    """Verify both product convolutions of the shifted expansions at index n.

    The m = 0 factor of a phi' expansion is phi itself (and symmetrically
    for psi at m = n); comparisons are made through the exact x window.
    """
    order = phi.order
    if n < 0 or order - n < 2:
        raise ValueError("n out of range for this truncation order")
    x_order = order - n

    def first_factor(m):
        if m == 0:
            return phi
        return _derivative_times(phi.derivative() * H ** m, m - 1)

    def plain_factor(g, m):
        return _derivative_times(g * H ** m, m)

    lhs1 = PowerSeries([0], order)
    lhs2 = PowerSeries([0], order)
    for m in range(n + 1):
        c = int_binomial(n, m)
        f1 = first_factor(m)
        lhs1 = lhs1 + c * (f1 * plain_factor(psi, n - m))
        if m == n:
            second = psi
        else:
            second = _derivative_times(psi.derivative() * H ** (n - m), n - m - 1)
        lhs2 = lhs2 + c * (f1 * second)
    rhs1 = _derivative_times(phi * psi * H ** n, n)
    if n == 0:
        rhs2 = phi * psi
    else:
        rhs2 = _derivative_times((phi * psi).derivative() * H ** n, n - 1)
    return (
        lhs1.truncated(x_order) == rhs1.truncated(x_order)
        and lhs2.truncated(x_order) == rhs2.truncated(x_order)
    )


# -- closed profile sums ------------------------------------------------------


def _profiles(total: int, weight: int, max_index: int):
    """Tuples (n_0, ..., n_max_index) with sum n_i = total and
    sum i*n_i = weight."""
    if total < 0 or weight < 0:
        return

    def rec(i, total_left, weight_left, acc):
        if i == 0:
            if weight_left == 0:
                yield (total_left,) + acc
            return
        cap = min(total_left, weight_left // i)
        for ni in range(cap + 1):
            yield from rec(i - 1, total_left - ni, weight_left - i * ni,
                           (ni,) + acc)

    yield from rec(max_index, total, weight, ())


def explicit_coefficient(r, n: int, k: int):
    """[x^n] f^k for f = x R(f), R = sum r_i t^i, as the closed sum over
    child-count profiles; an empty sum is 0."""
    r = list(r)
    if n < 1:
        return 0
    acc = 0
    fact_top = factorial(n - 1)
    for prof in _profiles(n, n - k, len(r) - 1):
        denom = 1
        for ni in prof:
            denom *= factorial(ni)
        term = Fraction(k * fact_top, denom)
        for i, ni in enumerate(prof):
            if ni:
                term = term * (r[i] ** ni)
        acc = acc + term
    return acc


def explicit_from_inverse(g_tail, m: int, k: int):
    """[x^m] f^k where f is the compositional inverse of
    g = x - g_2 x^2 - g_3 x^3 - ...; g_tail lists g_2, g_3, ...."""
    g_tail = list(g_tail)
    if m < 1:
        return 0
    acc = 0

    def rec(i, weight_left, counts):
        # i indexes g_tail entries: arity i + 2, weight per use i + 1
        if i < 0:
            if weight_left == 0:
                yield counts
            return
        cap = weight_left // (i + 1)
        for ni in range(cap + 1):
            yield from rec(i - 1, weight_left - ni * (i + 1), ((i, ni),) + counts)

    if m - k < 0:
        return 0
    for counts in rec(len(g_tail) - 1, m - k, ()):
        n = m + sum(ni for _, ni in counts)
        term = Fraction(k * factorial(n - 1), factorial(m))
        for i, ni in counts:
            if ni:
                term = term * (g_tail[i] ** ni) / factorial(ni)
        acc = acc + term
    return acc


def raney_coefficient(i_counts, j_counts, k: int):
    """Forest count for the exponential implicit equation: the number
    weight attached to a profile of i-counts and j-counts, zero unless
    sum(i) = k + sum(j)."""
    i_counts = list(i_counts)
    j_counts = list(j_counts)
    if len(i_counts) != len(j_counts):
        raise ValueError("profiles must have equal length")
    if k < 1:
        raise ValueError("k must be a positive integer")
    total = sum(i_counts)
    if total != k + sum(j_counts):
        return Fraction(0)
    value = Fraction(k * factorial(total - 1))
    for it in i_counts:
        value /= factorial(it)
    for it, jt in zip(i_counts, j_counts):
        value *= Fraction(it ** jt, factorial(jt))
    return value
