"""Coefficient extraction engine: fixed points, the five forms, dualities."""

import random
from fractions import Fraction
from math import comb, factorial

import pytest

from lagrange_kit.errors import (
    BadConstantTerm,
    FormAUndefined,
    NotReversible,
    OutOfPrecision,
    UnguardedCoefficient,
)
from lagrange_kit.lagrange import (
    FormValues,
    cauchy_convolution_check,
    coeff_all_forms,
    coefficient_form_a,
    constant_term_supplement,
    derivative_form,
    explicit_coefficient,
    explicit_from_inverse,
    inversion_form_sweep,
    log_f_over_x,
    raney_coefficient,
    schur_jabotinsky_check,
    schur_jabotinsky_pair,
    schur_jabotinsky_window,
    solve_indeterminate,
    solve_xR,
)
from lagrange_kit.scalars import PolyRing, polynomial_from_points, poly_eval
from lagrange_kit.series import LaurentSeries, PowerSeries, compose
from lagrange_kit.trees import count_by_profile, ordered_profiles


def _random_R(rng, order, degree=4):
    coeffs = [Fraction(1)] + [
        Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(degree)
    ]
    return PowerSeries(coeffs, order)


class TestSolveXR:
    def test_geometric_weights_give_catalan(self):
        f = solve_xR(PowerSeries([1] * 10, 10))
        assert f.coeffs == (0, 1, 1, 2, 5, 14, 42, 132, 429, 1430)

    def test_fixed_point_property(self):
        rng = random.Random(3)
        for _ in range(10):
            R = _random_R(rng, 12)
            f = solve_xR(R)
            assert f == PowerSeries([0, 1], 12) * compose(R, f)

    def test_agrees_with_reversion_of_x_over_R(self):
        rng = random.Random(4)
        for _ in range(10):
            R = _random_R(rng, 12)
            x = PowerSeries([0, 1], 12)
            assert solve_xR(R) == (x / R).reversion()

    def test_order_argument_truncates(self):
        R = PowerSeries([1] * 10, 10)
        f = solve_xR(R, order=6)
        assert f.order == 6
        assert f == solve_xR(R).truncated(6)

    def test_order_beyond_data_rejected(self):
        with pytest.raises(OutOfPrecision):
            solve_xR(PowerSeries([1, 1], 5), order=6)

    def test_zero_weight_series(self):
        assert solve_xR(PowerSeries([0], 4)).is_zero()


class TestSolveIndeterminate:
    def test_unguarded_coefficient_rejected(self):
        ring = PolyRing("a")
        a = ring.var("a")
        bad = PowerSeries([ring.one(), a + 1], 2)
        with pytest.raises(UnguardedCoefficient):
            solve_indeterminate(bad, 4)
        with pytest.raises(UnguardedCoefficient):
            solve_indeterminate(PowerSeries([ring.one(), ring.one()], 2), 4)

    def test_single_variable_catalan(self):
        ring = PolyRing("a")
        a = ring.var("a")
        f = solve_indeterminate(PowerSeries([ring.one(), a], 2), 6)
        # f = 1 + a f^2-free: here f = 1 + a f, so f = sum a^n
        assert f == sum((a ** n for n in range(7)), ring.zero())

    def test_quadratic_gives_catalan_numbers(self):
        ring = PolyRing("a")
        a = ring.var("a")
        R = PowerSeries([ring.one(), ring.zero(), a], 3)
        f = solve_indeterminate(R, 5)
        catalan = [1, 1, 2, 5, 14, 42]
        for n in range(6):
            assert f.coefficient((n,)) == catalan[n]


class TestOrderedForestInvariant:
    """The symbolic fixed point must reproduce the forest census by profile."""

    def test_profile_coefficients_match_census(self):
        bound = 8
        names = tuple("r%d" % i for i in range(bound))
        ring = PolyRing(*names)
        gens = ring.gens()
        R = PowerSeries(list(gens), bound)
        f = solve_indeterminate(R, bound)
        fk = f
        for k in range(1, 4):
            if k > 1:
                fk = (fk * f).truncate_total(bound)
            for n in range(k, bound + 1):
                for profile in ordered_profiles(n, k):
                    counts = dict(profile)
                    exps = tuple(counts.get(i, 0) for i in range(bound))
                    assert fk.coefficient(exps) == count_by_profile(
                        n, k, counts
                    ), (n, k, profile)

    def test_explicit_sum_equals_symbolic_slice(self):
        names = tuple("r%d" % i for i in range(4))
        ring = PolyRing(*names)
        gens = ring.gens()
        R = PowerSeries(list(gens), 4)
        f = solve_indeterminate(R, 7)
        for k in (1, 2, 3):
            fk = f ** k
            for n in range(k, 8):
                slice_poly = sum(
                    (
                        ring.const(c)
                        * ring.one()
                        * _monomial(ring, names, e)
                        for e, c in fk.terms.items()
                        if sum(e) == n
                    ),
                    ring.zero(),
                )
                assert explicit_coefficient(list(gens), n, k) == slice_poly


def _monomial(ring, names, exps):
    acc = ring.one()
    for name, e in zip(names, exps):
        acc = acc * ring.var(name) ** e
    return acc


class TestFormAgreement:
    def test_catalan_forms_closed_values(self):
        order = 14
        R = PowerSeries([1] * order, order)
        phi = PowerSeries([0, 0, 1], order)  # t^2
        for fv in inversion_form_sweep(phi, R, range(2, 9)):
            n = fv.n
            want = Fraction(2, 2 * n - 2) * comb(2 * n - 2, n - 2)
            assert fv.agree
            assert fv.direct == want

    def test_binary_weights(self):
        # f = x (1 + f)^2 has [x^n] f = (1/n) C(2n, n-1)
        order = 12
        R = PowerSeries([1, 2, 1], order)
        phi = PowerSeries([0, 1], order)
        for fv in inversion_form_sweep(phi, R, range(1, 9)):
            assert fv.agree
            assert fv.direct == Fraction(comb(2 * fv.n, fv.n - 1), fv.n)

    def test_laurent_phi_and_negative_indices(self):
        # with f = x c(x): 1/f = 1/x - c(x)
        order = 14
        R = PowerSeries([1] * order, order)
        phi = LaurentSeries([1], -1, order)
        catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
        values = inversion_form_sweep(phi, R, range(-3, 9))
        for fv in values:
            assert fv.agree
            if fv.n == -1:
                assert fv.direct == 1
            elif fv.n < -1:
                assert fv.direct == 0
            else:
                assert fv.direct == -catalan[fv.n]

    def test_random_pairs_agree(self):
        rng = random.Random(9)
        order = 16
        for _ in range(8):
            R = _random_R(rng, order)
            tail = [
                Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                for _ in range(order + 2)
            ]
            phi = LaurentSeries(tail, -2, order)
            for fv in inversion_form_sweep(phi, R, range(-4, 11)):
                assert fv.agree, (fv.n, R.coeffs[:5])

    def test_precision_guard(self):
        order = 10
        R = PowerSeries([1, 1], order)
        with pytest.raises(OutOfPrecision):
            inversion_form_sweep(PowerSeries([1], order), R, [order - 1])
        phi = LaurentSeries([1], -2, order)
        with pytest.raises(OutOfPrecision):
            inversion_form_sweep(phi, R, [order - 4])

    def test_requires_unit_weight(self):
        with pytest.raises(BadConstantTerm):
            inversion_form_sweep(
                PowerSeries([1], 6), PowerSeries([0, 1], 6), [2]
            )

    def test_coeff_all_forms_and_agree_flag(self):
        R = PowerSeries([1, 1], 10)
        fv = coeff_all_forms(PowerSeries([0, 1], 10), R, 4)
        assert isinstance(fv, FormValues)
        assert fv.agree
        broken = FormValues(
            n=1, form_a=1, form_b=2, form_c=1, form_d=1, form_e=1,
            direct=1, ratio_x=1, ratio_f=1,
        )
        assert not broken.agree

    def test_form_a_standalone(self):
        order = 12
        R = PowerSeries([1] * order, order)
        phi = PowerSeries([0, 1], order)
        f = solve_xR(R)
        for n in range(1, 9):
            assert coefficient_form_a(phi, R, n) == f.coeff(n)
        with pytest.raises(FormAUndefined):
            coefficient_form_a(phi, R, 0)


class TestPolynomiality:
    """[t^m] R(t)^n is a polynomial in n; negative n follow the same rule."""

    def test_interpolation_extends_to_negative_powers(self):
        rng = random.Random(11)
        order = 9
        for _ in range(5):
            R = _random_R(rng, order, degree=3)
            inv = PowerSeries([1], order) / R
            for m in range(1, 5):
                pts = []
                power = PowerSeries([1], order)
                for n in range(m + 1):
                    pts.append((n, power.coeff(m)))
                    power = power * R
                poly = polynomial_from_points(pts)
                for n in range(m + 1, m + 4):
                    assert poly_eval(poly, n) == (R ** n).coeff(m)
                for j in range(1, 4):
                    assert poly_eval(poly, -j) == (inv ** j).coeff(m)

    def test_log_route_matches_series(self):
        rng = random.Random(12)
        order = 10
        for _ in range(5):
            R = _random_R(rng, order, degree=3)
            f = solve_xR(R)
            series = (f.shift(-1)).to_power_series().log()
            for m in range(1, order - 1):
                assert log_f_over_x(R, m) == series.coeff(m)

    def test_log_route_requires_unit_one(self):
        with pytest.raises(BadConstantTerm):
            log_f_over_x(PowerSeries([2, 1], 6), 3)
        with pytest.raises(ValueError):
            log_f_over_x(PowerSeries([1, 1], 6), 0)

    def test_constant_term_supplement(self):
        rng = random.Random(13)
        order = 12
        for _ in range(6):
            R = _random_R(rng, order, degree=3)
            tail = [
                Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                for _ in range(order + 1)
            ]
            phi = LaurentSeries(tail, -2, order)
            f = solve_xR(R)
            direct = compose(phi, f).coeff(0)
            assert constant_term_supplement(phi, R) == direct


class TestExplicitSums:
    def test_matches_series_coefficients(self):
        rng = random.Random(17)
        order = 11
        for _ in range(6):
            r = [Fraction(1)] + [
                Fraction(rng.randint(-2, 2), rng.randint(1, 2))
                for _ in range(3)
            ]
            R = PowerSeries(r, order)
            f = solve_xR(R)
            for k in range(1, 4):
                fk = f ** k
                for n in range(1, order):
                    assert explicit_coefficient(r, n, k) == fk.coeff(n)

    def test_single_tree_chain(self):
        # R = 1 + t: only the path profile survives, every coefficient is 1
        for n in range(1, 8):
            assert explicit_coefficient([1, 1], n, 1) == 1

    def test_inverse_profile_sum(self):
        rng = random.Random(19)
        order = 10
        for _ in range(6):
            g_tail = [
                Fraction(rng.randint(-2, 2), rng.randint(1, 2))
                for _ in range(2)
            ]
            g = PowerSeries(
                [0, 1] + [-c for c in g_tail], order
            )
            f = g.reversion()
            for k in range(1, 4):
                fk = f ** k
                for m in range(1, order):
                    assert explicit_from_inverse(g_tail, m, k) == fk.coeff(m)

    def test_vacuous_cases(self):
        assert explicit_coefficient([1, 1], 0, 1) == 0
        assert explicit_from_inverse([1], 0, 2) == 0
        assert explicit_from_inverse([1], 1, 2) == 0


class TestRaney:
    def test_profile_mismatch_is_zero(self):
        assert raney_coefficient((1, 1), (0, 2), 1) == 0

    def test_single_block_reduction(self):
        # one exponential term a e^(bt): profile (n) with (n-k) uses
        for n in range(1, 7):
            for k in range(1, n + 1):
                got = raney_coefficient((n,), (n - k,), k)
                want = Fraction(k, n) * Fraction(
                    n ** (n - k), factorial(n - k)
                )
                assert got == want

    def test_known_two_block_value(self):
        # k = 1, profile i = (2, 1), j = (1, 1): 1 * 2!/2!/1! * 2^1/1! * 1^1/1!
        assert raney_coefficient((2, 1), (1, 1), 1) == 2

    def test_validation(self):
        with pytest.raises(ValueError):
            raney_coefficient((1,), (0, 0), 1)
        with pytest.raises(ValueError):
            raney_coefficient((1,), (0,), 0)


class TestSchurJabotinsky:
    def test_worked_pair(self):
        order = 20
        f = solve_xR(PowerSeries([1] * order, order))  # x c(x)
        g = f.reversion()
        assert g == PowerSeries([0, 1, -1], order)
        for n in range(-4, 7):
            if n == 0:
                continue
            for k in range(-4, 6):
                if n >= order - 8 or -k >= order - 8:
                    continue
                assert schur_jabotinsky_check(f, n, k), (n, k)

    def test_pair_values(self):
        order = 16
        f = solve_xR(PowerSeries([1] * order, order))
        lhs, rhs = schur_jabotinsky_pair(f, 5, 2)
        assert lhs == rhs == Fraction(2, 8) * comb(8, 3)

    def test_random_series(self):
        rng = random.Random(23)
        order = 18
        for _ in range(6):
            coeffs = [0, 1] + [
                Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                for _ in range(order - 4)
            ]
            f = PowerSeries(coeffs, order)
            for n, k in [(3, 4), (-2, 3), (4, -2), (-3, -3), (6, 1)]:
                assert schur_jabotinsky_check(f, n, k), (n, k)

    def test_guards(self):
        f = PowerSeries([0, 1, 1], 10)
        with pytest.raises(FormAUndefined):
            schur_jabotinsky_pair(f, 0, 2)
        with pytest.raises(NotReversible):
            schur_jabotinsky_pair(PowerSeries([0, 0, 1], 10), 2, 1)
        with pytest.raises(OutOfPrecision):
            schur_jabotinsky_pair(f, 9, 0)
        with pytest.raises(OutOfPrecision):
            schur_jabotinsky_pair(f, 1, -8)

    def test_window_predicate_mirrors_guards(self):
        f = PowerSeries([0, 1, 1], 10)
        for n in range(-8, 9):
            for k in range(-8, 9):
                if schur_jabotinsky_window(10, n, k):
                    schur_jabotinsky_pair(f, n, k)  # must not raise
                elif n != 0:
                    with pytest.raises(OutOfPrecision):
                        schur_jabotinsky_pair(f, n, k)


class TestShiftedEquation:
    def test_constant_H_is_taylor_shift(self):
        # f = x + z: the expansion of phi(x + z) lists phi^(m)/m!
        order = 12
        z_order = 4
        rng = random.Random(29)
        phi = PowerSeries(
            [Fraction(rng.randint(-3, 3)) for _ in range(order)], order
        )
        exp = derivative_form(phi, PowerSeries([1], order), z_order)
        assert exp.agree
        want = phi
        for m in range(z_order + 1):
            scaled = want * Fraction(1, factorial(m))
            assert exp.phi_direct[m] == scaled.truncated(exp.x_order)
            want = want.derivative()

    def test_random_triples_agree(self):
        rng = random.Random(31)
        order = 12
        for _ in range(6):
            mk = lambda: PowerSeries(
                [Fraction(rng.randint(-2, 2), rng.randint(1, 2))
                 for _ in range(order)],
                order,
            )
            exp = derivative_form(mk(), mk(), 4, psi=mk())
            assert exp.agree

    def test_psi_defaults_to_phi(self):
        order = 10
        phi = PowerSeries([1, 2, 3], order)
        H = PowerSeries([1, 1], order)
        a = derivative_form(phi, H, 3)
        b = derivative_form(phi, H, 3, psi=phi)
        assert a.ratio_direct == b.ratio_direct

    def test_z_order_bound(self):
        phi = PowerSeries([1], 4)
        with pytest.raises(ValueError):
            derivative_form(phi, phi, 4)

    def test_cauchy_convolutions(self):
        rng = random.Random(37)
        order = 10
        for _ in range(4):
            mk = lambda: PowerSeries(
                [Fraction(rng.randint(-2, 2)) for _ in range(order - 2)],
                order,
            )
            phi, psi, H = mk(), mk(), mk()
            for n in range(0, 5):
                assert cauchy_convolution_check(phi, psi, H, n)

    def test_cauchy_range_guard(self):
        phi = PowerSeries([1], 5)
        with pytest.raises(ValueError):
            cauchy_convolution_check(phi, phi, phi, 4)
