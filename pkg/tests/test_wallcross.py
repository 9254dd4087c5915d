from fractions import Fraction

import pytest

from quiverdt.hn import hn_factorize, universal_for
from quiverdt.quiver import (c3_quiver, conifold_quiver, ext, jordan_quiver,
                             kronecker_quiver, tits_form)
from quiverdt.qtorus import (TorusSeries, nu_weights, pleth_exp, s_twist,
                             torus_inverse, torus_mul, truncate_tau)
from quiverdt.scalar import L, ONE, Scalar, V
from quiverdt.stability import MINUS_INF, PLUS_INF, StabilityParams
from quiverdt.wallcross import (A_STAR, DIRECTIONS, DTInvariants,
                                FramedSeries, dt_omega, euler_transfer,
                                framed_at, general_wallcross, ncdt,
                                smooth_model_motive, smooth_model_series,
                                transfer_series, transfer_slope_product,
                                uniform_series)

JORDAN = jordan_quiver()
KRON = kronecker_quiver()
HALF = Fraction(1, 2)


def jordan_BU(N=4):
    return universal_for(JORDAN, N)


class TestTransferSeries:
    def test_jordan_first_coefficient(self):
        bu = jordan_BU().series
        C = transfer_series(bu, JORDAN)
        assert C.coeff((1,)) == -V

    def test_needs_symmetry(self):
        bu = universal_for(KRON, 3).series
        with pytest.raises(ValueError, match="general_wallcross"):
            transfer_series(bu, KRON)

    def test_needs_constant_one(self):
        with pytest.raises(ValueError, match="constant term 1"):
            transfer_series(TorusSeries.zero(JORDAN, 3), JORDAN)

    def test_slope_product_filters(self):
        fq = conifold_quiver()
        bu = universal_for(fq, 4)
        parts = hn_factorize(bu, (1, 0), 4)
        whole = transfer_slope_product(fq, parts, 4, lambda b: True)
        below = transfer_slope_product(fq, parts, 4, lambda b: b < HALF)
        at = transfer_slope_product(fq, parts, 4, lambda b: b == HALF)
        above = transfer_slope_product(fq, parts, 4, lambda b: b > HALF)
        assert whole == torus_mul(above, torus_mul(at, below))


class TestGeneralWallcross:
    def setup_method(self):
        self.bu = universal_for(KRON, 4)
        self.parts = hn_factorize(self.bu, (1, 0), 4)
        self.B = self.parts[HALF]
        self.a_minus = framed_at(KRON, self.bu, (1, 0), 4, HALF, "minus", HALF)
        self.a_exact = framed_at(KRON, self.bu, (1, 0), 4, HALF, "exact", HALF)
        self.a_plus = framed_at(KRON, self.bu, (1, 0), 4, HALF, "plus", HALF)

    def test_direction_names(self):
        assert len(DIRECTIONS) == 6
        with pytest.raises(ValueError, match="unknown direction"):
            general_wallcross(self.a_minus, self.B, "sideways")

    def test_side_must_match(self):
        with pytest.raises(ValueError, match="does not match"):
            general_wallcross(self.a_minus, self.B, "exact_to_plus")

    def test_star_zero_input(self):
        bad = self.B + TorusSeries.monomial(KRON, 4, (0, 0), star=1)
        with pytest.raises(ValueError, match="star-0"):
            general_wallcross(self.a_minus, bad, "minus_to_exact")

    def test_crossing_formulas(self):
        up = general_wallcross(self.a_minus, self.B, "minus_to_exact")
        assert up.series == self.a_exact.series
        assert up.params.side == "exact"
        on = general_wallcross(self.a_exact, self.B, "exact_to_plus")
        assert on.series == self.a_plus.series

    def test_round_trips(self):
        for there, back in [("minus_to_exact", "exact_to_minus"),
                            ("minus_to_plus", "plus_to_minus")]:
            out = general_wallcross(
                general_wallcross(self.a_minus, self.B, there), self.B, back)
            assert out.series == self.a_minus.series
            assert out.params == self.a_minus.params

    def test_two_step_equals_one_jump(self):
        two = general_wallcross(
            general_wallcross(self.a_minus, self.B, "minus_to_exact"),
            self.B, "exact_to_plus")
        one = general_wallcross(self.a_minus, self.B, "minus_to_plus")
        assert two.series == one.series


class TestUniformSeries:
    def test_below_all_walls(self):
        bu = universal_for(KRON, 3)
        assert uniform_series(KRON, bu, (1, 0), MINUS_INF) == \
            TorusSeries.one(KRON, 3)

    def test_above_all_walls(self):
        bu = universal_for(KRON, 3)
        top = uniform_series(KRON, bu, (1, 0), PLUS_INF)
        assert top == framed_at(KRON, bu, (1, 0), 3, PLUS_INF).series

    def test_sides_agree_off_the_slopes(self):
        bu = universal_for(KRON, 3)
        a = Fraction(9, 10)  # not a slope of any class
        exact = uniform_series(KRON, bu, (1, 0), a, "exact")
        assert uniform_series(KRON, bu, (1, 0), a, "plus") == exact
        assert uniform_series(KRON, bu, (1, 0), a, "minus") == exact

    def test_sides_differ_on_a_slope(self):
        bu = universal_for(KRON, 3)
        plus = uniform_series(KRON, bu, (1, 0), HALF, "plus")
        minus = uniform_series(KRON, bu, (1, 0), HALF, "minus")
        assert plus != minus


class TestFramedAt:
    def test_minus_infinity(self):
        bu = jordan_BU()
        a = framed_at(JORDAN, bu, (0,), 4, MINUS_INF)
        assert a.series == TorusSeries.one(JORDAN, 4)
        assert not a.params.is_finite()

    def test_plus_infinity_matches_cyclic(self):
        bu = jordan_BU()
        a = framed_at(JORDAN, bu, (0,), 4, PLUS_INF)
        assert s_twist(a.series, nu_weights(JORDAN, 1)) == ncdt(JORDAN, bu)

    def test_jordan_above_the_wall(self):
        bu = jordan_BU()
        a = framed_at(JORDAN, bu, (0,), 4, 0, "plus", 0)
        assert [a.series.coeff((n,)) for n in range(4)] == \
            [ONE, -V, V ** 2, -(V ** 3)]
        assert a.series == framed_at(JORDAN, bu, (0,), 4, PLUS_INF).series

    def test_finite_needs_mu(self):
        with pytest.raises(ValueError, match="slope mu"):
            framed_at(JORDAN, jordan_BU(), (0,), 4, 0)

    def test_empty_slope_class(self):
        bu = universal_for(KRON, 3)
        a = framed_at(KRON, bu, (1, 0), 3, 0, "exact", 5)
        assert a.series == TorusSeries.one(KRON, 3)

    def test_trunc_guard_and_cut(self):
        bu = jordan_BU(3)
        with pytest.raises(ValueError, match="exceeds"):
            framed_at(JORDAN, bu, (0,), 4, MINUS_INF)
        a = framed_at(JORDAN, bu, (0,), 2, PLUS_INF)
        assert a.series.trunc == 2


class TestWallCrossingTheorem:
    def test_kronecker_at_the_interior_wall(self):
        bu = universal_for(KRON, 4)
        parts = hn_factorize(bu, (1, 0), 4)
        B = parts[HALF]
        a_minus = framed_at(KRON, bu, (1, 0), 4, HALF, "minus", HALF).series
        a_exact = framed_at(KRON, bu, (1, 0), 4, HALF, "exact", HALF).series
        a_plus = framed_at(KRON, bu, (1, 0), 4, HALF, "plus", HALF).series
        snu = s_twist(B, nu_weights(KRON, 1))
        sdn = s_twist(B, nu_weights(KRON, -1))
        assert a_exact == torus_mul(snu, a_minus)
        assert a_exact == torus_mul(a_plus, sdn)

    def test_conifold_transfer_route(self):
        fq = conifold_quiver()
        bu = universal_for(fq, 4)
        theta = (1, 0)
        parts = hn_factorize(bu, theta, 4)
        a_minus = framed_at(fq, bu, theta, 4, HALF, "minus", HALF).series
        a_plus = framed_at(fq, bu, theta, 4, HALF, "plus", HALF).series
        a_top = framed_at(fq, bu, theta, 4, PLUS_INF).series
        below = transfer_slope_product(fq, parts, 4, lambda b: b < HALF)
        above = transfer_slope_product(fq, parts, 4, lambda b: b > HALF)
        thru = transfer_slope_product(fq, parts, 4, lambda b: b <= HALF)
        assert truncate_tau(below, theta, HALF, HALF) == a_minus
        lifted = torus_mul(torus_inverse(above), a_top)
        assert truncate_tau(lifted, theta, HALF, HALF) == a_plus
        assert truncate_tau(thru, theta, HALF, HALF) == \
            truncate_tau(lifted, theta, HALF, HALF)


class TestNCDT:
    def test_jordan_closed_form(self):
        out = ncdt(JORDAN, jordan_BU())
        assert all(out.coeff((n,)) == L ** n for n in range(5))

    def test_unframed_collapses_to_one(self):
        fq = jordan_quiver(w=(0,))
        out = ncdt(fq, universal_for(fq, 3))
        assert out == TorusSeries.one(fq, 3)

    def test_c3_euler_numbers(self):
        fq = c3_quiver()
        out = ncdt(fq, universal_for(fq, 3))
        assert [out.coeff((n,)).specialize("euler") for n in range(4)] == \
            [1, 1, 3, 6]

    def test_framing_constant(self):
        assert A_STAR == -V / (L - 1)


class TestSmoothModel:
    def test_kronecker_motives(self):
        bu = universal_for(KRON, 3)
        assert smooth_model_motive(KRON, (1, 0), bu, 3, (1, 1)) == L + 1
        assert smooth_model_motive(KRON, (1, 0), bu, 3, (2, 1)) == L + 1
        assert smooth_model_motive(KRON, (1, 0), bu, 3, (1, 0)) == ONE

    def test_jordan_affine_spaces(self):
        bu = jordan_BU()
        for n in range(1, 5):
            assert smooth_model_motive(JORDAN, (0,), bu, 4, (n,)) == L ** n

    def test_zero_class_refused(self):
        with pytest.raises(ValueError, match="no smooth model"):
            smooth_model_motive(JORDAN, (0,), jordan_BU(), 4, (0,))

    def test_series_carries_the_twist(self):
        bu = universal_for(KRON, 3)
        ser = smooth_model_series(KRON, (1, 0), HALF, bu, 3)
        alpha = (1, 1)
        t = tits_form(KRON, ext(alpha))
        assert ser.coeff(alpha) * (L - 1) == \
            Scalar.neg_v_pow(t) * smooth_model_motive(KRON, (1, 0), bu, 3, alpha)

    def test_counts_points(self):
        from quiverdt.oracle import count_framed_stable
        bu = universal_for(KRON, 3)
        got = smooth_model_motive(KRON, (1, 0), bu, 3, (1, 1)).specialize_L(2)
        assert got == count_framed_stable(KRON, (1, 1), (1, 0), HALF, "plus", 2)


class TestOmega:
    def test_conifold_values(self):
        fq = conifold_quiver()
        bu = universal_for(fq, 4)
        om = dt_omega(bu.series).omega
        assert om[(1, 0)] == om[(0, 1)] == -V
        assert om[(2, 1)] == om[(1, 2)] == -V
        assert om[(1, 1)] == om[(2, 2)] == L + L * L
        assert (2, 0) not in om

    def test_round_trip(self):
        fq = conifold_quiver()
        bu = universal_for(fq, 4)
        inv = dt_omega(bu.series)
        back = pleth_exp(inv.as_series(fq) * (ONE / (L - 1)))
        assert back == bu.series

    def test_as_series_region(self):
        inv = DTInvariants({(1,): -V}, 3)
        s = inv.as_series(JORDAN)
        assert s.trunc == 3 and s.coeff((1,)) == -V

    def test_euler_transfer_c3(self):
        fq = c3_quiver()
        bu = universal_for(fq, 3)
        out = euler_transfer(dt_omega(bu.series), fq)
        assert [out.coeff((n,)) for n in range(4)] == \
            [ONE, -ONE, Scalar.of(3), Scalar.of(-6)]

    def test_euler_transfer_drops_unframed(self):
        fq = conifold_quiver()  # w = (1, 0): nu ignores the second coordinate
        bu = universal_for(fq, 3)
        out = euler_transfer(dt_omega(bu.series), fq)
        assert out.coeff((0, 1)) == Scalar.of(0)
        assert out.coeff((1, 0)) == ONE
