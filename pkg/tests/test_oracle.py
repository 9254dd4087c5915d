from fractions import Fraction

import pytest

from quiverdt.hn import gl_motive, hn_factorize, universal_trivial
from quiverdt.oracle import (BudgetError, FiniteFieldConfig,
                             count_framed_stable, count_stack,
                             count_stack_isoclasses, gl_order,
                             hall_filtration_check, verify_coefficient)
from quiverdt.quiver import (ext, jordan_quiver, kronecker_quiver,
                             loop_quiver, tits_form)
from quiverdt.scalar import L, Scalar, V
from quiverdt.stability import MINUS_INF, PLUS_INF, StabilityParams

JORDAN = jordan_quiver()
KRON = kronecker_quiver()
HALF = Fraction(1, 2)


class TestConfig:
    def test_q_validated(self):
        with pytest.raises(ValueError, match="prime at most 5"):
            FiniteFieldConfig(4)
        with pytest.raises(ValueError, match="prime at most 5"):
            FiniteFieldConfig(7)

    def test_dim_cap_validated(self):
        with pytest.raises(ValueError, match="max_total_dim"):
            FiniteFieldConfig(2, max_total_dim=0)
        with pytest.raises(ValueError, match="max_total_dim"):
            FiniteFieldConfig(2, max_total_dim=5)

    def test_budget_from_env(self, monkeypatch):
        monkeypatch.setenv("WALLCROSS_BUDGET", "12345")
        assert FiniteFieldConfig(2).budget == 12345

    def test_q_mismatch_caught(self):
        with pytest.raises(ValueError, match="disagree on q"):
            count_stack(JORDAN, (1,), "all", 3, FiniteFieldConfig(2))


class TestGLOrder:
    def test_values(self):
        assert gl_order(0, 2) == 1
        assert gl_order(1, 2) == 1
        assert gl_order(2, 2) == 6
        assert gl_order(3, 2) == 168
        assert gl_order(2, 3) == 48

    def test_matches_motive(self):
        for n in range(4):
            for q in (2, 3):
                assert gl_motive(n).specialize_L(q) == gl_order(n, q)


class TestCountAll:
    def test_zero_class(self):
        assert count_stack(JORDAN, (0,), "all", 2) == 1

    def test_jordan_closed_form(self):
        assert count_stack(JORDAN, (2,), "all", 2) == Fraction(8, 3)
        assert count_stack(JORDAN, (1,), "all", 3) == Fraction(3, 2)

    def test_framed_point(self):
        # loop entry q^1 and framing slot q^1 over GL_1 x GL_1
        assert count_stack(JORDAN, ext((1,), 1), "all", 2) == 4

    def test_matches_universal_series(self):
        bu = universal_trivial(KRON, 3).series
        for alpha in [(1, 0), (1, 1), (2, 1)]:
            chi = tits_form(KRON, ext(alpha))
            for q in (2, 3):
                n = count_stack(KRON, alpha, "all", q)
                assert verify_coefficient(bu.coeff(alpha), n, q, chi=chi)

    def test_isoclass_cross_check(self):
        cases = [(JORDAN, (2,)), (KRON, (1, 1)), (loop_quiver(2), (2,))]
        for fq, alpha in cases:
            assert count_stack_isoclasses(fq, alpha, 2) == \
                count_stack(fq, alpha, "all", 2)

    def test_isoclass_budget(self):
        with pytest.raises(BudgetError):
            count_stack_isoclasses(JORDAN, (3,), 2)

    def test_bad_sp(self):
        with pytest.raises(TypeError, match="StabilityParams"):
            count_stack(JORDAN, (1,), "some", 2)


class TestCountSemistable:
    def test_kronecker_stable_classes(self):
        sp = StabilityParams((1, 0))
        assert count_stack(KRON, (1, 0), sp, 2) == 1
        assert count_stack(KRON, (1, 1), sp, 2) == 3

    def test_matches_hn_pieces(self):
        bu = universal_trivial(KRON, 3)
        parts = hn_factorize(bu, (1, 0), 3)
        for alpha, mu in [((1, 1), HALF), ((2, 1), Fraction(2, 3))]:
            chi = tits_form(KRON, ext(alpha))
            n = count_stack(KRON, alpha, StabilityParams((1, 0)), 2)
            assert verify_coefficient(parts[mu].coeff(alpha), n, 2, chi=chi)

    def test_dim_cap(self):
        with pytest.raises(BudgetError):
            count_stack(JORDAN, (5,), "all", 2)


class TestFramedStable:
    def test_jordan_on_plus_side(self):
        for n, q, want in [(1, 2, 2), (1, 3, 3), (2, 2, 4), (2, 3, 9)]:
            got = count_framed_stable(JORDAN, (n,), (0,), 0, "plus", q)
            assert got == want

    def test_on_the_wall_nothing_is_stable(self):
        assert count_framed_stable(JORDAN, (1,), (0,), 0, "exact", 2) == 0

    def test_empty_class(self):
        assert count_framed_stable(JORDAN, (0,), (0,), 0, "plus", 2) == 1

    def test_minus_infinity(self):
        assert count_framed_stable(JORDAN, (0,), (0,), MINUS_INF, "exact", 2) == 1
        assert count_framed_stable(JORDAN, (1,), (0,), MINUS_INF, "exact", 2) == 0

    def test_plus_infinity_cyclic(self):
        for n, q in [(1, 2), (2, 2), (1, 3)]:
            got = count_framed_stable(JORDAN, (n,), (0,), PLUS_INF, "exact", q)
            assert got == q ** n

    def test_kronecker_projective_line(self):
        got = count_framed_stable(KRON, (1, 1), (1, 0), HALF, "plus", 2)
        assert got == 3  # q + 1 points

    def test_budget_env(self, monkeypatch):
        monkeypatch.setenv("WALLCROSS_BUDGET", "10")
        with pytest.raises(BudgetError):
            count_framed_stable(JORDAN, (1,), (0,), 0, "plus", 2)

    def test_dim_cap(self):
        with pytest.raises(BudgetError):
            count_framed_stable(JORDAN, (5,), (0,), 0, "plus", 2)


class TestVerifyCoefficient:
    def test_plain(self):
        assert verify_coefficient(1 / (L - 1), 1, 2)
        assert not verify_coefficient(1 / (L - 1), 2, 2)

    def test_chi_strips_sign_normalization(self):
        coeff = -V / (L - 1)  # normalized with chi = 1
        assert verify_coefficient(coeff, 1, 2, chi=1)

    def test_prefactor(self):
        coeff = (L ** 2) / (L - 1)
        assert verify_coefficient(coeff, 4, 2, prefactor=1 / (L - 1))
        assert verify_coefficient(coeff, 2, 2, prefactor=L / (L - 1))

    def test_wrong_parity_raises(self):
        with pytest.raises(ValueError, match="half-power"):
            verify_coefficient(-V / (L - 1), 1, 2, chi=0)


class TestHallFiltration:
    def test_jordan_at_the_wall(self):
        assert hall_filtration_check(JORDAN, (1,), (0,), 0, 2)
        assert hall_filtration_check(JORDAN, (2,), (0,), 0, 2)

    def test_jordan_off_the_wall(self):
        assert hall_filtration_check(JORDAN, (1,), (0,), 1, 2)

    def test_kronecker(self):
        assert hall_filtration_check(KRON, (1, 1), (1, 0), HALF, 2)
        assert hall_filtration_check(KRON, (1, 0), (1, 0), 1, 2)

    def test_dim_cap(self):
        with pytest.raises(BudgetError):
            hall_filtration_check(JORDAN, (5,), (0,), 0, 2)
