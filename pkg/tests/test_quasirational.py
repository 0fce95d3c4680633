from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rextosc.exactmath import Poly, RatFun, poly_wronskian
from rextosc.quasirational import (
    QuasiRat,
    qr_differentiate,
    qr_is_zero,
    qr_log_derivative,
    qr_log_second_derivative,
    qr_ratio_constant,
    qr_wronskian,
)

HALF = F(1, 2)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)
polys = st.lists(rationals, min_size=1, max_size=4).map(lambda cs: Poly(cs, "x"))
nonzero_polys = polys.filter(lambda p: not p.is_zero)
gammas = st.sampled_from([F(0), HALF, -HALF, F(-1, 4), F(1, 4)])
rhos = st.integers(-2, 3).map(F)


def qr(rho, gamma, poly):
    return QuasiRat(rho, gamma, RatFun(poly))


class TestCanonicalForm:
    def test_zero_is_unique(self):
        z = QuasiRat(5, HALF, RatFun(Poly([])))
        assert z.rho == 0 and z.gamma == 0 and z.is_zero
        assert z == QuasiRat.zero()

    def test_x_powers_move_into_rho(self):
        f = QuasiRat(0, 0, RatFun(Poly([0, 0, 3])))  # 3x^2
        assert f.rho == 2 and f.r == RatFun(Poly([3]))
        g = QuasiRat(0, 0, RatFun(Poly([1]), Poly([0, 1])))  # 1/x
        assert g.rho == -1 and g.r == RatFun(Poly([1]))


class TestDerivative:
    def test_gaussian(self):
        f = QuasiRat(0, -HALF, 1)  # e^{-x^2/2}
        assert f.derivative() == qr(1, -HALF, Poly([-1]))

    def test_plain_power(self):
        assert QuasiRat(1, 0, 1).derivative() == QuasiRat.one()

    def test_product_example(self):
        f = QuasiRat(2, HALF, 1)  # x^2 e^{x^2/2}
        assert f.derivative() == qr(1, HALF, Poly([2, 0, 1]))

    @given(rhos, gammas, nonzero_polys, nonzero_polys, rationals, rationals)
    @settings(max_examples=50, deadline=None)
    def test_linearity(self, rho, gamma, p, q, a, b):
        f, g = qr(rho, gamma, p), qr(rho, gamma, q)
        lhs = (a * f + b * g).derivative()
        rhs = a * f.derivative() + b * g.derivative()
        assert (lhs - rhs).is_zero

    @given(rhos, rhos, gammas, gammas, nonzero_polys, nonzero_polys)
    @settings(max_examples=50, deadline=None)
    def test_leibniz(self, r1, r2, g1, g2, p, q):
        f, g = qr(r1, g1, p), qr(r2, g2, q)
        lhs = (f * g).derivative()
        rhs = f.derivative() * g + f * g.derivative()
        assert (lhs - rhs).is_zero


class TestArithmetic:
    def test_addition_needs_matching_gaussian(self):
        with pytest.raises(ValueError):
            QuasiRat(0, HALF, 1) + QuasiRat(0, -HALF, 1)

    def test_addition_needs_integer_power_gap(self):
        with pytest.raises(ValueError):
            QuasiRat(HALF, 0, 1) + QuasiRat(0, 0, 1)

    def test_division_by_zero_function(self):
        with pytest.raises(ZeroDivisionError):
            QuasiRat.one() / QuasiRat.zero()

    def test_log_derivative(self):
        f = qr(2, -F(1, 4), Poly([1, 1]))
        expect = (
            RatFun(Poly([2]), Poly([0, 1]))
            + RatFun(Poly([0, -HALF]))
            + RatFun(Poly([1]), Poly([1, 1]))
        )
        assert qr_log_derivative(f) == expect

    def test_log_second_derivative_is_derivative_of_log_derivative(self):
        f = qr(1, HALF, Poly([2, 0, 1]))
        assert qr_log_second_derivative(f) == qr_log_derivative(f).derivative()


class TestWronskian:
    def test_single(self):
        f = QuasiRat(0, HALF, 1)
        assert qr_wronskian([f]) == f

    def test_pair_of_gaussian_seeds(self):
        # W(e^{x^2/2}, 2x e^{x^2/2}) expanded by hand: 2 e^{x^2}
        f = QuasiRat(0, HALF, 1)
        g = qr(0, HALF, Poly([0, 2]))
        direct = f * g.derivative() - f.derivative() * g
        w = qr_wronskian([f, g])
        assert w == direct
        assert w == QuasiRat(0, 1, 2)

    def test_mixed_gaussians_supported(self):
        f = QuasiRat(0, HALF, 1)
        g = QuasiRat(0, -HALF, 1)
        assert qr_wronskian([f, g]) == f * g.derivative() - f.derivative() * g

    def test_reduces_to_polynomial_wronskian(self):
        ps = [Poly([1, 2]), Poly([0, 0, 1]), Poly([3, 0, 0, 1])]
        w = qr_wronskian([QuasiRat.from_poly(p) for p in ps])
        assert w == QuasiRat.from_poly(poly_wronskian(ps))

    @given(st.lists(st.tuples(rhos, nonzero_polys), min_size=2, max_size=3), gammas)
    @settings(max_examples=30, deadline=None)
    def test_matches_direct_two_by_two(self, entries, gamma):
        fs = [qr(rho, gamma, p) for rho, p in entries[:2]]
        direct = fs[0] * fs[1].derivative() - fs[0].derivative() * fs[1]
        assert (qr_wronskian(fs[:2]) - direct).is_zero

    def test_repeated_entry_vanishes(self):
        f = qr(1, -HALF, Poly([1, 2]))
        assert qr_wronskian([f, f]).is_zero


class TestPredicates:
    def test_is_zero(self):
        assert qr_is_zero(QuasiRat.zero())
        assert not qr_is_zero(qr(1, -HALF, Poly([1])))

    def test_ratio_constant(self):
        f = qr(1, -HALF, Poly([2]))
        g = qr(1, -HALF, Poly([1]))
        assert qr_ratio_constant(f, g) == 2
        assert qr_ratio_constant(QuasiRat(2, 0, 1), QuasiRat(1, 0, 1)) is None
        assert qr_ratio_constant(QuasiRat.zero(), g) == 0
        with pytest.raises(ZeroDivisionError):
            qr_ratio_constant(g, QuasiRat.zero())

    def test_differentiate_order(self):
        f = QuasiRat(0, -HALF, 1)
        assert qr_differentiate(f, 2) == f.derivative().derivative()
