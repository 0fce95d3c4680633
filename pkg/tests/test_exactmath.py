import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rextosc.exactmath import (
    Poly,
    RatFun,
    count_real_roots,
    log_second_derivative,
    poly_det,
    poly_gcd,
    poly_wronskian,
    ratfun_det,
    ratfun_sub_constant_check,
)

X = Poly.identity("x")

rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)
small_polys = st.lists(rationals, min_size=0, max_size=5).map(lambda cs: Poly(cs, "x"))
nonzero_polys = small_polys.filter(lambda p: not p.is_zero)


def brute_det(mat):
    """Permutation-expansion determinant, the independent oracle."""
    n = len(mat)
    total = Poly.zero(mat[0][0].var)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Poly.one(mat[0][0].var)
        for i in range(n):
            term = term * mat[i][perm[i]]
        total = total + (sign * term)
    return total


def brute_wronskian(fs):
    n = len(fs)
    rows = [list(fs)]
    for _ in range(n - 1):
        rows.append([p.derivative() for p in rows[-1]])
    return brute_det(rows)


class TestPoly:
    def test_normalization_strips_leading_zeros(self):
        assert Poly([1, 2, 0, 0]).coeffs == (F(1), F(2))
        assert Poly([0, 0]).is_zero

    def test_arithmetic_round_trip(self):
        a = Poly([1, F(1, 2), 3])
        b = Poly([-2, 5])
        q, r = divmod(a * b + Poly([1, 1]), b)
        assert q * b + r == a * b + Poly([1, 1])

    def test_mixed_variables_rejected(self):
        with pytest.raises(ValueError):
            Poly([0, 1], "x") * Poly([0, 1], "z")

    def test_constants_are_variable_agnostic(self):
        assert Poly([3], "x") + Poly([0, 1], "z") == Poly([3, 1], "z")

    def test_compose(self):
        p = Poly([1, 0, 1], "z")  # 1 + z^2
        inner = Poly([0, 0, F(1, 2)], "x")  # x^2/2
        assert p.compose(inner) == Poly([1, 0, 0, 0, F(1, 4)], "x")

    def test_eval(self):
        p = Poly([1, -2, 1])
        assert p(F(3)) == 4

    @given(small_polys, nonzero_polys)
    @settings(max_examples=60, deadline=None)
    def test_divmod_identity(self, a, b):
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero or r.degree < b.degree

    @given(nonzero_polys, nonzero_polys, nonzero_polys)
    @settings(max_examples=40, deadline=None)
    def test_gcd_divides_both_and_sees_common_factor(self, a, b, c):
        g = poly_gcd(a * c, b * c)
        assert ((a * c) % g).is_zero
        assert ((b * c) % g).is_zero
        if not c.is_constant:
            assert (g % c.monic()).is_zero


class TestWronskian:
    def test_single_entry_is_the_function(self):
        assert poly_wronskian([Poly([1])]) == Poly([1])

    def test_constant_row(self):
        assert poly_wronskian([Poly([1]), X]) == Poly([1])

    def test_two_by_two_example(self):
        # x * 2x - x^2 * 1 = x^2 by hand
        assert poly_wronskian([X, X * X]) == X * X

    def test_mixed_variables_rejected(self):
        with pytest.raises(ValueError):
            poly_wronskian([Poly([0, 1], "x"), Poly([0, 1], "z")])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            poly_wronskian([])

    @given(st.lists(nonzero_polys, min_size=2, max_size=4))
    @settings(max_examples=40, deadline=None)
    def test_matches_brute_force(self, fs):
        assert poly_wronskian(fs) == brute_wronskian(fs)

    @given(st.lists(nonzero_polys, min_size=2, max_size=4), st.data())
    @settings(max_examples=40, deadline=None)
    def test_antisymmetry(self, fs, data):
        i = data.draw(st.integers(0, len(fs) - 2))
        swapped = list(fs)
        swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
        assert poly_wronskian(swapped) == -poly_wronskian(fs)

    @given(st.lists(st.lists(rationals, min_size=1, max_size=3).map(Poly),
                    min_size=2, max_size=4))
    @settings(max_examples=30, deadline=None)
    def test_bareiss_matches_brute_determinant(self, row):
        n = len(row)
        mat = [[row[(i + j) % n] + Poly([i * j]) for j in range(n)] for i in range(n)]
        assert poly_det(mat) == brute_det(mat)


class TestRootCounting:
    @pytest.mark.parametrize(
        "coeffs,lo,hi,expected",
        [
            ((1, 0, 1), None, None, 0),    # x^2+1 positive definite
            ((-1, 0, 1), None, None, 2),   # roots +-1
            ((2, 0, 4), None, None, 0),    # negative discriminant
            ((-1, 0, 1), 0, None, 1),
            ((-1, 0, 1), None, 0, 1),
            ((-1, 0, 1), -1, 1, 0),        # open interval excludes endpoints
            ((0, 2), 0, None, 0),          # root exactly at the endpoint
            ((0, 0, 1), None, None, 1),    # double root counts once
        ],
    )
    def test_examples(self, coeffs, lo, hi, expected):
        assert count_real_roots(Poly(coeffs), lo, hi) == expected

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            count_real_roots(Poly([]))

    @given(
        st.lists(
            st.integers(-6, 6).map(F), min_size=1, max_size=5, unique=True
        ),
        st.integers(-7, 6),
    )
    @settings(max_examples=60, deadline=None)
    def test_known_root_products(self, roots, lo):
        """Polynomials assembled from known distinct rational roots."""
        p = Poly([1])
        for r in roots:
            p = p * Poly([-r, 1])
        p = p * Poly([1, 0, 1])  # rootless quadratic factor
        hi = lo + 5
        inside = sum(1 for r in roots if lo < r < hi)
        assert count_real_roots(p, F(lo), F(hi)) == inside
        assert count_real_roots(p) == len(roots)

    @given(st.lists(st.integers(-5, 5), min_size=3, max_size=9))
    @settings(max_examples=50, deadline=None)
    def test_sign_change_sampling_agrees(self, coeffs):
        p = Poly(coeffs)
        if p.is_zero:
            return
        counted = count_real_roots(p)
        # dense sampling catches sign changes, a lower bound on root count
        xs = [F(n, 8) for n in range(-200, 201)]
        vals = [p(x) for x in xs]
        changes = sum(
            1 for a, b in zip(vals, vals[1:]) if a * b < 0
        )
        assert counted >= changes


class TestRatFun:
    def test_reduction_idempotent(self):
        f = RatFun(Poly([0, 2, 2]), Poly([0, 0, 4]))
        again = RatFun(f.num, f.den)
        assert f == again
        assert f.den.leading == 1

    def test_common_factor_cancelled(self):
        g = Poly([1, 1])
        assert RatFun(Poly([0, 1]) * g, Poly([2]) * g) == RatFun(Poly([0, F(1, 2)]))

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RatFun(Poly([1]), Poly([]))

    def test_derivative_quotient_rule(self):
        f = RatFun(Poly([0, 1]), Poly([1, 0, 1]))  # x/(1+x^2)
        expected = RatFun(Poly([1, 0, -1]), Poly([1, 0, 2, 0, 1]))
        assert f.derivative() == expected

    def test_sub_constant_check_examples(self):
        a = RatFun(Poly([1, 0, 1]))
        b = RatFun(Poly([-1, 0, 1]))
        assert ratfun_sub_constant_check(a, b) == 2
        assert ratfun_sub_constant_check(RatFun(Poly([0, 1])), RatFun(Poly([0, 0, 1]))) is None
        assert ratfun_sub_constant_check(a, a) == 0

    def test_log_second_derivative_of_product_adds(self):
        p = Poly([1, 0, 1])
        q = Poly([2, 1])
        lhs = log_second_derivative(p * q)
        assert lhs == log_second_derivative(p) + log_second_derivative(q)

    def test_ratfun_det_matches_scaled_poly_det(self):
        one = Poly.one("x")
        mat = [
            [RatFun(Poly([0, 1]), Poly([1, 1])), RatFun(one)],
            [RatFun(one, Poly([2])), RatFun(Poly([1, 0, 1]))],
        ]
        det = ratfun_det(mat)
        expected = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
        assert det == expected
