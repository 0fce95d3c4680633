from fractions import Fraction as F

import pytest

from rextosc.exactmath import Poly, count_real_roots, poly_wronskian
from rextosc.families import (
    AdmissibilityError,
    FamilyTag,
    IndexList,
    base_potential,
    hermite,
    laguerre,
    pseudo_hermite,
    radial_potential,
    seed_phi_ho,
    seed_phi_rho,
    seed_phi_tilde_rho,
    seed_psi_ho,
    seed_psi_rho,
)
from rextosc.ladder import apply_hamiltonian, eigenvalue_of


def hermite_series(m):
    """Explicit sum formula, the oracle for the recurrence."""
    coeffs = [F(0)] * (m + 1)
    fact = [1]
    for i in range(1, m + 1):
        fact.append(fact[-1] * i)
    j = 0
    while m - 2 * j >= 0:
        coeffs[m - 2 * j] = F((-1) ** j * fact[m], fact[j] * fact[m - 2 * j]) * 2 ** (m - 2 * j)
        j += 1
    return Poly(coeffs)


def laguerre_series(m, beta):
    """L_m^(beta)(z) = sum_j (-1)^j [prod_{t=j+1..m}(beta+t)] / ((m-j)! j!) z^j."""
    coeffs = []
    fact = [1]
    for i in range(1, m + 1):
        fact.append(fact[-1] * i)
    for j in range(m + 1):
        prod = F(1)
        for t in range(j + 1, m + 1):
            prod *= beta + t
        coeffs.append(F((-1) ** j) * prod / (fact[m - j] * fact[j]))
    return Poly(coeffs, "z")


class TestHermite:
    @pytest.mark.parametrize("m,expected", [(0, (1,)), (1, (0, 2)), (2, (-2, 0, 4))])
    def test_first_members(self, m, expected):
        assert hermite(m) == Poly(expected)

    @pytest.mark.parametrize("m", range(9))
    def test_matches_series_formula(self, m):
        assert hermite(m) == hermite_series(m)


class TestPseudoHermite:
    @pytest.mark.parametrize(
        "m,expected", [(0, (1,)), (2, (2, 0, 4)), (3, (0, 12, 0, 8))]
    )
    def test_first_members(self, m, expected):
        assert pseudo_hermite(m) == Poly(expected)

    @pytest.mark.parametrize("m", range(9))
    def test_coefficients_are_abs_of_hermite(self, m):
        ph = pseudo_hermite(m).coeffs
        h = hermite(m).coeffs
        assert ph == tuple(abs(c) for c in h)
        # parity slots strictly positive, the rest zero
        for i, c in enumerate(ph):
            if (m - i) % 2 == 0:
                assert c > 0
            else:
                assert c == 0

    @pytest.mark.parametrize("m", [0, 2, 4, 6, 8])
    def test_even_members_are_nodeless(self, m):
        assert count_real_roots(pseudo_hermite(m)) == 0

    @pytest.mark.parametrize("m", [1, 3, 5])
    def test_odd_members_vanish_only_at_origin(self, m):
        p = pseudo_hermite(m)
        assert p(0) == 0
        assert count_real_roots(p) == 1


class TestLaguerre:
    def test_degree_zero_and_one(self):
        assert laguerre(0, F(7, 3)) == Poly([1], "z")
        beta = F(7, 3)
        assert laguerre(1, beta) == Poly([1 + beta, -1], "z")

    def test_fixed_value(self):
        assert laguerre(2, F(-5, 2)) == Poly([F(3, 8), F(1, 2), F(1, 2)], "z")

    @pytest.mark.parametrize("beta", [F(1, 2), F(-5, 2), F(0), F(3), F(-7, 3)])
    @pytest.mark.parametrize("m", range(7))
    def test_matches_series_formula(self, m, beta):
        assert laguerre(m, beta) == laguerre_series(m, beta)

    @pytest.mark.parametrize("beta", [F(1, 2), F(-9, 4), F(2)])
    def test_three_term_recurrence(self, beta):
        z = Poly.identity("z")
        for m in range(1, 12):
            lhs = (m + 1) * laguerre(m + 1, beta)
            rhs = (Poly([2 * m + 1 + beta], "z") - z) * laguerre(m, beta) - (
                m + beta
            ) * laguerre(m - 1, beta)
            assert lhs == rhs


class TestTags:
    def test_family_validation(self):
        with pytest.raises(ValueError):
            FamilyTag("ho", F(2))
        with pytest.raises(ValueError):
            FamilyTag("rho")
        with pytest.raises(ValueError):
            FamilyTag("rho", F(-1))
        assert FamilyTag("rho", F(5, 2)).alpha == F(3)

    def test_index_list_structure(self):
        with pytest.raises(ValueError):
            IndexList(())
        with pytest.raises(ValueError):
            IndexList((2, 2))
        with pytest.raises(ValueError):
            IndexList((-1,))
        assert IndexList.parse("0,1,4").values == (0, 1, 4)

    def test_parity_flag(self):
        assert IndexList((0, 1, 2)).parity_ok
        assert not IndexList((1,)).parity_ok

    def test_deleted_levels(self):
        assert IndexList((2,)).deleted_levels() == [1, 2]
        assert IndexList((0, 1)).deleted_levels() == []
        assert IndexList((0, 1, 4)).deleted_levels() == [1, 2]


class TestSeeds:
    def test_ho_ground_state(self):
        fn, energy = seed_psi_ho(0)
        assert energy == 1
        assert eigenvalue_of(base_potential(FamilyTag("ho")), fn) == 1

    def test_ho_added_seed_energy(self):
        fn, energy = seed_phi_ho(2)
        assert energy == -5
        assert eigenvalue_of(base_potential(FamilyTag("ho")), fn) == -5

    @pytest.mark.parametrize("m", range(6))
    def test_all_ho_seeds_are_exact_eigenfunctions(self, m):
        ho = base_potential(FamilyTag("ho"))
        for seed in (seed_phi_ho(m), seed_psi_ho(m)):
            assert eigenvalue_of(ho, seed.fn) == seed.energy

    @pytest.mark.parametrize("ell", [F(0), F(1), F(2), F(1, 2), F(7, 2)])
    @pytest.mark.parametrize("n", range(4))
    def test_radial_bound_states(self, ell, n):
        fn, energy = seed_psi_rho(ell, n)
        assert energy == 2 * n + ell + F(3, 2)
        assert eigenvalue_of(radial_potential(ell), fn) == energy

    def test_radial_ground_state_shape(self):
        fn, energy = seed_psi_rho(F(2), 0)
        assert fn.rho == 3 and fn.gamma == F(-1, 4) and fn.r.is_constant
        assert energy == F(7, 2)

    @pytest.mark.parametrize("ell_eff,m", [(F(3), 2), (F(4), 0), (F(9, 2), 3)])
    def test_radial_adding_seeds(self, ell_eff, m):
        fn, energy = seed_phi_rho(ell_eff, m)
        assert energy == ell_eff - 2 * m - F(1, 2)
        assert eigenvalue_of(radial_potential(ell_eff), fn) == energy

    @pytest.mark.parametrize("ell_eff,i", [(F(3), 0), (F(3), 2), (F(5), 4)])
    def test_radial_isospectral_seeds(self, ell_eff, i):
        fn, energy = seed_phi_tilde_rho(ell_eff, i)
        assert energy == 2 * i - ell_eff + F(1, 2)
        assert eigenvalue_of(radial_potential(ell_eff), fn) == energy

    def test_tilde_seed_zero_shape(self):
        fn, energy = seed_phi_tilde_rho(F(4), 0)
        assert fn.rho == -4 and fn.gamma == F(-1, 4) and fn.r.is_constant
        assert energy == F(-7, 2)

    def test_seed_bounds_enforced(self):
        with pytest.raises(AdmissibilityError) as err:
            seed_phi_rho(F(3), 4)  # needs ell_eff + 1/2 > m
        assert err.value.rule == "rho-adding-bound"
        with pytest.raises(AdmissibilityError) as err:
            seed_phi_tilde_rho(F(2), 3)
        assert err.value.rule == "tilde-bound"


class TestWronskianDegrees:
    @pytest.mark.parametrize(
        "indices",
        [(0,), (2,), (4,), (0, 1), (0, 3), (2, 3), (0, 1, 2), (2, 3, 4), (0, 1, 4)],
    )
    def test_pseudo_hermite_wronskian_degree(self, indices):
        k = len(indices)
        w = poly_wronskian([pseudo_hermite(m) for m in indices])
        assert w.degree == sum(indices) - k * (k - 1) // 2
