"""Rationally-extended oscillator potentials.

Four constructions: state-adding and state-deleting extensions of the
harmonic oscillator and of the radial harmonic oscillator, plus the radial
isospectral transformation linking the two radial branches.  Every build
returns the potential in closed form (confining part + constant offset +
rational correction from the log-Wronskian), the defining seed chain, and an
exact spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactmath import (
    Poly,
    RatFun,
    _as_fraction,
    count_real_roots,
    log_second_derivative,
    poly_wronskian,
    ratfun_sub_constant_check,
)
from .quasirational import QuasiRat, qr_log_second_derivative, qr_wronskian
from .families import (
    HALF,
    AdmissibilityError,
    FamilyTag,
    IndexList,
    Potential,
    Seed,
    base_potential,
    laguerre,
    pseudo_hermite,
    hermite,
    radial_potential,
    seed_phi_rho,
    seed_phi_ho,
    seed_phi_tilde_rho,
    seed_psi_ho,
    seed_psi_rho,
    _Z_TO_X,
    _NEG_Z_TO_X,
)

MODES = ("adding", "deleting", "tilde")


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    violations: tuple[tuple[str, str], ...] = ()

    def raise_if_failed(self):
        if not self.ok:
            rule, message = self.violations[0]
            raise AdmissibilityError(rule, message)


@dataclass(frozen=True)
class ExtendedPotential:
    """An extended potential with its defining data and exact spectrum.

    `wronskian` is the x-domain polynomial whose log curvature supplies the
    rational correction; for radial branches `wronskian_z` keeps the native
    z-variable Wronskian it came from.  `nu_below` lists the negative level
    labels (empty for the isospectral tilde construction); level nu has
    energy 2*nu + intercept.
    """

    family: FamilyTag
    mode: str
    indices: Optional[IndexList]
    k: int
    m_k: int
    wronskian: Poly
    wronskian_z: Optional[Poly]
    potential: Potential
    base: Potential
    chain_seeds: tuple[Seed, ...]
    intercept: Fraction
    nu_below: tuple[int, ...]

    def to_ratfun(self) -> RatFun:
        return self.potential.to_ratfun()

    def energy(self, nu: int) -> Fraction:
        return 2 * nu + self.intercept

    def level_labels(self, count: int) -> list[int]:
        labels = list(self.nu_below)
        nu = 0
        while len(labels) < count:
            labels.append(nu)
            nu += 1
        return labels[:count]

    def spectrum(self, count: int) -> list[tuple[int, Fraction]]:
        """First `count` exact levels in increasing order as (nu, E) pairs."""
        if count < 1:
            raise ValueError("count must be at least 1")
        return [(nu, self.energy(nu)) for nu in self.level_labels(count)]


def _added_labels(indices: IndexList) -> tuple[int, ...]:
    return tuple(-m - 1 for m in reversed(indices.values))


def check_admissible(indices: IndexList, family: FamilyTag, mode: str) -> AdmissibilityReport:
    """Validate the index pattern, the family parameter bounds, and the
    nonsingularity of the defining Wronskian on the physical domain."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    violations: list[tuple[str, str]] = []
    for i, m in enumerate(indices.values, start=1):
        want_even = i % 2 == 1
        if (m % 2 == 0) != want_even:
            violations.append(
                ("parity", f"m_{i}={m} must be {'even' if want_even else 'odd'}")
            )
    if family.kind == "rho":
        bound = family.alpha + indices.k
        if mode == "adding" and not bound > indices.m_k:
            violations.append(
                ("rho-adding-bound", f"need alpha+k > m_k, got {bound} <= {indices.m_k}")
            )
        if mode == "deleting" and not bound > indices.m_k + 1:
            violations.append(
                ("rho-deleting-bound", f"need alpha+k > m_k+1, got {bound} <= {indices.m_k + 1}")
            )
        if mode == "tilde" and not family.ell + indices.k + HALF > indices.m_k:
            violations.append(
                ("tilde-bound", f"need ell+k+1/2 > m_k, got {family.ell + indices.k + HALF} <= {indices.m_k}")
            )
    if violations:
        return AdmissibilityReport(False, tuple(violations))
    if mode in ("adding", "deleting"):
        w, half_line = _mode_wronskian(indices, family, mode)
        roots = count_real_roots(w, lo=0 if half_line else None)
        if roots:
            violations.append(
                ("wronskian-singular", f"Wronskian has {roots} real root(s) on the domain")
            )
        elif half_line and w(0) == 0:
            violations.append(("wronskian-singular", "Wronskian vanishes at the origin"))
    return AdmissibilityReport(not violations, tuple(violations))


def _mode_wronskian(indices: IndexList, family: FamilyTag, mode: str) -> tuple[Poly, bool]:
    """The defining polynomial Wronskian (native variable) and whether the
    singularity check runs on the half line."""
    if family.kind == "ho":
        if mode == "adding":
            return poly_wronskian([pseudo_hermite(m) for m in indices]), False
        kept = indices.deleted_levels()
        if not kept:
            return Poly.one("x"), False
        return poly_wronskian([hermite(j) for j in kept]), False
    alpha = family.alpha
    if mode == "adding":
        polys = [laguerre(m, -alpha - indices.k).compose(Poly((0, -1), "z")) for m in indices]
        return poly_wronskian(polys), True
    kept = indices.deleted_levels()
    if not kept:
        return Poly.one("z"), True
    beta = alpha + indices.k - indices.m_k - 1
    return poly_wronskian([laguerre(j, beta) for j in kept]), True


def ensure_admissible(indices: IndexList, family: FamilyTag, mode: str) -> None:
    check_admissible(indices, family, mode).raise_if_failed()


def build_state_adding(family: FamilyTag, indices: IndexList) -> ExtendedPotential:
    """Extension with the full index chain added below the base spectrum."""
    ensure_admissible(indices, family, "adding")
    k, m_k = indices.k, indices.m_k
    if family.kind == "ho":
        w = poly_wronskian([pseudo_hermite(m) for m in indices])
        correction = RatFun(-2) * log_second_derivative(w)
        pot = Potential(Fraction(1), None, Fraction(-2 * k), correction)
        seeds = tuple(seed_phi_ho(m) for m in indices)
        return ExtendedPotential(
            family, "adding", indices, k, m_k, w, None, pot, base_potential(family),
            seeds, Fraction(1), _added_labels(indices),
        )
    w_z, _ = _mode_wronskian(indices, family, "adding")
    w_x = w_z.compose(_Z_TO_X)
    correction = RatFun(-2) * log_second_derivative(w_x)
    pot = Potential(Fraction(1, 4), family.ell, Fraction(-k), correction)
    seeds = tuple(seed_phi_rho(family.ell + k, m) for m in indices)
    return ExtendedPotential(
        family, "adding", indices, k, m_k, w_x, w_z, pot,
        radial_potential(family.ell + k), seeds,
        family.ell + k + Fraction(3, 2), _added_labels(indices),
    )


def build_state_deleting(family: FamilyTag, indices: IndexList) -> ExtendedPotential:
    """Extension built by removing the lacunary bound-state chain from the
    shifted base problem; differs from the adding build by a constant."""
    ensure_admissible(indices, family, "deleting")
    k, m_k = indices.k, indices.m_k
    kept = indices.deleted_levels()
    if family.kind == "ho":
        w = poly_wronskian([hermite(j) for j in kept]) if kept else Poly.one("x")
        correction = RatFun(-2) * log_second_derivative(w) if kept else RatFun.zero("x")
        pot = Potential(Fraction(1), None, Fraction(2 * (m_k + 1 - k)), correction)
        seeds = tuple(seed_psi_ho(j) for j in kept)
        return ExtendedPotential(
            family, "deleting", indices, k, m_k, w, None, pot, base_potential(family),
            seeds, Fraction(2 * m_k + 3), _added_labels(indices),
        )
    ell_del = family.ell + k - m_k - 1
    w_z, _ = _mode_wronskian(indices, family, "deleting")
    w_x = w_z.compose(_Z_TO_X)
    correction = RatFun(-2) * log_second_derivative(w_x) if kept else RatFun.zero("x")
    pot = Potential(Fraction(1, 4), family.ell, Fraction(m_k + 1 - k), correction)
    seeds = tuple(seed_psi_rho(ell_del, j) for j in kept)
    return ExtendedPotential(
        family, "deleting", indices, k, m_k, w_x, w_z, pot,
        radial_potential(ell_del), seeds,
        family.ell + k + m_k + Fraction(5, 2), _added_labels(indices),
    )


def build_tilde_rho(ell, k: int, m_k: int) -> ExtendedPotential:
    """Isospectral radial transformation through the m_k+1 Gaussian-down
    seeds; verifies exactly that the result is the angular-momentum-lowered
    base potential shifted by m_k+1."""
    ell = _as_fraction(ell)
    if not ell + k + HALF > m_k:
        raise AdmissibilityError(
            "tilde-bound", f"need ell+k+1/2 > m_k, got {ell + k + HALF} <= {m_k}"
        )
    ell_eff = ell + k
    seeds = tuple(seed_phi_tilde_rho(ell_eff, i) for i in range(m_k + 1))
    w = qr_wronskian([s.fn for s in seeds])
    # proportionality identity: the rational part collapses to a constant and
    # the x-power excess over the bare prefactors is m_k(m_k+1)/2
    if not w.r.is_constant:
        raise ArithmeticError("seed Wronskian is not proportional to a pure power of x")
    excess = w.rho - (-ell_eff) * (m_k + 1)
    if excess != Fraction(m_k * (m_k + 1), 2):
        raise ArithmeticError(f"unexpected Wronskian power {excess}")
    correction = RatFun(-2) * qr_log_second_derivative(w)
    pot = Potential(Fraction(1, 4), ell_eff, Fraction(0), correction)
    built = ExtendedPotential(
        FamilyTag("rho", ell), "tilde", None, k, m_k,
        Poly.one("x"), None, pot, radial_potential(ell_eff), seeds,
        ell + k + Fraction(3, 2), (),
    )
    target = radial_potential(ell_eff - m_k - 1).to_ratfun()
    shift = ratfun_sub_constant_check(built.to_ratfun(), target)
    if shift != m_k + 1:
        raise ArithmeticError(f"transformation did not reduce to a constant shift ({shift})")
    return built


def expected_shift(family: FamilyTag, indices: IndexList) -> Fraction:
    """Constant by which the deleting build exceeds the adding build."""
    if family.kind == "ho":
        return Fraction(2 * indices.m_k + 2)
    return Fraction(indices.m_k + 1)


def adding_deleting_shift(family: FamilyTag, indices: IndexList) -> Optional[Fraction]:
    """Exact difference deleting - adding if it is a constant, else None."""
    add = build_state_adding(family, indices)
    rem = build_state_deleting(family, indices)
    return ratfun_sub_constant_check(rem.to_ratfun(), add.to_ratfun())
