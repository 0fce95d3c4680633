"""Classical and pseudo-classical polynomial families, oscillator seed
functions, and the confining base potentials they solve.

All wavefunctions are unnormalized; every seed constructor returns the
function together with its exact eigenvalue under the matching base
Hamiltonian, which the test suite re-derives by direct application.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

from .exactmath import Poly, RatFun, _as_fraction
from .quasirational import QuasiRat

HALF = Fraction(1, 2)


class AdmissibilityError(ValueError):
    """A configuration violates a named admissibility rule."""

    def __init__(self, rule: str, message: str):
        super().__init__(f"{rule}: {message}")
        self.rule = rule


# -- polynomial families -----------------------------------------------------


@lru_cache(maxsize=None)
def hermite(m: int) -> Poly:
    """Physicists' Hermite polynomial H_m."""
    if m < 0:
        raise ValueError("Hermite index must be nonnegative")
    if m == 0:
        return Poly.one("x")
    prev, cur = Poly.one("x"), Poly((0, 2), "x")
    for n in range(1, m):
        prev, cur = cur, Poly((0, 2), "x") * cur - (2 * n) * prev
    return cur


@lru_cache(maxsize=None)
def pseudo_hermite(m: int) -> Poly:
    """Real polynomial obtained from H_m by rotating the argument to the
    imaginary axis; all coefficients nonnegative, nodeless for even m.

    Satisfies the recurrence P_{m+1} = 2x P_m + 2m P_{m-1}.
    """
    if m < 0:
        raise ValueError("index must be nonnegative")
    if m == 0:
        return Poly.one("x")
    prev, cur = Poly.one("x"), Poly((0, 2), "x")
    for n in range(1, m):
        prev, cur = cur, Poly((0, 2), "x") * cur + (2 * n) * prev
    return cur


def laguerre(m: int, beta) -> Poly:
    """Generalized Laguerre polynomial L_m^(beta) in the variable z."""
    if m < 0:
        raise ValueError("Laguerre index must be nonnegative")
    beta = _as_fraction(beta)
    if m == 0:
        return Poly.one("z")
    prev = Poly.one("z")
    cur = Poly((1 + beta, -1), "z")
    for n in range(1, m):
        nxt = (Poly((2 * n + 1 + beta, -1), "z") * cur - (n + beta) * prev) * Fraction(1, n + 1)
        prev, cur = cur, nxt
    return cur


# -- configuration tags ------------------------------------------------------


@dataclass(frozen=True)
class FamilyTag:
    """Base family: 'ho' on the line, or 'rho' on the half line with angular
    momentum ell (alpha = ell + 1/2)."""

    kind: str
    ell: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in ("ho", "rho"):
            raise ValueError(f"unknown family {self.kind!r}")
        if self.kind == "rho":
            if self.ell is None:
                raise ValueError("radial family needs an ell value")
            object.__setattr__(self, "ell", _as_fraction(self.ell))
            if self.ell < 0:
                raise ValueError("ell must be nonnegative for a physical base problem")
        elif self.ell is not None:
            raise ValueError("ell only applies to the radial family")

    @property
    def alpha(self) -> Fraction:
        if self.kind != "rho":
            raise ValueError("alpha only applies to the radial family")
        return self.ell + HALF


def ho_family() -> FamilyTag:
    return FamilyTag("ho")


def rho_family(ell) -> FamilyTag:
    return FamilyTag("rho", _as_fraction(ell))


@dataclass(frozen=True)
class IndexList:
    """Strictly increasing nonnegative seed indices m_1 < ... < m_k.

    The even/odd alternation required for nonsingular extensions is a soft
    admissibility rule (checked by extension.check_admissible), not a
    construction invariant, so that violations can be reported by name.
    """

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValueError("index list must not be empty")
        if any(v < 0 for v in vals):
            raise ValueError("indices must be nonnegative")
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise ValueError("indices must be strictly increasing")

    @classmethod
    def parse(cls, text: str) -> "IndexList":
        return cls(tuple(int(part) for part in text.split(",")))

    @property
    def k(self) -> int:
        return len(self.values)

    @property
    def m_k(self) -> int:
        return self.values[-1]

    @property
    def parity_ok(self) -> bool:
        # even entries in odd (1-based) slots, odd entries in even slots
        return all(m % 2 == i % 2 for i, m in enumerate(self.values))

    def deleted_levels(self) -> list[int]:
        """Bound-state indices kept in the state-deleting chain:
        {1, ..., m_k} minus {m_k - m_i : i < k}."""
        excluded = {self.m_k - m for m in self.values[:-1]}
        assert all(1 <= e <= self.m_k for e in excluded)
        return [j for j in range(1, self.m_k + 1) if j not in excluded]

    def __iter__(self):
        return iter(self.values)


# -- potentials --------------------------------------------------------------


@dataclass(frozen=True)
class Potential:
    """Confining part (quad * x^2 plus an optional ell(ell+1)/x^2 barrier)
    with a constant offset and an exact rational correction."""

    quad: Fraction
    ell: Optional[Fraction]
    offset: Fraction = Fraction(0)
    correction: RatFun = field(default_factory=lambda: RatFun.zero("x"))

    def to_ratfun(self) -> RatFun:
        v = RatFun(Poly((self.offset, 0, self.quad), "x"))
        if self.ell is not None and self.ell != 0:
            coeff = self.ell * (self.ell + 1)
            if coeff:
                v = v + RatFun(Poly((coeff,), "x"), Poly.monomial(2))
        return v + self.correction

    def shifted(self, constant) -> "Potential":
        return Potential(self.quad, self.ell, self.offset + _as_fraction(constant), self.correction)


def base_potential(family: FamilyTag) -> Potential:
    if family.kind == "ho":
        return Potential(Fraction(1), None)
    return Potential(Fraction(1, 4), family.ell)


def radial_potential(ell) -> Potential:
    """x^2/4 + ell(ell+1)/x^2 for any rational ell (internal chains may use
    effective ell values outside the physical FamilyTag range)."""
    return Potential(Fraction(1, 4), _as_fraction(ell))


# -- seed functions ----------------------------------------------------------


class Seed(NamedTuple):
    fn: QuasiRat
    energy: Fraction


_Z_TO_X = Poly((0, 0, HALF), "x")        # z = x^2/2
_NEG_Z_TO_X = Poly((0, 0, -HALF), "x")   # -z = -x^2/2


def seed_phi_ho(m: int) -> Seed:
    """Gaussian-up seed below the oscillator ground state, eigenvalue -2m-1."""
    return Seed(QuasiRat.from_poly(pseudo_hermite(m), gamma=HALF), Fraction(-2 * m - 1))


def seed_psi_ho(nu: int) -> Seed:
    """Oscillator bound state (unnormalized), eigenvalue 2 nu + 1."""
    if nu < 0:
        raise ValueError("bound-state index must be nonnegative")
    return Seed(QuasiRat.from_poly(hermite(nu), gamma=-HALF), Fraction(2 * nu + 1))


def seed_psi_rho(ell_eff, nu: int) -> Seed:
    """Radial bound state x^{ell+1} e^{-x^2/4} L_nu^{(ell+1/2)}(x^2/2),
    eigenvalue 2 nu + ell + 3/2."""
    if nu < 0:
        raise ValueError("bound-state index must be nonnegative")
    ell_eff = _as_fraction(ell_eff)
    poly = laguerre(nu, ell_eff + HALF).compose(_Z_TO_X)
    fn = QuasiRat.from_poly(poly, rho=ell_eff + 1, gamma=Fraction(-1, 4))
    return Seed(fn, 2 * nu + ell_eff + Fraction(3, 2))


def seed_phi_rho(ell_eff, m: int) -> Seed:
    """Radial state-adding seed x^{-ell} e^{x^2/4} L_m^{(-ell-1/2)}(-x^2/2),
    eigenvalue ell - 2m - 1/2; requires ell + 1/2 > m for a usable chain."""
    ell_eff = _as_fraction(ell_eff)
    if not ell_eff + HALF > m:
        raise AdmissibilityError(
            "rho-adding-bound",
            f"need ell_eff + 1/2 > m, got ell_eff={ell_eff}, m={m}",
        )
    poly = laguerre(m, -ell_eff - HALF).compose(_NEG_Z_TO_X)
    fn = QuasiRat.from_poly(poly, rho=-ell_eff, gamma=Fraction(1, 4))
    return Seed(fn, ell_eff - 2 * m - HALF)


def seed_phi_tilde_rho(ell_eff, i: int) -> Seed:
    """Radial isospectral seed x^{-ell} e^{-x^2/4} L_i^{(-ell-1/2)}(x^2/2),
    eigenvalue 2i - ell + 1/2; requires ell + 1/2 > i."""
    ell_eff = _as_fraction(ell_eff)
    if not ell_eff + HALF > i:
        raise AdmissibilityError(
            "tilde-bound",
            f"need ell_eff + 1/2 > i, got ell_eff={ell_eff}, i={i}",
        )
    poly = laguerre(i, -ell_eff - HALF).compose(_Z_TO_X)
    fn = QuasiRat.from_poly(poly, rho=-ell_eff, gamma=Fraction(-1, 4))
    return Seed(fn, 2 * i - ell_eff + HALF)
