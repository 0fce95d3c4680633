"""Quasi-rational functions x**rho * exp(gamma*x**2) * R(x).

rho and gamma are exact rationals and R is a reduced rational function of x.
The class is closed under differentiation, multiplication, division, and
addition of members sharing the same Gaussian factor (integer gaps in the
x-power are absorbed into the rational part), which covers every seed
function, bound state, and Darboux image handled by the workbench.

Canonical form: the rational part has nonzero constant terms in numerator
and denominator (powers of x live in rho), and the zero function is stored
uniquely as 0 * x**0 * exp(0).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactmath import Poly, RatFun, _as_fraction, ratfun_det


class QuasiRat:
    """x**rho * exp(gamma*x**2) * r(x) with exact rational data."""

    __slots__ = ("rho", "gamma", "r")

    def __init__(self, rho=0, gamma=0, r=1):
        rho = _as_fraction(rho)
        gamma = _as_fraction(gamma)
        if not isinstance(r, RatFun):
            r = RatFun(r, var="x")
        if r.is_zero:
            self.rho = Fraction(0)
            self.gamma = Fraction(0)
            self.r = RatFun.zero("x")
            return
        a = r.num.valuation
        b = r.den.valuation
        if a or b:
            num = r.num.drop_low(a)
            den = r.den.drop_low(b)
            rho += a - b
            out = object.__new__(RatFun)  # already reduced and den still monic
            out.num = num
            out.den = den
            r = out
        self.rho = rho
        self.gamma = gamma
        self.r = r

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "QuasiRat":
        return cls(0, 0, 0)

    @classmethod
    def one(cls) -> "QuasiRat":
        return cls(0, 0, 1)

    @classmethod
    def from_poly(cls, p: Poly, rho=0, gamma=0) -> "QuasiRat":
        return cls(rho, gamma, RatFun(p))

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.r.is_zero

    def as_ratfun(self) -> RatFun:
        """The function as a plain rational function (gamma 0, integer rho)."""
        if self.is_zero:
            return RatFun.zero("x")
        if self.gamma != 0:
            raise ValueError("function carries a Gaussian factor")
        if self.rho.denominator != 1:
            raise ValueError("function carries a fractional power of x")
        k = int(self.rho)
        if k >= 0:
            return self.r * RatFun(Poly.monomial(k))
        return self.r / RatFun(Poly.monomial(-k))

    def same_prefactor_class(self, other: "QuasiRat") -> bool:
        """True when the two functions can be added exactly."""
        if self.is_zero or other.is_zero:
            return True
        return self.gamma == other.gamma and (self.rho - other.rho).denominator == 1

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(value):
        if isinstance(value, QuasiRat):
            return value
        if isinstance(value, (RatFun, Poly, Fraction, int)):
            return QuasiRat(0, 0, RatFun(value, var="x"))
        return None

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuasiRat(self.rho + other.rho, self.gamma + other.gamma, self.r * other.r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero function")
        if self.is_zero:
            return QuasiRat.zero()
        return QuasiRat(self.rho - other.rho, self.gamma - other.gamma, self.r / other.r)

    def __neg__(self):
        return QuasiRat(self.rho, self.gamma, -self.r)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.gamma != other.gamma:
            raise ValueError("cannot add functions with different Gaussian factors")
        gap = self.rho - other.rho
        if gap.denominator != 1:
            raise ValueError("cannot add functions with incompatible powers of x")
        base = min(self.rho, other.rho)
        ra = self.r if self.rho == base else self.r * RatFun(Poly.monomial(int(self.rho - base)))
        rb = other.r if other.rho == base else other.r * RatFun(Poly.monomial(int(other.rho - base)))
        return QuasiRat(base, self.gamma, ra + rb)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.same_prefactor_class(other):
            return False
        try:
            return (self - other).is_zero
        except ValueError:
            return False

    def __hash__(self):
        return hash((self.rho, self.gamma, self.r))

    def derivative(self) -> "QuasiRat":
        if self.is_zero:
            return self
        # d/dx [x^rho e^{g x^2} R] = x^{rho-1} e^{g x^2} (rho R + 2 g x^2 R + x R')
        x = Poly.identity("x")
        new_r = self.rho * self.r + RatFun(2 * self.gamma * x * x) * self.r + RatFun(x) * self.r.derivative()
        return QuasiRat(self.rho - 1, self.gamma, new_r)

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        if self.rho:
            parts.append(f"x^{self.rho}")
        if self.gamma:
            parts.append(f"exp({self.gamma}*x^2)")
        parts.append(f"({self.r!r})")
        return " * ".join(parts)


def qr_differentiate(f: QuasiRat, order: int = 1) -> QuasiRat:
    for _ in range(order):
        f = f.derivative()
    return f


def qr_is_zero(f: QuasiRat) -> bool:
    return f.is_zero


def qr_ratio_constant(f: QuasiRat, g: QuasiRat) -> Optional[Fraction]:
    """The exact rational c with f = c*g, or None if the ratio is not constant."""
    if g.is_zero:
        raise ZeroDivisionError("ratio against the zero function")
    if f.is_zero:
        return Fraction(0)
    h = f / g
    if h.rho == 0 and h.gamma == 0 and h.r.is_constant:
        return h.r.constant_value
    return None


def qr_log_derivative(u: QuasiRat) -> RatFun:
    """u'/u as a rational function: rho/x + 2*gamma*x + R'/R."""
    if u.is_zero:
        raise ZeroDivisionError("logarithmic derivative of the zero function")
    x = Poly.identity("x")
    out = RatFun(Poly((u.rho,), "x"), x)
    out = out + RatFun(Poly((0, 2 * u.gamma), "x"))
    return out + u.r.derivative() / u.r


def qr_log_second_derivative(u: QuasiRat) -> RatFun:
    """(log u)'' as a rational function: -rho/x^2 + 2*gamma + (log R)''."""
    from .exactmath import log_second_derivative

    if u.is_zero:
        raise ZeroDivisionError("logarithmic derivative of the zero function")
    x2 = Poly.monomial(2)
    out = RatFun(Poly((-u.rho,), "x"), x2) + RatFun(Poly((2 * u.gamma,), "x"))
    return out + log_second_derivative(u.r)


def qr_wronskian(fs: Sequence[QuasiRat]) -> QuasiRat:
    """Exact Wronskian of quasi-rational functions.

    Column j is x^{rho_j} e^{gamma_j x^2} times a rational column (each
    derivative of f_j divided by f_j's own prefactor is rational), so the
    prefactors factor out of the determinant by multilinearity and the rest
    is a rational-function determinant.  Mixed prefactors are fine: every
    permutation term carries the same total prefactor.
    """
    n = len(fs)
    if n == 0:
        raise ValueError("Wronskian of an empty list")
    if any(f.is_zero for f in fs):
        return QuasiRat.zero()
    if n == 1:
        return fs[0]
    cols = []
    for f in fs:
        col = []
        g = f
        for i in range(n):
            if i:
                g = g.derivative()
            # g / (x^{rho_f} e^{gamma_f x^2}) is rational: gamma cancels and
            # the rho gap is the integer -i plus whatever canonicalization moved
            shift = g.rho - f.rho
            if g.gamma != f.gamma or shift.denominator != 1:
                raise ArithmeticError("derivative left the prefactor class")
            k = int(shift)
            if k >= 0:
                col.append(g.r * RatFun(Poly.monomial(k)))
            else:
                col.append(g.r / RatFun(Poly.monomial(-k)))
        cols.append(col)
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    det = ratfun_det(mat)
    rho_total = sum((f.rho for f in fs), Fraction(0))
    gamma_total = sum((f.gamma for f in fs), Fraction(0))
    return QuasiRat(rho_total, gamma_total, det)
