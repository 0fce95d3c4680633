"""Exact rational arithmetic: dense polynomials and reduced rational functions.

Coefficients are `fractions.Fraction` throughout.  A polynomial stores a tuple
of coefficients, lowest degree first, tagged with its variable name ('x' on
the line or half line, 'z' for the squared radial variable, 'E' for spectral
polynomials); the zero polynomial stores an empty tuple.  Rational functions
are kept fully reduced with a monic denominator, so structural equality is
semantic equality.  All values are immutable and safe to share.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Optional, Sequence, Union

Rat = Fraction

Scalar = Union[Fraction, int]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _clear_denominators(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    # common positive multiplier turning the coefficients into integers
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // _igcd(lcm, c.denominator)
    return [int(c * lcm) for c in coeffs], lcm


def _int_content(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = _igcd(g, abs(v))
    return g or 1


class Poly:
    """Dense univariate polynomial over exact rationals."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def zero(cls, var: str = "x") -> "Poly":
        return cls((), var)

    @classmethod
    def one(cls, var: str = "x") -> "Poly":
        return cls((1,), var)

    @classmethod
    def identity(cls, var: str = "x") -> "Poly":
        return cls((0, 1), var)

    @classmethod
    def monomial(cls, power: int, coeff=1, var: str = "x") -> "Poly":
        return cls([0] * power + [coeff], var)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    @property
    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (0 for the zero poly)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def drop_low(self, n: int) -> "Poly":
        """Exact division by var**n; the n lowest coefficients must vanish."""
        if n == 0:
            return self
        if any(self.coeffs[:n]):
            raise ValueError("polynomial is not divisible by the requested power")
        return Poly(self.coeffs[n:], self.var)

    def _merge_var(self, other: "Poly") -> str:
        if self.var == other.var or other.is_constant:
            return self.var
        if self.is_constant:
            return other.var
        raise ValueError(f"mixed polynomial variables {self.var!r} and {other.var!r}")

    @staticmethod
    def _coerce(value, var: str):
        if isinstance(value, Poly):
            return value
        if isinstance(value, (Fraction, int)):
            return Poly((value,), var)
        return None

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        var = self._merge_var(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out, var)

    __radd__ = __add__

    def __neg__(self):
        return Poly((-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        var = self._merge_var(other)
        if self.is_zero or other.is_zero:
            return Poly((), var)
        # integer convolution with a single denominator keeps Fraction
        # reductions down to one gcd per output coefficient
        a, da = _clear_denominators(self.coeffs)
        b, db = _clear_denominators(other.coeffs)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        d = da * db
        return Poly((Fraction(c, d) for c in out), var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        var = self._merge_var(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        quot = [Fraction(0)] * max(0, len(rem) - dd)
        lc = other.leading
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                f = c / lc
                quot[i - dd] = f
                for j, oc in enumerate(other.coeffs):
                    rem[i - dd + j] -= f * oc
        return Poly(quot, var), Poly(rem[:dd] if dd > 0 else (), var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("inexact polynomial division")
        return q

    def derivative(self) -> "Poly":
        return Poly((i * c for i, c in enumerate(self.coeffs) if i), self.var)

    def compose(self, inner: "Poly") -> "Poly":
        """Substitute `inner` for this polynomial's variable."""
        out = Poly.zero(inner.var)
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        lc = self.leading
        if lc == 1:
            return self
        return Poly((c / lc for c in self.coeffs), self.var)

    def __call__(self, x):
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        return self.is_constant or other.is_constant or self.var == other.var

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*{self.var}")
            else:
                parts.append(f"{c}*{self.var}^{i}")
        return " + ".join(parts).replace("+ -", "- ")


def _positive_primitive(p: Poly) -> Poly:
    """Scale by a positive rational so the integer coefficients are coprime."""
    if p.is_zero:
        return p
    ints, _ = _clear_denominators(p.coeffs)
    g = _int_content(ints)
    return Poly((Fraction(c, g) for c in ints), p.var)


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    # pseudo-remainder over the integers; content is stripped by the caller
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        s = r[-1]
        r = [lb * c for c in r]
        off = len(r) - 1 - db
        for j in range(db + 1):
            r[off + j] -= s * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via a primitive pseudo-remainder sequence over the integers."""
    var = a._merge_var(b)
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    A, _ = _clear_denominators(a.coeffs)
    B, _ = _clear_denominators(b.coeffs)
    A = [c // _int_content(A) for c in A]
    B = [c // _int_content(B) for c in B]
    if len(A) < len(B):
        A, B = B, A
    while True:
        R = _int_prem(A, B)
        if not R:
            g = B
            break
        if len(R) == 1:
            g = [1]
            break
        A, B = B, [c // _int_content(R) for c in R]
    return Poly(g, var).monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        return Poly.zero(a._merge_var(b))
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def poly_det(mat: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a polynomial matrix by fraction-free Bareiss elimination."""
    n = len(mat)
    var = None
    for row in mat:
        for e in row:
            if not e.is_constant:
                var = e.var
                break
        if var:
            break
    var = var or mat[0][0].var
    m = [list(row) for row in mat]
    sign = 1
    prev = Poly.one(var)
    for k in range(n - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(var)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = Poly.zero(var)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def poly_wronskian(fs: Sequence[Poly]) -> Poly:
    """Wronskian determinant of polynomials, expanded exactly."""
    if not fs:
        raise ValueError("Wronskian of an empty list")
    var = fs[0].var
    for f in fs[1:]:
        if not (f.is_constant or fs[0].is_constant or f.var == var):
            raise ValueError(f"mixed polynomial variables {var!r} and {f.var!r}")
    n = len(fs)
    if n == 1:
        return fs[0]
    rows = [list(fs)]
    for _ in range(n - 1):
        rows.append([p.derivative() for p in rows[-1]])
    return poly_det(rows)


# -- Sturm sequences and real-root counting --------------------------------


def sturm_sequence(p: Poly) -> list[Poly]:
    """Canonical Sturm sequence of the square-free part of p."""
    if p.is_zero:
        raise ValueError("Sturm sequence of the zero polynomial")
    g = poly_gcd(p, p.derivative())
    q = p.exact_div(g) if g.degree > 0 else p
    seq = [q, q.derivative()]
    while not seq[-1].is_zero:
        r = -(seq[-2] % seq[-1])
        seq.append(_positive_primitive(r))
    seq.pop()
    return seq


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _sign_at(p: Poly, x: Optional[Fraction], positive_inf: bool = True) -> int:
    if p.is_zero:
        return 0
    if x is None:  # an infinite endpoint
        s = _sign(p.leading)
        if not positive_inf and p.degree % 2 == 1:
            s = -s
        return s
    return _sign(p(x))


def _variations(signs: Iterable[int]) -> int:
    cleaned = [s for s in signs if s]
    return sum(1 for a, b in zip(cleaned, cleaned[1:]) if a != b)


def count_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi).

    `None` endpoints mean -infinity / +infinity respectively.
    """
    if p.is_zero:
        raise ValueError("root count of the zero polynomial")
    if p.degree <= 0:
        return 0
    lo = None if lo is None else _as_fraction(lo)
    hi = None if hi is None else _as_fraction(hi)
    if lo is not None and hi is not None and lo >= hi:
        raise ValueError("empty interval")
    g = poly_gcd(p, p.derivative())
    q = p.exact_div(g) if g.degree > 0 else p
    # open interval: peel off roots sitting exactly on a finite endpoint
    for endpoint in (lo, hi):
        if endpoint is not None:
            linear = Poly((-endpoint, 1), q.var)
            while not q.is_zero and q(endpoint) == 0:
                q = q.exact_div(linear)
    if q.degree <= 0:
        return 0
    seq = sturm_sequence(q)
    v_lo = _variations(_sign_at(s, lo, positive_inf=False) for s in seq)
    v_hi = _variations(_sign_at(s, hi, positive_inf=True) for s in seq)
    return v_lo - v_hi


# -- rational functions -----------------------------------------------------


class RatFun:
    """Quotient of two polynomials, reduced, with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var: str = "x"):
        if isinstance(num, RatFun):
            base = num
            num, den2 = base.num, base.den
            den = den2 if den is None else den2 * self._to_poly(den, var)
        else:
            num = self._to_poly(num, var)
            den = Poly.one(num.var) if den is None else self._to_poly(den, num.var)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            self.num = Poly.zero(den.var)
            self.den = Poly.one(den.var)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.leading
        if lc != 1:
            num = num * (1 / lc)
            den = den.monic()
        self.num = num
        self.den = den

    @staticmethod
    def _to_poly(value, var: str) -> Poly:
        if isinstance(value, Poly):
            return value
        if isinstance(value, (Fraction, int)):
            return Poly((value,), var)
        raise TypeError(f"cannot interpret {type(value).__name__} as a polynomial")

    @classmethod
    def zero(cls, var: str = "x") -> "RatFun":
        return cls(Poly.zero(var))

    @classmethod
    def one(cls, var: str = "x") -> "RatFun":
        return cls(Poly.one(var))

    @property
    def var(self) -> str:
        return self.num.var if not self.num.is_constant else self.den.var

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    @property
    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("rational function is not constant")
        return self.num.constant_value  # den is monic, hence exactly 1

    @staticmethod
    def _coerce(value, var: str):
        if isinstance(value, RatFun):
            return value
        if isinstance(value, (Poly, Fraction, int)):
            return RatFun(value, var=var)
        return None

    def __add__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(RatFun)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        return other / self

    def derivative(self) -> "RatFun":
        return RatFun(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        x = _as_fraction(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def __eq__(self, other):
        other = self._coerce(other, self.var)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den == Poly.one(self.den.var):
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def ratfun_det(mat: Sequence[Sequence[RatFun]]) -> RatFun:
    """Determinant of a rational-function matrix.

    Each column is scaled by the lcm of its denominators (multilinearity),
    the polynomial determinant is expanded fraction-free, and the scaling is
    divided back out.
    """
    n = len(mat)
    var = mat[0][0].var
    pmat: list[list[Poly]] = [[Poly.zero(var)] * n for _ in range(n)]
    scale = Poly.one(var)
    for j in range(n):
        d = Poly.one(var)
        for i in range(n):
            d = poly_lcm(d, mat[i][j].den)
        for i in range(n):
            e = mat[i][j]
            pmat[i][j] = e.num * d.exact_div(e.den)
        scale = scale * d
    return RatFun(poly_det(pmat), scale)


def log_second_derivative(f) -> RatFun:
    """(log f)'' for a polynomial or rational function, as a rational function."""
    if isinstance(f, Poly):
        d1 = f.derivative()
        return RatFun(f.derivative().derivative() * f - d1 * d1, f * f)
    if isinstance(f, RatFun):
        return log_second_derivative(f.num) - log_second_derivative(f.den)
    raise TypeError(f"cannot take log'' of {type(f).__name__}")


def ratfun_sub_constant_check(a: RatFun, b: RatFun) -> Optional[Fraction]:
    """The exact constant a - b if the difference reduces to one, else None."""
    diff = a - b
    if diff.is_constant:
        return diff.constant_value
    return None
