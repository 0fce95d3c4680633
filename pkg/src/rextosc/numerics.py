"""Independent floating-point verification layer.

Finite-difference Schrödinger eigenvalues on a Dirichlet grid (symmetric
tridiagonal solve), composite Simpson quadrature for norms, and pointwise
evaluation of exact objects.  Nothing here feeds back into the exact layer;
it exists to confront the exact spectra and coefficient identities with an
independent discretization.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
from scipy.integrate import simpson
from scipy.linalg import eigh_tridiagonal

from .exactmath import Poly, RatFun
from .quasirational import QuasiRat
from .families import FamilyTag, Potential
from .extension import ExtendedPotential

GRID_POINTS_ENV = "WORKBENCH_GRID_POINTS"


class SolverError(RuntimeError):
    """The tridiagonal eigensolver failed to converge."""


class EvaluationError(ArithmeticError):
    """Evaluation hit a pole of the denominator."""


@dataclass(frozen=True)
class Grid:
    """Uniform Dirichlet grid on [a, b] with n_points interior nodes."""

    a: float
    b: float
    n_points: int

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("need a < b")
        if self.n_points < 64:
            raise ValueError("need at least 64 interior points")

    @property
    def spacing(self) -> float:
        return (self.b - self.a) / (self.n_points + 1)

    def nodes(self) -> np.ndarray:
        return self.a + self.spacing * np.arange(1, self.n_points + 1)


def _env_points(default: int) -> int:
    raw = os.environ.get(GRID_POINTS_ENV)
    if raw is None:
        return default
    n = int(raw)
    if n < 64:
        raise ValueError(f"{GRID_POINTS_ENV} must be at least 64")
    return n


def default_grid(family: FamilyTag) -> Grid:
    """Spec defaults: [-12, 12] x 2400 on the line, (1e-3, 16] x 3000 on the
    half line; point counts overridable through WORKBENCH_GRID_POINTS."""
    if family.kind == "ho":
        return Grid(-12.0, 12.0, _env_points(2400))
    return Grid(1e-3, 16.0, _env_points(3000))


# -- pointwise evaluation ------------------------------------------------------


def _poly_values(p: Poly, x: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(x, dtype=float)
    for c in reversed(p.coeffs):
        acc = acc * x + float(c)
    return acc


def evaluate(obj, x) -> Union[float, np.ndarray]:
    """Double-precision value(s) of an exact object at x."""
    scalar = np.isscalar(x)
    xs = np.asarray(x, dtype=float)
    if isinstance(obj, (Potential, ExtendedPotential)):
        obj = obj.to_ratfun()
    if isinstance(obj, Poly):
        vals = _poly_values(obj, xs)
    elif isinstance(obj, RatFun):
        den = _poly_values(obj.den, xs)
        if np.any(den == 0.0):
            raise EvaluationError("pole inside the evaluation set")
        vals = _poly_values(obj.num, xs) / den
    elif isinstance(obj, QuasiRat):
        den = _poly_values(obj.r.den, xs)
        if np.any(den == 0.0):
            raise EvaluationError("pole inside the evaluation set")
        vals = _poly_values(obj.r.num, xs) / den
        if obj.rho:
            if obj.rho.denominator == 1:
                vals = vals * xs ** int(obj.rho)
            else:
                vals = vals * np.power(xs, float(obj.rho))
        if obj.gamma:
            vals = vals * np.exp(float(obj.gamma) * xs * xs)
    else:
        raise TypeError(f"cannot evaluate {type(obj).__name__}")
    return float(vals) if scalar else vals


# -- finite-difference eigensolver ----------------------------------------------


def fd_eigenvalues(V, grid: Grid, count: int) -> np.ndarray:
    """Lowest eigenvalues of -d2/dx2 + V discretized by central second
    differences with Dirichlet boundaries."""
    if count < 1:
        raise ValueError("count must be positive")
    if count > grid.n_points // 4:
        raise ValueError("count must not exceed a quarter of the grid size")
    x = grid.nodes()
    h = grid.spacing
    diag = 2.0 / h**2 + evaluate(V, x)
    off = np.full(grid.n_points - 1, -1.0 / h**2)
    try:
        vals = eigh_tridiagonal(
            diag, off, select="i", select_range=(0, count - 1), eigvals_only=True
        )
    except np.linalg.LinAlgError as exc:  # pragma: no cover - solver hiccup
        raise SolverError(f"tridiagonal eigensolver failed: {exc}") from exc
    return vals


# -- quadrature ------------------------------------------------------------------


def quadrature_norm2(f: QuasiRat, grid: Optional[Grid] = None) -> float:
    """Integral of |f|^2 over the grid domain by composite Simpson.

    Requires Gaussian decay (gamma < 0).  Without an explicit grid the
    domain starts at [-8, 8] and doubles until the boundary tail is
    negligible, so the result is insensitive to further widening.
    """
    if f.is_zero:
        return 0.0
    if f.gamma >= 0:
        raise ValueError("norm of a non-decaying function")
    if grid is not None:
        x = np.linspace(grid.a, grid.b, grid.n_points | 1)
        y = evaluate(f, x) ** 2
        return float(simpson(y, x=x))
    half = 8.0
    while True:
        x = np.linspace(-half, half, 16385)
        y = evaluate(f, x) ** 2
        total = float(simpson(y, x=x))
        tail = max(y[0], y[-1]) * half
        if tail <= 1e-14 * max(total, 1.0) or half >= 64.0:
            return total
        half *= 2.0


# -- combined exact/numeric tables ------------------------------------------------


@dataclass(frozen=True)
class SpectrumTable:
    """Exact levels paired with finite-difference values and residuals."""

    nus: tuple[int, ...]
    exact: tuple[Fraction, ...]
    numeric: tuple[float, ...]
    residuals: tuple[float, ...]

    def max_residual(self) -> float:
        return max(self.residuals)


def spectrum_table(pot: ExtendedPotential, count: int, grid: Optional[Grid] = None) -> SpectrumTable:
    grid = grid or default_grid(pot.family)
    rows = pot.spectrum(count)
    numeric = fd_eigenvalues(pot, grid, count)
    exact = tuple(e for _, e in rows)
    residuals = tuple(abs(float(v) - float(e)) for v, e in zip(numeric, exact))
    return SpectrumTable(
        tuple(nu for nu, _ in rows), exact, tuple(float(v) for v in numeric), residuals
    )
