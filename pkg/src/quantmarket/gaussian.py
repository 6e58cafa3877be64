"""Equilibrium return distribution: the periodized (theta-function) Gaussian.

    g_alpha(n/100) = sum_m exp(-alpha pi (m d + n)^2 / d)

The series is summed outward from m = 0 and cut once the next term on both
sides drops below ``tol`` relative to the running sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .lattice import Grid, State, dft_forward, normalize

DEFAULT_TOL = 1e-16
MAX_TERMS = 1_000_000


@dataclass(frozen=True)
class GaussianSpec:
    alpha: float
    grid: Grid
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        _check_alpha(self.alpha)
        if not self.tol > 0:
            raise InvalidArgumentError(f"tol must be positive, got {self.tol!r}")


def _check_alpha(alpha):
    if not (isinstance(alpha, (int, float, np.floating, np.integer)) and alpha > 0
            and math.isfinite(alpha)):
        raise InvalidArgumentError(f"alpha must be a positive real, got {alpha!r}")


def _term(alpha, d, n, m):
    return math.exp(-alpha * math.pi * (m * d + n) ** 2 / d)


def theta_sum(alpha: float, d: int, n: int, tol: float = DEFAULT_TOL) -> tuple[float, int]:
    """Truncated lattice sum and the cutoff M used (terms |m| <= M)."""
    total = _term(alpha, d, n, 0)
    m = 0
    while True:
        up, down = _term(alpha, d, n, m + 1), _term(alpha, d, n, -(m + 1))
        # |n| < d/2, so both tails decrease monotonically in |m|.
        if up <= tol * total and down <= tol * total:
            return total, m
        total += up + down
        m += 1
        if m > MAX_TERMS:
            raise InvalidArgumentError(f"theta series for alpha={alpha} did not converge")


def g_alpha(spec: GaussianSpec, n: int) -> float:
    spec.grid.offset(n)
    # evaluate at |n| so g(n) == g(-n) bit for bit
    return theta_sum(spec.alpha, spec.grid.d, abs(n), spec.tol)[0]


def g_vector(alpha: float, grid: Grid, tol: float = DEFAULT_TOL) -> np.ndarray:
    spec = GaussianSpec(alpha, grid, tol)
    return np.array([g_alpha(spec, int(n)) for n in grid.indices])


def gaussian_state(spec: GaussianSpec) -> State:
    """gamma_alpha: the normalized finite Gaussian."""
    return normalize(State(spec.grid, g_vector(spec.alpha, spec.grid, spec.tol)))


def check_ruzzi(alpha: float, grid: Grid, tol: float = DEFAULT_TOL) -> float:
    """max_k |F[g_alpha](k) - g_{1/alpha}(k) / sqrt(alpha)|.

    The finite Gaussian family is closed under the finite Fourier transform;
    a correct lattice sum and DFT give a deviation at rounding level.
    """
    _check_alpha(alpha)
    lhs = dft_forward(State(grid, g_vector(alpha, grid, tol))).amplitudes
    rhs = g_vector(1.0 / alpha, grid, tol) / math.sqrt(alpha)
    return float(np.max(np.abs(lhs - rhs)))
