"""Hermitian observables on the return lattice: return, trend and price."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (DimensionMismatchError, InvalidArgumentError,
                     NumericConsistencyError)
from .lattice import Grid, State, require_normalized

HERMITIAN_TOL = 1e-10
IMAG_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense Hermitian d x d matrix, rows/cols in lattice order -q..q.

    Inputs whose Hermiticity defect is below ``HERMITIAN_TOL`` are symmetrized;
    anything worse is rejected.
    """

    grid: Grid
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        d = self.grid.d
        if m.shape != (d, d):
            raise DimensionMismatchError(f"expected {d}x{d} matrix, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidArgumentError("matrix entries must be finite")
        defect = hermitian_defect(m)
        if defect > HERMITIAN_TOL:
            raise InvalidArgumentError(f"matrix is not Hermitian (defect {defect:.3e})")
        m = (m + m.conj().T) / 2
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def entry(self, n: int, m: int) -> complex:
        return complex(self.matrix[self.grid.offset(n), self.grid.offset(m)])

    def apply(self, psi: State) -> State:
        _check_grid(self, psi)
        return State(self.grid, self.matrix @ psi.amplitudes)

    def __matmul__(self, other):
        if isinstance(other, State):
            return self.apply(other)
        return NotImplemented


@dataclass(frozen=True, eq=False)
class EigenSystem:
    eigenvalues: np.ndarray
    vectors: np.ndarray = field(repr=False)  # columns are eigenvectors
    grid: Grid

    def eigenvector(self, i: int) -> State:
        return State(self.grid, self.vectors[:, i])

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return (v * self.eigenvalues) @ v.conj().T

    def function(self, f) -> np.ndarray:
        """Matrix f(A) = V diag(f(lambda)) V^dagger."""
        v = self.vectors
        return (v * f(self.eigenvalues)) @ v.conj().T


def hermitian_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def _check_grid(op: Operator, psi: State):
    if op.grid != psi.grid:
        raise DimensionMismatchError(f"operator on q={op.grid.q}, state on q={psi.grid.q}")


def rate_of_return(grid: Grid) -> Operator:
    return Operator(grid, np.diag(grid.returns).astype(complex))


def trend(grid: Grid) -> Operator:
    """Trend of the return, F^-1 R F: conjugate to the return operator."""
    f = grid.dft_matrix
    return Operator(grid, grid.idft_matrix @ np.diag(grid.returns) @ f)


def price(grid: Grid, p0: float) -> Operator:
    """p0 (I + R): price level given the previous close ``p0``."""
    if not p0 > 0:
        raise InvalidArgumentError(f"p0 must be positive, got {p0!r}")
    return Operator(grid, np.diag(p0 * (1.0 + grid.returns)).astype(complex))


def expectation(op: Operator, psi: State) -> float:
    _check_grid(op, psi)
    require_normalized(psi)
    value = np.vdot(psi.amplitudes, op.matrix @ psi.amplitudes)
    if abs(value.imag) > IMAG_TOL:
        raise NumericConsistencyError(f"expectation has imaginary part {value.imag:.3e}")
    return float(value.real)


def eigendecompose(op: Operator) -> EigenSystem:
    w, v = np.linalg.eigh(op.matrix)
    return EigenSystem(w, v, op.grid)
