"""Return lattice, states on it, and the finite Fourier transform pair.

States are stored in lattice order n = -q..q; ``State.amplitudes[i]`` belongs
to index ``n = i - q`` and return value ``n / 100``.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DimensionMismatchError, InvalidArgumentError, NormalizationError

ZERO_NORM_SQ = 1e-300
NORM_TOL = 1e-10


@dataclass(frozen=True)
class Grid:
    """Admissible daily returns {-q/100, ..., q/100} under a +-q% price limit."""

    q: int

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, (int, np.integer)) or self.q < 1:
            raise InvalidArgumentError(f"q must be a positive integer, got {self.q!r}")
        object.__setattr__(self, "q", int(self.q))

    @property
    def d(self) -> int:
        return 2 * self.q + 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.q, self.q + 1)

    @property
    def returns(self) -> np.ndarray:
        return self.indices / 100.0

    def r(self, n: int) -> float:
        self.offset(n)
        return n / 100.0

    def offset(self, n: int) -> int:
        """Array position of lattice index ``n``."""
        if not -self.q <= n <= self.q:
            raise InvalidArgumentError(f"index {n} outside -{self.q}..{self.q}")
        return n + self.q

    @cached_property
    def dft_matrix(self) -> np.ndarray:
        n = self.indices
        kernel = np.exp(-2j * np.pi * np.outer(n, n) / self.d) / np.sqrt(self.d)
        kernel.setflags(write=False)
        return kernel

    @cached_property
    def idft_matrix(self) -> np.ndarray:
        kernel = self.dft_matrix.conj().T.copy()
        kernel.setflags(write=False)
        return kernel


def make_grid(q: int) -> Grid:
    return Grid(q)


@dataclass(frozen=True, eq=False)
class State:
    """Complex wavefunction over the return lattice."""

    grid: Grid
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.grid.d,):
            raise DimensionMismatchError(
                f"expected {self.grid.d} amplitudes, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise InvalidArgumentError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def __getitem__(self, n: int) -> complex:
        return complex(self.amplitudes[self.grid.offset(n)])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def is_normalized(self) -> bool:
        return abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0) <= NORM_TOL


def delta(grid: Grid, n: int) -> State:
    """Canonical basis state: return exactly n/100."""
    amps = np.zeros(grid.d, dtype=complex)
    amps[grid.offset(n)] = 1.0
    return State(grid, amps)


def trend_basis(grid: Grid, n: int) -> State:
    """Plane wave exp(2 pi i k n / d) / sqrt(d), the trend eigenstate for n/100."""
    grid.offset(n)
    k = grid.indices
    return State(grid, np.exp(2j * np.pi * k * n / grid.d) / np.sqrt(grid.d))


def _check_same_grid(a: State, b: State):
    if a.grid != b.grid:
        raise DimensionMismatchError(f"grids differ: q={a.grid.q} vs q={b.grid.q}")


def inner_product(a: State, b: State) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    _check_same_grid(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def normalize(psi: State) -> State:
    norm_sq = float(np.vdot(psi.amplitudes, psi.amplitudes).real)
    if norm_sq < ZERO_NORM_SQ:
        raise NormalizationError("cannot normalize the zero vector")
    return State(psi.grid, psi.amplitudes / np.sqrt(norm_sq))


def dft_forward(psi: State) -> State:
    return State(psi.grid, psi.grid.dft_matrix @ psi.amplitudes)


def dft_inverse(psi: State) -> State:
    return State(psi.grid, psi.grid.idft_matrix @ psi.amplitudes)


def require_normalized(psi: State, what: str = "state"):
    if not psi.is_normalized:
        raise NormalizationError(f"{what} is not normalized (norm {psi.norm():.12g})")


def probabilities(psi: State) -> np.ndarray:
    """|psi(n/100)|^2 in lattice order."""
    require_normalized(psi)
    return np.abs(psi.amplitudes) ** 2


def state_to_csv(psi: State) -> str:
    buf = io.StringIO()
    buf.write("n,re,im\n")
    for n, a in zip(psi.grid.indices, psi.amplitudes):
        buf.write(f"{n},{fmt(a.real)},{fmt(a.imag)}\n")
    return buf.getvalue()


def state_from_csv(text: str, grid: Grid | None = None) -> State:
    rows = [line.split(",") for line in text.strip().splitlines()[1:] if line.strip()]
    ns = [int(r[0]) for r in rows]
    if grid is None:
        grid = Grid(max(abs(n) for n in ns))
    amps = np.zeros(grid.d, dtype=complex)
    seen = set()
    for n, (_, re, im) in zip(ns, rows):
        amps[grid.offset(n)] = complex(float(re), float(im))
        seen.add(n)
    if len(seen) != grid.d:
        raise DimensionMismatchError(f"CSV has {len(seen)} distinct rows, grid needs {grid.d}")
    return State(grid, amps)


def fmt(x: float) -> str:
    """12 significant digits, no negative zero."""
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s
