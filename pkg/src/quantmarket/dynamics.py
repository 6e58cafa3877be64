"""Time evolution under H(t) = T^2 / (2 mu) + V(R, t).

Two integrators are available. ``unitary-midpoint`` steps with the exact
exponential of the Hamiltonian frozen at the step midpoint and is norm
preserving to rounding. ``rk4`` is classical Runge-Kutta on the linear ODE
and is kept as an independent cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidArgumentError, NormDriftError
from .lattice import Grid, State, normalize, require_normalized
from .operators import Operator, eigendecompose, rate_of_return, trend

METHODS = ("unitary-midpoint", "rk4")
RK4_DRIFT_LIMIT = 1e-4
TIE_TOL = 1e-6
STEP_REL_TOL = 1e-9


@dataclass(frozen=True)
class EvolutionParams:
    mu: float = 1.0
    beta: float = 0.1
    omega: float = 1e-4
    dt: float = 1.0
    method: str = "unitary-midpoint"

    def __post_init__(self):
        for name in ("mu", "omega", "dt"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidArgumentError(f"{name} must be positive, got {value!r}")
        if not math.isfinite(self.beta):
            raise InvalidArgumentError(f"beta must be finite, got {self.beta!r}")
        if self.method not in METHODS:
            raise InvalidArgumentError(f"method must be one of {METHODS}, got {self.method!r}")


@dataclass(frozen=True)
class Potential:
    """Diagonal potential V(r, t) on the return lattice.

    kind is ``none``, ``cosine`` (beta r cos(omega t)) or ``custom`` with
    ``func(r, t)`` returning real values; ``r`` is the array of returns.
    """

    kind: str = "none"
    beta: float = 0.0
    omega: float = 0.0
    func: Callable[[np.ndarray, float], np.ndarray] | None = None

    def __post_init__(self):
        if self.kind not in ("none", "cosine", "custom"):
            raise InvalidArgumentError(f"unknown potential kind {self.kind!r}")
        if self.kind == "custom" and self.func is None:
            raise InvalidArgumentError("custom potential needs func")

    @classmethod
    def cosine(cls, beta: float, omega: float) -> "Potential":
        return cls("cosine", beta=beta, omega=omega)

    @classmethod
    def from_params(cls, params: EvolutionParams) -> "Potential":
        if params.beta == 0:
            return cls()
        return cls.cosine(params.beta, params.omega)

    @property
    def static(self) -> bool:
        return self.kind == "none"

    def diagonal(self, grid: Grid, t: float) -> np.ndarray:
        r = grid.returns
        if self.kind == "none":
            return np.zeros(grid.d)
        if self.kind == "cosine":
            return self.beta * r * math.cos(self.omega * t)
        v = np.asarray(self.func(r, t))
        if np.iscomplexobj(v):
            if np.max(np.abs(v.imag), initial=0.0) > 0:
                raise InvalidArgumentError("potential must be real-valued")
            v = v.real
        return np.broadcast_to(v.astype(float), (grid.d,))


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: list[State] = field(repr=False)
    norm_drift: float
    sample_drifts: np.ndarray = field(repr=False)

    def probabilities(self) -> np.ndarray:
        """(len(times), d) array of |Phi(n/100, t)|^2."""
        return np.array([np.abs(s.amplitudes) ** 2 for s in self.states])

    def at(self, t: float) -> State:
        i = int(np.flatnonzero(np.isclose(self.times, t, rtol=0, atol=1e-9))[0])
        return self.states[i]


def kinetic_matrix(grid: Grid, mu: float) -> np.ndarray:
    t = trend(grid).matrix
    return t @ t / (2.0 * mu)


def hamiltonian_at(grid: Grid, params: EvolutionParams, pot: Potential, t: float) -> Operator:
    h = kinetic_matrix(grid, params.mu) + np.diag(pot.diagonal(grid, t))
    return Operator(grid, h)


def propagator(h: Operator, t: float) -> np.ndarray:
    """exp(-i t H) from the eigendecomposition of H."""
    return eigendecompose(h).function(lambda w: np.exp(-1j * t * w))


def propagate_static(h: Operator, psi0: State, t: float) -> State:
    require_normalized(psi0, "initial state")
    if h.grid != psi0.grid:
        raise InvalidArgumentError("Hamiltonian and state live on different grids")
    es = eigendecompose(h)
    v = es.vectors
    coeffs = v.conj().T @ psi0.amplitudes
    return State(psi0.grid, v @ (np.exp(-1j * t * es.eigenvalues) * coeffs))


def _step_counts(times: Sequence[float], dt: float) -> list[int]:
    times = [float(t) for t in times]
    if not times:
        raise InvalidArgumentError("need at least one sample time")
    if any(t < 0 for t in times):
        raise InvalidArgumentError("sample times must be non-negative")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise InvalidArgumentError("sample times must be strictly increasing")
    counts = []
    for t in times:
        k = round(t / dt)
        if abs(k * dt - t) > STEP_REL_TOL * max(1.0, abs(t)):
            raise InvalidArgumentError(f"sample time {t} is not a multiple of dt={dt}")
        counts.append(int(k))
    return counts


def _midpoint_step(kin, grid, pot, dt):
    def step(psi, t):
        h = kin + np.diag(pot.diagonal(grid, t + dt / 2))
        w, v = np.linalg.eigh(h)
        return v @ (np.exp(-1j * dt * w) * (v.conj().T @ psi))
    return step


def _static_step(kin, dt):
    w, v = np.linalg.eigh(kin)
    u = (v * np.exp(-1j * dt * w)) @ v.conj().T
    return lambda psi, t: u @ psi


def _rk4_step(kin, grid, pot, dt):
    def rhs(psi, t):
        return -1j * (kin @ psi + pot.diagonal(grid, t) * psi)

    def step(psi, t):
        k1 = rhs(psi, t)
        k2 = rhs(psi + 0.5 * dt * k1, t + dt / 2)
        k3 = rhs(psi + 0.5 * dt * k2, t + dt / 2)
        k4 = rhs(psi + dt * k3, t + dt)
        return psi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return step


def integrate_tdse(grid: Grid, params: EvolutionParams, pot: Potential, psi0: State,
                   times: Sequence[float]) -> Trajectory:
    """Solve i dPhi/dt = H(t) Phi from Phi(0) = psi0 and sample at ``times``.

    ``times`` must start at 0 and be integer multiples of ``params.dt``.
    Stored states are renormalized; the raw norm drift is tracked separately
    and rk4 runs raise :class:`NormDriftError` past ``RK4_DRIFT_LIMIT``.
    """
    require_normalized(psi0, "initial state")
    if psi0.grid != grid:
        raise InvalidArgumentError("initial state lives on a different grid")
    counts = _step_counts(times, params.dt)
    if counts[0] != 0:
        raise InvalidArgumentError("sample times must start at 0")

    dt = params.dt
    kin = kinetic_matrix(grid, params.mu)
    if params.method == "rk4":
        step = _rk4_step(kin, grid, pot, dt)
    elif pot.static:
        step = _static_step(kin, dt)
    else:
        step = _midpoint_step(kin, grid, pot, dt)

    psi = psi0.amplitudes.copy()
    states, drifts = [], []
    max_drift = 0.0
    done = 0
    for target in counts:
        while done < target:
            psi = step(psi, done * dt)
            done += 1
            drift = abs(np.linalg.norm(psi) - 1.0)
            max_drift = max(max_drift, drift)
            if params.method == "rk4" and drift > RK4_DRIFT_LIMIT:
                raise NormDriftError(drift, RK4_DRIFT_LIMIT)
        drifts.append(abs(np.linalg.norm(psi) - 1.0))
        states.append(normalize(State(grid, psi)))
    return Trajectory(np.array([c * dt for c in counts]), states, max_drift, np.array(drifts))


def most_probable_return(psi: State, tie_tol: float = TIE_TOL) -> tuple[int, list[int]]:
    """Index n of the largest |psi(n/100)|^2 and every index within ``tie_tol`` of it."""
    require_normalized(psi)
    p = np.abs(psi.amplitudes) ** 2
    top = int(np.argmax(p))
    tied = np.flatnonzero(p >= p[top] - tie_tol)
    n = psi.grid.indices
    return int(n[top]), [int(x) for x in n[tied]]


def top_returns(psi: State, k: int) -> list[int]:
    """The ``k`` most probable lattice indices, most probable first."""
    require_normalized(psi)
    p = np.abs(psi.amplitudes) ** 2
    order = np.argsort(-p, kind="stable")[:k]
    return [int(x) for x in psi.grid.indices[order]]
