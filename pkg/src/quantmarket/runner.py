"""End-to-end runs: configuration, simulation, CSV/SVG/JSON artifacts."""
from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dynamics import (EvolutionParams, Potential, Trajectory, integrate_tdse,
                       most_probable_return, _step_counts)
from .errors import InvalidArgumentError
from .gaussian import GaussianSpec, g_vector, gaussian_state
from .lattice import Grid, fmt
from .operators import expectation, price, rate_of_return
from .svg import bar_chart

FIGURE_TIMES = (0.0, 1800.0, 3600.0, 7200.0, 14400.0, 28800.0)


@dataclass
class RunConfig:
    q: int = 10
    alpha: float = 0.2
    mu: float = 1.0
    beta: float = 0.1
    omega: float = 1e-4
    dt: float = 1.0
    times: list[float] = field(default_factory=lambda: list(FIGURE_TIMES))
    price_base: float | None = None
    method: str = "unitary-midpoint"
    output_dir: str = "run"
    emit_svg: bool = False

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise InvalidArgumentError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    def validate(self) -> tuple[Grid, EvolutionParams]:
        """Check every field and return the grid and evolution parameters."""
        if isinstance(self.q, bool) or not isinstance(self.q, int):
            raise InvalidArgumentError(f"q must be an integer, got {self.q!r}")
        grid = Grid(self.q)
        GaussianSpec(self.alpha, grid)
        params = EvolutionParams(self.mu, self.beta, self.omega, self.dt, self.method)
        if self.price_base is not None and not (math.isfinite(self.price_base)
                                                and self.price_base > 0):
            raise InvalidArgumentError(f"price_base must be positive, got {self.price_base!r}")
        times = sorted(float(t) for t in self.times)
        if len(set(times)) != len(times):
            raise InvalidArgumentError("times contain duplicates")
        _step_counts(times, self.dt)
        return grid, params

    def sample_times(self) -> list[float]:
        times = sorted(float(t) for t in self.times)
        return times if times[0] == 0 else [0.0] + times

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True) + "\n"


@dataclass
class RunResult:
    config: RunConfig
    grid: Grid
    trajectory: Trajectory
    summary: list[dict]


def simulate(config: RunConfig) -> RunResult:
    grid, params = config.validate()
    psi0 = gaussian_state(GaussianSpec(config.alpha, grid))
    traj = integrate_tdse(grid, params, Potential.from_params(params), psi0,
                          config.sample_times())
    r_op = rate_of_return(grid)
    p_op = price(grid, config.price_base) if config.price_base is not None else None
    summary = []
    for t, state, drift in zip(traj.times, traj.states, traj.sample_drifts):
        top, tied = most_probable_return(state)
        summary.append({
            "t": float(t),
            "argmax_n": top,
            "tied_n": tied,
            "expected_return": expectation(r_op, state),
            "expected_price": expectation(p_op, state) if p_op is not None else None,
            "norm_drift": float(drift),
        })
    return RunResult(config, grid, traj, summary)


def trajectory_csv(result: RunResult) -> str:
    lines = ["t,n,return,prob"]
    probs = result.trajectory.probabilities()
    for t, row in zip(result.trajectory.times, probs):
        for n, p in zip(result.grid.indices, row):
            lines.append(f"{fmt(t)},{n},{fmt(n / 100)},{fmt(p)}")
    return "\n".join(lines) + "\n"


def summary_csv(result: RunResult) -> str:
    lines = ["t,argmax_n,tied_n,expected_return,expected_price,norm_drift"]
    for row in result.summary:
        price_col = "" if row["expected_price"] is None else fmt(row["expected_price"])
        lines.append(",".join([
            fmt(row["t"]), str(row["argmax_n"]), ";".join(map(str, row["tied_n"])),
            fmt(row["expected_return"]), price_col, fmt(row["norm_drift"]),
        ]))
    return "\n".join(lines) + "\n"


def _write(path: Path, text: str):
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def write_run(result: RunResult) -> Path:
    out = Path(result.config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "trajectory.csv", trajectory_csv(result))
    _write(out / "summary.csv", summary_csv(result))
    _write(out / "run.json", result.config.to_json())
    if result.config.emit_svg:
        probs = result.trajectory.probabilities()
        for t, row in zip(result.trajectory.times, probs):
            svg = bar_chart(result.grid.indices, row, f"t = {fmt(t)} s", "|Phi(x,t)|^2")
            _write(out / f"prob_t{fmt(t)}.svg", svg)
    return out


def gaussian_csv(alpha: float, grid: Grid) -> str:
    g = g_vector(alpha, grid)
    gamma = gaussian_state(GaussianSpec(alpha, grid)).amplitudes.real
    lines = ["n,g,gamma,gamma_sq"]
    for n, gi, ci in zip(grid.indices, g, gamma):
        lines.append(f"{n},{fmt(gi)},{fmt(ci)},{fmt(ci * ci)}")
    return "\n".join(lines) + "\n"


def gaussian_svg(alpha: float, grid: Grid) -> str:
    gamma = gaussian_state(GaussianSpec(alpha, grid)).amplitudes.real
    return bar_chart(grid.indices, gamma, f"gamma_{alpha:g}, q = {grid.q}", f"gamma_{alpha:g}(x)")


def matrix_csv(matrix: np.ndarray, grid: Grid, eigenvalues=None) -> str:
    lines = ["n,m,re,im"]
    for i, n in enumerate(grid.indices):
        for j, m in enumerate(grid.indices):
            z = matrix[i, j]
            lines.append(f"{n},{m},{fmt(z.real)},{fmt(z.imag)}")
    if eigenvalues is not None:
        lines.append("# eigenvalues: " + " ".join(fmt(w) for w in eigenvalues))
    return "\n".join(lines) + "\n"
