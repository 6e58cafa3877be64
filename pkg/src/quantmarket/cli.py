"""Command line front end.

    quantmarket simulate [--config run.json] [--q 10] [--times 0,1800] ...
    quantmarket gaussian --q 10 --alpha 0.2 [--output g.csv] [--svg]
    quantmarket spectrum T --q 10 [--output t.csv]
    quantmarket check-ruzzi --q 10 --alpha 0.2

Exit codes: 0 success, 2 invalid input, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import runner
from .dynamics import EvolutionParams, Potential, hamiltonian_at, METHODS
from .errors import InvalidArgumentError, NumericConsistencyError
from .gaussian import check_ruzzi
from .lattice import Grid, fmt
from .operators import eigendecompose, price, rate_of_return, trend

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3
OPERATORS = ("R", "T", "price", "H-at-t")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _times(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --times list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quantmarket", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="evolve gamma_alpha under the information Hamiltonian")
    s.add_argument("--config", type=Path, help="JSON file with RunConfig fields")
    # None means "not given" so config-file values survive
    s.add_argument("--q", type=int)
    s.add_argument("--alpha", type=float)
    s.add_argument("--mu", type=float)
    s.add_argument("--beta", type=float)
    s.add_argument("--omega", type=float)
    s.add_argument("--dt", type=float)
    s.add_argument("--times", type=_times, help="comma separated sample times in seconds")
    s.add_argument("--method", choices=METHODS)
    s.add_argument("--price-base", dest="price_base", type=float)
    s.add_argument("--output-dir", dest="output_dir")
    s.add_argument("--svg", dest="emit_svg", action="store_const", const=True)

    g = sub.add_parser("gaussian", help="tabulate the finite Gaussian g_alpha / gamma_alpha")
    g.add_argument("--q", type=int, default=10)
    g.add_argument("--alpha", type=float, default=0.2)
    g.add_argument("--output", type=Path, help="CSV path (default stdout)")
    g.add_argument("--svg", type=Path, help="also write a bar chart of gamma_alpha here")

    m = sub.add_parser("spectrum", help="dump an operator matrix as CSV")
    m.add_argument("operator", choices=OPERATORS)
    m.add_argument("--q", type=int, default=10)
    m.add_argument("--price-base", "--p0", dest="price_base", type=float)
    m.add_argument("--mu", type=float)
    m.add_argument("--beta", type=float)
    m.add_argument("--omega", type=float)
    m.add_argument("--t", type=float)
    m.add_argument("--output", type=Path, help="CSV path (default stdout)")

    r = sub.add_parser("check-ruzzi", help="max deviation of F[g_a] from g_(1/a)/sqrt(a)")
    r.add_argument("--q", type=int, default=10)
    r.add_argument("--alpha", type=float, default=0.2)
    return p


def _emit(text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def resolve_config(args) -> runner.RunConfig:
    data = {}
    if args.config is not None:
        try:
            data = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidArgumentError(f"cannot read config {args.config}: {exc}")
        if not isinstance(data, dict):
            raise InvalidArgumentError("config must be a JSON object")
    for name in ("q", "alpha", "mu", "beta", "omega", "dt", "times", "method",
                 "price_base", "output_dir", "emit_svg"):
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    return runner.RunConfig.from_dict(data)


def cmd_simulate(args) -> int:
    config = resolve_config(args)
    result = runner.simulate(config)
    out = runner.write_run(result)
    for row in result.summary:
        print(f"t={fmt(row['t'])}s argmax_n={row['argmax_n']} "
              f"<R>={row['expected_return']:+.6f}")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_gaussian(args) -> int:
    grid = Grid(args.q)
    _emit(runner.gaussian_csv(args.alpha, grid), args.output)
    if args.svg is not None:
        _emit(runner.gaussian_svg(args.alpha, grid), args.svg)
    return EXIT_OK


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidArgumentError(
            f"operator {args.operator} needs --{', --'.join(n.replace('_', '-') for n in missing)}")


def cmd_spectrum(args) -> int:
    grid = Grid(args.q)
    if args.operator == "R":
        op = rate_of_return(grid)
    elif args.operator == "T":
        op = trend(grid)
    elif args.operator == "price":
        _require(args, "price_base")
        op = price(grid, args.price_base)
    else:
        _require(args, "mu", "beta", "omega", "t")
        params = EvolutionParams(args.mu, args.beta, args.omega)
        pot = Potential.cosine(args.beta, args.omega)
        op = hamiltonian_at(grid, params, pot, args.t)
    eig = None if args.operator == "H-at-t" else eigendecompose(op).eigenvalues
    _emit(runner.matrix_csv(op.matrix, grid, eig), args.output)
    return EXIT_OK


def cmd_check_ruzzi(args) -> int:
    dev = check_ruzzi(args.alpha, Grid(args.q))
    print(f"q={args.q} alpha={args.alpha:g} max_deviation={dev:.3e}")
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "gaussian": cmd_gaussian,
    "spectrum": cmd_spectrum,
    "check-ruzzi": cmd_check_ruzzi,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericConsistencyError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
