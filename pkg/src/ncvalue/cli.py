"""Command-line front end.

Exit codes: 0 pass, 1 identity breach, 2 parse error, 3 dimension/chart
error, 4 singular operator, 5 inconsistent data, 6 not Hermitian.
"""

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import jsonio
from .conformance import DEFAULT_DIMS, run_conformance
from .errors import DimensionMismatch, NCValueError, ParseError
from .evaluation import moments, reconstruct_from_symdata, sample_moments
from .hilbert import StateVector, normalize_ray, random_state
from .kahler import Chart
from .operators import BUILDERS, build
from .symdata import symdata

EXIT_OK = 0
EXIT_BREACH = 1
EXIT_PARSE = 2


@dataclass(frozen=True)
class RunConfig:
    dim: int = 4
    hbar: float = 1.0
    chart: Chart = Chart.z
    seed: int = 0
    trials: int = 200
    tolerance: float = 1e-10
    max_dim: int = 64
    output_path: str = None

    def __post_init__(self):
        if self.dim < 2:
            raise ParseError(f"--dim must be >= 2, got {self.dim}")
        if self.trials < 1:
            raise ParseError(f"--trials must be >= 1, got {self.trials}")
        if not 0 < self.tolerance <= 1e-4:
            raise ParseError(f"--tolerance must lie in (0, 1e-4], got {self.tolerance}")
        if not self.hbar > 0:
            raise ParseError(f"--hbar must be positive, got {self.hbar}")
        if self.seed < 0:
            raise ParseError(f"--seed must be non-negative, got {self.seed}")
        if self.dim > self.max_dim:
            raise DimensionMismatch(f"--dim {self.dim} exceeds --max-dim {self.max_dim}")

    @classmethod
    def from_args(cls, args):
        return cls(
            dim=args.dim,
            hbar=args.hbar,
            chart=Chart.parse(args.chart),
            seed=args.seed,
            trials=args.trials,
            tolerance=args.tolerance,
            max_dim=args.max_dim,
            output_path=args.out,
        )


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=4, help="truncation dimension (default 4)")
    common.add_argument("--hbar", type=float, default=1.0)
    common.add_argument("--chart", choices=[c.value for c in Chart], default="z")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=200)
    common.add_argument("--tolerance", type=float, default=1e-10)
    common.add_argument("--max-dim", type=int, default=64)
    common.add_argument("--out", help="output file (default: standard output)")
    return common


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="ncvalue", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symdata", parents=[common], help="symmetry data of an operator at a state")
    p.add_argument("--op", required=True, help=f"builder name {sorted(BUILDERS)} or operator JSON file")
    p.add_argument("--state", help="state JSON file (default: seeded random state of --dim)")
    p.set_defaults(func=cmd_symdata)

    p = sub.add_parser("conformance", parents=[common], help="product-law conformance sweep")
    p.add_argument(
        "--dims",
        default=",".join(map(str, DEFAULT_DIMS)),
        help="comma-separated dimensions (default %(default)s)",
    )
    p.add_argument("--perturb-K", type=float, default=0.0, help="relative fault injected into K")
    p.set_defaults(func=cmd_conformance)

    p = sub.add_parser("reconstruct", parents=[common], help="recover a state from H-chart data")
    p.add_argument("--op", required=True)
    p.add_argument("--symdata", required=True, help="H-chart symmetry data JSON file")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("moments", parents=[common], help="exact vs spectral moments")
    p.add_argument("--op", required=True)
    p.add_argument("--state", help="state JSON file (default: seeded random state of --dim)")
    p.add_argument("--K", "--order", dest="order", type=int, default=6, help="moment order (<= 12)")
    p.add_argument("--shots", type=int, default=0, help="also report finite-shot sample moments")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("state", parents=[common], help="write a state JSON file")
    p.add_argument("--basis", type=int, help="basis index k (default: seeded random state)")
    p.add_argument("--normalize", action="store_true", help="phase-fix and scale to |z|^2 = 2 hbar")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("operator", parents=[common], help="write an operator JSON file")
    p.add_argument("--op", required=True, choices=sorted(BUILDERS))
    p.set_defaults(func=cmd_operator)
    return parser


def _load_state(path, config):
    if path is None:
        return random_state(config.dim, config.hbar, np.random.default_rng(config.seed))
    return jsonio.state_from_json(jsonio.load(path))


def _load_operator(spec, dim, config):
    if spec in BUILDERS:
        return build(spec, dim, config.hbar)
    if spec.endswith(".json") or os.path.exists(spec):
        beta = jsonio.observable_from_json(jsonio.load(spec))
        if beta.dim > config.max_dim:
            raise DimensionMismatch(f"operator dim {beta.dim} exceeds --max-dim {config.max_dim}")
        return beta
    raise ParseError(f"unknown operator {spec!r}: not a builder name or JSON file")


def _emit(obj, config):
    text = jsonio.write(obj, config.output_path)
    if config.output_path is None:
        sys.stdout.write(text)


def cmd_symdata(args, config):
    state = _load_state(args.state, config)
    beta = _load_operator(args.op, state.dim, config)
    if beta.dim != state.dim:
        raise DimensionMismatch(f"operator dim {beta.dim} != state dim {state.dim}")
    _emit(jsonio.symdata_to_json(symdata(beta, state, config.chart)), config)
    return EXIT_OK


def cmd_conformance(args, config):
    try:
        dims = [int(d) for d in args.dims.split(",") if d.strip()]
    except ValueError:
        raise ParseError(f"--dims must be comma-separated integers, got {args.dims!r}") from None
    if not dims or min(dims) < 2:
        raise ParseError("--dims must list dimensions >= 2")
    if max(dims) > config.max_dim:
        raise DimensionMismatch(f"--dims entry exceeds --max-dim {config.max_dim}")
    report = run_conformance(
        dims=dims,
        trials=config.trials,
        seed=config.seed,
        hbar=config.hbar,
        tolerance=config.tolerance,
        perturb_K=args.perturb_K,
    )
    _emit(report, config)
    if not report["passed"]:
        print(f"identity breach: {', '.join(report['breaches'])}", file=sys.stderr)
        return EXIT_BREACH
    return EXIT_OK


def cmd_reconstruct(args, config):
    sd = jsonio.symdata_from_json(jsonio.load(args.symdata))
    beta = _load_operator(args.op, sd.dim_data, config)
    state, residual = reconstruct_from_symdata(beta, sd, return_residual=True)
    out = jsonio.state_to_json(state)
    out["residual"] = residual
    _emit(out, config)
    return EXIT_OK


def cmd_moments(args, config):
    state = _load_state(args.state, config)
    beta = _load_operator(args.op, state.dim, config)
    report = moments(beta, state, args.order, observable_id=args.op)
    sampled = None
    if args.shots:
        sampled = sample_moments(report, args.shots, np.random.default_rng(config.seed))
    _emit(jsonio.moment_report_to_json(report, sampled), config)
    if report.discrepancy(config.tolerance) > config.tolerance:
        print("moment columns disagree beyond tolerance", file=sys.stderr)
        return EXIT_BREACH
    return EXIT_OK


def cmd_state(args, config):
    if args.basis is not None:
        if not 0 <= args.basis < config.dim:
            raise DimensionMismatch(f"--basis {args.basis} outside 0..{config.dim - 1}")
        state = StateVector.basis(config.dim, args.basis, config.hbar)
    else:
        state = random_state(config.dim, config.hbar, np.random.default_rng(config.seed))
    if args.normalize:
        state = normalize_ray(state)
    _emit(jsonio.state_to_json(state), config)
    return EXIT_OK


def cmd_operator(args, config):
    _emit(jsonio.observable_to_json(build(args.op, config.dim, config.hbar)), config)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig.from_args(args)
        return args.func(args, config)
    except NCValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, TypeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
