"""Command-line front end: spacing statistics, convexity tests and Monte Carlo studies.

Subcommands:
    stat      spacing statistics of a CSV sample (hull as support)
    test      semi-parametric or nonparametric convexity test of a CSV sample
    simulate  draw a seeded sample from a benchmark shape, emit CSV
    power     rejection rates over a shape × n grid (presets reproduce the power tables)
    limit     law of U on a known support against the Gumbel limit

Exit codes: 0 ok, 2 input or configuration error, 3 numerical or geometric failure.
"""

import argparse
import dataclasses
import logging
import math
import re
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from src.inference.convexity import test_nonparametric, test_semi_parametric
from src.inference.spacing import semi_parametric_statistic
from src.models.errors import MaxSpacingError
from src.models.parameters import BandwidthSpec, KernelSpec, NoiseSpec
from src.models.shapes import DiskShape, RectangleShape, ShapeSpec, SquareMinusTriangle, SShape
from src.models.study import StudyConfig
from src.sampling.generators import draw_sample
from src.sampling.rng import SeededRng, resolve_seed
from src.solvers.monte_carlo import run_limit_study, run_power_study
from src.utils.export import dumps_csv, dumps_json, export_csv, export_json
from src.utils.io import read_points_csv, write_points_csv

logger = logging.getLogger(__name__)

_ANGLE = re.compile(r"^\s*(?:([0-9]*\.?[0-9]+)\s*\*?\s*)?pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$")

PRESETS = {
    "table1": lambda: StudyConfig.table1(),
    "table1_pi6": lambda: StudyConfig.table1(phi=math.pi / 6),
    "table1_pi8": lambda: StudyConfig.table1(phi=math.pi / 8),
    "table2": StudyConfig.table2,
    "table3": StudyConfig.table3,
    "level_disk": StudyConfig.level_disk,
}


def parse_angle(text: str) -> float:
    """Angle in radians from a float or an expression like ``pi/4`` or ``3*pi/8``."""
    match = _ANGLE.match(text.lower())
    if match:
        factor = float(match.group(1)) if match.group(1) else 1.0
        divisor = float(match.group(2)) if match.group(2) else 1.0
        return factor * math.pi / divisor
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid angle '{text}' (use a number or e.g. pi/4)")


def _noise(args: argparse.Namespace) -> NoiseSpec:
    return NoiseSpec.uniform() if args.noise == "uniform" else NoiseSpec.truncated_normal()


def _shapes(args: argparse.Namespace) -> List[ShapeSpec]:
    if args.shape == "square_minus_triangle":
        return [SquareMinusTriangle(phi=phi) for phi in args.phi]
    if args.shape == "s_shape":
        return [SShape(R=R, noise=_noise(args), reflection=args.reflection) for R in args.R]
    if args.shape == "disk":
        return [DiskShape()]
    return [RectangleShape()]


def _emit(result, args: argparse.Namespace) -> None:
    if args.output is not None:
        if args.out == "csv":
            export_csv(result, args.output)
        else:
            export_json(result, args.output)
        logger.info(f"✓ Results written to {args.output}")
        return
    sys.stdout.write(dumps_csv(result) if args.out == "csv" else dumps_json(result) + "\n")


def _summary(args: argparse.Namespace, text: str) -> None:
    if not args.quiet:
        print(text, file=sys.stderr)


def _progress(args: argparse.Namespace) -> bool:
    return not args.quiet and sys.stderr.isatty()


def _read(args: argparse.Namespace):
    return read_points_csv(sys.stdin if args.input == "-" else Path(args.input))


def cmd_stat(args: argparse.Namespace) -> int:
    stats = semi_parametric_statistic(_read(args), gamma_level=args.gamma)
    w = stats.witness
    _summary(
        args,
        f"n={stats.params.n}  R={stats.R:.6g}  Δ={stats.Delta:.6g}  V={stats.V:.6g}  "
        f"U={stats.U:.6g}  hull area={stats.support_area:.6g}  "
        f"witness=({w.center[0]:.6g}, {w.center[1]:.6g}; r={w.radius:.6g})",
    )
    _emit(stats, args)
    return 0


def cmd_test(args: argparse.Namespace) -> int:
    sample = _read(args)
    if args.method == "semi":
        result = test_semi_parametric(sample, gamma_level=args.gamma)
    else:
        result = test_nonparametric(
            sample,
            gamma_level=args.gamma,
            k=KernelSpec(kind=args.kernel),
            bw=BandwidthSpec.scaled(args.h0),
        )
    verdict = "REJECT convexity" if result.reject else "do not reject convexity"
    _summary(
        args,
        f"{result.method}: statistic={result.statistic:.6g}  c={result.critical:.6g}  "
        f"U={result.u_value:.4f}  p={result.p_value:.4g}  → {verdict} at γ={result.gamma_level}"
        f"\n({result.level_note})",
    )
    _emit(result, args)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    seed = resolve_seed(args.seed)
    shape = _shapes(args)[0]
    sample = draw_sample(shape, args.n, SeededRng(seed))
    _summary(args, f"Drew n={sample.n} points from {shape.label} (seed={seed})")
    write_points_csv(sample, args.output if args.output is not None else sys.stdout)
    return 0


def _study_overrides(cfg: StudyConfig, args: argparse.Namespace, seed: int) -> StudyConfig:
    changes = {"seed": seed, "workers": args.workers}
    if args.reps is not None:
        changes["replications"] = args.reps
    return dataclasses.replace(cfg, **changes)


def cmd_power(args: argparse.Namespace) -> int:
    seed = resolve_seed(args.seed)
    if args.preset is not None:
        cfg = _study_overrides(PRESETS[args.preset](), args, seed)
    else:
        shapes = tuple(_shapes(args))
        cfg = StudyConfig(
            kind="level" if all(s.is_convex for s in shapes) else "power",
            shapes=shapes,
            n_grid=tuple(args.n),
            replications=args.reps if args.reps is not None else 100,
            gamma_level=args.gamma,
            methods=tuple(args.method),
            kernel=KernelSpec(kind=args.kernel),
            bandwidth=BandwidthSpec.scaled(args.h0),
            seed=seed,
            workers=args.workers,
        )
    table = run_power_study(cfg, progress=_progress(args))
    _summary(args, table.rows.to_string(index=False))
    _emit(table, args)
    return 0


def cmd_limit(args: argparse.Namespace) -> int:
    seed = resolve_seed(args.seed)
    shape = DiskShape() if args.shape == "disk" else RectangleShape()
    cfg = StudyConfig(
        kind="limit",
        shapes=(shape,),
        n_grid=(args.n[0],),
        replications=args.reps if args.reps is not None else 1000,
        seed=seed,
        workers=args.workers,
    )
    report = run_limit_study(cfg, progress=_progress(args))
    _summary(
        args,
        f"{report.shape}, n={report.n}, B={len(report.u_values)}: KS distance={report.ks_distance:.4f} "
        f"(p={report.ks_pvalue:.3g}), band median={report.band_median:.3f}, "
        f"fraction in [{report.d - 1}, {report.d + 1}]={report.band_fraction:.3f}",
    )
    _emit(report, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxspace", description="Maximal-spacing statistics and support-convexity tests"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=["json", "csv"], default="json")
    common.add_argument("--output", type=Path, default=None, help="Write to this file instead of stdout")
    common.add_argument("--quiet", action="store_true", help="No summary or progress on stderr")
    common.add_argument("--verbose", action="store_true", help="INFO logging on stderr")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--input", required=True, help="CSV of x,y points ('-' for stdin)")
    data.add_argument("--gamma", type=float, default=0.05, help="Test level γ ∈ (0, 1)")

    density = argparse.ArgumentParser(add_help=False)
    density.add_argument("--kernel", choices=["gaussian", "uniform"], default="gaussian")
    density.add_argument("--h0", type=float, default=1.0, help="Bandwidth scale h0 (h = h0·σ̂·n^(-1/6))")

    shape = argparse.ArgumentParser(add_help=False)
    shape.add_argument(
        "--shape", choices=["square_minus_triangle", "s_shape", "disk", "square"], default="s_shape"
    )
    shape.add_argument("--R", type=float, nargs="+", default=[1.5], help="S-shape radius (inf allowed)")
    shape.add_argument(
        "--phi", type=parse_angle, nargs="+", default=[math.pi / 4], help="Apex angle, e.g. pi/4"
    )
    shape.add_argument("--noise", choices=["uniform", "tnormal"], default="uniform")
    shape.add_argument(
        "--reflection", choices=["point", "y_axis"], default="point", help="S-shape lower-arc reflection"
    )

    study = argparse.ArgumentParser(add_help=False)
    study.add_argument("--reps", type=int, default=None, help="Replications B")
    study.add_argument("--seed", type=int, default=None, help="Master seed (default $MAXSPACE_SEED or 42)")
    study.add_argument("--workers", type=int, default=1)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stat", parents=[common, data], help="Spacing statistics of a sample")
    p.set_defaults(func=cmd_stat)

    p = sub.add_parser("test", parents=[common, data, density], help="Convexity test of a sample")
    p.add_argument("--method", choices=["semi", "np"], default="semi")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("simulate", parents=[common, shape], help="Draw a sample, emit CSV")
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("power", parents=[common, shape, density, study], help="Power or level study")
    p.add_argument("--preset", choices=sorted(PRESETS), default=None)
    p.add_argument("--n", type=int, nargs="+", default=[100, 250])
    p.add_argument("--method", choices=["semi", "np"], nargs="+", default=["np", "semi"])
    p.add_argument("--gamma", type=float, default=0.05)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("limit", parents=[common, study], help="Gumbel limit study on a known support")
    p.add_argument("--shape", choices=["disk", "square"], default="disk")
    p.add_argument("--n", type=int, nargs=1, default=[2000])
    p.set_defaults(func=cmd_limit)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    level = logging.INFO if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except MaxSpacingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
