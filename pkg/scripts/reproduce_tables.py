#!/usr/bin/env python3
"""Reproduce the power tables, the disk level study and the Gumbel limit study.

Each study is written as CSV and JSON under the output directory
(default ``results/``).

Usage:
    python scripts/reproduce_tables.py
    python scripts/reproduce_tables.py --only table1 table2 --reps 200 --workers 8
"""

import argparse
import dataclasses
import logging
import math
import time
from pathlib import Path

from src.models.study import StudyConfig
from src.sampling.rng import resolve_seed
from src.solvers.monte_carlo import run_limit_study, run_power_study
from src.utils.export import export_csv, export_json

logging.basicConfig(
    level=logging.INFO,
    format='%(message)s'
)
logger = logging.getLogger(__name__)

STUDIES = {
    "table1_pi4": lambda: StudyConfig.table1(phi=math.pi / 4),
    "table1_pi6": lambda: StudyConfig.table1(phi=math.pi / 6),
    "table1_pi8": lambda: StudyConfig.table1(phi=math.pi / 8),
    "table2": StudyConfig.table2,
    "table3": StudyConfig.table3,
    "level_disk": StudyConfig.level_disk,
    "limit_disk": StudyConfig.limit_disk,
}


def print_header(title: str):
    logger.info("")
    logger.info("=" * 80)
    logger.info(title.center(80))
    logger.info("=" * 80)


def _selected(only):
    if not only:
        return list(STUDIES)
    # "table1" selects every apex angle
    return [name for name in STUDIES if any(name == o or name.startswith(o + "_") for o in only)]


def main():
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("--only", nargs="+", default=None, help="Study names or prefixes (e.g. table1)")
    parser.add_argument("--reps", type=int, default=None, help="Override replications B")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--output-dir", type=Path, default=Path("results"))
    args = parser.parse_args()

    seed = resolve_seed(args.seed)
    names = _selected(args.only)
    if not names:
        parser.error(f"no study matches {args.only}; choose from {sorted(STUDIES)}")

    start = time.perf_counter()
    for name in names:
        print_header(name.upper())
        changes = {"seed": seed, "workers": args.workers}
        if args.reps is not None:
            changes["replications"] = args.reps
        cfg = dataclasses.replace(STUDIES[name](), **changes)

        if cfg.kind == "limit":
            result = run_limit_study(cfg)
            logger.info(f"KS distance {result.ks_distance:.4f}, band median {result.band_median:.3f}")
        else:
            result = run_power_study(cfg)
            logger.info("\n" + result.rows.to_string(index=False))

        export_csv(result, args.output_dir / f"{name}.csv")
        export_json(result, args.output_dir / f"{name}.json")
        logger.info(f"✓ Saved {name}.csv and {name}.json to {args.output_dir}/")

    logger.info("")
    logger.info(f"✓ {len(names)} study(ies) finished in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
