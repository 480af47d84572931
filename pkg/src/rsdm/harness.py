"""Benchmark runner: replicate runs, per-generation medians, CSV and summary output.

Example::

    rsdm --function F9 --variants MEP,MEP+RS+DM --replicates 10 --seed 42 --out results/
"""

from __future__ import annotations

import argparse
import logging
import os
import statistics
import sys
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import objectives
from .core import VARIANT_NAMES, ConfigurationError, EvaluationError, VariantConfig
from .evolution import ConvergenceCurve, RunConfig, run

log = logging.getLogger(__name__)

RUN_OVERRIDES = (
    "survivors",
    "progeny_per_survivor",
    "max_generations",
    "convergence_threshold",
    "sigma0_fraction",
)


class UsageError(ValueError):
    """Bad arguments to a harness operation or the CLI."""


def median(values: Sequence[float]) -> float:
    """Median; an even count averages the two central values."""
    if len(values) == 0:
        raise UsageError("median of an empty sequence")
    return statistics.median(values)


@dataclass(frozen=True)
class ExperimentSpec:
    function: str
    variants: Tuple[str, ...] = VARIANT_NAMES
    replicates: int = 10
    base_seed: int = 0
    overrides: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.replicates < 1:
            raise UsageError("replicates must be >= 1")
        if not self.variants:
            raise UsageError("at least one variant is required")
        for v in self.variants:
            if v not in VARIANT_NAMES:
                raise UsageError(f"unknown variant {v!r}; valid: {', '.join(VARIANT_NAMES)}")
        unknown = set(self.overrides) - set(RUN_OVERRIDES)
        if unknown:
            raise UsageError(f"unknown run settings: {sorted(unknown)}")

    def run_config(self, variant: str, replicate: int) -> RunConfig:
        return RunConfig(
            objective=objectives.get(self.function),
            variant=VariantConfig.from_name(variant),
            seed=self.base_seed + replicate,
            **self.overrides,
        )


@dataclass
class MedianCurve:
    """Per-generation median best fitness of one variant, plus its runs."""

    variant: str
    values: List[float]
    runs: List[ConvergenceCurve]

    @property
    def final(self) -> float:
        return self.values[-1]

    def generations_to(self, level: float) -> Optional[int]:
        return next((g for g, v in enumerate(self.values) if v <= level), None)


def _padded(series: List[float], length: int) -> List[float]:
    # runs that stopped early keep their last value
    return series + [series[-1]] * (length - len(series))


def aggregate(variant: str, runs: List[ConvergenceCurve], attr: str = "best_fitness") -> MedianCurve:
    """Median across runs at every generation, carrying short runs forward."""
    series = [getattr(r, attr) for r in runs]
    length = max(len(s) for s in series)
    padded = [_padded(s, length) for s in series]
    values = [median([s[g] for s in padded]) for g in range(length)]
    return MedianCurve(variant, values, runs)


def run_experiment(spec: ExperimentSpec) -> List[MedianCurve]:
    """Run every variant ``spec.replicates`` times on the same seed list."""
    curves = []
    for variant in spec.variants:
        runs = [run(spec.run_config(variant, r)) for r in range(spec.replicates)]
        log.info("%s %s: median final %.3g", spec.function, variant, runs and
                 median([c.final for c in runs]))
        curves.append(aggregate(variant, runs))
    return curves


def emit_csv(curves: List[MedianCurve], out_dir: str, name: str) -> Tuple[str, str]:
    """Write ``<name>_median.csv`` and ``<name>_runs.csv`` into ``out_dir``.

    Floats are written with ``repr`` so they round-trip exactly.
    """
    if not curves:
        raise UsageError("no curves to write")
    os.makedirs(out_dir, exist_ok=True)
    length = max(len(c.values) for c in curves)
    columns = [_padded(c.values, length) for c in curves]

    median_path = os.path.join(out_dir, f"{name}_median.csv")
    with open(median_path, "w", newline="", encoding="ascii") as fh:
        fh.write("generation," + ",".join(c.variant for c in curves) + "\n")
        for g in range(length):
            fh.write(f"{g}," + ",".join(repr(col[g]) for col in columns) + "\n")

    runs_path = os.path.join(out_dir, f"{name}_runs.csv")
    with open(runs_path, "w", newline="", encoding="ascii") as fh:
        fh.write("variant,replicate,generation,best_fitness\n")
        for c in curves:
            for r, curve in enumerate(c.runs):
                for g, value in enumerate(curve.best_fitness):
                    fh.write(f"{c.variant},{r},{g},{value!r}\n")
    return median_path, runs_path


def _cell(value: Optional[float]) -> str:
    if value is None:
        return "-"
    if value == 0:
        return "0"
    return f"{value:.1e}"


def emit_summary(final_medians: Mapping[Tuple[str, str], float]) -> str:
    """Table of final medians: one row per function, one column per variant."""
    if not final_medians:
        raise UsageError("no results to summarize")
    functions = list(dict.fromkeys(f for f, _ in final_medians))
    seen = {v for _, v in final_medians}
    variants = [v for v in VARIANT_NAMES if v in seen] + sorted(seen - set(VARIANT_NAMES))
    rows = [["Function"] + variants]
    for f in functions:
        rows.append([f] + [_cell(final_medians.get((f, v))) for v in variants])
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows
    )


def _parse_variants(text: str) -> Tuple[str, ...]:
    if text == "all":
        return VARIANT_NAMES
    names = tuple(v.strip() for v in text.split(",") if v.strip())
    bad = [v for v in names if v not in VARIANT_NAMES]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"invalid variant(s) {bad or text!r}; choose from {', '.join(VARIANT_NAMES)} or 'all'"
        )
    return names


def build_parser() -> argparse.ArgumentParser:
    names = [o.name for o in objectives.registry()]
    p = argparse.ArgumentParser(
        prog="rsdm",
        description="Convergence benchmark for meta-evolutionary programming variants.",
    )
    p.add_argument("--function", default="all", choices=names + ["all"],
                   help="test function to run (default: all)")
    p.add_argument("--variants", type=_parse_variants, default=VARIANT_NAMES,
                   help="comma list of " + ", ".join(VARIANT_NAMES) + " or 'all'")
    p.add_argument("--replicates", type=int, default=10)
    p.add_argument("--seed", type=int, default=0, help="base seed; replicate r uses seed+r")
    p.add_argument("--generations", type=int, default=50)
    p.add_argument("--survivors", type=int, default=20)
    p.add_argument("--progeny", type=int, default=9, help="children per survivor")
    p.add_argument("--threshold", type=float, default=1e-8,
                   help="stop once best <= optimum + threshold")
    p.add_argument("--sigma0-fraction", type=float, default=0.1,
                   help="initial rate as a fraction of the mean init-box width")
    p.add_argument("--out", default="results", help="output directory for CSVs")
    p.add_argument("--list-functions", action="store_true",
                   help="list available test functions and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI; returns 0 on success, 2 on usage errors, 1 on runtime errors."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    if args.list_functions:
        for o in objectives.registry():
            print(f"{o.name}\tdim={o.dim}")
        return 0

    overrides = dict(
        max_generations=args.generations,
        survivors=args.survivors,
        progeny_per_survivor=args.progeny,
        convergence_threshold=args.threshold,
        sigma0_fraction=args.sigma0_fraction,
    )
    functions = ([o.name for o in objectives.registry()]
                 if args.function == "all" else [args.function])
    try:
        specs = [ExperimentSpec(f, args.variants, args.replicates, args.seed, overrides)
                 for f in functions]
        for spec in specs:
            for v in spec.variants:
                spec.run_config(v, 0)
    except (UsageError, ConfigurationError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"rsdm: error: {exc}", file=sys.stderr)
        return 2

    finals: Dict[Tuple[str, str], float] = {}
    try:
        for spec in specs:
            curves = run_experiment(spec)
            emit_csv(curves, args.out, spec.function)
            for c in curves:
                finals[(spec.function, c.variant)] = c.final
    except (EvaluationError, OSError) as exc:
        print(f"rsdm: error: {exc}", file=sys.stderr)
        return 1

    print(emit_summary(finals))
    return 0


def main() -> None:
    sys.exit(cli_main())
