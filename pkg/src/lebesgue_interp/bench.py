"""Dataset ingestion, experiment orchestration and report emission.

Two experiment modes mirror the evaluation protocol: FIXED_THRESHOLD samples
every signal event-based at one threshold; BUDGET tunes a per-dataset
threshold to a sample budget and scores both the event-based and the
periodic regime ("L "/"R " method prefixes) on the same budget.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .baselines import Reconstruction, interp_linear, interp_nearest, interp_pchip, interp_zoh
from .core import (
    DatasetBundle,
    ReconstructionParams,
    SampledSeries,
    TimeSeries,
    normalize_unit_interval,
    series_equal_length_check,
)
from .errors import InvalidInputError, ParseError, ShapeError
from .metrics import (
    DatasetResult,
    MethodReport,
    MethodScore,
    abruptness,
    aggregate_report,
    rank_methods,
)
from .sampling import SampleBudget, lebesgue_sample, riemann_sample, tune_threshold
from .zelic import reconstruct_zechip, reconstruct_zechipc, reconstruct_zeli, reconstruct_zelic

__all__ = [
    "METHODS",
    "METHOD_LABELS",
    "DatasetBundle",
    "ExperimentMode",
    "ExperimentConfig",
    "load_ucr_dataset",
    "generate_synthetic_corpus",
    "merge_bundles",
    "run_experiment",
    "run_benchmark",
    "emit_report",
    "monte_carlo_convexity_area",
    "worker_count",
]

THREADS_ENV = "LEBESGUE_INTERP_THREADS"

# Reconstructor registry; baselines ignore the params argument.
METHODS: dict[str, Callable[[SampledSeries, ReconstructionParams], Reconstruction]] = {
    "zoh": lambda s, p: interp_zoh(s),
    "linear": lambda s, p: interp_linear(s),
    "nearest": lambda s, p: interp_nearest(s),
    "pchip": lambda s, p: interp_pchip(s),
    "zeli": reconstruct_zeli,
    "zelic": reconstruct_zelic,
    "zechip": reconstruct_zechip,
    "zechipc": reconstruct_zechipc,
}

# Display names used in reports.
METHOD_LABELS = {
    "zoh": "Zero",
    "linear": "Linear",
    "nearest": "Nearest",
    "pchip": "PCHIP",
    "zeli": "ZeLi",
    "zelic": "ZeLiC",
    "zechip": "ZeChip",
    "zechipc": "ZeChipC",
}


class ExperimentMode(Enum):
    FIXED_THRESHOLD = "fixed-threshold"
    BUDGET = "budget"


@dataclass(frozen=True)
class ExperimentConfig:
    """Protocol knobs; the defaults reproduce the reference setup
    (threshold 0.05, budget 15%, tolerance ratio 1.15, distances 3/3/unbounded)."""

    mode: ExperimentMode = ExperimentMode.FIXED_THRESHOLD
    threshold: float = 0.05
    target_fraction: float = 0.15
    tolerance_ratio: float = 1.15
    previous_distance: int = 3
    subsequent_min_distance: int = 3
    subsequent_max_distance: int | None = None
    methods: tuple[str, ...] = tuple(METHODS)
    seed: int = 0

    def __post_init__(self):
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise InvalidInputError(f"unknown methods: {unknown}; choose from {sorted(METHODS)}")
        if not self.methods:
            raise InvalidInputError("at least one method is required")
        if self.mode is ExperimentMode.BUDGET:
            SampleBudget(self.target_fraction)  # validate range

    def make_params(self, threshold: float | None = None) -> ReconstructionParams:
        """Reconstruction parameters bound to the sampling threshold in use."""
        return ReconstructionParams(
            threshold=self.threshold if threshold is None else threshold,
            tolerance_ratio=self.tolerance_ratio,
            previous_distance=self.previous_distance,
            subsequent_min_distance=self.subsequent_min_distance,
            subsequent_max_distance=self.subsequent_max_distance,
        )

    def echo(self) -> dict[str, object]:
        return {
            "mode": self.mode.value,
            "threshold": self.threshold,
            "target_fraction": self.target_fraction,
            "tolerance_ratio": self.tolerance_ratio,
            "previous_distance": self.previous_distance,
            "subsequent_min_distance": self.subsequent_min_distance,
            "subsequent_max_distance": self.subsequent_max_distance,
            "methods": list(self.methods),
            "seed": self.seed,
        }


def worker_count() -> int:
    """Worker cap from the environment; 0 or unset means auto."""
    raw = os.environ.get(THREADS_ENV, "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError as exc:
            raise InvalidInputError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
        if n < 0:
            raise InvalidInputError(f"{THREADS_ENV} must be >= 0, got {n}")
        if n > 0:
            return n
    return min(os.cpu_count() or 1, 8)


def _ordered_map(fn, items: Sequence) -> list:
    """Map preserving input order; result is identical for any worker count."""
    workers = worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# dataset ingestion
# ---------------------------------------------------------------------------


def _parse_rows(
    path: Path, delimiter: str, label_column: int | None, has_header: bool
) -> list[np.ndarray]:
    if not path.exists():
        raise FileNotFoundError(f"dataset file not found: {path}")
    rows: list[np.ndarray] = []
    with path.open("r", newline="") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        for r, fields in enumerate(reader):
            if not fields or (len(fields) == 1 and not fields[0].strip()):
                continue  # skip blank lines
            if has_header and r == 0:
                continue
            if label_column is not None:
                if label_column >= len(fields):
                    raise ShapeError(f"{path}: row {r} too short for label column {label_column}")
                fields = fields[:label_column] + fields[label_column + 1 :]
            try:
                values = np.asarray([float(f) for f in fields], dtype=np.float64)
            except ValueError:
                for c, f in enumerate(fields):
                    try:
                        float(f)
                    except ValueError:
                        raise ParseError(
                            f"{path}: cannot parse {f!r} at row {r}, column {c}", row=r, column=c
                        ) from None
                raise
            rows.append(values)
    return rows


def load_ucr_dataset(
    train_path: str | os.PathLike,
    test_path: str | os.PathLike | None = None,
    *,
    format: str = "tsv",
    name: str | None = None,
    label_column: int | None = 0,
    has_header: bool = False,
) -> DatasetBundle:
    """Load a classification-archive style file pair into one bundle.

    Rows are a label followed by the signal values; labels are discarded
    and train rows come before test rows. TSV fixes tab separation and the
    label in column 0; CSV is comma separated with an optional header and a
    configurable (or absent) label column.
    """
    fmt = format.lower()
    if fmt == "tsv":
        delimiter, label_col, header = "\t", 0, False
    elif fmt == "csv":
        delimiter, label_col, header = ",", label_column, has_header
    else:
        raise InvalidInputError(f"format must be 'tsv' or 'csv', got {format!r}")

    train_path = Path(train_path)
    rows = _parse_rows(train_path, delimiter, label_col, header)
    if test_path is not None:
        rows += _parse_rows(Path(test_path), delimiter, label_col, header)
    if not rows:
        raise InvalidInputError(f"no data rows in {train_path}")

    if name is None:
        stem = train_path.stem
        for suffix in ("_TRAIN", "_TEST", "_train", "_test"):
            if stem.endswith(suffix):
                stem = stem[: -len(suffix)]
                break
        name = stem
    bundle = DatasetBundle(
        name=name,
        signals=tuple(TimeSeries(r) for r in rows),
        provenance=f"{train_path}" + (f" + {test_path}" if test_path else "") + f" ({fmt})",
    )
    return series_equal_length_check(bundle)


# ---------------------------------------------------------------------------
# synthetic corpus
# ---------------------------------------------------------------------------


def _gen_step(rng: np.random.Generator, length: int) -> np.ndarray:
    """Monotone staircase: flat plateaus joined by jumps well above the
    default threshold. Kept monotone so abrupt-change handling is exercised
    without entangling the slope-reversal gate (the triangle family owns
    reversals)."""
    margin = max(2, length // 12)
    positions = np.arange(margin, length - margin)
    n_jumps = min(int(rng.integers(4, 7)), positions.size)
    jumps = rng.uniform(0.12, 0.2, size=n_jumps)
    cuts = np.sort(rng.choice(positions, size=n_jumps, replace=False))
    levels = np.concatenate([[0.0], np.cumsum(jumps)])
    if rng.random() < 0.5:
        levels = levels[::-1]
    out = np.empty(length)
    bounds = [0, *cuts.tolist(), length]
    for seg in range(n_jumps + 1):
        out[bounds[seg] : bounds[seg + 1]] = levels[seg]
    return out


def _gen_ramp(rng: np.random.Generator, length: int) -> np.ndarray:
    """Monotone ramp with a mild curvature so signals are not all identical."""
    x = np.linspace(0.0, 1.0, length)
    p = rng.uniform(0.9, 1.1)
    y = x**p
    return y if rng.random() < 0.5 else 1.0 - y


def _gen_sine(rng: np.random.Generator, length: int) -> np.ndarray:
    cycles = rng.uniform(0.7, 1.15)
    phase = rng.uniform(0.0, 2.0 * np.pi)
    x = np.arange(length, dtype=np.float64)
    return 0.5 + 0.5 * np.sin(2.0 * np.pi * cycles * x / length + phase)


def _gen_triangle(rng: np.random.Generator, length: int) -> np.ndarray:
    """Zigzag of linear segments; slopes are gentle enough that captures a few
    steps apart bracket every vertex, which is the shape the slope-reversal
    knots are designed for."""
    y = np.empty(length)
    pos = 0
    level = rng.uniform(0.2, 0.8)
    direction = 1.0 if rng.random() < 0.5 else -1.0
    y[0] = level
    while pos < length - 1:
        seg = int(rng.integers(50, 91))
        swing = rng.uniform(0.3, 0.6)
        target = level + direction * swing
        if target > 1.0 or target < 0.0:
            direction = -direction
            target = level + direction * swing
        end = min(pos + seg, length - 1)
        y[pos : end + 1] = np.linspace(level, level + direction * swing * (end - pos) / seg, end - pos + 1)
        level = y[end]
        pos = end
        direction = -direction
    return y


def _gen_walk(rng: np.random.Generator, length: int) -> np.ndarray:
    steps = rng.normal(0.0, 0.02, size=length - 1)
    return np.concatenate([[0.0], np.cumsum(steps)])


_FAMILIES: dict[str, Callable[[np.random.Generator, int], np.ndarray]] = {
    "step": _gen_step,
    "ramp": _gen_ramp,
    "sine": _gen_sine,
    "triangle": _gen_triangle,
    "walk": _gen_walk,
}


def generate_synthetic_corpus(
    seed: int,
    counts: Mapping[str, int],
    length: int = 500,
    name: str = "synthetic",
) -> DatasetBundle:
    """Deterministic desk-scale corpus; every signal is normalized to [0, 1].

    ``counts`` maps family names (step, ramp, sine, triangle, walk) to
    signal counts; generation order is the mapping order, so the same seed
    and spec reproduce the bundle bit for bit.
    """
    if length < 16:
        raise InvalidInputError(f"length must be >= 16, got {length}")
    if not counts:
        raise InvalidInputError("counts must name at least one family")
    for family, count in counts.items():
        if family not in _FAMILIES:
            raise InvalidInputError(f"unknown family {family!r}; choose from {sorted(_FAMILIES)}")
        if count < 1:
            raise InvalidInputError(f"count for {family!r} must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    signals: list[TimeSeries] = []
    for family, count in counts.items():
        gen = _FAMILIES[family]
        for _ in range(count):
            signals.append(normalize_unit_interval(TimeSeries(gen(rng, length))))
    spec_str = ",".join(f"{fam}={cnt}" for fam, cnt in counts.items())
    return DatasetBundle(
        name=name,
        signals=tuple(signals),
        provenance=f"synthetic(seed={seed},length={length},{spec_str})",
    )


def merge_bundles(name: str, bundles: Sequence[DatasetBundle]) -> DatasetBundle:
    """Concatenate equal-length bundles into one."""
    if not bundles:
        raise InvalidInputError("no bundles to merge")
    signals = tuple(s for b in bundles for s in b.signals)
    merged = DatasetBundle(
        name=name,
        signals=signals,
        provenance="; ".join(b.provenance for b in bundles),
    )
    return series_equal_length_check(merged)


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------


def _score_sampled(
    signals: Sequence[TimeSeries],
    sampled: Sequence[SampledSeries],
    params: ReconstructionParams,
    methods: Sequence[str],
    prefix: str,
) -> list[MethodScore]:
    from .metrics import rmse  # local import keeps module load light

    def per_signal(job: tuple[int, TimeSeries, SampledSeries]) -> list[float]:
        i, ts, s = job
        spot_check = i % 100 == 0  # 1% of signals: knots must be reproduced exactly
        out = []
        for m in methods:
            rec = METHODS[m](s, params)
            if spot_check and not np.array_equal(rec.values[s.indices], s.values):
                raise AssertionError(
                    f"method {m!r} failed the interpolation condition on signal {i}"
                )
            out.append(rmse(ts, rec))
        return out

    table = _ordered_map(
        per_signal, [(i, ts, s) for i, (ts, s) in enumerate(zip(signals, sampled))]
    )
    scores = []
    for j, m in enumerate(methods):
        label = prefix + METHOD_LABELS[m]
        scores.append(MethodScore.from_rmse(label, [row[j] for row in table]))
    return scores


def run_experiment(bundle: DatasetBundle, config: ExperimentConfig) -> MethodReport:
    """Sample, reconstruct and score one dataset under the configured protocol.

    Fixed-threshold mode samples event-based at ``config.threshold``.
    Budget mode tunes one threshold per dataset, then scores every method
    under both regimes with "L "/"R " name prefixes; the event-aware
    methods reuse the tuned threshold as their band parameter in both.
    """
    series_equal_length_check(bundle)
    normalized = [normalize_unit_interval(ts) for ts in bundle.signals]
    mean_abruptness = (
        float(np.mean([abruptness(ts) for ts in bundle.signals]))
        if len(bundle.signals[0]) >= 2
        else None
    )

    if config.mode is ExperimentMode.FIXED_THRESHOLD:
        params = config.make_params()
        sampled = [lebesgue_sample(ts, config.threshold) for ts in normalized]
        scores = _score_sampled(normalized, sampled, params, config.methods, prefix="")
        achieved = float(np.mean([s.fraction for s in sampled]))
        result = DatasetResult(
            dataset=bundle.name,
            scores=tuple(rank_methods(scores)),
            threshold=config.threshold,
            achieved_fraction=achieved,
            abruptness=mean_abruptness,
        )
        return aggregate_report([result], config=config.echo())

    budget = SampleBudget(config.target_fraction)
    norm_bundle = DatasetBundle(bundle.name, tuple(normalized), bundle.provenance)
    threshold, achieved = tune_threshold(norm_bundle, budget)
    params = config.make_params(threshold)
    leb = [lebesgue_sample(ts, threshold) for ts in normalized]
    rie = [riemann_sample(ts, budget) for ts in normalized]
    scores = _score_sampled(normalized, leb, params, config.methods, prefix="L ")
    scores += _score_sampled(normalized, rie, params, config.methods, prefix="R ")
    result = DatasetResult(
        dataset=bundle.name,
        scores=tuple(rank_methods(scores)),
        threshold=threshold,
        achieved_fraction=achieved,
        abruptness=mean_abruptness,
    )
    return aggregate_report([result], config=config.echo())


def run_benchmark(
    bundles: Sequence[DatasetBundle], config: ExperimentConfig
) -> MethodReport:
    """Run the experiment on several datasets and merge the rankings."""
    reports = [run_experiment(b, config) for b in bundles]
    per_dataset = [d for r in reports for d in r.datasets]
    return aggregate_report(per_dataset, config=config.echo())


# ---------------------------------------------------------------------------
# report emission
# ---------------------------------------------------------------------------


def _fmt(x: float | int | None) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return format(x, ".17g")


def _json_text(obj, indent: int = 0) -> str:
    """JSON with floats at 17 significant digits and insertion-order fields.

    The stdlib encoder prints floats via repr (shortest round trip); this
    fixed-width form keeps the serialized bytes independent of repr details
    while still parsing back to the identical float64.
    """
    pad = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not np.isfinite(x):
            raise InvalidInputError(f"cannot serialize non-finite number {x}")
        return format(x, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        body = ",\n".join(f"{pad}  {_json_text(v, indent + 1)}" for v in obj)
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(
            f"{pad}  {json.dumps(str(k))}: {_json_text(v, indent + 1)}" for k, v in obj.items()
        )
        return "{\n" + body + "\n" + pad + "}"
    raise InvalidInputError(f"cannot serialize {type(obj).__name__} to JSON")


def emit_report(
    report: MethodReport,
    out_dir: str | os.PathLike,
    formats: Iterable[str] = ("csv", "json"),
) -> list[Path]:
    """Write the per-dataset tables, the summary and the long-format CSV.

    Files: ``<dataset>_rmse.csv`` (one per dataset; columns are methods in
    summary order), ``summary.csv``, ``boxplot_long.csv`` and
    ``report.json``. Field order and number formatting (17 significant
    digits) are fixed, so identical reports serialize identically.
    """
    if not report.summary:
        raise InvalidInputError("report has no methods")
    wanted = {f.lower() for f in formats}
    unknown = wanted - {"csv", "json"}
    if unknown:
        raise InvalidInputError(f"unknown formats: {sorted(unknown)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    methods = list(report.method_names)
    written: list[Path] = []

    if "csv" in wanted:
        for d in report.datasets:
            safe = "".join(c if c.isalnum() or c in "-_" else "_" for c in d.dataset)
            path = out / f"{safe}_rmse.csv"
            with path.open("w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["dataset", *methods])
                w.writerow([d.dataset, *(_fmt(d.score_for(m).mean_rmse) for m in methods)])
            written.append(path)

        path = out / "summary.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["method", "mean_rmse", "mean_rank", "wins"])
            for s in report.summary:
                w.writerow([s.method_name, _fmt(s.mean_rmse), _fmt(s.mean_rank), s.wins])
        written.append(path)

        path = out / "boxplot_long.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["dataset", "method", "rmse", "rank"])
            for d in report.datasets:
                for m in methods:
                    sc = d.score_for(m)
                    w.writerow([d.dataset, m, _fmt(sc.mean_rmse), sc.rank_position])
        written.append(path)

    if "json" in wanted:
        payload = {
            "config": dict(report.config) if report.config else None,
            "datasets": [
                {
                    "dataset": d.dataset,
                    "threshold": d.threshold,
                    "achieved_fraction": d.achieved_fraction,
                    "abruptness": d.abruptness,
                    "scores": [
                        {
                            "method": s.method_name,
                            "mean_rmse": s.mean_rmse,
                            "median_rmse": s.median_rmse,
                            "rank": s.rank_position,
                        }
                        for s in d.scores
                    ],
                }
                for d in report.datasets
            ],
            "summary": [
                {
                    "method": s.method_name,
                    "mean_rmse": s.mean_rmse,
                    "mean_rank": s.mean_rank,
                    "wins": s.wins,
                }
                for s in report.summary
            ],
        }
        path = out / "report.json"
        with path.open("w") as fh:
            fh.write(_json_text(payload))
            fh.write("\n")
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# geometry check
# ---------------------------------------------------------------------------


def monte_carlo_convexity_area(samples: int, seed: int, threshold: float = 1.0) -> float:
    """Fraction of the tolerated box lying between the chord and its top edge.

    Canonical turn-shaped configuration: the right endpoint sits exactly one
    threshold above the left, so the chord cuts the box [x_i, x_{i+1}] x
    [y_i - t, y_i + t] into a triangle of a quarter of its area; the result
    is independent of the endpoints chosen. Points are counted strictly
    between the chord and the upper bound. A zero threshold collapses the
    box, so the fraction is 0 by convention.
    """
    if samples < 10_000:
        raise InvalidInputError(f"samples must be >= 10000, got {samples}")
    if threshold < 0.0:
        raise InvalidInputError(f"threshold must be >= 0, got {threshold}")
    if threshold == 0.0:
        return 0.0
    rng = np.random.default_rng(seed)
    x0, x1 = 0.0, 1.0
    y0 = 0.0
    t = threshold
    x = rng.uniform(x0, x1, size=samples)
    y = rng.uniform(y0 - t, y0 + t, size=samples)
    chord = y0 + t * (x - x0) / (x1 - x0)  # rises from y0 to y0 + t
    hits = np.count_nonzero((y > chord) & (y < y0 + t))
    return hits / samples
