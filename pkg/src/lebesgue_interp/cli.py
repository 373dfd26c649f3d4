"""Command-line front door: sample, reconstruct, bench and verify.

Exit codes: 0 success, 1 validation/usage error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from .bench import (
    METHODS,
    ExperimentConfig,
    ExperimentMode,
    emit_report,
    generate_synthetic_corpus,
    load_ucr_dataset,
    run_benchmark,
)
from .core import ReconstructionParams, SampledSeries, TimeSeries
from .errors import InvalidInputError, ParseError
from .sampling import SampleBudget, lebesgue_sample, riemann_sample
from .verify import run_all_checks

__all__ = ["main", "entrypoint"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems instead of exiting with code 2."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _read_signal(path: Path) -> TimeSeries:
    """One value per line (a trailing comma-separated row also works)."""
    if not path.exists():
        raise FileNotFoundError(f"signal file not found: {path}")
    values: list[float] = []
    with path.open() as fh:
        for r, line in enumerate(fh):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            for c, field in enumerate(line.replace(",", " ").split()):
                try:
                    values.append(float(field))
                except ValueError:
                    raise ParseError(
                        f"{path}: cannot parse {field!r} at row {r}, column {c}", row=r, column=c
                    ) from None
    if not values:
        raise InvalidInputError(f"{path} contains no values")
    return TimeSeries(np.asarray(values))


def _write_sampled(path: Path, s: SampledSeries) -> None:
    with path.open("w", newline="") as fh:
        fh.write(f"# source_length={s.source_length} threshold={s.threshold!r}\n")
        w = csv.writer(fh)
        w.writerow(["index", "value"])
        for i, v in zip(s.indices.tolist(), s.values.tolist()):
            w.writerow([i, repr(v)])


def _read_sampled(path: Path, length: int | None, threshold: float | None) -> SampledSeries:
    if not path.exists():
        raise FileNotFoundError(f"sampled file not found: {path}")
    meta: dict[str, str] = {}
    idx: list[int] = []
    vals: list[float] = []
    with path.open() as fh:
        for r, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for token in line[1:].split():
                    if "=" in token:
                        k, v = token.split("=", 1)
                        meta[k] = v
                continue
            if line.lower().startswith("index"):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ParseError(f"{path}: expected 'index,value' at row {r}", row=r)
            try:
                idx.append(int(parts[0]))
                vals.append(float(parts[1]))
            except ValueError:
                raise ParseError(f"{path}: cannot parse row {r}: {line!r}", row=r) from None
    if length is None:
        if "source_length" not in meta:
            raise InvalidInputError(f"{path} has no source_length metadata; pass --length")
        length = int(meta["source_length"])
    if threshold is None:
        threshold = float(meta.get("threshold", "0"))
    return SampledSeries(np.asarray(idx), np.asarray(vals), length, threshold)


def _cmd_sample(args) -> int:
    ts = _read_signal(Path(args.input))
    if args.regime == "lebesgue":
        s = lebesgue_sample(ts, args.threshold)
    else:
        s = riemann_sample(ts, SampleBudget(args.fraction))
    _write_sampled(Path(args.output), s)
    print(f"kept {len(s)}/{s.source_length} points ({s.fraction:.4f}) -> {args.output}")
    return 0


def _cmd_reconstruct(args) -> int:
    s = _read_sampled(Path(args.input), args.length, args.threshold)
    params = ReconstructionParams(
        threshold=s.threshold if args.threshold is None else args.threshold,
        tolerance_ratio=args.tolerance_ratio,
        previous_distance=args.prev_dist,
        subsequent_min_distance=args.min_dist,
        subsequent_max_distance=args.max_dist,
    )
    rec = METHODS[args.method](s, params)
    out = Path(args.output)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "value"])
        for i, v in enumerate(rec.values.tolist()):
            w.writerow([i, repr(v)])
    print(f"reconstructed {len(rec)} points with {args.method} -> {out}")
    return 0


def _discover_datasets(data_dir: Path):
    """Yield (train, test-or-None) TSV pairs under a directory tree."""
    trains = sorted(data_dir.rglob("*_TRAIN.tsv"))
    if not trains:
        raise FileNotFoundError(f"no *_TRAIN.tsv files under {data_dir}")
    for train in trains:
        test = train.with_name(train.name.replace("_TRAIN", "_TEST"))
        yield train, (test if test.exists() else None)


def _cmd_bench(args) -> int:
    mode = ExperimentMode.FIXED_THRESHOLD if args.experiment == 1 else ExperimentMode.BUDGET
    methods = tuple(args.methods.split(",")) if args.methods else tuple(METHODS)
    config = ExperimentConfig(
        mode=mode,
        threshold=args.threshold,
        target_fraction=args.budget,
        tolerance_ratio=args.tolerance_ratio,
        previous_distance=args.prev_dist,
        subsequent_min_distance=args.min_dist,
        subsequent_max_distance=args.max_dist,
        methods=methods,
        seed=args.seed,
    )
    if args.data_dir:
        bundles = [
            load_ucr_dataset(train, test, format="tsv")
            for train, test in _discover_datasets(Path(args.data_dir))
        ]
    else:
        counts = {}
        for token in args.synthetic.split(","):
            fam, _, cnt = token.partition("=")
            counts[fam.strip()] = int(cnt) if cnt else 10
        bundles = [
            generate_synthetic_corpus(args.seed + i, {fam: cnt}, length=args.length, name=fam)
            for i, (fam, cnt) in enumerate(counts.items())
        ]
    report = run_benchmark(bundles, config)
    written = emit_report(report, args.out, formats=("csv", "json"))
    best = report.summary[0]
    print(f"{len(report.datasets)} dataset(s); best method {best.method_name} "
          f"(mean RMSE {best.mean_rmse:.6g}, wins {best.wins})")
    for p in written:
        print(f"wrote {p}")
    return 0


def _cmd_verify(args) -> int:
    results = run_all_checks()
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name}: {r.detail}")
        failed += 0 if r.passed else 1
    return 0 if failed == 0 else 1


def _build_parser() -> _Parser:
    parser = _Parser(prog="lebesgue-interp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="downsample one signal file to a sampled-points CSV")
    p.add_argument("--input", required=True, help="signal file, one value per line")
    p.add_argument("--output", required=True, help="sampled-points CSV to write")
    p.add_argument("--regime", choices=("lebesgue", "riemann"), default="lebesgue")
    p.add_argument("--threshold", type=float, default=0.05, help="event threshold (lebesgue)")
    p.add_argument("--fraction", type=float, default=0.15, help="sample share (riemann)")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("reconstruct", help="rebuild a full signal from a sampled-points CSV")
    p.add_argument("--input", required=True, help="sampled-points CSV from the sample command")
    p.add_argument("--output", required=True, help="reconstruction CSV to write")
    p.add_argument("--method", required=True, choices=sorted(METHODS))
    p.add_argument("--threshold", type=float, default=None,
                   help="event threshold; defaults to the file's metadata")
    p.add_argument("--length", type=int, default=None,
                   help="original length; defaults to the file's metadata")
    p.add_argument("--tolerance-ratio", type=float, default=1.15)
    p.add_argument("--prev-dist", type=int, default=3)
    p.add_argument("--min-dist", type=int, default=3)
    p.add_argument("--max-dist", type=int, default=None)
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("bench", help="run the RMSE comparison protocol and write reports")
    p.add_argument("--experiment", type=int, choices=(1, 2), default=1,
                   help="1 = fixed threshold, 2 = sample budget")
    p.add_argument("--threshold", type=float, default=0.05)
    p.add_argument("--budget", type=float, default=0.15)
    p.add_argument("--tolerance-ratio", type=float, default=1.15)
    p.add_argument("--prev-dist", type=int, default=3)
    p.add_argument("--min-dist", type=int, default=3)
    p.add_argument("--max-dist", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="bench_out", help="output directory for report files")
    p.add_argument("--data-dir", default=None,
                   help="directory with <Name>_TRAIN.tsv[/<Name>_TEST.tsv] datasets")
    p.add_argument("--synthetic", default="step=10,ramp=10,sine=10,triangle=10",
                   help="family=count list used when no --data-dir is given")
    p.add_argument("--length", type=int, default=500, help="synthetic signal length")
    p.add_argument("--methods", default=None, help="comma-separated subset of methods")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("verify", help="run the built-in property checks")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except (InvalidInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
