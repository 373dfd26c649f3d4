"""Self-contained property checks runnable from the CLI.

Each check re-derives its expectation through an independent route (naive
trace, interior-point scan, Monte Carlo, closed-form fixtures) so a pass
means the fast implementations agree with first principles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .baselines import interp_pchip
from .bench import monte_carlo_convexity_area
from .core import Knot, SampledSeries, TimeSeries
from .sampling import lebesgue_sample
from .zelic import abrupt_limit_condition

__all__ = ["CheckResult", "run_all_checks"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _naive_delta_trace(values: list[float], threshold: float) -> list[tuple[int, float]]:
    """Deliberately simple re-derivation of the send-on-delta rule."""
    taken = [(0, values[0])]
    while True:
        last_i, last_v = taken[-1]
        nxt = None
        for j in range(last_i + 1, len(values)):
            if abs(values[j] - last_v) >= threshold:
                nxt = (j, values[j])
                break
        if nxt is None:
            return taken
        taken.append(nxt)


def _walks(seed: int, count: int, length: int) -> list[TimeSeries]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        w = np.concatenate([[0.0], np.cumsum(rng.normal(0.0, 0.02, size=length - 1))])
        lo, hi = w.min(), w.max()
        out.append(TimeSeries((w - lo) / (hi - lo) if hi > lo else np.zeros_like(w)))
    return out


def check_sampler_against_trace(seed: int = 11, count: int = 200, length: int = 500) -> CheckResult:
    thresholds = (0.02, 0.05, 0.1)
    mismatches = 0
    for ts in _walks(seed, count, length):
        vals = ts.values.tolist()
        for t in thresholds:
            got = lebesgue_sample(ts, t)
            want = _naive_delta_trace(vals, t)
            if list(zip(got.indices.tolist(), got.values.tolist())) != want:
                mismatches += 1
    return CheckResult(
        "sampler-vs-naive-trace",
        mismatches == 0,
        f"{count} walks x {len(thresholds)} thresholds, {mismatches} mismatches",
    )


def check_tolerated_region(seed: int = 12, count: int = 200, length: int = 500) -> CheckResult:
    violations = 0
    for ts in _walks(seed, count, length):
        for t in (0.02, 0.05, 0.1):
            s = lebesgue_sample(ts, t)
            idx = s.indices
            for k in range(len(idx) - 1):
                ref = s.values[k]
                between = ts.values[idx[k] + 1 : idx[k + 1]]
                if between.size and np.max(np.abs(between - ref)) >= t:
                    violations += 1
    return CheckResult(
        "tolerated-region-containment",
        violations == 0,
        f"{count} walks, {violations} points escaped the band",
    )


def check_limit_condition(seed: int = 13, cases: int = 10_000) -> CheckResult:
    rng = np.random.default_rng(seed)
    disagreements = 0
    for _ in range(cases):
        xa = int(rng.integers(0, 50))
        xb = xa + int(rng.integers(1, 40))
        ya = float(rng.uniform(-1.0, 1.0))
        yb = float(rng.uniform(-1.0, 1.0))
        t = float(rng.uniform(0.0, 0.5))
        fast = abrupt_limit_condition(Knot(xa, ya), Knot(xb, yb), t)
        slope = (yb - ya) / (xb - xa)
        interior = np.arange(xa + 1, xb)
        chord = ya + slope * (interior - xa)
        brute = bool(interior.size) and bool(np.any(np.abs(chord - ya) > t))
        if fast != brute:
            disagreements += 1
    return CheckResult(
        "limit-condition-vs-interior-scan",
        disagreements == 0,
        f"{cases} random intervals, {disagreements} disagreements",
    )


def check_convexity_area(seed: int = 14, samples: int = 1_000_000) -> CheckResult:
    frac = monte_carlo_convexity_area(samples, seed)
    ok = abs(frac - 0.25) <= 0.005
    return CheckResult("convexity-false-assumption-area", ok, f"fraction {frac:.5f} vs 0.25 +/- 0.005")


def check_pchip_fixtures(seed: int = 15) -> CheckResult:
    rng = np.random.default_rng(seed)
    problems = []
    # collinear knots reproduce the line exactly
    s = SampledSeries(np.array([0, 3, 7, 10]), np.array([0.0, 0.3, 0.7, 1.0]), 11, 0.0)
    got = interp_pchip(s).values
    want = np.arange(11) / 10.0
    if np.max(np.abs(got - want)) > 1e-12:
        problems.append("collinear knots not reproduced")
    # monotone knots stay monotone and inside the knot envelope
    for _ in range(200):
        k = int(rng.integers(3, 9))
        idx = np.sort(rng.choice(np.arange(1, 40), size=k - 1, replace=False))
        idx = np.concatenate([[0], idx])
        vals = np.sort(rng.uniform(0.0, 1.0, size=k))
        s = SampledSeries(idx, vals, int(idx[-1]) + 1, 0.0)
        rec = interp_pchip(s).values
        if np.any(np.diff(rec) < -1e-12):
            problems.append("monotone input produced non-monotone output")
            break
        if rec.min() < vals.min() - 1e-12 or rec.max() > vals.max() + 1e-12:
            problems.append("output escaped the knot envelope")
            break
    return CheckResult("pchip-shape-preservation", not problems, "; ".join(problems) or "200 fixtures ok")


def run_all_checks() -> list[CheckResult]:
    checks: list[Callable[[], CheckResult]] = [
        check_sampler_against_trace,
        check_tolerated_region,
        check_limit_condition,
        check_convexity_area,
        check_pchip_fixtures,
    ]
    return [c() for c in checks]
