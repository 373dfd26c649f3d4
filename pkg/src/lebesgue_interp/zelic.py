"""Event-aware reconstructors: ZeLi, ZeLiC, ZeChip and ZeChipC.

Each interval between retained points is classified Smooth or Abrupt by
comparing the endpoint jump against threshold * tolerance_ratio. Smooth
intervals get a chord (ZeLi) or feed a shape-preserving cubic (ZeChip);
Abrupt intervals are held at the left value so the reconstruction stays
inside the tolerated band the sampler guarantees. The C variants detect a
slope-sign reversal and plant an extra knot halfway between the chord and
the tolerated-band edge to model the turn the sampler could not see.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .baselines import Reconstruction, _fill_linear, _hold_tail, fritsch_carlson_slopes, hermite_fill
from .core import Knot, ReconstructionParams, SampledSeries
from .errors import InvalidInputError

__all__ = [
    "IntervalKind",
    "IntervalClass",
    "KnotPlan",
    "classify_interval",
    "abrupt_limit_condition",
    "convexity_gate",
    "convexity_knots",
    "reconstruct_zeli",
    "reconstruct_zelic",
    "reconstruct_zechip",
    "reconstruct_zechipc",
]


class IntervalKind(Enum):
    SMOOTH = "smooth"
    ABRUPT = "abrupt"


@dataclass(frozen=True)
class IntervalClass:
    kind: IntervalKind
    interval: tuple[Knot, Knot]

    @property
    def is_abrupt(self) -> bool:
        return self.kind is IntervalKind.ABRUPT


@dataclass(frozen=True)
class KnotPlan:
    """Augmented knots for one interval: endpoints plus optional inserts."""

    knots: tuple[Knot, ...]

    def __post_init__(self):
        idx = [k.index for k in self.knots]
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise InvalidInputError(f"plan indices must be strictly increasing, got {idx}")


def classify_interval(a: Knot, b: Knot, params: ReconstructionParams) -> IntervalClass:
    """Smooth iff the endpoint jump stays under threshold * tolerance_ratio.

    An exactly-zero jump counts as Smooth even when the tolerance is 0
    (a constant chord trivially stays in the band).
    """
    if a.index >= b.index:
        raise InvalidInputError(f"interval endpoints must be ordered, got {a.index} >= {b.index}")
    diff = abs(b.value - a.value)
    smooth = diff == 0.0 or diff < params.tolerance
    return IntervalClass(IntervalKind.SMOOTH if smooth else IntervalKind.ABRUPT, (a, b))


def abrupt_limit_condition(a: Knot, b: Knot, threshold: float) -> bool:
    """True iff the chord from a to b exits the tolerated band of a.

    Checking only the last interior grid point x = b.index - 1 suffices:
    the chord's deviation |slope| * (x - a.index) is largest there, so it
    lies strictly outside the band iff that single point does. A zero
    slope can never leave the band; adjacent knots have nothing between.
    """
    if a.index >= b.index:
        raise InvalidInputError(f"interval endpoints must be ordered, got {a.index} >= {b.index}")
    slope = (b.value - a.value) / (b.index - a.index)
    if slope == 0.0:
        return False
    x_last_interior = b.index - 1
    return x_last_interior > threshold / abs(slope) + a.index


def convexity_gate(
    prev: Knot | None, a: Knot, b: Knot, params: ReconstructionParams
) -> bool:
    """Decide whether to model a slope-sign reversal inside (a, b).

    Requires a strict sign flip between the incoming and outgoing jumps and
    enough spacing on both sides that the signal looks predictable; the
    first interval of a signal has no incoming jump, so it never gates.
    """
    if prev is None:
        return False
    if not (prev.index < a.index < b.index):
        raise InvalidInputError(
            f"knots must be ordered, got {prev.index}, {a.index}, {b.index}"
        )
    d_in = a.value - prev.value
    d_out = b.value - a.value
    if d_in == 0.0 or d_out == 0.0 or (d_in > 0.0) == (d_out > 0.0):
        return False
    if a.index - prev.index <= params.previous_distance:
        return False
    if b.index - a.index <= params.subsequent_min_distance:
        return False
    if (
        params.subsequent_max_distance is not None
        and b.index - a.index >= params.subsequent_max_distance
    ):
        return False
    return True


def convexity_knots(
    prev: Knot, a: Knot, b: Knot, params: ReconstructionParams, abrupt: bool
) -> KnotPlan:
    """Build the augmented knots for a gated interval.

    The midpoint knot sits at floor((a+b)/2) with a value halfway between
    the chord and the tolerated-band edge on the side of the turn: the
    lower edge when the signal was falling into a (a dip), the upper edge
    when it was rising (a bump). An Abrupt interval additionally gets the
    hold anchor (b.index - 1, a.value) so the jump at b stays sharp; the
    anchor is dropped if it would collide with the midpoint, and the
    midpoint is dropped in the degenerate case where it would collide
    with a.
    """
    t = params.threshold
    x_mid = (a.index + b.index) // 2
    knots: list[Knot] = [a]
    if x_mid > a.index:
        chord_mid = a.value + (b.value - a.value) * (x_mid - a.index) / (b.index - a.index)
        falling_in = a.value < prev.value
        if falling_in:
            y_mid = (chord_mid + a.value - t) / 2.0
        else:
            y_mid = (chord_mid + a.value + t) / 2.0
        knots.append(Knot(x_mid, y_mid))
    if abrupt and b.index - 1 > x_mid:
        knots.append(Knot(b.index - 1, a.value))
    knots.append(b)
    return KnotPlan(tuple(knots))


def _zeli_segment(out: np.ndarray, a: Knot, b: Knot, params: ReconstructionParams) -> None:
    if classify_interval(a, b, params).is_abrupt:
        out[a.index : b.index] = a.value
        out[b.index] = b.value
    else:
        _fill_linear(out, a.index, a.value, b.index, b.value)


def reconstruct_zeli(s: SampledSeries, params: ReconstructionParams) -> Reconstruction:
    """Chord on Smooth intervals, hold-then-jump on Abrupt ones."""
    out = np.empty(s.source_length, dtype=np.float64)
    pts = s.points
    for a, b in zip(pts, pts[1:]):
        _zeli_segment(out, a, b, params)
    _hold_tail(out, pts[-1].index, pts[-1].value)
    return Reconstruction(out, "zeli")


def reconstruct_zelic(s: SampledSeries, params: ReconstructionParams) -> Reconstruction:
    """ZeLi plus the slope-reversal knots, joined with straight segments."""
    out = np.empty(s.source_length, dtype=np.float64)
    pts = s.points
    for i, (a, b) in enumerate(zip(pts, pts[1:])):
        prev = pts[i - 1] if i > 0 else None
        if convexity_gate(prev, a, b, params):
            abrupt = classify_interval(a, b, params).is_abrupt
            plan = convexity_knots(prev, a, b, params, abrupt)
            for u, v in zip(plan.knots, plan.knots[1:]):
                _fill_linear(out, u.index, u.value, v.index, v.value)
        else:
            _zeli_segment(out, a, b, params)
    _hold_tail(out, pts[-1].index, pts[-1].value)
    return Reconstruction(out, "zelic")


def _augmented_knots(
    s: SampledSeries, params: ReconstructionParams, with_convexity: bool
) -> tuple[np.ndarray, np.ndarray]:
    """Global knot list: samples, hold anchors on Abrupt intervals and,
    optionally, the slope-reversal inserts. Indices come out strictly
    increasing because every insert lies strictly inside its interval."""
    pts = s.points
    xs: list[int] = []
    ys: list[float] = []
    for i, (a, b) in enumerate(zip(pts, pts[1:])):
        xs.append(a.index)
        ys.append(a.value)
        abrupt = classify_interval(a, b, params).is_abrupt
        prev = pts[i - 1] if i > 0 else None
        if with_convexity and convexity_gate(prev, a, b, params):
            plan = convexity_knots(prev, a, b, params, abrupt)
            for k in plan.knots[1:-1]:
                xs.append(k.index)
                ys.append(k.value)
        elif abrupt and b.index - 1 > a.index:
            xs.append(b.index - 1)
            ys.append(a.value)
    xs.append(pts[-1].index)
    ys.append(pts[-1].value)
    return np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.float64)


def _pchip_over(
    s: SampledSeries, xs: np.ndarray, ys: np.ndarray, name: str
) -> Reconstruction:
    out = np.empty(s.source_length, dtype=np.float64)
    if len(xs) == 1:
        out[:] = ys[0]
        return Reconstruction(out, name)
    m = fritsch_carlson_slopes(xs.astype(np.float64), ys)
    hermite_fill(out, xs, ys, m)
    # original samples are knots of the augmented set; rewrite them exactly
    out[s.indices] = s.values
    _hold_tail(out, int(xs[-1]), float(ys[-1]))
    return Reconstruction(out, name)


def reconstruct_zechip(s: SampledSeries, params: ReconstructionParams) -> Reconstruction:
    """Shape-preserving cubic over samples plus Abrupt-interval anchors."""
    xs, ys = _augmented_knots(s, params, with_convexity=False)
    return _pchip_over(s, xs, ys, "zechip")


def reconstruct_zechipc(s: SampledSeries, params: ReconstructionParams) -> Reconstruction:
    """ZeChip with the slope-reversal knots added before the single cubic pass."""
    xs, ys = _augmented_knots(s, params, with_convexity=True)
    return _pchip_over(s, xs, ys, "zechipc")
