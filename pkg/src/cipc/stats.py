"""Reporting quantities for repeated trials: mean, 95% CI, percent error."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EmptySamples, InsufficientSamples, NonPositiveTruth

Z_95 = 1.96


def mean(samples: Sequence[float]) -> float:
    if len(samples) == 0:
        raise EmptySamples("mean of zero samples")
    return math.fsum(samples) / len(samples)


def confidence_interval_95(samples: Sequence[float]) -> tuple[float, float]:
    """Normal-approximation interval ``mean +/- 1.96 s / sqrt(n)``."""
    n = len(samples)
    if n < 2:
        raise InsufficientSamples(f"need at least 2 samples for an interval, got {n}")
    centre = mean(samples)
    half = Z_95 * statistics.stdev(samples, xbar=centre) / math.sqrt(n)
    return centre - half, centre + half


def percent_error(estimate: float, true_value: float) -> float:
    if true_value <= 0:
        raise NonPositiveTruth(f"true value must be positive, got {true_value}")
    return abs((estimate - true_value) / true_value) * 100.0


@dataclass(frozen=True)
class TrialAggregate:
    n: int
    mean: float
    ci_low: Optional[float]
    ci_high: Optional[float]
    percent_error: float


def aggregate(samples: Sequence[float], true_value: float) -> TrialAggregate:
    """Summarise one estimator's trials; the interval is None below two samples.

    Percent error is taken on the unrounded mean.
    """
    centre = mean(samples)
    try:
        low, high = confidence_interval_95(samples)
    except InsufficientSamples:
        low = high = None
    else:
        # stdev of identical floats can come out as a few ulps
        low, high = min(low, centre), max(high, centre)
    return TrialAggregate(
        n=len(samples),
        mean=centre,
        ci_low=low,
        ci_high=high,
        percent_error=percent_error(centre, true_value),
    )
