import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cipc.errors import EmptySamples, InsufficientSamples, NonPositiveTruth
from cipc.stats import aggregate, confidence_interval_95, mean, percent_error

floats = st.floats(-1e6, 1e6, allow_nan=False)


def test_mean():
    assert mean([5, 5, 5]) == 5
    assert mean([0, 10]) == 5
    with pytest.raises(EmptySamples):
        mean([])


def test_identical_samples_zero_width():
    lo, hi = confidence_interval_95([10590.0] * 50)
    assert lo == hi == 10590.0


def test_symmetric_interval():
    lo, hi = confidence_interval_95([-1, 1])
    assert lo == -hi


def test_interval_needs_two():
    with pytest.raises(InsufficientSamples):
        confidence_interval_95([1.0])


def test_interval_against_independent_recomputation():
    rng = random.Random(3)
    xs = [rng.gauss(1000, 200) for _ in range(50)]
    arr = np.array(xs)
    half = 1.96 * arr.std(ddof=1) / math.sqrt(50)
    lo, hi = confidence_interval_95(xs)
    assert lo == pytest.approx(arr.mean() - half, rel=1e-12)
    assert hi == pytest.approx(arr.mean() + half, rel=1e-12)


def test_interval_width_scales_with_root_n():
    rng = np.random.default_rng(11)
    widths = []
    for n in (2_000, 8_000):
        lo, hi = confidence_interval_95(rng.normal(0, 1, n).tolist())
        widths.append(hi - lo)
    assert widths[0] / widths[1] == pytest.approx(2.0, rel=0.05)


def test_percent_error():
    assert percent_error(1034, 1000) == pytest.approx(3.4)
    assert percent_error(7, 7) == 0
    assert percent_error(0, 100) == 100
    with pytest.raises(NonPositiveTruth):
        percent_error(1, 0)


def test_percent_error_uses_unrounded_mean():
    # a mean printed as 558 with 44.1506% error against M = 1000
    agg = aggregate([558.494, 558.494], 1000)
    assert round(agg.mean) == 558
    assert agg.percent_error == pytest.approx(44.1506, abs=1e-3)


@given(st.lists(floats, min_size=2, max_size=60), st.floats(1, 1e6))
def test_aggregate_invariants(xs, truth):
    agg = aggregate(xs, truth)
    assert agg.ci_low <= agg.mean <= agg.ci_high
    assert agg.percent_error >= 0
    assert agg.n == len(xs)


def test_aggregate_single_sample_has_no_interval():
    agg = aggregate([3.0], 4)
    assert agg.ci_low is None and agg.ci_high is None and agg.percent_error == 25
