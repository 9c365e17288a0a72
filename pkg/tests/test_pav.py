import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from corp import ForecastDataset, ValidationError, aggregate, pav_fit, recalibrate
from corp.pav import UniqueValueSummary
from oracles import brute_force_isotonic, grid_isotonic_brier


def test_aggregate_groups_ties():
    s = aggregate(ForecastDataset.from_arrays([0.2, 0.2, 0.6], [1, 0, 1]))
    assert s.values.tolist() == [0.2, 0.6]
    assert s.counts.tolist() == [2, 1]
    assert s.event_counts.tolist() == [1, 1]


def test_aggregate_singleton():
    s = aggregate(ForecastDataset.from_arrays([0.5], [0]))
    assert (s.values.tolist(), s.counts.tolist(), s.event_counts.tolist()) == ([0.5], [1], [0])


def test_aggregate_unsorted_input():
    s = aggregate(ForecastDataset.from_arrays([0.3, 0.1, 0.3, 0.1], [1, 0, 0, 0]))
    assert s.values.tolist() == [0.1, 0.3]
    assert s.counts.tolist() == [2, 2]
    assert s.event_counts.tolist() == [0, 1]


@pytest.mark.parametrize(
    "x, y, msg",
    [
        ([], [], "empty input"),
        ([0.2, 1.2], [0, 1], "index 1"),
        ([0.2, -0.1], [0, 1], "index 1"),
        ([0.2, np.nan], [0, 1], "index 1"),
        ([0.2, 0.3], [0, 2], "index 1"),
        ([0.2, 0.3], [0.5, 1], "index 0"),
        ([0.2], [0, 1], "length"),
    ],
)
def test_dataset_validation(x, y, msg):
    with pytest.raises(ValidationError, match=msg):
        ForecastDataset.from_arrays(x, y)


def test_summary_validation():
    with pytest.raises(ValidationError):
        UniqueValueSummary([0.2, 0.1], [1, 1], [0, 0])
    with pytest.raises(ValidationError):
        UniqueValueSummary([0.1, 0.2], [1, 1], [2, 0])


def test_isotonic_input_is_fixed_point():
    s = UniqueValueSummary([0.1, 0.2, 0.9], [1, 2, 1], [0, 1, 1])
    fit = pav_fit(s)
    assert fit.fitted_per_unique.tolist() == [0.0, 0.5, 1.0]
    assert len(fit.blocks) == 3


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ([0.2, 0.4, 0.6], [1, 0, 1], [0.5, 0.5, 1.0]),
        ([0.1, 0.2, 0.3, 0.4], [0, 1, 0, 1], [0.0, 0.5, 0.5, 1.0]),
        ([0.4, 0.7], [1, 0], [0.5, 0.5]),
        ([0.0, 1.0], [0, 1], [0.0, 1.0]),
    ],
)
def test_recalibrate_examples(x, y, expected):
    # expected values come from the grid brute force in oracles.py
    np.testing.assert_allclose(grid_isotonic_brier(x, y), expected, atol=1e-12)
    np.testing.assert_allclose(recalibrate(ForecastDataset.from_arrays(x, y)), expected, atol=1e-12)


def test_recalibrate_keeps_input_order():
    d = ForecastDataset.from_arrays([0.4, 0.1, 0.3, 0.2], [1, 0, 0, 1])
    np.testing.assert_allclose(recalibrate(d), [1.0, 0.0, 0.5, 0.5])


def test_equal_adjacent_blocks_are_merged():
    fit = pav_fit(UniqueValueSummary([0.1, 0.2, 0.3], [2, 2, 4], [1, 1, 2]))
    assert len(fit.blocks) == 1
    assert fit.blocks[0].value == 0.5


def test_fit_is_read_only():
    fit = pav_fit(aggregate(ForecastDataset.from_arrays([0.1, 0.2], [0, 1])))
    with pytest.raises(ValueError):
        fit.fitted_per_unique[0] = 1.0


datasets = st.integers(1, 40).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 20).map(lambda i: i / 20), min_size=n, max_size=n),
        st.lists(st.integers(0, 1), min_size=n, max_size=n),
    )
)


@given(datasets)
@settings(max_examples=300, deadline=None)
def test_fit_invariants(data):
    d = ForecastDataset.from_arrays(*data)
    s = aggregate(d)
    fit = pav_fit(s)
    vals = fit.block_values
    assert np.all(np.diff(vals) > 0)
    assert np.all(np.diff(fit.fitted_per_unique) >= 0)
    for b in fit.blocks:
        assert b.value == b.events / b.weight
        assert b.weight == s.counts[b.first:b.last + 1].sum()
    assert fit.blocks[0].first == 0 and fit.blocks[-1].last == s.k - 1
    # mass conservation
    assert abs(fit.fitted_per_observation.sum() - d.outcomes.sum()) < 1e-12
    np.testing.assert_array_equal(fit.fitted_per_observation, fit.fitted_per_unique[s.inverse])


@given(datasets)
@settings(max_examples=200, deadline=None)
def test_recalibration_is_idempotent(data):
    d = ForecastDataset.from_arrays(*data)
    once = recalibrate(d)
    twice = recalibrate(ForecastDataset(once, d.outcomes))
    np.testing.assert_allclose(twice, once, atol=1e-12)


@given(datasets.filter(lambda d: len(d[0]) <= 12))
@settings(max_examples=300, deadline=None)
def test_matches_exhaustive_search(data):
    s = aggregate(ForecastDataset.from_arrays(*data))
    expected = brute_force_isotonic(s.counts.tolist(), s.event_counts.tolist())
    np.testing.assert_allclose(pav_fit(s).fitted_per_unique, np.array(expected, dtype=float), atol=1e-12)
