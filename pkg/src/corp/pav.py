"""Aggregation of forecast/outcome pairs and PAV isotonic recalibration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend
from .exceptions import ValidationError


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ForecastDataset:
    """Paired probability forecasts and binary outcomes.

    Construction validates the inputs; use :meth:`from_arrays` for
    arbitrary sequences.
    """

    forecasts: np.ndarray
    outcomes: np.ndarray

    def __post_init__(self):
        x = np.array(self.forecasts, dtype=np.float64).ravel()
        y_raw = np.asarray(self.outcomes).ravel()
        if x.size == 0 or y_raw.size == 0:
            raise ValidationError("empty input")
        if x.size != y_raw.size:
            raise ValidationError(
                f"forecasts and outcomes differ in length ({x.size} != {y_raw.size})"
            )
        bad = np.flatnonzero(~((x >= 0.0) & (x <= 1.0)))
        if bad.size:
            i = int(bad[0])
            raise ValidationError(f"index {i}: forecast {x[i]!r} outside [0, 1]")
        y = np.array(y_raw, dtype=np.float64)
        bad = np.flatnonzero((y != 0.0) & (y != 1.0))
        if bad.size:
            i = int(bad[0])
            raise ValidationError(f"index {i}: outcome {y_raw[i]!r} is not 0 or 1")
        object.__setattr__(self, "forecasts", _frozen(x))
        object.__setattr__(self, "outcomes", _frozen(y.astype(np.int8)))

    @classmethod
    def from_arrays(cls, forecasts: Sequence[float], outcomes: Sequence[int]) -> "ForecastDataset":
        return cls(np.asarray(forecasts), np.asarray(outcomes))

    @property
    def n(self) -> int:
        return int(self.forecasts.size)

    @property
    def event_rate(self) -> float:
        return float(self.outcomes.sum()) / self.n


@dataclass(frozen=True)
class UniqueValueSummary:
    """Unique forecast values with their counts and event counts.

    ``inverse`` maps every original observation to its unique-value index.
    """

    values: np.ndarray
    counts: np.ndarray
    event_counts: np.ndarray
    inverse: np.ndarray | None = None

    def __post_init__(self):
        z = np.asarray(self.values, dtype=np.float64)
        n = np.asarray(self.counts, dtype=np.int64)
        o = np.asarray(self.event_counts, dtype=np.int64)
        if z.size == 0:
            raise ValidationError("empty input")
        if not (z.shape == n.shape == o.shape):
            raise ValidationError("values, counts and event_counts differ in shape")
        if np.any(np.diff(z) <= 0):
            raise ValidationError("values must be strictly increasing")
        if np.any(n <= 0) or np.any(o < 0) or np.any(o > n):
            raise ValidationError("need counts > 0 and 0 <= event_counts <= counts")
        for name, arr in (("values", z), ("counts", n), ("event_counts", o)):
            object.__setattr__(self, name, _frozen(arr))
        if self.inverse is not None:
            object.__setattr__(self, "inverse", _frozen(np.asarray(self.inverse, dtype=np.int64)))

    @property
    def k(self) -> int:
        return int(self.values.size)

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def frequencies(self) -> np.ndarray:
        return self.event_counts / self.counts


@dataclass(frozen=True)
class Block:
    first: int
    last: int
    weight: int
    events: int

    @property
    def value(self) -> float:
        return self.events / self.weight


@dataclass(frozen=True)
class IsotonicFit:
    blocks: tuple[Block, ...]
    fitted_per_unique: np.ndarray
    fitted_per_observation: np.ndarray | None = None

    @property
    def block_values(self) -> np.ndarray:
        return np.array([b.value for b in self.blocks])


def aggregate(dataset: ForecastDataset) -> UniqueValueSummary:
    """Group identical forecast values (bitwise equality, no snapping)."""
    values, inverse, counts = np.unique(
        dataset.forecasts, return_inverse=True, return_counts=True
    )
    events = np.bincount(inverse, weights=dataset.outcomes, minlength=values.size)
    return UniqueValueSummary(values, counts, np.rint(events).astype(np.int64), inverse)


def pav_fit(summary: UniqueValueSummary) -> IsotonicFit:
    """Isotonic least-squares fit of ``o_j / n_j`` with weights ``n_j``.

    Adjacent blocks with equal pooled frequencies are merged, so block values
    are strictly increasing.
    """
    start, stop, w, e = _backend.pav_blocks(summary.counts, summary.event_counts)
    blocks = tuple(Block(int(a), int(b), int(c), int(d)) for a, b, c, d in zip(start, stop, w, e))
    fitted = np.repeat(e / w, stop - start + 1)
    per_obs = fitted[summary.inverse] if summary.inverse is not None else None
    return IsotonicFit(blocks, _frozen(fitted), None if per_obs is None else _frozen(per_obs))


def recalibrate(dataset: ForecastDataset) -> np.ndarray:
    """PAV-recalibrated probabilities in the original observation order."""
    return pav_fit(aggregate(dataset)).fitted_per_observation
