"""Geometry of CORP reliability diagrams."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np

from .pav import ForecastDataset, IsotonicFit, UniqueValueSummary, aggregate, pav_fit
from .scoring import ScoreDecomposition, ScoringRule, corp_decomposition

if TYPE_CHECKING:
    from .bands import BandSpec, UncertaintyBand

# smallest gap between distinct forecast values that still counts as discrete
DISCRETE_MIN_GAP = 0.01
MAX_BINS = 100_000


class DiagramMode(str, Enum):
    DISCRETE = "discrete"
    CONTINUOUS = "continuous"


@dataclass(frozen=True)
class Histogram:
    """Bin intervals ``[lower_i, upper_i]`` with observation counts."""

    lower: np.ndarray
    upper: np.ndarray
    counts: np.ndarray

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    def density(self) -> np.ndarray:
        n = self.counts.sum()
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.widths > 0, self.counts / (n * self.widths), np.nan)


@dataclass(frozen=True)
class DiagramBin:
    lower: float
    upper: float
    value: float
    count: int


@dataclass(frozen=True)
class ReliabilityDiagram:
    mode: DiagramMode
    summary: UniqueValueSummary
    fit: IsotonicFit
    histogram: Histogram
    annotation: ScoreDecomposition
    band: "UncertaintyBand | None" = None

    @property
    def n(self) -> int:
        return self.summary.n

    @property
    def k(self) -> int:
        return self.summary.k

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.summary.values.tolist(), self.fit.fitted_per_unique.tolist()))

    @property
    def bins(self) -> list[DiagramBin]:
        z = self.summary.values
        return [DiagramBin(float(z[b.first]), float(z[b.last]), b.value, b.weight) for b in self.fit.blocks]


def detect_mode(forecasts) -> DiagramMode:
    """Discrete iff distinct values are at least 0.01 apart."""
    z = np.unique(np.asarray(forecasts, dtype=np.float64))
    if z.size < 2 or np.min(np.diff(z)) >= DISCRETE_MIN_GAP:
        return DiagramMode.DISCRETE
    return DiagramMode.CONTINUOUS


def fd_width(forecasts) -> float:
    """Freedman-Diaconis bin width ``2 IQR n^(-1/3)``; IQR by linear interpolation."""
    x = np.asarray(forecasts, dtype=np.float64)
    q1, q3 = np.quantile(x, [0.25, 0.75])
    return 2.0 * (q3 - q1) * x.size ** (-1.0 / 3.0)


def fd_histogram(forecasts) -> Histogram:
    """Equal-width histogram on [0, 1] anchored at 0, last bin clipped.

    Bins are half-open ``[a, b)`` except the last, which is closed.  A zero
    interquartile range falls back to the single bin [0, 1].
    """
    x = np.asarray(forecasts, dtype=np.float64)
    w = fd_width(x) if x.size >= 2 else 0.0
    if w <= 0.0 or w >= 1.0:
        return Histogram(np.array([0.0]), np.array([1.0]), np.array([x.size], dtype=np.int64))
    if w < 1.0 / MAX_BINS:
        nbins, w = MAX_BINS, 1.0 / MAX_BINS
    else:
        # a trailing sliver from rounding (1 / 0.4999999999999999) joins the last bin
        nbins = math.ceil(1.0 / w - 1e-9)
    edges = np.arange(nbins + 1) * w
    edges[-1] = 1.0
    lower, upper = edges[:-1], edges[1:]
    idx = np.minimum(np.floor(x / w).astype(np.int64), nbins - 1)
    counts = np.bincount(idx, minlength=nbins).astype(np.int64)
    return Histogram(lower, upper, counts)


def value_histogram(summary: UniqueValueSummary) -> Histogram:
    z = summary.values.copy()
    return Histogram(z, z.copy(), summary.counts.copy())


def build_diagram(
    dataset: ForecastDataset,
    rule: ScoringRule | str = "brier",
    band_spec: "BandSpec | None" = None,
    mode: DiagramMode | str | None = None,
) -> ReliabilityDiagram:
    """Assemble the CORP reliability diagram for ``dataset``.

    ``mode`` overrides the automatic discrete/continuous detection; the
    marginal display is a per-value bar chart in discrete mode and a
    Freedman-Diaconis histogram otherwise.
    """
    summary = aggregate(dataset)
    fit = pav_fit(summary)
    mode = detect_mode(summary.values) if mode in (None, "auto") else DiagramMode(mode)
    hist = value_histogram(summary) if mode is DiagramMode.DISCRETE else fd_histogram(dataset.forecasts)
    annotation = corp_decomposition(rule, dataset, fit.fitted_per_observation)
    band = None
    if band_spec is not None:
        from .bands import compute_band

        band = compute_band(dataset, band_spec, summary=summary, fit=fit)
    return ReliabilityDiagram(mode, summary, fit, hist, annotation, band)
