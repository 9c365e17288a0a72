"""Consistency and confidence bands for CORP reliability diagrams.

Consistency bands describe how the diagram varies if the forecasts were
calibrated and are centred on the diagonal.  Confidence bands are centred
on the PAV curve and target the true conditional event probability.
Bands are pointwise, evaluated at the unique forecast values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.stats import norm

from . import _backend
from .chernoff import chernoff_quantile
from .diagram import fd_histogram
from .exceptions import ValidationError
from .pav import ForecastDataset, IsotonicFit, UniqueValueSummary, aggregate, pav_fit

# replicates drawn per chunk in resampling; fixed so results never depend on it
_CHUNK = 128


class BandKind(str, Enum):
    CONSISTENCY = "consistency"
    CONFIDENCE = "confidence"


class BandMethod(str, Enum):
    AUTO = "auto"
    RESAMPLING = "resampling"
    ASYMPTOTIC_DISCRETE = "asym-discrete"
    ASYMPTOTIC_CONTINUOUS = "asym-continuous"


@dataclass(frozen=True)
class BandSpec:
    """How to build a band.

    ``derivative`` is the slope of the true CEP, needed only for explicit
    continuous-asymptotic confidence bands.
    """

    kind: BandKind = BandKind.CONSISTENCY
    level: float = 0.90
    method: BandMethod = BandMethod.AUTO
    replicates: int = 1000
    seed: int = 0
    derivative: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", BandKind(self.kind))
        object.__setattr__(self, "method", BandMethod(self.method))
        if not 0.0 < self.level < 1.0:
            raise ValidationError(f"level {self.level} outside (0, 1)")
        if self.replicates < 1:
            raise ValidationError("replicates must be positive")
        if self.derivative is not None and not self.derivative > 0:
            raise ValidationError("derivative must be positive")


@dataclass(frozen=True)
class UncertaintyBand:
    positions: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    method: BandMethod
    kind: BandKind
    level: float
    # positions where the design density estimate was zero and borrowed
    flagged: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))

    def contains(self, values) -> np.ndarray:
        v = np.asarray(values, dtype=np.float64)
        return (self.lower <= v) & (v <= self.upper)


def select_method(n: int, k: int, spec: BandSpec) -> BandMethod:
    """Resolve ``AUTO`` to a concrete method from sample size and unique count."""
    if spec.method is not BandMethod.AUTO:
        return spec.method
    if spec.kind is BandKind.CONFIDENCE:
        return BandMethod.RESAMPLING
    if n <= 1000 or (n <= 5000 and n <= 50 * k):
        return BandMethod.RESAMPLING
    if n >= 8 * k * k:
        return BandMethod.ASYMPTOTIC_DISCRETE
    return BandMethod.ASYMPTOTIC_CONTINUOUS


def _center(summary: UniqueValueSummary, fit: IsotonicFit, kind: BandKind) -> np.ndarray:
    return summary.values if kind is BandKind.CONSISTENCY else fit.fitted_per_unique


def _tails(level: float) -> tuple[float, float]:
    a = (1.0 - level) / 2.0
    return a, 1.0 - a


def _finish(summary, center, lower, upper, method, spec, flagged=None) -> UncertaintyBand:
    lower = np.clip(np.minimum(lower, center), 0.0, 1.0)
    upper = np.clip(np.maximum(upper, center), 0.0, 1.0)
    if flagged is None:
        flagged = np.zeros(summary.k, dtype=bool)
    return UncertaintyBand(summary.values.copy(), lower, upper, method, spec.kind, spec.level, flagged)


def resampling_band(summary: UniqueValueSummary, fit: IsotonicFit, spec: BandSpec) -> UncertaintyBand:
    """Percentile band of PAV curves refitted to synthetic outcomes.

    Outcomes are redrawn as Bernoulli(x_i) for consistency bands and as
    Bernoulli(x_hat_i) for confidence bands.  Only per-value event counts
    enter the PAV fit, so they are drawn directly as Binomial(n_j, p_j).
    """
    if spec.replicates < 2:
        raise ValidationError("resampling needs at least 2 replicates")
    p = _center(summary, fit, spec.kind)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(spec.seed)))
    curves = np.empty((spec.replicates, summary.k))
    for lo in range(0, spec.replicates, _CHUNK):
        rows = min(_CHUNK, spec.replicates - lo)
        events = rng.binomial(summary.counts, p, size=(rows, summary.k))
        curves[lo:lo + rows] = _backend.pav_fitted_batch(summary.counts, events)
    lower, upper = np.quantile(curves, _tails(spec.level), axis=0)
    return _finish(summary, p, lower, upper, BandMethod.RESAMPLING, spec)


def discrete_asymptotic_band(summary: UniqueValueSummary, fit: IsotonicFit, spec: BandSpec) -> UncertaintyBand:
    """Per-value normal approximation with half-width ``z sqrt(p(1-p)/n_j)``."""
    c = _center(summary, fit, spec.kind)
    half = norm.ppf(_tails(spec.level)[1]) * np.sqrt(c * (1.0 - c) / summary.counts)
    return _finish(summary, c, c - half, c + half, BandMethod.ASYMPTOTIC_DISCRETE, spec)


def wright_halfwidth(x, n: int, density, derivative=1.0, quantile: float = 1.0) -> np.ndarray:
    """Cube-root half-width ``n^(-1/3) (4 m' x(1-x) / g)^(1/3) * quantile``."""
    x = np.asarray(x, dtype=np.float64)
    scale = np.cbrt(4.0 * np.asarray(derivative) * x * (1.0 - x) / np.asarray(density))
    return n ** (-1.0 / 3.0) * scale * quantile


def design_density(forecasts, positions) -> tuple[np.ndarray, np.ndarray]:
    """Histogram density at ``positions`` plus a mask of zero-density positions.

    A zero estimate is replaced by the density of the nearest nonempty bin.
    """
    hist = fd_histogram(forecasts)
    dens = hist.density()
    pos = np.asarray(positions, dtype=np.float64)
    idx = np.clip(np.searchsorted(hist.upper, pos, side="right"), 0, dens.size - 1)
    g = dens[idx]
    flagged = ~(g > 0)
    if flagged.any():
        nonzero = np.flatnonzero(dens > 0)
        nearest = nonzero[np.abs(nonzero[None, :] - idx[flagged, None]).argmin(axis=1)]
        g = g.copy()
        g[flagged] = dens[nearest]
    return g, flagged


def continuous_asymptotic_band(
    dataset: ForecastDataset, summary: UniqueValueSummary, fit: IsotonicFit, spec: BandSpec
) -> UncertaintyBand:
    """Cube-root band based on Chernoff's distribution.

    Consistency bands assume a unit CEP slope; confidence bands need
    ``spec.derivative``.
    """
    n = dataset.n
    if n < 30:
        raise ValidationError("continuous asymptotics need n >= 30")
    if spec.kind is BandKind.CONSISTENCY:
        slope = 1.0
    elif spec.derivative is None:
        raise ValidationError("confidence bands from continuous asymptotics need a CEP derivative")
    else:
        slope = spec.derivative
    c = _center(summary, fit, spec.kind)
    g, flagged = design_density(dataset.forecasts, summary.values)
    half = wright_halfwidth(c, n, g, slope, chernoff_quantile(_tails(spec.level)[1]))
    return _finish(summary, c, c - half, c + half, BandMethod.ASYMPTOTIC_CONTINUOUS, spec, flagged)


def compute_band(
    dataset: ForecastDataset,
    spec: BandSpec,
    summary: UniqueValueSummary | None = None,
    fit: IsotonicFit | None = None,
) -> UncertaintyBand:
    if summary is None:
        summary = aggregate(dataset)
    if fit is None:
        fit = pav_fit(summary)
    method = select_method(summary.n, summary.k, spec)
    if method is BandMethod.RESAMPLING:
        return resampling_band(summary, fit, spec)
    if method is BandMethod.ASYMPTOTIC_DISCRETE:
        return discrete_asymptotic_band(summary, fit, spec)
    return continuous_asymptotic_band(dataset, summary, fit, spec)
