"""Monte-Carlo studies of CORP estimates under calibrated scenarios.

Scenarios draw forecast values from Uniform, Linear or Beta-mixture
distributions, either continuously or on ``k`` midpoints, and outcomes as
Bernoulli(x).  Every (scenario, n, replicate) triple gets its own RNG
stream derived from the master seed, so results never depend on the order
in which replicates are evaluated.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .bands import BandSpec, compute_band
from .exceptions import ValidationError
from .pav import ForecastDataset, aggregate, pav_fit

DISTRIBUTIONS = ("uniform", "linear", "betamix")


def density(distribution: str, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if distribution == "uniform":
        return np.ones_like(x)
    if distribution == "linear":
        return 0.4 + 1.2 * x
    if distribution == "betamix":
        return 0.75 * 10.0 * (1.0 - x) ** 9 + 0.25
    raise ValidationError(f"unknown distribution {distribution!r}")


def cdf(distribution: str, x) -> np.ndarray:
    x = np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)
    if distribution == "uniform":
        return x
    if distribution == "linear":
        return 0.4 * x + 0.6 * x**2
    if distribution == "betamix":
        return 0.75 * (1.0 - (1.0 - x) ** 10) + 0.25 * x
    raise ValidationError(f"unknown distribution {distribution!r}")


@dataclass(frozen=True)
class ScenarioSpec:
    """Forecast distribution and support; ``k=None`` means continuous.

    ``cep="sqrt"`` replaces the calibrated CEP by sqrt(x) (demo only).
    """

    distribution: str = "uniform"
    k: int | None = None
    n: int = 1024
    seed: int = 0
    cep: str = "calibrated"

    def __post_init__(self):
        if self.distribution not in DISTRIBUTIONS:
            raise ValidationError(f"unknown distribution {self.distribution!r}")
        if self.k is not None and self.k < 2:
            raise ValidationError("discrete scenarios need k >= 2")
        if self.n < 1:
            raise ValidationError("n must be positive")
        if self.cep not in ("calibrated", "sqrt"):
            raise ValidationError(f"unknown CEP {self.cep!r}")

    @property
    def label(self) -> str:
        support = "continuous" if self.k is None else f"discrete{self.k}"
        return f"{self.distribution}-{support}"

    @classmethod
    def parse(cls, label: str, **kw) -> "ScenarioSpec":
        """Parse labels such as ``uniform-continuous`` or ``linear-discrete10``."""
        try:
            dist, support = label.lower().split("-", 1)
        except ValueError:
            raise ValidationError(f"bad scenario label {label!r}") from None
        if support == "continuous":
            k = None
        elif support.startswith("discrete") and support[8:].isdigit():
            k = int(support[8:])
        else:
            raise ValidationError(f"bad scenario label {label!r}")
        return cls(dist, k, **kw)

    def true_cep(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        return np.sqrt(x) if self.cep == "sqrt" else x


def support_points(k: int) -> np.ndarray:
    return (2.0 * np.arange(1, k + 1) - 1.0) / (2.0 * k)


def support_probabilities(distribution: str, k: int) -> np.ndarray:
    q = density(distribution, support_points(k))
    return q / q.sum()


def sample_forecasts(spec: ScenarioSpec, rng: np.random.Generator | None = None) -> np.ndarray:
    rng = np.random.default_rng(spec.seed) if rng is None else rng
    if spec.k is not None:
        idx = rng.choice(spec.k, size=spec.n, p=support_probabilities(spec.distribution, spec.k))
        return support_points(spec.k)[idx]
    u = rng.random(spec.n)
    if spec.distribution == "uniform":
        return u
    if spec.distribution == "linear":
        return (-0.4 + np.sqrt(0.16 + 2.4 * u)) / 1.2
    beta = 1.0 - rng.random(spec.n) ** (1.0 / 10.0)
    return np.where(rng.random(spec.n) < 0.75, beta, u)


def sample_outcomes_calibrated(forecasts, seed=None, rng: np.random.Generator | None = None) -> np.ndarray:
    """Independent Bernoulli(x_i) outcomes."""
    rng = np.random.default_rng(seed) if rng is None else rng
    x = np.asarray(forecasts, dtype=np.float64)
    return (rng.random(x.size) < x).astype(np.int8)


def sample_dataset(spec: ScenarioSpec, rng: np.random.Generator) -> ForecastDataset:
    x = sample_forecasts(spec, rng)
    y = sample_outcomes_calibrated(spec.true_cep(x), rng=rng)
    return ForecastDataset(x, y)


@dataclass(frozen=True)
class BinningEstimatorSpec:
    """Binning-and-counting baseline.

    ``kind="fixed"`` uses ``m`` equidistant bins; ``kind="quantile"`` uses
    ``floor(n**alpha)`` bins bracketed by empirical quantiles.
    """

    kind: str
    m: int | None = None
    alpha: float | None = None

    def __post_init__(self):
        if self.kind == "fixed":
            if self.m is None or self.m < 1:
                raise ValidationError("fixed binning needs m >= 1")
        elif self.kind == "quantile":
            if self.alpha is None or not 0.0 < self.alpha < 1.0:
                raise ValidationError("quantile binning needs alpha in (0, 1)")
        else:
            raise ValidationError(f"unknown binning kind {self.kind!r}")

    @property
    def label(self) -> str:
        if self.kind == "fixed":
            return f"fixed-{self.m}"
        return f"quantile-{self.alpha:.4g}"

    def bins_for(self, n: int) -> int:
        if self.kind == "fixed":
            return self.m
        # floor(n^alpha) with a guard against 1000**(1/3) = 9.999...
        return max(1, math.floor(n**self.alpha + 1e-9))


def bin_edges(forecasts, spec: BinningEstimatorSpec) -> np.ndarray:
    x = np.asarray(forecasts, dtype=np.float64)
    m = spec.bins_for(x.size)
    if spec.kind == "fixed":
        return np.linspace(0.0, 1.0, m + 1)
    inner = np.quantile(x, np.arange(1, m) / m) if m > 1 else np.empty(0)
    return np.concatenate([[0.0], inner, [1.0]])


def binning_counting_estimate(dataset: ForecastDataset, spec: BinningEstimatorSpec) -> np.ndarray:
    """Event frequency of each observation's bin (half-open bins, last closed)."""
    edges = bin_edges(dataset.forecasts, spec)
    m = edges.size - 1
    idx = np.clip(np.searchsorted(edges, dataset.forecasts, side="right") - 1, 0, m - 1)
    counts = np.bincount(idx, minlength=m)
    events = np.bincount(idx, weights=dataset.outcomes, minlength=m)
    return events[idx] / counts[idx]


CORP = "corp"

DEFAULT_BASELINES = (
    BinningEstimatorSpec("fixed", m=5),
    BinningEstimatorSpec("fixed", m=10),
    BinningEstimatorSpec("fixed", m=50),
    BinningEstimatorSpec("quantile", alpha=1 / 6),
    BinningEstimatorSpec("quantile", alpha=1 / 3),
    BinningEstimatorSpec("quantile", alpha=1 / 2),
)


def _stream(seed: int, scenario: ScenarioSpec, n: int, rep: int, tag: str) -> np.random.Generator:
    key = (zlib.crc32(f"{tag}:{scenario.label}:{scenario.cep}".encode()), n, rep)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


@dataclass(frozen=True)
class StudyResult:
    """Long-format table of ``(scenario, estimator, n, statistic)`` rows."""

    statistic: str
    rows: tuple[tuple[str, str, int, float], ...]
    replicates: int
    seed: int

    def value(self, scenario: str, estimator: str, n: int) -> float:
        for s, e, m, v in self.rows:
            if (s, e, m) == (scenario, estimator, n):
                return v
        raise KeyError((scenario, estimator, n))

    def series(self, scenario: str, estimator: str) -> tuple[np.ndarray, np.ndarray]:
        pts = sorted((m, v) for s, e, m, v in self.rows if s == scenario and e == estimator)
        return np.array([p[0] for p in pts]), np.array([p[1] for p in pts])

    def to_csv(self) -> str:
        lines = [f"scenario,estimator,n,{self.statistic},replicates,seed"]
        lines += [f"{s},{e},{m},{v:.17g},{self.replicates},{self.seed}" for s, e, m, v in self.rows]
        return "\n".join(lines) + "\n"


def loglog_slope(ns, values) -> float:
    """Least-squares slope of log(values) on log(ns)."""
    return float(np.polyfit(np.log(ns), np.log(values), 1)[0])


def mse_study(
    scenarios: Iterable[ScenarioSpec],
    ns: Sequence[int],
    replicates: int,
    seed: int = 0,
    baselines: Sequence[BinningEstimatorSpec] = DEFAULT_BASELINES,
) -> StudyResult:
    """Mean over replicates of ``mean_i (CEP_hat(x_i) - CEP(x_i))^2``.

    All estimators see the same simulated datasets.
    """
    if replicates < 1:
        raise ValidationError("replicates must be positive")
    rows = []
    for scen in scenarios:
        for n in ns:
            spec = replace(scen, n=int(n))
            labels = [CORP] + [b.label for b in baselines]
            totals = np.zeros(len(labels))
            for rep in range(replicates):
                data = sample_dataset(spec, _stream(seed, spec, n, rep, "mse"))
                truth = spec.true_cep(data.forecasts)
                est = [pav_fit(aggregate(data)).fitted_per_observation]
                est += [binning_counting_estimate(data, b) for b in baselines]
                totals += [np.mean((e - truth) ** 2) for e in est]
            rows += [(spec.label, lab, int(n), float(t / replicates)) for lab, t in zip(labels, totals)]
    return StudyResult("mse", tuple(rows), replicates, seed)


def replicate_coverage(data: ForecastDataset, spec: ScenarioSpec, band_spec: BandSpec) -> float:
    """Fraction of unique forecast values at which the band covers its target.

    A consistency band should contain the observed CORP curve when the
    forecasts are calibrated; a confidence band should contain the true CEP.
    """
    summary = aggregate(data)
    fit = pav_fit(summary)
    band = compute_band(data, band_spec, summary=summary, fit=fit)
    if band_spec.kind.value == "consistency":
        target = fit.fitted_per_unique
    else:
        target = spec.true_cep(summary.values)
    return float(np.mean(band.contains(target)))


def coverage_study(
    scenarios: Iterable[ScenarioSpec],
    band_specs: Sequence[BandSpec],
    ns: Sequence[int],
    replicates: int,
    seed: int = 0,
) -> StudyResult:
    """Average pointwise coverage per (scenario, band, n).

    Each band spec is labelled ``<kind>-<level>-<method>``.  Band seeds are
    derived per replicate, so different levels share simulated data and
    resampling draws.
    """
    if replicates < 1:
        raise ValidationError("replicates must be positive")
    rows = []
    for scen in scenarios:
        for n in ns:
            spec = replace(scen, n=int(n))
            totals = np.zeros(len(band_specs))
            for rep in range(replicates):
                rng = _stream(seed, spec, n, rep, "coverage")
                data = sample_dataset(spec, rng)
                band_seed = int(rng.integers(2**63))
                totals += [
                    replicate_coverage(data, spec, replace(b, seed=band_seed)) for b in band_specs
                ]
            for b, t in zip(band_specs, totals):
                label = f"{b.kind.value}-{b.level:g}-{b.method.value}"
                rows.append((spec.label, label, int(n), float(t / replicates)))
    return StudyResult("coverage", tuple(rows), replicates, seed)
