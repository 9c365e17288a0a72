"""Proper scoring rules and the CORP score decomposition.

The decomposition compares the mean score of the original forecasts with
that of the PAV-recalibrated forecasts and of the constant climatological
forecast ``ybar``::

    mean_score = MCB - DSC + UNC
    MCB = S(x) - S(x_hat),  DSC = S(ybar) - S(x_hat),  UNC = S(ybar)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import ValidationError
from .pav import ForecastDataset, UniqueValueSummary, aggregate, pav_fit


@dataclass(frozen=True)
class ScoringRule:
    """A proper scoring rule for binary events.

    ``name`` is one of ``"brier"``, ``"log"``, ``"misclass"`` or
    ``"elementary"``; the elementary rule needs ``threshold`` in (0, 1).
    """

    name: str
    threshold: float | None = None

    def __post_init__(self):
        if self.name not in ("brier", "log", "misclass", "elementary"):
            raise ValidationError(f"unknown scoring rule {self.name!r}")
        if self.name == "elementary":
            if self.threshold is None or not 0.0 < self.threshold < 1.0:
                raise ValidationError("elementary threshold must lie strictly inside (0, 1)")
        elif self.threshold is not None:
            raise ValidationError(f"{self.name} takes no threshold")

    def __call__(self, forecast, outcome) -> np.ndarray:
        return score(self, forecast, outcome)

    def __str__(self):
        return f"elementary({self.threshold:g})" if self.name == "elementary" else self.name


BRIER = ScoringRule("brier")
LOGARITHMIC = ScoringRule("log")
MISCLASSIFICATION = ScoringRule("misclass")

_ALIASES = {
    "brier": BRIER,
    "log": LOGARITHMIC,
    "logarithmic": LOGARITHMIC,
    "misclass": MISCLASSIFICATION,
    "misclassification": MISCLASSIFICATION,
}


def elementary(threshold: float) -> ScoringRule:
    return ScoringRule("elementary", float(threshold))


def get_rule(rule: ScoringRule | str) -> ScoringRule:
    if isinstance(rule, ScoringRule):
        return rule
    try:
        return _ALIASES[rule.lower()]
    except KeyError:
        raise ValidationError(f"unknown scoring rule {rule!r}") from None


def score(rule: ScoringRule | str, forecast, outcome):
    """Elementwise penalty ``S(x, y)``; the log score may return ``inf``."""
    rule = get_rule(rule)
    x = np.asarray(forecast, dtype=np.float64)
    y = np.asarray(outcome, dtype=np.float64)
    if rule.name == "brier":
        return (x - y) ** 2
    if rule.name == "log":
        with np.errstate(divide="ignore"):
            return np.where(y == 1.0, -np.log(x), -np.log1p(-x))
    if rule.name == "misclass":
        wrong = ((x < 0.5) & (y == 1.0)) | ((x > 0.5) & (y == 0.0))
        return np.where(x == 0.5, 0.5, wrong.astype(np.float64))
    theta = rule.threshold
    return ((theta < x).astype(np.float64) - (theta < y)) * (theta - y)


def mean_score(rule: ScoringRule | str, dataset: ForecastDataset) -> float:
    return float(np.mean(score(rule, dataset.forecasts, dataset.outcomes)))


@dataclass(frozen=True)
class ScoreDecomposition:
    rule: ScoringRule
    mean_score: float
    mcb: float
    dsc: float
    unc: float
    reference: float
    calibrated_mean: float
    reference_mean: float

    @property
    def finite(self) -> bool:
        """False when an original forecast incurs an infinite penalty."""
        return math.isfinite(self.mean_score)

    def as_dict(self) -> dict:
        return {
            "rule": str(self.rule),
            "mean_score": self.mean_score,
            "mcb": self.mcb,
            "dsc": self.dsc,
            "unc": self.unc,
        }


def corp_decomposition(
    rule: ScoringRule | str, dataset: ForecastDataset, recalibrated: np.ndarray | None = None
) -> ScoreDecomposition:
    """CORP decomposition of the mean score under ``rule``.

    ``recalibrated`` may pass precomputed PAV values to skip refitting.
    """
    rule = get_rule(rule)
    if recalibrated is None:
        recalibrated = pav_fit(aggregate(dataset)).fitted_per_observation
    y = dataset.outcomes
    ybar = dataset.event_rate
    s_x = float(np.mean(score(rule, dataset.forecasts, y)))
    s_c = float(np.mean(score(rule, recalibrated, y)))
    s_r = float(np.mean(score(rule, np.full(y.shape, ybar), y)))
    return ScoreDecomposition(rule, s_x, s_x - s_c, s_r - s_c, s_r, ybar, s_c, s_r)


@dataclass(frozen=True)
class MurphyBrierDecomposition:
    rel: float
    res: float
    unc: float


def murphy_brier_decomposition(summary: UniqueValueSummary) -> MurphyBrierDecomposition:
    """Classical reliability/resolution/uncertainty split of the Brier score."""
    n = summary.n
    nj = summary.counts
    freq = summary.frequencies
    ybar = summary.event_counts.sum() / n
    rel = float(np.sum(nj * (freq - summary.values) ** 2) / n)
    res = float(np.sum(nj * (freq - ybar) ** 2) / n)
    return MurphyBrierDecomposition(rel, res, float(ybar * (1.0 - ybar)))


@dataclass(frozen=True)
class MurphyCurve:
    """Decomposition components of the elementary scores over thresholds."""

    thresholds: np.ndarray
    mean_score: np.ndarray
    mcb: np.ndarray
    dsc: np.ndarray
    unc: np.ndarray


def murphy_diagram(dataset: ForecastDataset, thresholds: Sequence[float]) -> MurphyCurve:
    """Evaluate the CORP decomposition under each elementary score.

    Twice the integral over thresholds of each curve recovers the matching
    Brier component.
    """
    theta = np.asarray(thresholds, dtype=np.float64).ravel()
    if np.any((theta <= 0.0) | (theta >= 1.0)):
        raise ValidationError("thresholds must lie strictly inside (0, 1)")
    x = dataset.forecasts
    y = dataset.outcomes.astype(np.float64)
    x_hat = pav_fit(aggregate(dataset)).fitted_per_observation
    ybar = dataset.event_rate

    def curve(f):
        # (1{theta < f} - 1{theta < y}) (theta - y), averaged over observations
        out = np.empty(theta.size)
        for lo in range(0, theta.size, 256):
            t = theta[lo:lo + 256, None]
            out[lo:lo + 256] = np.mean(((t < f).astype(np.float64) - (t < y)) * (t - y), axis=1)
        return out

    s_x = curve(x)
    s_c = curve(x_hat)
    s_r = curve(np.full(y.shape, ybar))
    return MurphyCurve(theta, s_x, s_x - s_c, s_r - s_c, s_r)
