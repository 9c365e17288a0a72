"""CORP reliability diagrams: PAV recalibration, bands and score decompositions."""

from ._backend import BACKEND
from .bands import BandKind, BandMethod, BandSpec, UncertaintyBand, compute_band, select_method
from .chernoff import chernoff_quantile
from .diagram import DiagramMode, ReliabilityDiagram, build_diagram, detect_mode, fd_histogram
from .exceptions import CorpError, ValidationError
from .pav import ForecastDataset, IsotonicFit, UniqueValueSummary, aggregate, pav_fit, recalibrate
from .scoring import (
    BRIER,
    LOGARITHMIC,
    MISCLASSIFICATION,
    ScoreDecomposition,
    ScoringRule,
    corp_decomposition,
    elementary,
    mean_score,
    murphy_brier_decomposition,
    murphy_diagram,
    score,
)

__version__ = "0.1.0"
