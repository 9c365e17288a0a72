"""Quantiles of Chernoff's distribution.

Z = argmax_t {W(t) - t^2} for two-sided Brownian motion W.  Upper-half
quantiles are tabulated (regenerate with ``tools/chernoff_table.py``) and
interpolated linearly; the lower half follows by symmetry.
"""

import numpy as np

from .exceptions import ValidationError

# (probability, quantile) for p >= 0.5
_TABLE = np.array([
    (0.5000, 0.000000),
    (0.5100, 0.013188),
    (0.5200, 0.026384),
    (0.5300, 0.039595),
    (0.5400, 0.052830),
    (0.5500, 0.066097),
    (0.5600, 0.079403),
    (0.5700, 0.092757),
    (0.5800, 0.106169),
    (0.5900, 0.119645),
    (0.6000, 0.133196),
    (0.6100, 0.146832),
    (0.6200, 0.160561),
    (0.6300, 0.174394),
    (0.6400, 0.188343),
    (0.6500, 0.202418),
    (0.6600, 0.216633),
    (0.6700, 0.230999),
    (0.6800, 0.245530),
    (0.6900, 0.260242),
    (0.7000, 0.275151),
    (0.7100, 0.290274),
    (0.7200, 0.305629),
    (0.7300, 0.321238),
    (0.7400, 0.337123),
    (0.7500, 0.353308),
    (0.7600, 0.369821),
    (0.7700, 0.386694),
    (0.7800, 0.403959),
    (0.7900, 0.421656),
    (0.8000, 0.439828),
    (0.8100, 0.458525),
    (0.8200, 0.477804),
    (0.8300, 0.497731),
    (0.8400, 0.518385),
    (0.8500, 0.539855),
    (0.8600, 0.562252),
    (0.8700, 0.585706),
    (0.8800, 0.610378),
    (0.8900, 0.636470),
    (0.9000, 0.664235),
    (0.9100, 0.694004),
    (0.9200, 0.726216),
    (0.9300, 0.761477),
    (0.9400, 0.800658),
    (0.9500, 0.845081),
    (0.9510, 0.849884),
    (0.9520, 0.854763),
    (0.9530, 0.859720),
    (0.9540, 0.864758),
    (0.9550, 0.869881),
    (0.9560, 0.875093),
    (0.9570, 0.880397),
    (0.9580, 0.885798),
    (0.9590, 0.891299),
    (0.9600, 0.896905),
    (0.9610, 0.902621),
    (0.9620, 0.908453),
    (0.9630, 0.914405),
    (0.9640, 0.920486),
    (0.9650, 0.926700),
    (0.9660, 0.933056),
    (0.9670, 0.939560),
    (0.9680, 0.946222),
    (0.9690, 0.953052),
    (0.9700, 0.960058),
    (0.9710, 0.967253),
    (0.9720, 0.974648),
    (0.9730, 0.982258),
    (0.9740, 0.990096),
    (0.9750, 0.998181),
    (0.9760, 1.006531),
    (0.9770, 1.015166),
    (0.9780, 1.024110),
    (0.9790, 1.033391),
    (0.9800, 1.043038),
    (0.9810, 1.053088),
    (0.9820, 1.063579),
    (0.9830, 1.074560),
    (0.9840, 1.086087),
    (0.9850, 1.098223),
    (0.9860, 1.111050),
    (0.9870, 1.124661),
    (0.9880, 1.139174),
    (0.9890, 1.154736),
    (0.9900, 1.171534),
    (0.9910, 1.189813),
    (0.9920, 1.209897),
    (0.9930, 1.232241),
    (0.9940, 1.257496),
    (0.9950, 1.286659),
    (0.9960, 1.321370),
    (0.9970, 1.364637),
    (0.9980, 1.423026),
    (0.9990, 1.516664),
    (0.9990, 1.516664),
    (0.9995, 1.603613),
    (0.9999, 1.784955),
])
_P = _TABLE[:, 0]
_Q = _TABLE[:, 1]

VARIANCE = 0.2635596413


def chernoff_quantile(p: float) -> float:
    """Quantile function of Chernoff's distribution for ``p`` in (0, 1)."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValidationError(f"probability {p} outside (0, 1)")
    upper = p if p >= 0.5 else 1.0 - p
    if upper > _P[-1]:
        raise ValidationError(f"probability {p} beyond the tabulated range; refusing to extrapolate")
    q = float(np.interp(upper, _P, _Q))
    return q if p >= 0.5 else -q
