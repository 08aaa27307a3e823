"""Detrending moving-average cross-correlation (DMCA) coefficient.

Measures the correlation of two possibly non-stationary series through the
residuals of their integrated profiles around a moving average, plus a
generator of correlated ARFIMA(0, d, 0) pairs and a Monte Carlo harness for
studying the estimator.
"""

__version__ = "0.1.0"

from .arfima import (
    ArfimaSpec,
    InnovationPair,
    arfima_weights,
    correlated_innovations,
    fractional_filter,
    generate_pair,
)
from .core import (
    CENTERED,
    DetrendConfig,
    DmcaEstimate,
    FluctuationPair,
    MovingAverage,
    ResidualSeries,
    as_series,
    dmca_coefficient,
    dmca_profile,
    fluctuations,
    integrate,
    moving_average,
    residuals,
)
from .errors import *  # noqa: F401,F403
from .montecarlo import McGrid, McSummary, mix_seed, quantile, run_cell, run_grid
