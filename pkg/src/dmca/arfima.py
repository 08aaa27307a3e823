"""Pairs of ARFIMA(0, d, 0) series driven by correlated Gaussian noise.

Each output is a fractionally integrated moving average of its own
innovation stream::

    x_t = sum_{n >= 0} a_n(d1) eps_{t-n}
    y_t = sum_{n >= 0} a_n(d2) nu_{t-n}

with ``corr(eps_t, nu_t) = rho``. The infinite sums are evaluated over the
whole finite history that was drawn (``length + burn_in`` innovations), and
the first ``burn_in`` outputs are dropped.

Random numbers come from numpy's PCG64 bit generator seeded with the 64-bit
``seed``; normals are drawn with numpy's ziggurat sampler, all of ``eps``
first and then all of the auxiliary stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.signal import fftconvolve

from .errors import InvalidParameter

__all__ = [
    "D_RANGE",
    "ArfimaSpec",
    "InnovationPair",
    "arfima_weights",
    "correlated_innovations",
    "fractional_filter",
    "generate_pair",
]

D_RANGE = (-0.5, 1.5)
DEFAULT_BURN_IN = 1000
_UINT64_MAX = 2**64 - 1


def _check_d(d) -> float:
    d = float(d)
    if not math.isfinite(d) or not D_RANGE[0] <= d <= D_RANGE[1]:
        raise InvalidParameter(f"memory parameter d={d!r} outside {list(D_RANGE)}")
    return d


def _check_rho(rho) -> float:
    rho = float(rho)
    if not math.isfinite(rho) or abs(rho) > 1.0:
        raise InvalidParameter(f"innovation correlation {rho!r} outside [-1, 1]")
    return rho


def _check_seed(seed) -> int:
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= int(seed) <= _UINT64_MAX:
        raise InvalidParameter(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


@dataclass(frozen=True)
class ArfimaSpec:
    d1: float
    d2: float
    rho: float
    length: int
    burn_in: int = DEFAULT_BURN_IN
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "d1", _check_d(self.d1))
        object.__setattr__(self, "d2", _check_d(self.d2))
        object.__setattr__(self, "rho", _check_rho(self.rho))
        if int(self.length) != self.length or self.length < 1:
            raise InvalidParameter(f"length must be a positive integer, got {self.length!r}")
        if int(self.burn_in) != self.burn_in or self.burn_in < 0:
            raise InvalidParameter(f"burn_in must be >= 0, got {self.burn_in!r}")
        object.__setattr__(self, "length", int(self.length))
        object.__setattr__(self, "burn_in", int(self.burn_in))
        object.__setattr__(self, "seed", _check_seed(self.seed))


class InnovationPair(NamedTuple):
    eps: np.ndarray
    nu: np.ndarray


def arfima_weights(d: float, n_max: int) -> np.ndarray:
    """Fractional integration weights ``a_0 .. a_{n_max}``.

    ``a_n(d) = Gamma(n + d) / (Gamma(n + 1) Gamma(d))``, evaluated with the
    recurrence ``a_n = a_{n-1} (n - 1 + d) / n`` so that nothing overflows
    for long histories.
    """
    d = _check_d(d)
    if int(n_max) != n_max or n_max < 0:
        raise InvalidParameter(f"n_max must be a non-negative integer, got {n_max!r}")
    n = np.arange(1, int(n_max) + 1, dtype=np.float64)
    w = np.empty(int(n_max) + 1)
    w[0] = 1.0
    w[1:] = np.cumprod((n - 1.0 + d) / n)
    return w


def correlated_innovations(rho: float, n: int, seed: int) -> InnovationPair:
    """Standard normal streams with contemporaneous correlation ``rho``.

    ``nu = rho * eps + sqrt(1 - rho**2) * eta`` with ``eta`` independent of
    ``eps``. ``rho = 1`` gives ``nu`` identical to ``eps``.
    """
    rho = _check_rho(rho)
    if int(n) != n or n < 1:
        raise InvalidParameter(f"n must be a positive integer, got {n!r}")
    rng = np.random.Generator(np.random.PCG64(_check_seed(seed)))
    eps = rng.standard_normal(int(n))
    eta = rng.standard_normal(int(n))
    nu = rho * eps + math.sqrt(1.0 - rho * rho) * eta
    return InnovationPair(eps, nu)


def fractional_filter(noise: np.ndarray, d: float, method: str = "direct") -> np.ndarray:
    """Apply the ARFIMA(0, d, 0) filter over the full available history.

    ``out[t] = sum_{n=0}^{t} a_n(d) noise[t - n]``. ``method="direct"`` is an
    exact O(N^2) convolution; ``"fft"`` is O(N log N) with rounding error at
    the level of ``1e-15 * max|out|``.
    """
    noise = np.asarray(noise, dtype=np.float64)
    n = len(noise)
    w = arfima_weights(d, n - 1)
    if method == "direct":
        return np.convolve(noise, w)[:n]
    if method == "fft":
        return fftconvolve(noise, w)[:n]
    raise InvalidParameter(f"unknown convolution method {method!r}")


def generate_pair(spec: ArfimaSpec, method: str = "direct") -> tuple[np.ndarray, np.ndarray]:
    """Draw one ``(x, y)`` pair of length ``spec.length``."""
    total = spec.length + spec.burn_in
    eps, nu = correlated_innovations(spec.rho, total, spec.seed)
    x = fractional_filter(eps, spec.d1, method)[spec.burn_in :]
    y = fractional_filter(nu, spec.d2, method)[spec.burn_in :]
    return x, y
