"""Detrending moving-average kernels and the DMCA correlation coefficient.

The pipeline is::

    increments x_t --integrate--> profile X_t --moving average--> residuals
    residuals of x and y --> F2_x, F2_y, F2_xy --> rho = F2_xy / sqrt(F2_x F2_y)

Window geometry
---------------
For a window length ``lam`` and type factor ``theta`` the moving average at
(1-based) time ``t`` is the mean of the profile over::

    t - (1 - theta) * (lam - 1)  ...  t + theta * (lam - 1)

and it is evaluated for ``t`` in ``floor(lam - theta*(lam-1)) .. floor(T -
theta*(lam-1))``. This is the only window placement for which every window on
that range lies inside the series, and it always gives ``T - lam + 1``
residuals. ``theta=0.5`` is the centred average (the default);
``theta=0`` averages the ``lam`` most recent points up to ``t``;
``theta=1`` averages ``t`` and the ``lam - 1`` following points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateVariance,
    EmptySeries,
    EvenCenteredWindow,
    InvalidWindow,
    LengthMismatch,
    NonFiniteInput,
    WindowTooLarge,
)

__all__ = [
    "CENTERED",
    "DetrendConfig",
    "MovingAverage",
    "ResidualSeries",
    "FluctuationPair",
    "DmcaEstimate",
    "as_series",
    "integrate",
    "moving_average",
    "residuals",
    "fluctuations",
    "dmca_coefficient",
    "dmca_profile",
]

CENTERED = 0.5
_THETAS = (0.0, 0.5, 1.0)

# Residual RMS at or below this many ulps of the profile scale (per sqrt(n))
# is rounding noise, not variation.
_NOISE_ULPS = 16.0


@dataclass(frozen=True)
class DetrendConfig:
    lam: int
    theta: float = CENTERED

    def __post_init__(self):
        lam = self.lam
        if isinstance(lam, (bool, np.bool_)) or int(lam) != lam:
            raise InvalidWindow(f"window length must be an integer, got {lam!r}")
        object.__setattr__(self, "lam", int(lam))
        if self.lam < 2:
            raise InvalidWindow(f"window length must be >= 2, got {self.lam}")
        if self.theta not in _THETAS:
            raise InvalidWindow(f"theta must be one of {_THETAS}, got {self.theta!r}")
        object.__setattr__(self, "theta", float(self.theta))
        if self.theta == CENTERED and self.lam % 2 == 0:
            raise EvenCenteredWindow(
                f"centred moving average needs an odd window, got {self.lam}"
            )

    @property
    def past(self) -> int:
        """Number of points before ``t`` inside the window."""
        return int(round((1.0 - self.theta) * (self.lam - 1)))

    @property
    def future(self) -> int:
        """Number of points after ``t`` inside the window."""
        return self.lam - 1 - self.past

    @property
    def offset(self) -> int:
        """1-based time index of the first valid moving-average point."""
        return int(np.floor(self.lam - self.theta * (self.lam - 1)))

    def n_valid(self, length: int) -> int:
        return length - self.lam + 1

    def check_length(self, length: int) -> None:
        if self.lam > length:
            raise WindowTooLarge(
                f"window length {self.lam} exceeds series length {length}"
            )


@dataclass(frozen=True)
class MovingAverage:
    values: np.ndarray
    offset: int
    config: DetrendConfig


@dataclass(frozen=True)
class ResidualSeries:
    """Profile minus its moving average over the valid time range.

    ``values[k]`` belongs to 1-based time ``offset + k``.
    """

    values: np.ndarray
    offset: int
    config: DetrendConfig

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class FluctuationPair:
    f2_x: float
    f2_y: float
    f2_xy: float
    lam: int
    n_residuals: int


@dataclass(frozen=True)
class DmcaEstimate:
    rho: float
    lam: int
    theta: float = CENTERED
    fluctuations: FluctuationPair | None = field(default=None, compare=False)


def _config(lam, theta) -> DetrendConfig:
    if isinstance(lam, DetrendConfig):
        return lam
    return DetrendConfig(lam, theta)


def as_series(values) -> np.ndarray:
    """Validate a sequence of increments and return it as a float64 array."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size == 0:
        raise EmptySeries("series is empty")
    bad = ~np.isfinite(arr)
    if bad.any():
        i = int(np.argmax(bad))
        raise NonFiniteInput(i, float(arr[i]))
    return arr


def integrate(series) -> np.ndarray:
    """Running cumulative sum ``X_t = x_1 + ... + x_t``."""
    return np.cumsum(as_series(series))


def _window_excess(profile: np.ndarray, cfg: DetrendConfig) -> np.ndarray:
    """``sum(X_j for j in window(t)) - lam * X_t`` for every valid ``t``.

    Tracked as a running sum of its own first differences, so the state stays
    at the scale of the residuals rather than the scale of a prefix sum of the
    profile (which grows like T * |X| and loses digits for trending inputs).
    """
    lam, a, b = cfg.lam, cfg.past, cfg.future
    n = len(profile) - lam + 1
    # first valid t sits at 0-based index a; its window is profile[0:lam]
    start = np.sum(profile[:lam] - profile[a])
    if n == 1:
        return np.array([start])
    i = np.arange(a, a + n - 1)
    steps = (profile[i + b + 1] - profile[i - a]) - lam * (profile[i + 1] - profile[i])
    return np.cumsum(np.concatenate(([start], steps)))


def moving_average(profile, lam, theta: float = CENTERED) -> MovingAverage:
    """Moving average of ``profile`` over the valid time range, in O(T)."""
    cfg = _config(lam, theta)
    prof = as_series(profile)
    cfg.check_length(len(prof))
    excess = _window_excess(prof, cfg)
    a = cfg.past
    values = prof[a : a + len(excess)] + excess / cfg.lam
    return MovingAverage(values, cfg.offset, cfg)


def _residual_values(prof: np.ndarray, cfg: DetrendConfig) -> np.ndarray:
    return -_window_excess(prof, cfg) / cfg.lam


def residuals(profile, lam, theta: float = CENTERED) -> ResidualSeries:
    """``X_t`` minus its moving average, one value per valid ``t``."""
    cfg = _config(lam, theta)
    prof = as_series(profile)
    cfg.check_length(len(prof))
    return ResidualSeries(_residual_values(prof, cfg), cfg.offset, cfg)


def _profiles(x, y) -> tuple[np.ndarray, np.ndarray]:
    xs, ys = as_series(x), as_series(y)
    if len(xs) != len(ys):
        raise LengthMismatch(f"series lengths differ: {len(xs)} != {len(ys)}")
    return np.cumsum(xs), np.cumsum(ys)


def _fluct(ex: np.ndarray, ey: np.ndarray, lam: int) -> FluctuationPair:
    n = len(ex)
    # np.sum is pairwise, which keeps long sums within ~1e-15 relative
    return FluctuationPair(
        f2_x=float(np.sum(ex * ex) / n),
        f2_y=float(np.sum(ey * ey) / n),
        f2_xy=float(np.sum(ex * ey) / n),
        lam=lam,
        n_residuals=n,
    )


def fluctuations(x, y, lam, theta: float = CENTERED) -> FluctuationPair:
    """DMA fluctuations of each series and their DMCA covariance.

    Parameters
    ----------
    x, y : array_like
        Increment series of equal length ``T``.
    lam : int
        Moving-average window length, ``2 <= lam <= T``.
    theta : {0, 0.5, 1}
        Window type factor.

    Returns
    -------
    FluctuationPair
        ``f2_x``, ``f2_y`` and ``f2_xy``, each normalised by ``T - lam + 1``.
    """
    cfg = _config(lam, theta)
    px, py = _profiles(x, y)
    cfg.check_length(len(px))
    return _fluct(_residual_values(px, cfg), _residual_values(py, cfg), cfg.lam)


def _is_flat(res: np.ndarray, prof: np.ndarray) -> bool:
    scale = float(np.max(np.abs(prof)))
    rms = float(np.sqrt(np.mean(res * res)))
    floor = _NOISE_ULPS * np.finfo(np.float64).eps * np.sqrt(len(res)) * scale
    return rms <= floor


def _estimate(px: np.ndarray, py: np.ndarray, cfg: DetrendConfig) -> DmcaEstimate:
    cfg.check_length(len(px))
    ex = _residual_values(px, cfg)
    ey = _residual_values(py, cfg)
    for name, res, prof in (("x", ex, px), ("y", ey, py)):
        if _is_flat(res, prof):
            raise DegenerateVariance(
                f"residuals of {name} have no variation at lambda={cfg.lam}"
            )
    fp = _fluct(ex, ey, cfg.lam)
    denom = np.sqrt(fp.f2_x * fp.f2_y)
    if not np.isfinite(denom) or denom == 0.0:
        # product over/underflowed; the factored form is still well scaled
        denom = np.sqrt(fp.f2_x) * np.sqrt(fp.f2_y)
    return DmcaEstimate(float(fp.f2_xy / denom), cfg.lam, cfg.theta, fp)


def dmca_coefficient(x, y, lam, theta: float = CENTERED) -> DmcaEstimate:
    """Detrending moving-average cross-correlation coefficient of two series.

    ``x`` and ``y`` are increments; both are integrated internally. The
    result lies in ``[-1, 1]`` up to rounding. Raises
    :class:`~dmca.errors.DegenerateVariance` when either residual series is
    flat (for example, increments that are constant), since the coefficient
    is undefined there.
    """
    cfg = _config(lam, theta)
    px, py = _profiles(x, y)
    return _estimate(px, py, cfg)


def dmca_profile(
    x, y, lambdas: Iterable[int], theta: float = CENTERED
) -> list[DmcaEstimate | Exception]:
    """Evaluate the coefficient for several window lengths on one pair.

    Profiles are built once. A window that fails (too long, even centred,
    degenerate) yields its exception object in place of an estimate; the
    remaining windows are still evaluated.
    """
    px, py = _profiles(x, y)
    out: list[DmcaEstimate | Exception] = []
    for lam in lambdas:
        try:
            out.append(_estimate(px, py, _config(lam, theta)))
        except (InvalidWindow, DegenerateVariance) as exc:
            out.append(exc)
    return out


def parse_lambdas(text: str | Sequence[int]) -> list[int]:
    """Parse ``"5,15,31"`` (or pass a sequence through) into window lengths."""
    if isinstance(text, str):
        parts = [p.strip() for p in text.split(",") if p.strip()]
        try:
            return [int(p) for p in parts]
        except ValueError as exc:
            raise InvalidWindow(f"bad window list {text!r}") from exc
    return [int(v) for v in text]
