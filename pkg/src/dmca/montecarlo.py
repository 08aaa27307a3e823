"""Monte Carlo study of the DMCA coefficient on correlated ARFIMA pairs.

Every grid cell ``(d, rho, lam, T)`` is simulated independently: replication
``r`` of the cell with ordinal ``k`` (position in sorted cell order) uses the
generator seed ``mix_seed(mix_seed(master_seed, k), r)``. Seeds therefore
depend only on the grid and the master seed, so results do not change with
the number of worker processes.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .arfima import DEFAULT_BURN_IN, ArfimaSpec, generate_pair
from .core import CENTERED, DetrendConfig, dmca_coefficient
from .errors import (
    AllReplicationsDegenerate,
    ConfigError,
    DegenerateVariance,
    DmcaError,
    EmptySample,
    InvalidGridCell,
    InvalidParameter,
)

__all__ = [
    "STUDY_D",
    "STUDY_RHO",
    "STUDY_LAMBDAS",
    "STUDY_T",
    "Cell",
    "McGrid",
    "McSummary",
    "mix_seed",
    "quantile",
    "run_cell",
    "run_grid",
]

log = logging.getLogger(__name__)

STUDY_D = (0.1, 0.4, 0.6, 0.9, 1.1, 1.4)
STUDY_RHO = tuple(k / 10 for k in range(-9, 10))
STUDY_LAMBDAS = (5, 15, 31, 101)
STUDY_T = (1000, 5000)
STUDY_REPLICATIONS = 1000

_QUANTILES = (0.025, 0.5, 0.975)


def mix_seed(*words: int) -> int:
    """Hash integers into one 64-bit seed (numpy ``SeedSequence`` mixing)."""
    ss = np.random.SeedSequence([int(w) for w in words])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def quantile(samples: Iterable[float], q: float) -> float:
    """Linearly interpolated order statistic at 1-based rank ``1 + q (n - 1)``.

    >>> quantile(range(1, 101), 0.5)
    50.5
    >>> quantile([7.0], 0.3)
    7.0
    """
    s = sorted(float(v) for v in samples)
    if not s:
        raise EmptySample("quantile of an empty sample")
    if not 0.0 <= q <= 1.0:
        raise InvalidParameter(f"quantile level {q!r} outside [0, 1]")
    h = q * (len(s) - 1)
    lo = math.floor(h)
    frac = h - lo
    if frac == 0.0:
        return s[lo]
    a, b = s[lo], s[lo + 1]
    # interpolate from the nearer end so the result never leaves [a, b]
    if frac < 0.5:
        return a + (b - a) * frac
    return b - (b - a) * (1.0 - frac)


class Cell(NamedTuple):
    d: float
    rho: float
    lam: int
    T: int


@dataclass(frozen=True)
class McSummary:
    d: float
    rho: float
    lam: int
    T: int
    q025: float | None = None
    q50: float | None = None
    q975: float | None = None
    mean: float | None = None
    stddev: float | None = None
    replications_used: int = 0
    degenerate: int = 0
    status: str = "ok"

    @property
    def cell(self) -> Cell:
        return Cell(self.d, self.rho, self.lam, self.T)

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def _tuple(name: str, values, cast) -> tuple:
    if isinstance(values, (str, bytes)) or not isinstance(values, Iterable):
        values = [values]
    try:
        out = tuple(sorted({cast(v) for v in values}))
    except (TypeError, ValueError) as exc:
        raise ConfigError(name, f"bad value in {values!r}") from exc
    if not out:
        raise ConfigError(name, "must not be empty")
    return out


def _int(v) -> int:
    if isinstance(v, bool) or int(v) != v:
        raise ValueError(v)
    return int(v)


@dataclass(frozen=True)
class McGrid:
    """Cartesian simulation grid; defaults reproduce the full study."""

    d_values: Sequence[float] = STUDY_D
    rho_values: Sequence[float] = STUDY_RHO
    lambda_values: Sequence[int] = STUDY_LAMBDAS
    t_values: Sequence[int] = STUDY_T
    replications: int = STUDY_REPLICATIONS
    master_seed: int = 0
    theta: float = CENTERED
    burn_in: int = DEFAULT_BURN_IN
    method: str = "direct"

    def __post_init__(self):
        for name, cast in (("d_values", float), ("rho_values", float),
                           ("lambda_values", _int), ("t_values", _int)):
            object.__setattr__(self, name, _tuple(name, getattr(self, name), cast))
        if max(self.lambda_values) >= min(self.t_values):
            raise ConfigError(
                "lambda_values", "every window length must be below every series length"
            )
        if isinstance(self.replications, bool) or int(self.replications) != self.replications:
            raise ConfigError("replications", "must be an integer")
        if self.replications < 2:
            raise ConfigError("replications", "need at least 2 for a standard deviation")
        if not 0 <= int(self.master_seed) < 2**64:
            raise ConfigError("master_seed", "must be an unsigned 64-bit integer")
        if int(self.burn_in) != self.burn_in or self.burn_in < 0:
            raise ConfigError("burn_in", "must be a non-negative integer")
        if self.method not in ("direct", "fft"):
            raise ConfigError("method", f"unknown convolution method {self.method!r}")
        for lam in self.lambda_values:
            try:
                DetrendConfig(lam, self.theta)
            except DmcaError as exc:
                raise ConfigError("lambda_values", str(exc)) from exc

    def cells(self) -> list[Cell]:
        """All cells in lexicographic ``(d, rho, lam, T)`` order."""
        return [
            Cell(*c)
            for c in itertools.product(
                self.d_values, self.rho_values, self.lambda_values, self.t_values
            )
        ]


def _summarize(cell: Cell, values: np.ndarray, degenerate: int) -> McSummary:
    q025, q50, q975 = (quantile(values, q) for q in _QUANTILES)
    return McSummary(
        *cell,
        q025=q025,
        q50=q50,
        q975=q975,
        mean=float(np.mean(values)),
        stddev=float(np.std(values, ddof=1)),
        replications_used=len(values),
        degenerate=degenerate,
    )


def cell_samples(
    d: float,
    rho: float,
    lam: int,
    T: int,
    replications: int,
    theta: float = CENTERED,
    burn_in: int = DEFAULT_BURN_IN,
    seed: int = 0,
    method: str = "direct",
) -> tuple[np.ndarray, int]:
    """Raw coefficient draws of one cell, in replication order.

    Returns the non-degenerate estimates and the number of degenerate draws.
    """
    try:
        cfg = DetrendConfig(lam, theta)
        ArfimaSpec(d, d, rho, T, burn_in, seed)
    except DmcaError as exc:
        raise InvalidGridCell(str(exc)) from exc
    if cfg.lam >= T:
        raise InvalidGridCell(f"window length {lam} must be below series length {T}")
    if replications < 2:
        raise InvalidGridCell("need at least 2 replications")
    values = []
    degenerate = 0
    for r in range(replications):
        spec = ArfimaSpec(d, d, rho, T, burn_in, mix_seed(seed, r))
        x, y = generate_pair(spec, method)
        try:
            values.append(dmca_coefficient(x, y, cfg).rho)
        except DegenerateVariance:
            degenerate += 1
    return np.array(values), degenerate


def run_cell(
    d: float,
    rho: float,
    lam: int,
    T: int,
    replications: int = 200,
    theta: float = CENTERED,
    burn_in: int = DEFAULT_BURN_IN,
    seed: int = 0,
    method: str = "direct",
) -> McSummary:
    """Simulate one grid cell and summarise the coefficient's distribution.

    Both series share the memory parameter ``d``. Draws that hit
    :class:`DegenerateVariance` are excluded and counted in
    ``McSummary.degenerate``.
    """
    values, degenerate = cell_samples(
        d, rho, lam, T, replications, theta, burn_in, seed, method
    )
    if len(values) < 2:
        raise AllReplicationsDegenerate(
            f"only {len(values)} of {replications} replications were usable"
        )
    return _summarize(Cell(float(d), float(rho), int(lam), int(T)), values, degenerate)


def _grid_task(args) -> McSummary:
    cell, grid_args, seed = args
    try:
        return run_cell(*cell, seed=seed, **grid_args)
    except DmcaError as exc:
        return McSummary(*cell, status=f"error: {type(exc).__name__}: {exc}")


def run_grid(grid: McGrid, workers: int = 1) -> list[McSummary]:
    """Simulate every cell of ``grid``; output follows ``grid.cells()`` order.

    Cells run in ``workers`` processes when ``workers > 1``. A failing cell
    becomes a summary row with an ``error: ...`` status instead of aborting
    the grid.
    """
    grid_args = dict(
        replications=grid.replications,
        theta=grid.theta,
        burn_in=grid.burn_in,
        method=grid.method,
    )
    tasks = [
        (cell, grid_args, mix_seed(grid.master_seed, k))
        for k, cell in enumerate(grid.cells())
    ]
    log.info("running %d cells x %d replications", len(tasks), grid.replications)
    if workers <= 1 or len(tasks) == 1:
        return [_grid_task(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_grid_task, tasks, chunksize=chunk))
