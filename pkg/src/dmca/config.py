"""TOML configuration for the ``simulate`` command.

Every key is optional and sits at the top level of the document::

    d_values = [0.1, 0.4, 0.6, 0.9, 1.1, 1.4]
    rho_values = [-0.9, -0.8, ..., 0.9]
    lambda_values = [5, 15, 31, 101]
    t_values = [1000, 5000]
    replications = 1000
    master_seed = 20130101
    theta = 0.5
    burn_in = 1000
    method = "direct"        # or "fft"

Omitted keys take the defaults of :class:`dmca.montecarlo.McGrid` (the full
study). Unknown keys are rejected.
"""

from __future__ import annotations

import dataclasses
import os
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError, DmcaError
from .montecarlo import McGrid

GRID_KEYS = tuple(f.name for f in dataclasses.fields(McGrid))


def grid_from_mapping(data: dict) -> McGrid:
    unknown = sorted(set(data) - set(GRID_KEYS))
    if unknown:
        raise ConfigError(unknown[0], f"unknown key (allowed: {', '.join(GRID_KEYS)})")
    try:
        return McGrid(**data)
    except ConfigError:
        raise
    except (DmcaError, TypeError, ValueError) as exc:
        raise ConfigError("grid", str(exc)) from exc


def load_grid(path: str | os.PathLike) -> McGrid:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(str(path), exc.strerror or str(exc)) from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(str(path), f"invalid TOML: {exc}") from exc
    return grid_from_mapping(data)
