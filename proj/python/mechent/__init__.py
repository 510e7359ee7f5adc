"""Steady-state mechanical entanglement between two optomechanical mirrors.

Parameter sets are plain dicts in the config-file schema, e.g.
``{"reduced": {"gain_over_kappa": 0.26}}``; omitted fields take the defaults.
Overrides use the sweep vocabulary in SI / rad/s units.
"""

import json

from . import _core
from ._core import (
    ConfigError,
    DomainError,
    IoError,
    MechentError,
    NoFeasibleRegionError,
    PhysicalityError,
    SingularError,
    UnstableError,
    log_negativity,
    solve_lyapunov,
    thermal_occupancy,
)

__version__ = _core.__version__


def _config(params):
    return "" if params is None else json.dumps(params)


def _overrides(overrides):
    return [f"{k}={v!r}" for k, v in (overrides or {}).items()]


def resolve_params(params=None, **overrides):
    return json.loads(_core.resolve_params(_config(params), _overrides(overrides)))


def compute(params=None, *, strict=True, **overrides):
    """Full single-point report; raises UnstableError for unstable points when strict."""
    return json.loads(_core.compute(_config(params), _overrides(overrides), strict))


def sweep(axes, params=None, *, jobs=1, **overrides):
    """Grid sweep. ``axes`` is a list of (name, min, max, count[, 'linear'|'log'])."""
    full = [tuple(a) if len(a) == 5 else (*a, "linear") for a in axes]
    return _core.sweep(_config(params), _overrides(overrides), full, jobs)


def figure(fig_id, *, points=101, jobs=1):
    out = _core.figure(fig_id, points, jobs)
    out["summary"] = json.loads(out["summary"])
    return out


def optimize(free, params=None, *, handling="reject", seed=None, tolerance=None, **overrides):
    """Maximize E_N; ``free`` is a list of (name, lower, upper)."""
    kwargs = {}
    if seed is not None:
        kwargs["seed"] = seed
    if tolerance is not None:
        kwargs["tolerance"] = tolerance
    return json.loads(_core.optimize(_config(params), _overrides(overrides), list(free), handling, **kwargs))


def validate(params=None, *, tolerance=0.02, **overrides):
    return json.loads(_core.validate(_config(params), _overrides(overrides), tolerance))
