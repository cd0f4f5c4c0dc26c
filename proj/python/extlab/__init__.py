"""Python front end for the extlab experiment library."""

import json as _json

from . import _extlab
from ._extlab import (
    DomainError,
    ResolutionError,
    SchemaError,
    agmon_hormander_ratio,
    classical_moyal,
    derive_seed,
    torus_reverse,
)

__all__ = [
    "DomainError",
    "ResolutionError",
    "SchemaError",
    "agmon_hormander_ratio",
    "classical_moyal",
    "derive_seed",
    "list_experiments",
    "run_config",
    "run_experiment",
    "torus_reverse",
    "xray_l2sq_cap",
]


def list_experiments():
    return _json.loads(_extlab.catalog_json())


def run_experiment(experiment_id, params=None, seed=0, tol=None):
    text = "" if params is None else _json.dumps(params)
    return _json.loads(_extlab.run_experiment_json(experiment_id, text, seed, tol))


def run_config(path, out, jobs=1, seed=None):
    return _extlab.run_config(str(path), str(out), jobs, seed)


def xray_l2sq_cap(terms, n_theta, center, radius, midpoint=False):
    """terms: iterable of (coeff, (x, y, z), width)."""
    weight = {
        "kind": "mixture",
        "dim": 3,
        "terms": [{"coeff": c, "center": list(a), "width": s} for c, a, s in terms],
    }
    return _extlab.xray_l2sq_cap(_json.dumps(weight), n_theta, list(center), radius, midpoint)
