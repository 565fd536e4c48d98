"""Nearest-neighbour concurrence on qubit rings."""

import json

from ._core import (
    CapacityError,
    ConvergenceError,
    EmptySectorError,
    InfeasibleError,
    RingentError,
    ShapeError,
    UnsupportedError,
    ValidationError,
    afm_concurrence,
    c_max,
    c_max_limit,
    concurrence,
    concurrence_block,
    e_min,
    fermion_levels,
    maximize_constrained,
    maximize_sector_unconstrained,
    n5_theta_family,
    n5_theta_opt,
    optimal_alpha,
    p_opt,
    pair_rdm_from_file,
    random_balanced_state,
    wootters_lambdas,
    xy_ground_energy,
)
from . import _core


def verify(suite, seed=20020101, n=6, samples=200, n_max=10):
    """Run a check suite and return its JSON summary as a dict."""
    return json.loads(_core._verify_json(suite, seed, n, samples, n_max))


def table_cmax(n_max=10, verify=False):
    return json.loads(_core._report_json("table-cmax", n_max, verify))


def table_afm(n_max=10, extrapolate=False):
    return json.loads(_core._report_json("table-afm", n_max, extrapolate))
