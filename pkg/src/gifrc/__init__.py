"""Rate regions, sum-capacity upper bounds and regime classification for the
Gaussian interference relay channel (two source-destination pairs plus a
relay, unit-variance receiver noise).

All rate and bound expressions are evaluated through an exact Gaussian
mutual-information engine (log-determinants of covariance blocks); closed
forms exist only as cross-checks.  A compiled extension kernel accelerates
the hot grid searches when available, with a vectorized numpy fallback
selected at import (see :mod:`gifrc.backend`).
"""

from .backend import backend_name
from .bounds import (
    CutsetParams,
    DofEstimate,
    cutset_region,
    cutset_sum_max,
    dof_estimate,
    potent_strong_engine,
    potent_strong_region,
    potent_strong_sum,
    potent_weak_closed_form,
    potent_weak_sum,
)
from .channel import (
    Channel,
    Regime,
    RegimeTag,
    SymmetricChannel,
    classify,
    classify_strong,
    db_to_linear,
    from_db,
    symmetric_weak_threshold,
    weak_feasibility_search,
)
from .gaussian import (
    GaussianSystem,
    MIQuery,
    covariance,
    mc_estimate_mi,
    mutual_information,
)
from .schemes import (
    CFParams,
    RateResult,
    build_system,
    cf_feasible,
    cf_rates,
    evaluate_scheme,
    gcf1_rates,
    gcf2_rates,
    ghf_rates,
    lattice_caf_rate,
    nnc_rates,
    optimize_cf,
    optimize_scheme,
)
from .search import Axis, SearchSpec, SearchResult, feasibility_scan, grid_maximize

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "Channel", "SymmetricChannel", "Regime", "RegimeTag",
    "db_to_linear", "from_db", "classify", "classify_strong",
    "symmetric_weak_threshold", "weak_feasibility_search",
    "GaussianSystem", "MIQuery", "covariance", "mutual_information", "mc_estimate_mi",
    "CFParams", "RateResult", "build_system",
    "cf_feasible", "cf_rates", "optimize_cf",
    "gcf1_rates", "gcf2_rates", "ghf_rates", "nnc_rates",
    "lattice_caf_rate", "optimize_scheme", "evaluate_scheme",
    "CutsetParams", "DofEstimate",
    "potent_weak_sum", "potent_weak_closed_form",
    "potent_strong_region", "potent_strong_engine", "potent_strong_sum",
    "cutset_region", "cutset_sum_max", "dof_estimate",
    "Axis", "SearchSpec", "SearchResult", "grid_maximize", "feasibility_scan",
    "__version__",
]
