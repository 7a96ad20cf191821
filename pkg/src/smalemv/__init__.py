"""Mean-value quantities of complex polynomials.

Core objects: exact-degree polynomials (``poly``), an Aberth-Ehrlich root
solver with multiplicity clustering (``roots``), the mean-value report with
bound margins and proof-chain quantities (``meanvalue``), derivative-free
extremal search over critical-point space (``search``), sublevel-set
contouring (``levelset``), and randomized verification campaigns
(``campaign``). The ``smalemv`` console script fronts all of it.
"""

from .campaign import CampaignConfig, CampaignSummary, DegreeSummary, run_campaign
from .levelset import (
    ContourSet,
    LevelSetGrid,
    containment_check,
    extract_contour,
    sample_grid,
)
from .meanvalue import (
    CoincidentPointsError,
    MeanValueReport,
    ProofQuantities,
    ZCriticalError,
    analyze,
    dual_lower_bound,
    q_value,
    tischler_value,
)
from .poly import (
    MAX_DEGREE,
    AffineMaps,
    ComplexPolynomial,
    affine_conjugate,
    from_critical_points,
    normalize_for_theorem,
    p0,
    pstar,
)
from .roots import (
    RootEstimate,
    RootSet,
    SolverConfig,
    SolverNotConvergedError,
    all_roots,
    c1_residual,
    critical_points,
)
from .search import SearchConfig, SearchResult, canonicalize, objective_eval, run_search

__version__ = "0.1.0"

__all__ = [
    "AffineMaps",
    "CampaignConfig",
    "CampaignSummary",
    "CoincidentPointsError",
    "ComplexPolynomial",
    "ContourSet",
    "DegreeSummary",
    "LevelSetGrid",
    "MAX_DEGREE",
    "MeanValueReport",
    "ProofQuantities",
    "RootEstimate",
    "RootSet",
    "SearchConfig",
    "SearchResult",
    "SolverConfig",
    "SolverNotConvergedError",
    "ZCriticalError",
    "affine_conjugate",
    "all_roots",
    "analyze",
    "c1_residual",
    "canonicalize",
    "containment_check",
    "critical_points",
    "dual_lower_bound",
    "extract_contour",
    "from_critical_points",
    "normalize_for_theorem",
    "objective_eval",
    "p0",
    "pstar",
    "q_value",
    "run_campaign",
    "run_search",
    "sample_grid",
    "tischler_value",
    "__version__",
]
