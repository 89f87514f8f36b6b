"""Auction format comparison for MEV builder markets.

Heavy-tailed log-normal valuations with a Gaussian common factor,
equilibrium bid functions for the standard formats, a seeded Monte
Carlo revenue grid over competition and correlation, and the empirical
tooling (fit, summary, calibration) to take the model to transaction
data.  Kernel backend selection: set AUCTIONLAB_BACKEND to "numba",
"numpy", or "auto" (default) before import, or call set_backend().
"""

__version__ = "0.1.0"

from ._kernels import active_backend, set_backend
from .affiliation import (
    AffiliationModel,
    posterior_common_factor,
    sample_signals,
    signals_from_factors,
    signals_to_values,
)
from .distributions import (
    LognormalParams,
    expected_second_order_statistic,
    fit_mle,
    gini_closed_form,
    lorenz_share,
)
from .empirics import (
    CalibrationResult,
    TransactionRecord,
    TypeSummary,
    calibrate_n,
    empirical_gini,
    estimate_rho_icc,
    load_transactions,
    pareto_curve,
    summarize_by_type,
)
from .equilibrium_affiliated import (
    BidFunction,
    evaluate_bid,
    evaluate_bid_at_signal,
    solve_bid_function,
)
from .equilibrium_ipv import (
    LognormalValues,
    UniformValues,
    allpay_bid_ipv,
    fpsb_bid_ipv,
    truthful_bid,
)
from .errors import (
    AuctionLabError,
    BidUnderflowWarning,
    CalibrationError,
    ConfigMismatchError,
    DomainError,
    IngestError,
    InsufficientDataError,
    SolverError,
)
from .metrics import (
    GapSurface,
    affiliation_premium,
    dollar_foregone,
    linkage_gap,
)
from .simulate import (
    CellResult,
    RevenueGrid,
    grid_from_json,
    grid_to_csv,
    grid_to_json,
    load_reference_table,
    reference_grid,
    run_grid,
    simulate_cell,
    verify_linkage,
    verify_revenue_equivalence,
)
from .synthetic import generate_transactions, transactions_to_csv

__all__ = [
    "__version__",
    "active_backend",
    "set_backend",
    "AffiliationModel",
    "posterior_common_factor",
    "sample_signals",
    "signals_from_factors",
    "signals_to_values",
    "LognormalParams",
    "expected_second_order_statistic",
    "fit_mle",
    "gini_closed_form",
    "lorenz_share",
    "CalibrationResult",
    "TransactionRecord",
    "TypeSummary",
    "calibrate_n",
    "empirical_gini",
    "estimate_rho_icc",
    "load_transactions",
    "pareto_curve",
    "summarize_by_type",
    "BidFunction",
    "evaluate_bid",
    "evaluate_bid_at_signal",
    "solve_bid_function",
    "LognormalValues",
    "UniformValues",
    "allpay_bid_ipv",
    "fpsb_bid_ipv",
    "truthful_bid",
    "AuctionLabError",
    "BidUnderflowWarning",
    "CalibrationError",
    "ConfigMismatchError",
    "DomainError",
    "IngestError",
    "InsufficientDataError",
    "SolverError",
    "GapSurface",
    "affiliation_premium",
    "dollar_foregone",
    "linkage_gap",
    "CellResult",
    "RevenueGrid",
    "grid_from_json",
    "grid_to_csv",
    "grid_to_json",
    "load_reference_table",
    "reference_grid",
    "run_grid",
    "simulate_cell",
    "verify_linkage",
    "verify_revenue_equivalence",
    "generate_transactions",
    "transactions_to_csv",
]
