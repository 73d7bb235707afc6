"""Limits on prepare-and-measure correlations under an information budget.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._core import (  # noqa: F401
    Behavior,
    CapacityError,
    ConvergenceError,
    Ensemble,
    InequalityReport,
    InvalidInputError,
    ParseError,
    Scenario,
    SeesawResult,
    Witness,
    __version__,
    analytic_f1_curve,
    behavior_from_quantum,
    check_inequality,
    classical_witness_bound,
    di_info_curve,
    di_max_witness,
    di_min_info,
    four_bit_rac,
    hmin,
    info_eigen_bound,
    info_of_ensemble,
    min_info_membership,
    qubit_rac,
    rac_score,
    seesaw_max_witness,
    strategy_count,
    witness_value,
)
