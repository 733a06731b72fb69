from ._weylab import (
    arc_mean_value,
    baker_bound,
    baker_count,
    classify_arc,
    eval_sum,
    min_frac,
    profile_count,
    sigma,
    verify,
    vinogradov_count,
    BudgetExceeded,
)

__all__ = [
    "arc_mean_value",
    "baker_bound",
    "baker_count",
    "classify_arc",
    "eval_sum",
    "min_frac",
    "profile_count",
    "sigma",
    "verify",
    "vinogradov_count",
    "BudgetExceeded",
]

__version__ = "0.1.0"
