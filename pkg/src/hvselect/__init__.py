"""Hypervolume subset selection: exact hypervolume, contributions and greedy selectors."""

from .contribution import (
    ContractViolation,
    hvc_definition,
    hvc_fast,
    hvc_update_after_add,
    joint_hvc,
)
from .core import (
    DimensionMismatchError,
    ReferencePointError,
    limit,
    nondominated_filter,
    reference_point,
    weakly_dominates,
    worse,
)
from .hypervolume import hv, hv_oracle_inclusion_exclusion, hv_oracle_monte_carlo, inclusive_hv
from .selectors import (
    SelectionProblem,
    SelectionResult,
    exhaustive_hssp,
    gi_hss,
    lgi_hss,
    select,
    ugi_hss,
)

__all__ = [
    "ContractViolation",
    "DimensionMismatchError",
    "ReferencePointError",
    "SelectionProblem",
    "SelectionResult",
    "exhaustive_hssp",
    "gi_hss",
    "hv",
    "hv_oracle_inclusion_exclusion",
    "hv_oracle_monte_carlo",
    "hvc_definition",
    "hvc_fast",
    "hvc_update_after_add",
    "inclusive_hv",
    "joint_hvc",
    "lgi_hss",
    "limit",
    "nondominated_filter",
    "reference_point",
    "select",
    "ugi_hss",
    "weakly_dominates",
    "worse",
]
