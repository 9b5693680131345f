from ._bbqi import (
    QuasiInterpolant,
    convergence_table,
    derivation_report_json,
    error_scan,
    mask_set_json,
    operator_norm_bound,
    validate_masks,
)

__all__ = [
    "QuasiInterpolant",
    "convergence_table",
    "derivation_report_json",
    "error_scan",
    "mask_set_json",
    "operator_norm_bound",
    "validate_masks",
]
