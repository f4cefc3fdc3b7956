"""Printed results of the quadratic case study and their verification."""

from .catalog import (
    Case,
    ConditionSet,
    Expected,
    PeriodBlock,
    UnknownEntryError,
    base_system,
    case_names,
    condition_names,
    elimination_data,
    first_constants,
    integral_data,
    load_case,
    load_condition,
    load_period,
    polynomial,
)
from .certificate import Certificate, cyclicity_certificate, two_cycle_fixture, verify_two_cycle
from .compare import constant_ratio, proportional, reduce_cofactor, strip_units
from .elimination import EliminationRecord, Window, cyclicity_pipeline, ratio_form, six_cycle_window
from .integrals import SingularPointError, check_integral, first_integral_residual, vector_field
from .verify import (
    DISCREPANCY,
    FAIL,
    PASS,
    Row,
    case_rows,
    condition_row,
    first_constant_rows,
    highest_order_check,
    period_rows,
    verify_all,
    verify_center,
    verify_isochronous,
)

__all__ = [
    "Case",
    "Certificate",
    "ConditionSet",
    "DISCREPANCY",
    "EliminationRecord",
    "Expected",
    "FAIL",
    "PASS",
    "PeriodBlock",
    "Row",
    "SingularPointError",
    "UnknownEntryError",
    "Window",
    "base_system",
    "case_names",
    "case_rows",
    "check_integral",
    "condition_names",
    "condition_row",
    "constant_ratio",
    "cyclicity_certificate",
    "cyclicity_pipeline",
    "elimination_data",
    "first_constant_rows",
    "first_constants",
    "first_integral_residual",
    "highest_order_check",
    "integral_data",
    "load_case",
    "load_condition",
    "load_period",
    "period_rows",
    "polynomial",
    "proportional",
    "ratio_form",
    "reduce_cofactor",
    "six_cycle_window",
    "strip_units",
    "two_cycle_fixture",
    "vector_field",
    "verify_all",
    "verify_center",
    "verify_isochronous",
    "verify_two_cycle",
]
