"""Analysis, simulation and verification workflows."""

from .analysis import (
    Report,
    circuit_success_probability,
    closed_forms,
    commutator_norm,
    disturbance,
    report,
    required_shots,
    success_probability_exact,
)
from .checks import CHECKS, CheckResult, run_checks
from .serialize import reports_to_csv, reports_to_json, write_atomic
from .shots import simulate_shots

__all__ = [
    "Report",
    "circuit_success_probability",
    "closed_forms",
    "commutator_norm",
    "disturbance",
    "report",
    "required_shots",
    "success_probability_exact",
    "CHECKS",
    "CheckResult",
    "run_checks",
    "reports_to_csv",
    "reports_to_json",
    "write_atomic",
    "simulate_shots",
]
