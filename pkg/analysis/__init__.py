"""Refutation modules, clash-time bounds, message accounting and the cost model."""

from .modules import (
    NotApplicableError,
    brute_force_minimal_module_size,
    certificate_for,
    enumerate_refutation_modules,
    is_refutation_module,
    minimal_refutation_module,
)
from .bounds import check_bounds
from .accounting import account_messages
from .cost_model import condition_star, expected_runtime_bound, verification_cost

__all__ = [
    "NotApplicableError",
    "brute_force_minimal_module_size",
    "certificate_for",
    "enumerate_refutation_modules",
    "is_refutation_module",
    "minimal_refutation_module",
    "check_bounds",
    "account_messages",
    "condition_star",
    "expected_runtime_bound",
    "verification_cost",
]
