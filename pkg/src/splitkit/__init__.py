"""Finite splitting-family machinery: density numbers, closure operators,
disjoint refinements, property B, essential disjointness and conflict-free
colorings, each paired with an exhaustive check."""

from .core import (
    Condition,
    EDCertificate,
    SearchStats,
    SetFamily,
    check_condition,
    check_essentially_disjoint,
    check_property_b,
)

__version__ = "0.1.0"

__all__ = [
    "Condition",
    "EDCertificate",
    "SearchStats",
    "SetFamily",
    "check_condition",
    "check_essentially_disjoint",
    "check_property_b",
]
