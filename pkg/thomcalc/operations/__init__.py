"""Steenrod-type ring operations: presets, actions, Bockstein, twisted and dual operations."""
from .operation import Operation, OperationMode
from .presets import PresetRegistry, registry, steenrod_total
from .action import (
    HomologyClass,
    TwistedOperation,
    apply_operation,
    apply_to_thom,
    bockstein,
    bockstein_trace,
    dual_homology_operation,
    graded_piece,
    graded_pieces,
    homological_degree_law,
    twisted_operation,
)

__all__ = [
    "Operation",
    "OperationMode",
    "PresetRegistry",
    "registry",
    "steenrod_total",
    "HomologyClass",
    "TwistedOperation",
    "apply_operation",
    "apply_to_thom",
    "bockstein",
    "bockstein_trace",
    "dual_homology_operation",
    "graded_piece",
    "graded_pieces",
    "homological_degree_law",
    "twisted_operation",
]
