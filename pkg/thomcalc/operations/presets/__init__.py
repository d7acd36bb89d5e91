"""Operation presets."""
from .base import BaseOperationPreset, OperationPreset
from .registry import PresetRegistry, registry, steenrod_total

__all__ = [
    "BaseOperationPreset",
    "OperationPreset",
    "PresetRegistry",
    "registry",
    "steenrod_total",
]
