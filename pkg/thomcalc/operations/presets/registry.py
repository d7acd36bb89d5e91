"""Preset registry for building operations by name."""
import logging
from typing import Dict, List, Optional

from ...core.errors import UnresolvedName
from ..operation import Operation
from .base import OperationPreset
from .custom import CustomPreset
from .identity import IdentityPreset
from .pmotivic import PMotivicPreset
from .qmodl import QModLPreset
from .qmodp import QModPPreset

logger = logging.getLogger("thomcalc")


class PresetRegistry:
    """Registry for operation presets."""

    def __init__(self):
        self._presets: Dict[str, OperationPreset] = {}
        for preset in [QModLPreset(), QModPPreset(), PMotivicPreset(), IdentityPreset(), CustomPreset()]:
            self.register_preset(preset)

    def register_preset(self, preset: OperationPreset) -> None:
        """Register a new preset.

        Args:
            preset: OperationPreset instance to register
        """
        if hasattr(preset, "preset_name"):
            name = preset.preset_name()
        else:
            name = preset.__class__.__name__.lower()
        self._presets[name] = preset
        logger.debug(f"Registered operation preset {name}")

    def names(self) -> List[str]:
        return sorted(self._presets)

    def get_preset(self, name: str) -> Optional[OperationPreset]:
        """Get the preset that handles ``name``, or None."""
        for preset in self._presets.values():
            if preset.can_handle(name):
                return preset
        return None

    def build(self, name: str, prime: int, char_p: Optional[bool] = None, order: Optional[int] = None) -> Operation:
        preset = self.get_preset(name)
        if preset is None:
            raise UnresolvedName(f"unknown operation {name!r}; presets: {', '.join(self.names())}, custom:<series>")
        return preset.build(name, prime, char_p, order)


registry = PresetRegistry()


def steenrod_total(mode: str, prime: int, char_p: Optional[bool] = None, order: Optional[int] = None) -> Operation:
    """Build a preset operation: ``qmodl``, ``qmodp``, ``pmotivic``, ``identity`` or ``custom:<series>``."""
    return registry.build(str(getattr(mode, "value", mode)), prime, char_p, order)
