"""Total power operation in the mod-l picture, l different from the characteristic."""
from typing import Dict

from ...core.errors import UsageError
from ..operation import OperationMode
from .base import BaseOperationPreset


class QModLPreset(BaseOperationPreset):
    """``Q(u) = u + u^l``; ``Q^0`` is the identity on ``u``."""

    mode = OperationMode.QMODL

    def preset_name(self) -> str:
        return "qmodl"

    def check_characteristic(self, prime: int, char_p: bool) -> None:
        if char_p:
            raise UsageError("qmodl lives in the l != p picture; use qmodp")

    def series_terms(self, name: str, prime: int) -> Dict[int, int]:
        return {1: 1, prime: 1}
