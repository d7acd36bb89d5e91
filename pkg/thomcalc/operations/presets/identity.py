"""The identity operation."""
from typing import Dict

from ..operation import OperationMode
from .base import BaseOperationPreset


class IdentityPreset(BaseOperationPreset):
    mode = OperationMode.IDENTITY

    def preset_name(self) -> str:
        return "identity"

    def series_terms(self, name: str, prime: int) -> Dict[int, int]:
        return {1: 1}
