"""Motivic reduced power operations."""
from typing import Dict

from ..operation import OperationMode
from .base import BaseOperationPreset


class PMotivicPreset(BaseOperationPreset):
    """``P(u) = u + u^l`` for every l, the characteristic included."""

    mode = OperationMode.PMOTIVIC

    def preset_name(self) -> str:
        return "pmotivic"

    def series_terms(self, name: str, prime: int) -> Dict[int, int]:
        return {1: 1, prime: 1}
