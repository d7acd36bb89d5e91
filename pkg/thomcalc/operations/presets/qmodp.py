"""Total power operation when the coefficient prime is the characteristic."""
from typing import Dict

from ...core.errors import UsageError
from ..operation import OperationMode
from .base import BaseOperationPreset


class QModPPreset(BaseOperationPreset):
    """``Q(u) = u^p``: ``Q^0(u)`` vanishes and the single nonzero piece sits at ``s = 1``.

    Only exists in the l = p picture; an unspecified picture defaults to it.
    """

    mode = OperationMode.QMODP
    default_char_p = True

    def preset_name(self) -> str:
        return "qmodp"

    def check_characteristic(self, prime: int, char_p: bool) -> None:
        if not char_p:
            raise UsageError("qmodp lives in the l = p picture; use qmodl for l != p")

    def series_terms(self, name: str, prime: int) -> Dict[int, int]:
        return {prime: 1}
