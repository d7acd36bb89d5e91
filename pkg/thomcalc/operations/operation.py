"""Ring operations given by a one-variable characteristic series."""
from enum import Enum
from functools import cached_property
from typing import Dict, Mapping, Optional, Tuple

from ..config.settings import get_series_order
from ..core.errors import UsageError
from ..core.ring import Series, coefficient_field


class OperationMode(str, Enum):
    QMODL = "qmodl"
    QMODP = "qmodp"
    PMOTIVIC = "pmotivic"
    IDENTITY = "identity"
    CUSTOM = "custom"


class Operation:
    """``phi(u)`` over F_l, acting on Chern roots by the splitting principle.

    The series is polynomial, so it can be re-truncated at any order without loss.
    """

    def __init__(
        self,
        terms: Mapping[int, int],
        prime: int,
        mode: OperationMode,
        char_p: bool = False,
        order: Optional[int] = None,
        label: Optional[str] = None,
    ):
        coefficient_field(prime)
        cleaned: Dict[int, int] = {}
        for power, c in terms.items():
            if power < 0:
                raise UsageError(f"negative power {power} in an operation series")
            if c % prime:
                cleaned[power] = c % prime
        self.terms = cleaned
        self.prime = prime
        self.mode = OperationMode(mode)
        self.char_p = char_p
        self.order = get_series_order(order)
        self.label = label or f"{self.mode.value} mod {prime}"

    @cached_property
    def series(self) -> Series:
        return Series.from_terms(self.terms, self.prime, self.order)

    def fitted(self, dimension: int) -> "Operation":
        """The same operation truncated high enough for rings of the given dimension."""
        if self.order > dimension:
            return self
        return Operation(self.terms, self.prime, self.mode, self.char_p, dimension + 1, self.label)

    def _key(self) -> Tuple:
        return tuple(sorted(self.terms.items())), self.prime, self.order, self.mode, self.char_p

    def __eq__(self, other) -> bool:
        if not isinstance(other, Operation):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Operation({self.label}: {self.series})"
