"""Base classes and protocols for operation presets."""
from abc import ABC, abstractmethod
from typing import Dict, Optional, Protocol

from ..operation import Operation, OperationMode


class OperationPreset(Protocol):
    """Protocol defining the interface for operation presets."""

    def preset_name(self) -> str:
        """Return the unique name of this preset."""
        ...

    def can_handle(self, name: str) -> bool:
        """Check if this preset builds the operation requested by ``name``.

        Args:
            name: Operation name as given on the command line or in a request

        Returns:
            bool: True if this preset can build the operation
        """
        ...

    def build(self, name: str, prime: int, char_p: Optional[bool] = None, order: Optional[int] = None) -> Operation:
        """Build the operation.

        Args:
            name: Operation name, possibly carrying arguments (``custom:<series>``)
            prime: Coefficient prime
            char_p: Whether the prime equals the characteristic of the base field; None picks
                the picture the preset lives in
            order: Series truncation order, defaulting to the configured one

        Returns:
            Operation: The operation over F_prime
        """
        ...


class BaseOperationPreset(ABC):
    """Base class for presets providing the common build path."""

    mode: OperationMode = OperationMode.CUSTOM
    default_char_p: bool = False

    def can_handle(self, name: str) -> bool:
        """Default implementation matches the preset name exactly."""
        return name == self.preset_name()

    @abstractmethod
    def preset_name(self) -> str:
        """Return the unique name of this preset."""
        pass

    @abstractmethod
    def series_terms(self, name: str, prime: int) -> Dict[int, int]:
        """Coefficients of ``phi(u)`` keyed by power."""
        pass

    def check_characteristic(self, prime: int, char_p: bool) -> None:
        """Reject characteristic pictures the preset does not exist in. Default accepts both."""
        return None

    def label(self, name: str, prime: int, char_p: bool) -> str:
        picture = "l=p" if char_p else "l!=p"
        return f"{name} mod {prime} ({picture})"

    def build(self, name: str, prime: int, char_p: Optional[bool] = None, order: Optional[int] = None) -> Operation:
        if char_p is None:
            char_p = self.default_char_p
        self.check_characteristic(prime, char_p)
        return Operation(
            self.series_terms(name, prime),
            prime,
            self.mode,
            char_p=char_p,
            order=order,
            label=self.label(name, prime, char_p),
        )
