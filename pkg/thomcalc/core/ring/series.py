"""Truncated one-variable power series over F_l."""
from typing import Iterable, List, Mapping, Tuple

from ..errors import NotInvertible, UsageError
from .field import coefficient_field, inverse
from .quotient import Elem


class Series:
    """``a_0 + a_1 u + ... + a_N u^N``, known up to and including ``u^N``."""
    __slots__ = ("prime", "order", "variable", "_coeffs")

    def __init__(self, coefficients: Iterable[int], prime: int, order: int, variable: str = "u"):
        coefficient_field(prime)
        if order < 0:
            raise UsageError(f"truncation order must be nonnegative, got {order}")
        coeffs = [int(c) % prime for c in coefficients][:order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        self.prime = prime
        self.order = order
        self.variable = variable
        self._coeffs: Tuple[int, ...] = tuple(coeffs)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int], prime: int, order: int, variable: str = "u") -> "Series":
        coeffs = [0] * (order + 1)
        for power, c in terms.items():
            if power < 0:
                raise UsageError(f"negative power {power} in a power series")
            if power <= order:
                coeffs[power] = (coeffs[power] + int(c)) % prime
        return cls(coeffs, prime, order, variable)

    @classmethod
    def one(cls, prime: int, order: int, variable: str = "u") -> "Series":
        return cls([1], prime, order, variable)

    @classmethod
    def monomial(cls, power: int, prime: int, order: int, variable: str = "u") -> "Series":
        return cls.from_terms({power: 1}, prime, order, variable)

    @property
    def coefficients(self) -> Tuple[int, ...]:
        return self._coeffs

    def __getitem__(self, power: int) -> int:
        if power < 0 or power > self.order:
            return 0
        return self._coeffs[power]

    def constant_term(self) -> int:
        return self._coeffs[0]

    def truncate(self, order: int) -> "Series":
        return Series(self._coeffs, self.prime, min(order, self.order), self.variable)

    def _check(self, other: "Series") -> None:
        if self.prime != other.prime:
            raise UsageError(f"series over F_{self.prime} and F_{other.prime} do not mix")

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        order = min(self.order, other.order)
        return Series([self[k] + other[k] for k in range(order + 1)], self.prime, order, self.variable)

    def __neg__(self) -> "Series":
        return Series([-c for c in self._coeffs], self.prime, self.order, self.variable)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, factor: int) -> "Series":
        return Series([c * factor for c in self._coeffs], self.prime, self.order, self.variable)

    def __mul__(self, other) -> "Series":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        order = min(self.order, other.order)
        coeffs = [0] * (order + 1)
        for a, x in enumerate(self._coeffs[:order + 1]):
            if not x:
                continue
            for b in range(order + 1 - a):
                coeffs[a + b] += x * other[b]
        return Series(coeffs, self.prime, order, self.variable)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Series":
        if exponent < 0:
            return series_invert(self) ** (-exponent)
        result = Series.one(self.prime, self.order, self.variable)
        for _ in range(exponent):
            result = result * self
        return result

    def divide_by_variable(self) -> "Series":
        """``s(u) / u`` for a series without constant term; the order drops by one."""
        if self._coeffs[0]:
            raise UsageError(f"{self} is not divisible by {self.variable}")
        if self.order == 0:
            return Series([], self.prime, 0, self.variable)
        return Series(self._coeffs[1:], self.prime, self.order - 1, self.variable)

    def evaluate(self, x: Elem) -> Elem:
        """Substitute a ring element; terms past the ring's top degree vanish on their own."""
        if x.owner.prime != self.prime:
            raise UsageError(f"series over F_{self.prime} evaluated in a ring over F_{x.owner.prime}")
        result = x.owner.scalar(self._coeffs[0])
        power = x.owner.one()
        for c in self._coeffs[1:]:
            power = power * x
            if power.is_zero():
                break
            if c:
                result = result + power.scale(c)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self.prime, self.order, self._coeffs) == (other.prime, other.order, other._coeffs)

    def agrees_with(self, other: "Series") -> bool:
        """Equality up to the smaller of the two truncation orders."""
        order = min(self.order, other.order)
        return all(self[k] == other[k] for k in range(order + 1))

    def __hash__(self) -> int:
        return hash((self.prime, self.order, self._coeffs))

    def terms(self) -> List[Tuple[int, int]]:
        return [(k, c) for k, c in enumerate(self._coeffs) if c]

    def __str__(self) -> str:
        parts = []
        for k, c in self.terms():
            if k == 0:
                parts.append(str(c))
                continue
            mono = self.variable if k == 1 else f"{self.variable}^{k}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Series({self}, prime={self.prime}, order={self.order})"


def series_invert(s: Series) -> Series:
    """Multiplicative inverse up to the truncation order of ``s``.

    Raises:
        NotInvertible: if the constant term is zero
    """
    a0 = s.constant_term()
    if a0 == 0:
        raise NotInvertible(f"{s} has zero constant term")
    p = s.prime
    a0_inv = inverse(a0, p)
    b: List[int] = [a0_inv]
    for k in range(1, s.order + 1):
        acc = sum(s[i] * b[k - i] for i in range(1, k + 1))
        b.append((-a0_inv * acc) % p)
    return Series(b, p, s.order, s.variable)
