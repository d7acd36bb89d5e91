"""Prime-field coefficients.

Coefficients are elements of sympy's ``GF(l)`` in the non-symmetric representation,
so ``Coeff.mod`` is the modulus and ``Coeff.val`` the residue in ``[0, l)``. Ring
elements store plain ``int`` residues for speed and hand out ``Coeff`` values at
their boundary.
"""
from functools import lru_cache

from sympy import GF, isprime, mod_inverse
from sympy.polys.domains.modularinteger import ModularInteger

from ..errors import CoefficientError, NotInvertible

Coeff = ModularInteger


@lru_cache(maxsize=None)
def coefficient_field(prime: int):
    """Return the field F_prime, rejecting composite moduli."""
    if not isinstance(prime, int) or prime < 2 or not isprime(prime):
        raise CoefficientError(f"coefficient modulus {prime!r} is not prime")
    return GF(prime, symmetric=False)


def inverse(value: int, prime: int) -> int:
    """Multiplicative inverse of a residue."""
    value %= prime
    if value == 0:
        raise NotInvertible(f"0 has no inverse modulo {prime}")
    return int(mod_inverse(value, prime))
