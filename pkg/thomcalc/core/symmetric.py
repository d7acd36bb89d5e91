"""Division-free rewriting of symmetric polynomials in the elementary basis.

A symmetric polynomial in ``r`` formal roots is handed over as the coefficient of
each monomial ``t^lambda`` with ``lambda`` a partition of at most ``r`` parts. The
reduction repeatedly removes the lexicographically leading partition ``lambda`` by
subtracting ``c * prod_i sigma_i^(lambda_i - lambda_(i+1))``, whose own leading
monomial is ``t^lambda`` with coefficient 1. Nothing is ever divided, so the result
is exact over every F_l.
"""
import logging
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

from sympy import Poly, symbols
from sympy.polys.specialpolys import symmetric_poly
from sympy.utilities.iterables import partitions

logger = logging.getLogger("thomcalc")

Partition = Tuple[int, ...]
ElementaryExponents = Tuple[int, ...]


@lru_cache(maxsize=None)
def partitions_with_parts(size: int, max_parts: int) -> Tuple[Partition, ...]:
    """Partitions of ``size`` into at most ``max_parts`` parts, lexicographically descending."""
    if size == 0:
        return ((),)
    if max_parts == 0:
        return ()
    found = []
    for multiplicities in partitions(size, m=max_parts):
        parts: List[int] = []
        for part, count in sorted(multiplicities.items(), reverse=True):
            parts.extend([part] * count)
        found.append(tuple(parts))
    return tuple(sorted(found, reverse=True))


def leading_exponents(partition: Partition, rank: int) -> ElementaryExponents:
    """Exponents ``a`` with ``prod sigma_i^a_i`` led by ``t^partition``."""
    padded = list(partition) + [0] * (rank - len(partition))
    return tuple(padded[i] - (padded[i + 1] if i + 1 < rank else 0) for i in range(rank))


@lru_cache(maxsize=None)
def elementary_product(rank: int, exponents: ElementaryExponents, prime: int) -> Dict[Partition, int]:
    """Coefficients of ``prod sigma_i^a_i`` on sorted monomials ``t^mu``, mod ``prime``."""
    roots = symbols(f"t1:{rank + 1}")
    product = Poly(1, *roots, modulus=prime)
    for i, a in enumerate(exponents, start=1):
        if a:
            product = product * Poly(symmetric_poly(i, *roots), *roots, modulus=prime) ** a
    result: Dict[Partition, int] = {}
    for monom, c in product.terms():
        if any(monom[k] < monom[k + 1] for k in range(rank - 1)):
            continue
        value = int(c) % prime
        if value:
            result[tuple(e for e in monom if e)] = value
    return result


def reduce_to_elementary(
    rank: int,
    max_degree: int,
    coefficient: Callable[[Partition], int],
    prime: int,
) -> Dict[ElementaryExponents, int]:
    """Rewrite a symmetric polynomial truncated at root-degree ``max_degree``.

    Args:
        rank: number of formal roots
        max_degree: highest total degree in the roots that is kept
        coefficient: coefficient of ``t^lambda`` for each partition ``lambda``
        prime: coefficient modulus

    Returns:
        Map from elementary exponent vectors ``(a_1, ..., a_rank)`` to coefficients.
    """
    result: Dict[ElementaryExponents, int] = {}
    if rank == 0:
        constant = coefficient(()) % prime
        return {(): constant} if constant else {}
    for size in range(max_degree + 1):
        ordered = partitions_with_parts(size, rank)
        current = {lam: coefficient(lam) % prime for lam in ordered}
        for lam in ordered:
            c = current[lam]
            if not c:
                continue
            exps = leading_exponents(lam, rank)
            result[exps] = (result.get(exps, 0) + c) % prime
            for mu, v in elementary_product(rank, exps, prime).items():
                current[mu] = (current[mu] - c * v) % prime
    logger.debug(f"Symmetric reduction in {rank} roots up to degree {max_degree}: {len(result)} terms")
    return {e: c for e, c in result.items() if c}
