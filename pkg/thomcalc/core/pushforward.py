"""Proper pushforwards: closed embeddings, projections ``Y x P^n -> Y`` and their composites.

Embedding pushforwards are computed through Poincare duality on the ambient space:
``i_!(a)`` is the unique class ``y`` with ``integral(y * b) = integral(a * i^*(b))`` for
every ``b`` of complementary degree. This is what multiplying by the Thom class and
forgetting supports amounts to on the catalog spaces.
"""
import logging
from typing import Dict, List, Optional

from sympy.polys.matrices import DomainMatrix

from .errors import UsageError
from .ring import Coeff, Elem, coefficient_field, inverse
from .ring.quotient import Bidegree, Term
from .spaces import (
    CoefficientMode,
    EmbeddingData,
    Space,
    SupportedElem,
    ThomModule,
    cover_embedding,
    graph_embedding,
    identity_embedding,
    linear_embedding,
    point,
    product,
    projective_space,
)

logger = logging.getLogger("thomcalc")


def integrate(space: Space, x: Elem) -> Coeff:
    """Coefficient of the point class in a theta-free class."""
    ring = space.ring
    if x.owner is not ring:
        raise UsageError(f"cannot integrate an element of {x.owner.name} over {space.name}")
    if x.has_theta():
        raise UsageError(f"integral over {space.name} of a class involving the weight unit")
    monomial, coeff = space.point_term
    value = x.terms.get((monomial, 0), 0) * inverse(coeff, ring.prime)
    return ring.field(value)


def _solve(matrix: Dict[int, Dict[int, int]], rhs: List[int], size: int, prime: int, where: str) -> List[int]:
    K = coefficient_field(prime)
    augmented: Dict[int, Dict[int, Coeff]] = {}
    for r, row in matrix.items():
        entries = {c: K(v) for c, v in row.items() if v % prime}
        if rhs[r] % prime:
            entries[size] = K(rhs[r])
        if entries:
            augmented[r] = entries
    reduced, pivots = DomainMatrix(augmented, (size, size + 1), K).rref()
    if tuple(pivots) != tuple(range(size)):
        raise UsageError(f"Poincare duality pairing is degenerate in {where}")
    entries = reduced.to_sparse().rep
    return [int(entries.get(r, {}).get(size, 0)) % prime for r in range(size)]


def _dual_bidegree(space: Space, bidegree: Bidegree) -> Bidegree:
    return space.ring.top_degree - bidegree[0], space.dimension - bidegree[1]


def _embed_homogeneous(embedding: EmbeddingData, a: Elem, bidegree: Bidegree) -> Elem:
    target = embedding.target
    ring = target.ring
    shifted = (bidegree[0] + 2 * embedding.codimension, bidegree[1] + embedding.codimension)
    columns = ring.basis(shifted)
    if not columns:
        return ring.zero()
    duals = ring.basis(_dual_bidegree(target, shifted))
    if len(duals) != len(columns):
        raise UsageError(
            f"{target.name} pairs {len(columns)} classes in {shifted} with {len(duals)} dual classes"
        )
    matrix: Dict[int, Dict[int, int]] = {}
    rhs: List[int] = []
    for r, dual_exps in enumerate(duals):
        b = ring.monomial(dual_exps)
        matrix[r] = {s: int(integrate(target, ring.monomial(col) * b)) for s, col in enumerate(columns)}
        rhs.append(int(integrate(embedding.source, a * embedding.restrict(b))))
    solution = _solve(matrix, rhs, len(columns), ring.prime, f"{target.name} bidegree {shifted}")
    return ring.element({(col, 0): c for col, c in zip(columns, solution)})


def embed_pushforward(embedding: EmbeddingData, a: Elem) -> Elem:
    """``i_!(a)``: the image of ``tau * a`` after forgetting supports."""
    if a.owner is not embedding.source.ring:
        raise UsageError(f"pushforward along {embedding.name} needs a class of {embedding.source.name}")
    ring = embedding.target.ring
    result = ring.zero()
    for theta, part in a.theta_slices().items():
        pushed = ring.zero()
        for bidegree, component in part.components().items():
            pushed = pushed + _embed_homogeneous(embedding, component, bidegree)
        result = result + (pushed * ring.theta(theta) if theta else pushed)
    logger.debug(f"Embedding pushforward along {embedding.name}: {a} -> {result}")
    return result


def proj_pushforward(n: int, x: Elem, base: Space) -> Elem:
    """``pi_!`` for ``Y x P^n -> Y``: the coefficient of ``t^n``, ``t`` the last generator."""
    if n == 0:
        if x.owner is not base.ring:
            raise UsageError(f"P^0 projection onto {base.name} applied to an element of {x.owner.name}")
        return x
    ring = x.owner
    base_ring = base.ring
    if (ring.prime != base_ring.prime or len(ring.names) != len(base_ring.names) + 1
            or ring.top_degree != base_ring.top_degree + 2 * n
            or ring.generators[-1].bidegree != (2, 1)):
        raise UsageError(f"{ring.name} is not {base.name} x P{n}")
    terms: Dict[Term, int] = {}
    for (exps, theta), c in x.terms.items():
        if exps[-1] == n:
            key = (exps[:-1], theta)
            terms[key] = terms.get(key, 0) + c
    result = base_ring.element(terms)
    logger.debug(f"Projection pushforward P{n}: {x} -> {result}")
    return result


class ProperMap:
    """A projective map ``X -> Y`` factored as ``X -> Y x P^n -> Y``."""

    def __init__(self, source: Space, target: Space, embedding: EmbeddingData, n: int,
                 degree: int = 1, name: Optional[str] = None):
        if embedding.source is not source:
            raise UsageError(f"factorization of a map out of {source.name} embeds {embedding.source.name}")
        ambient = embedding.target.ring
        if n and (len(ambient.names) != len(target.ring.names) + 1
                  or ambient.top_degree != target.ring.top_degree + 2 * n):
            raise UsageError(f"{embedding.target.name} is not {target.name} x P{n}")
        if not n and embedding.target is not target:
            raise UsageError(f"{embedding.name} does not land in {target.name}")
        self.source = source
        self.target = target
        self.embedding = embedding
        self.n = n
        self.degree = degree
        self.name = name or f"{source.name}->{target.name}"

    @classmethod
    def from_embedding(cls, embedding: EmbeddingData, degree: int = 1) -> "ProperMap":
        return cls(embedding.source, embedding.target, embedding, 0, degree, name=embedding.name)

    @property
    def relative_dimension(self) -> int:
        """``dim Y - dim X``; pushforward raises bidegrees by twice this and this."""
        return self.target.dimension - self.source.dimension

    def __call__(self, a: Elem) -> Elem:
        return compose_pushforward(self, a)

    def __repr__(self) -> str:
        return f"ProperMap({self.name}, n={self.n}, degree={self.degree})"


def compose_pushforward(f: ProperMap, a: Elem) -> Elem:
    return proj_pushforward(f.n, embed_pushforward(f.embedding, a), f.target)


def pushforward_supported(f: ProperMap, t: SupportedElem, image: Optional[ThomModule]) -> SupportedElem:
    """``f_!(tau * s) = deg(f) * s * tau'`` on the fundamental line.

    Raises:
        UsageError: if the image support has no Thom module, or ``t`` is off the line
            spanned by ``tau``
    """
    if image is None:
        raise UsageError(f"no Thom module is declared for the image support of {f.name}")
    if t.module.ambient is not f.source or image.ambient is not f.target:
        raise UsageError(f"supports do not match the ambient spaces of {f.name}")
    if t.a.first_degree_part(0) != t.a:
        raise UsageError(f"only multiples of tau are pushed forward along {f.name}, got {t}")
    base_ring = image.base.ring
    zeros = (0,) * len(base_ring.names)
    scaled = base_ring.element({(zeros, theta): c * f.degree for (_, theta), c in t.a.terms.items()})
    result = SupportedElem(image, scaled)
    logger.debug(f"Supported pushforward along {f.name} (degree {f.degree}): {t} -> {result}")
    return result


def structure_map(m: int, n: int, prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT) -> ProperMap:
    """``P^m -> pt`` factored through a linear ``P^m`` in ``P^n``."""
    return ProperMap(projective_space(m, prime, mode), point(prime, mode), linear_embedding(m, n, prime, mode), n,
                     name=f"structure:{m}:{n}")


def projection_map(n: int, m: int, prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT) -> ProperMap:
    """``P^n x P^m -> P^m``."""
    first = projective_space(n, prime, mode)
    second = projective_space(m, prime, mode, variable="v")
    source = product(first, second)
    images = {}
    line = None
    if m:
        images["v"] = source.ring.gen(source.ring.names[-1])
    if n:
        line = source.ring.gen("u")
    embedding = graph_embedding(source, second, images, n, line, name=f"projection:{n}:{m}")
    return ProperMap(source, second, embedding, n, name=f"projection:{n}:{m}")


def identity_map(space: Space) -> ProperMap:
    return ProperMap.from_embedding(identity_embedding(space))


def cover_map(d: int, prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT) -> ProperMap:
    """A degree-``d`` self-map of ``P^1``; ``f_!(1) = d``."""
    embedding = cover_embedding(d, prime, mode)
    target = projective_space(1, prime, mode, variable="v")
    return ProperMap(embedding.source, target, embedding, 1, degree=d, name=f"cover:{d}")
