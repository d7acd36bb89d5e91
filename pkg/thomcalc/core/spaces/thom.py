"""Closed embeddings and the rank-one Thom modules ``tau * A(X)`` they carry."""
import logging
from typing import Dict, Mapping, Optional

from ..chern import Bundle, trivial_bundle
from ..errors import UsageError
from ..ring import Elem, RingMorphism
from ..ring.quotient import Bidegree
from .catalog import CoefficientMode, Space, memoized, product, projective_space

logger = logging.getLogger("thomcalc")


class EmbeddingData:
    """A closed embedding ``X -> P`` given by restriction images and a normal bundle."""

    def __init__(self, source: Space, target: Space, restriction: RingMorphism, normal: Bundle,
                 name: Optional[str] = None):
        if restriction.source is not target.ring or restriction.target is not source.ring:
            raise UsageError(f"restriction must map A({target.name}) to A({source.name})")
        codimension = target.dimension - source.dimension
        if codimension < 0:
            raise UsageError(f"{source.name} has larger dimension than {target.name}")
        if normal.base is not source:
            raise UsageError(f"normal bundle {normal.name} does not live over {source.name}")
        if normal.rank != codimension:
            raise UsageError(
                f"normal bundle of rank {normal.rank} for an embedding of codimension {codimension}"
            )
        self.source = source
        self.target = target
        self.restriction = restriction
        self.normal = normal
        self.codimension = codimension
        self.name = name or f"{source.name}->{target.name}"
        self._module = ThomModule(self)

    def restrict(self, x: Elem) -> Elem:
        return self.restriction.apply(x)

    @property
    def module(self) -> "ThomModule":
        return self._module

    def __repr__(self) -> str:
        return f"EmbeddingData({self.name}, c={self.codimension})"


def restrict(x: Elem, embedding: EmbeddingData) -> Elem:
    """Pull a class of the ambient space back to the embedded one."""
    return embedding.restrict(x)


class ThomModule:
    """``A_X(P)`` as the free ``A(X)``-module on ``tau`` in bidegree ``(2c, c)``."""

    def __init__(self, embedding: EmbeddingData):
        self.embedding = embedding
        self.base = embedding.source
        self.ambient = embedding.target
        self.normal = embedding.normal
        self.codimension = embedding.codimension

    @property
    def shift(self) -> Bidegree:
        return 2 * self.codimension, self.codimension

    def element(self, a: Elem) -> "SupportedElem":
        return SupportedElem(self, a)

    def tau(self) -> "SupportedElem":
        return SupportedElem(self, self.base.ring.one())

    def zero(self) -> "SupportedElem":
        return SupportedElem(self, self.base.ring.zero())

    def __repr__(self) -> str:
        return f"ThomModule({self.embedding.name})"


def thom_module(embedding: EmbeddingData) -> ThomModule:
    return embedding.module


class SupportedElem:
    """``tau * a`` with ``a`` in ``A(X)``."""
    __slots__ = ("module", "a")

    def __init__(self, module: ThomModule, a: Elem):
        if a.owner is not module.base.ring:
            raise UsageError(f"coefficient of tau must live in A({module.base.name})")
        self.module = module
        self.a = a

    def _same(self, other: "SupportedElem") -> None:
        if other.module is not self.module:
            raise UsageError("supported elements of different Thom modules do not mix")

    def __add__(self, other: "SupportedElem") -> "SupportedElem":
        self._same(other)
        return SupportedElem(self.module, self.a + other.a)

    def __neg__(self) -> "SupportedElem":
        return SupportedElem(self.module, -self.a)

    def __sub__(self, other: "SupportedElem") -> "SupportedElem":
        return self + (-other)

    def scale(self, factor: int) -> "SupportedElem":
        return SupportedElem(self.module, self.a.scale(factor))

    def act(self, b: Elem) -> "SupportedElem":
        """Action of ``b`` in ``A(P)``: restrict to ``X``, then multiply."""
        if b.owner is self.module.ambient.ring:
            return SupportedElem(self.module, self.module.embedding.restrict(b) * self.a)
        if b.owner is self.module.base.ring:
            return SupportedElem(self.module, b * self.a)
        raise UsageError(f"{b!r} acts neither through A({self.module.ambient.name}) nor A({self.module.base.name})")

    def __mul__(self, other) -> "SupportedElem":
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, SupportedElem):
            # tau * tau = tau * c_top(N)
            self._same(other)
            return SupportedElem(self.module, self.a * other.a * self.module.normal.top())
        if isinstance(other, Elem):
            return self.act(other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SupportedElem):
            return NotImplemented
        return self.module is other.module and self.a == other.a

    def __hash__(self) -> int:
        return hash((id(self.module), self.a))

    def is_zero(self) -> bool:
        return self.a.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def bidegrees(self):
        si, sj = self.module.shift
        return [(i + si, j + sj) for i, j in self.a.bidegrees()]

    @property
    def bidegree(self) -> Optional[Bidegree]:
        degrees = self.bidegrees()
        return degrees[0] if len(degrees) == 1 else None

    def component(self, bidegree: Bidegree) -> "SupportedElem":
        si, sj = self.module.shift
        return SupportedElem(self.module, self.a.component((bidegree[0] - si, bidegree[1] - sj)))

    def __str__(self) -> str:
        if self.a.is_zero():
            return "0"
        if self.a == self.module.base.ring.one():
            return "tau"
        if len(self.a.terms) == 1:
            return f"tau*{self.a}"
        return f"tau*({self.a})"

    def __repr__(self) -> str:
        return f"SupportedElem({self.module.embedding.name}: {self})"


def normal_bundle_from_tangents(source: Space, target: Space, restriction: RingMorphism,
                                name: str = "N") -> Bundle:
    """``c(N) = i^* c(TP) / c(TX)`` from the tangent sequence."""
    tp = target.require_tangent()
    tx = source.require_tangent()
    rank = tp.rank - tx.rank
    if rank < 0:
        raise UsageError(f"tangent rank of {source.name} exceeds that of {target.name}")
    total = restriction.apply(tp.total) * tx.total.inverse()
    return Bundle(source, rank, total, name)


@memoized
def identity_embedding(space: Space) -> EmbeddingData:
    return EmbeddingData(space, space, RingMorphism.identity(space.ring), trivial_bundle(space, 0, "N"),
                         name=f"identity:{space.name}")


@memoized
def linear_embedding(m: int, n: int, prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT) -> EmbeddingData:
    """A linear ``P^m`` inside ``P^n``, hyperplane class restricting to the hyperplane class."""
    if not 0 <= m <= n:
        raise UsageError(f"linear embedding P{m} -> P{n} needs 0 <= m <= n")
    target = projective_space(n, prime, mode)
    if m == n:
        return identity_embedding(target)
    source = projective_space(m, prime, mode)
    u = source.ring.gen("u") if m else source.ring.zero()
    restriction = RingMorphism(target.ring, source.ring, {"u": u})
    normal = Bundle(source, n - m, (source.ring.one() + u) ** (n - m), "N")
    logger.debug(f"Linear embedding P{m} -> P{n}: c(N) = {normal.total}")
    return EmbeddingData(source, target, restriction, normal, name=f"linear:{m}:{n}")


def graph_embedding(source: Space, base: Space, images: Mapping[str, Elem], n: int,
                    line: Optional[Elem] = None, name: Optional[str] = None) -> EmbeddingData:
    """``X -> Y x P^n``: generators of ``Y`` pull back to ``images``, the hyperplane class of
    ``P^n`` to ``line``. The normal bundle comes from the tangent sequence."""
    target = product(base, projective_space(n, base.prime, base.mode, variable="t"))
    mapped: Dict[str, Elem] = {}
    for gen_name in base.ring.names:
        if gen_name not in images:
            raise UsageError(f"no pullback image declared for {gen_name} of {base.name}")
        mapped[gen_name] = images[gen_name]
    if n:
        if line is None:
            raise UsageError(f"graph embedding into {target.name} needs the pullback of the hyperplane class")
        mapped[target.ring.names[-1]] = line
    restriction = RingMorphism(target.ring, source.ring, mapped)
    normal = normal_bundle_from_tangents(source, target, restriction)
    return EmbeddingData(source, target, restriction, normal, name=name or f"graph:{source.name}->{target.name}")


@memoized
def cover_embedding(d: int, prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT) -> EmbeddingData:
    """Graph of a degree-``d`` self-map of ``P^1``: ``P1(u) -> P1(v) x P1(t)``, ``v -> d*u``, ``t -> u``."""
    if d < 1:
        raise UsageError(f"cover degree must be positive, got {d}")
    source = projective_space(1, prime, mode)
    base = projective_space(1, prime, mode, variable="v")
    u = source.ring.gen("u")
    return graph_embedding(source, base, {"v": u.scale(d)}, 1, u, name=f"cover:{d}")

