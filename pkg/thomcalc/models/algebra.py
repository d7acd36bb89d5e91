"""Models for ring presentations and elements."""
from typing import Dict, List, Tuple

from pydantic import BaseModel, Field

from ..core.errors import UsageError
from ..core.ring import Elem, Generator, RingCtx, make_quotient_ring


class TermModel(BaseModel):
    """One monomial with its coefficient."""
    monomial: Dict[str, int] = Field(default_factory=dict)
    theta: int = 0
    coefficient: int


def _terms(ring: RingCtx, items) -> List[TermModel]:
    return [
        TermModel(
            monomial={n: e for n, e in zip(ring.names, exps) if e},
            theta=theta,
            coefficient=c,
        )
        for (exps, theta), c in items
    ]


class RingModel(BaseModel):
    """Canonical presentation of a quotient ring."""
    name: str
    prime: int
    top_degree: int
    weight_unit: bool = False
    generators: List[Generator] = Field(default_factory=list)
    relations: List[List[TermModel]] = Field(default_factory=list)
    chern_ranks: Dict[str, int] = Field(default_factory=dict)

    @classmethod
    def from_ring(cls, ring: RingCtx) -> "RingModel":
        relations = []
        for _, poly in ring.relations:
            items = sorted(((exps, 0), c) for exps, c in poly.items())
            relations.append(_terms(ring, items))
        return cls(
            name=ring.name,
            prime=ring.prime,
            top_degree=ring.top_degree,
            weight_unit=ring.weight_unit,
            generators=list(ring.generators),
            relations=relations,
            chern_ranks=dict(sorted(ring.chern_ranks.items())),
        )

    def to_ring(self) -> RingCtx:
        relations = [[(t.coefficient, t.monomial) for t in rel] for rel in self.relations]
        return make_quotient_ring(self.generators, relations, self.top_degree, self.prime,
                                  self.weight_unit, self.chern_ranks, self.name)


class ElemModel(BaseModel):
    """An element as sorted monomial/coefficient pairs, plus its printed form."""
    ring: str
    prime: int
    text: str
    terms: List[TermModel] = Field(default_factory=list)
    bidegrees: List[Tuple[int, int]] = Field(default_factory=list)

    @classmethod
    def from_elem(cls, x: Elem) -> "ElemModel":
        ring = x.owner
        return cls(
            ring=ring.name,
            prime=ring.prime,
            text=str(x),
            terms=_terms(ring, x.items()),
            bidegrees=x.bidegrees(),
        )

    def to_elem(self, ring: RingCtx) -> Elem:
        if ring.prime != self.prime or ring.name != self.ring:
            raise UsageError(f"element of {self.ring} over F_{self.prime} cannot be read into {ring.name}")
        terms = {}
        for t in self.terms:
            terms[(ring.exponents(t.monomial), t.theta)] = t.coefficient
        return ring.element(terms)
