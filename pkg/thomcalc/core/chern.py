"""Formal vector bundles and multiplicative genera via the splitting principle."""
import logging
from typing import TYPE_CHECKING, Dict, List, NamedTuple, Optional

from .errors import ContractViolation, NotInvertible, NotWellDefined, UsageError
from .ring import Elem, RingMorphism, Series, series_invert
from .symmetric import ElementaryExponents, Partition, reduce_to_elementary

if TYPE_CHECKING:
    from .spaces.catalog import Space
    from ..operations.operation import Operation

logger = logging.getLogger("thomcalc")


class Bundle:
    """A formal vector bundle: rank plus total Chern class in the base ring."""

    def __init__(self, base: "Space", rank: int, total: Elem, name: str = "E"):
        if rank < 0:
            raise UsageError(f"bundle rank must be nonnegative, got {rank}")
        if total.owner is not base.ring:
            raise UsageError(f"total Chern class of {name} does not live in A({base.name})")
        if total.has_theta():
            raise UsageError(f"total Chern class of {name} involves the weight unit")
        for (i, j) in total.bidegrees():
            if i != 2 * j or j > rank:
                raise UsageError(f"total Chern class of rank-{rank} bundle {name} has a part in bidegree {(i, j)}")
        if total.component((0, 0)) != base.ring.one():
            raise UsageError(f"total Chern class of {name} must start with 1, got {total}")
        self.base = base
        self.rank = rank
        self.total = total
        self.name = name

    def chern(self, i: int) -> Elem:
        """``c_i``; zero above the rank."""
        if i == 0:
            return self.base.ring.one()
        if i < 0 or i > self.rank:
            return self.base.ring.zero()
        return self.total.component((2 * i, i))

    def chern_classes(self) -> List[Elem]:
        return [self.chern(i) for i in range(1, self.rank + 1)]

    def top(self) -> Elem:
        return self.chern(self.rank)

    def pullback(self, morphism: RingMorphism, base: "Space", name: Optional[str] = None) -> "Bundle":
        if morphism.source is not self.base.ring or morphism.target is not base.ring:
            raise UsageError(f"cannot pull {self.name} back along a morphism from another ring")
        return Bundle(base, self.rank, morphism.apply(self.total), name or self.name)

    def __repr__(self) -> str:
        return f"Bundle({self.name}, rank={self.rank}, c={self.total})"


def trivial_bundle(base: "Space", rank: int, name: str = "O") -> Bundle:
    return Bundle(base, rank, base.ring.one(), name)


def line_bundle(base: "Space", c1: Elem, name: str = "L") -> Bundle:
    return Bundle(base, 1, base.ring.one() + c1, name)


def whitney_sum(e: Bundle, f: Bundle, name: Optional[str] = None) -> Bundle:
    """Direct sum: ranks add, total classes multiply."""
    if e.base.ring is not f.base.ring:
        raise UsageError(f"bundles {e.name} and {f.name} live over different bases")
    return Bundle(e.base, e.rank + f.rank, e.total * f.total, name or f"{e.name}+{f.name}")


class Genus:
    """A multiplicative genus given by its one-variable characteristic series."""

    def __init__(self, series: Series, label: str):
        self.series = series
        self.label = label

    def __call__(self, bundle: Bundle) -> Elem:
        return evaluate_genus(self, bundle)

    def __repr__(self) -> str:
        return f"Genus({self.label}: {self.series})"


def _genus_coefficient(series: Series, rank: int):
    def coefficient(partition: Partition) -> int:
        value = 1
        for part in list(partition) + [0] * (rank - len(partition)):
            value *= series[part]
            if not value:
                return 0
        return value
    return coefficient


def genus_polynomial(g: Genus, rank: int, max_degree: int) -> Dict[ElementaryExponents, int]:
    """``prod_{i<=rank} g(t_i)`` in the elementary classes, up to root-degree ``max_degree``."""
    if g.series.order < max_degree:
        raise UsageError(
            f"series {g.label} is truncated at order {g.series.order}, below the needed {max_degree}"
        )
    return reduce_to_elementary(rank, max_degree, _genus_coefficient(g.series, rank), g.series.prime)


def substitute_chern_classes(poly: Dict[ElementaryExponents, int], classes: List[Elem], one: Elem) -> Elem:
    """Evaluate a polynomial in ``sigma_1..sigma_r`` at the given classes."""
    result = one.owner.zero()
    for exps, c in poly.items():
        term = one.scale(c)
        for cls, e in zip(classes, exps):
            if e:
                term = term * cls ** e
        result = result + term
    return result


def evaluate_genus(g: Genus, bundle: Bundle) -> Elem:
    """Expand ``prod g(t_i)`` over the Chern roots and substitute ``c_i(bundle)``."""
    ring = bundle.base.ring
    if g.series.prime != ring.prime:
        raise UsageError(f"genus over F_{g.series.prime} evaluated on a bundle over F_{ring.prime}")
    poly = genus_polynomial(g, bundle.rank, ring.dimension)
    value = substitute_chern_classes(poly, bundle.chern_classes(), ring.one())
    logger.debug(f"Genus {g.label} on {bundle.name}: {value}")
    return value


def format_chern_polynomial(poly: Dict[ElementaryExponents, int], bundle_name: str) -> str:
    """Print a polynomial in the elementary classes as ``c1(E)^2 + c2(E)``."""
    if not poly:
        return "0"

    def order(exps: ElementaryExponents):
        weight = sum((i + 1) * e for i, e in enumerate(exps))
        return weight, tuple(-e for e in exps)

    parts = []
    for exps in sorted(poly, key=order):
        c = poly[exps]
        factors = []
        for i, e in enumerate(exps, start=1):
            if e == 1:
                factors.append(f"c{i}({bundle_name})")
            elif e:
                factors.append(f"c{i}({bundle_name})^{e}")
        mono = "*".join(factors)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


def inverse_todd_of_operation(op: "Operation") -> Genus:
    """The genus with series ``phi(u)/u``.

    Raises:
        ContractViolation: if ``phi`` has a constant term
    """
    if op.series.constant_term():
        raise ContractViolation(f"operation {op.label} has series {op.series} with nonzero constant term")
    return Genus(op.series.divide_by_variable(), f"itd of {op.label}")


def todd_of_operation(op: "Operation") -> Genus:
    """The genus with series ``u/phi(u)``.

    Raises:
        NotWellDefined: if ``phi(u)/u`` has no unit constant term
    """
    itd = inverse_todd_of_operation(op)
    try:
        td_series = series_invert(itd.series)
    except NotInvertible as e:
        raise NotWellDefined(f"operation {op.label} does not have a well-defined Todd genus") from e
    return Genus(td_series, f"td of {op.label}")


def has_well_defined_todd_genus(op: "Operation") -> bool:
    return inverse_todd_of_operation(op).series.constant_term() != 0


def closed_form_inverse_todd(bundle: Bundle, prime: int) -> Elem:
    """Closed product form ``prod (1 + alpha_i)^(l-1)``, i.e. ``c(E)^(l-1)``."""
    if prime != bundle.base.ring.prime:
        raise UsageError(f"closed form for F_{prime} asked on a bundle over F_{bundle.base.ring.prime}")
    return bundle.total ** (prime - 1)


class ItdComparison(NamedTuple):
    definitional: Elem
    closed_form: Elem

    @property
    def differs(self) -> bool:
        return self.definitional != self.closed_form


def itd_discrepancy(op: "Operation", bundle: Bundle) -> ItdComparison:
    """Evaluate the inverse Todd genus both from ``phi(u)/u`` and from the closed product form."""
    definitional = evaluate_genus(inverse_todd_of_operation(op), bundle)
    closed_form = closed_form_inverse_todd(bundle, op.prime)
    comparison = ItdComparison(definitional, closed_form)
    if comparison.differs:
        logger.warning(
            f"itd of {op.label} on {bundle.name}: definition gives {definitional}, "
            f"closed form gives {closed_form}"
        )
    return comparison
