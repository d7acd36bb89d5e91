"""How operations act: on catalog rings, on Thom modules, through the Todd twist, and on
homology classes by duality. Also the Bockstein derivation."""
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

from ..config.features import get_theta_flags
from ..core.chern import (
    evaluate_genus,
    inverse_todd_of_operation,
    substitute_chern_classes,
    todd_of_operation,
)
from ..core.errors import ContractViolation, UsageError
from ..core.ring import Elem, RingCtx, RingMorphism, Series
from ..core.ring.quotient import Bidegree
from ..core.spaces import Space, SupportedElem, ThomModule
from ..core.symmetric import ElementaryExponents, Partition, reduce_to_elementary
from .operation import Operation, OperationMode

logger = logging.getLogger("thomcalc")

THETA_NOTE = "operation acts on the weight unit theta as the identity"


@lru_cache(maxsize=None)
def chern_class_image(series: Series, rank: int, index: int, max_degree: int) -> Dict[ElementaryExponents, int]:
    """``e_index(phi(t_1), ..., phi(t_rank))`` in the elementary classes."""

    def coefficient(partition: Partition) -> int:
        if len(partition) != index:
            return 0
        value = 1
        for part in partition:
            value *= series[part]
        return value

    return reduce_to_elementary(rank, max_degree, coefficient, series.prime)


def _generator_image(op: Operation, ring: RingCtx, gen_name: str) -> Elem:
    g = ring.generator(gen_name)
    if g.bundle is not None and g.index is not None:
        rank = ring.chern_ranks.get(g.bundle)
        if rank is None:
            raise UsageError(f"generator {gen_name} names bundle {g.bundle} without a declared rank")
        by_index = {h.index: h.name for h in ring.generators if h.bundle == g.bundle}
        classes = [ring.gen(by_index[i]) if i in by_index else ring.zero() for i in range(1, rank + 1)]
        poly = chern_class_image(op.series, rank, g.index, ring.dimension)
        return substitute_chern_classes(poly, classes, ring.one())
    if g.bidegree == (2, 1):
        return op.series.evaluate(ring.gen(gen_name))
    raise UsageError(f"no action of {op.label} is declared on generator {gen_name} of {ring.name}")


@lru_cache(maxsize=None)
def operation_morphism(op: Operation, ring: RingCtx) -> RingMorphism:
    """The ring endomorphism of ``ring`` induced by ``op``."""
    if op.series.constant_term():
        raise ContractViolation(f"operation {op.label} has series {op.series} with nonzero constant term")
    op = op.fitted(ring.dimension)
    images = {n: _generator_image(op, ring, n) for n in ring.names}
    logger.debug(f"Action of {op.label} on {ring.name}: " + ", ".join(f"{n} -> {v}" for n, v in images.items()))
    return RingMorphism(ring, ring, images)


def touches_weight_unit(*values: Union[Elem, SupportedElem]) -> bool:
    for v in values:
        x = v.a if isinstance(v, SupportedElem) else v
        if x.has_theta():
            return True
    return False


def apply_operation(op: Operation, x: Elem) -> Elem:
    """``phi(x)``: a ring homomorphism, Chern classes through the splitting principle,
    theta fixed."""
    if x.owner.prime != op.prime:
        raise UsageError(f"{op.label} applied to a ring over F_{x.owner.prime}")
    result = operation_morphism(op, x.owner).apply(x)
    if get_theta_flags() and touches_weight_unit(x):
        logger.warning(f"{op.label} on {x}: {THETA_NOTE}")
    return result


def graded_piece(total: Elem, source_bidegree: Bidegree, s: int, prime: int) -> Elem:
    """Component of ``total`` in bidegree ``(i + 2s(l-1), j + s(l-1))``."""
    i, j = source_bidegree
    return total.component((i + 2 * s * (prime - 1), j + s * (prime - 1)))


def graded_pieces(total: Elem, source_bidegree: Bidegree, prime: int) -> Dict[int, Elem]:
    """Every nonzero graded piece, keyed by ``s``."""
    pieces = {}
    s = 0
    while source_bidegree[0] + 2 * s * (prime - 1) <= total.owner.top_degree:
        piece = graded_piece(total, source_bidegree, s, prime)
        if not piece.is_zero():
            pieces[s] = piece
        s += 1
    return pieces


def supported_graded_piece(total: SupportedElem, source_bidegree: Bidegree, s: int, prime: int) -> SupportedElem:
    i, j = source_bidegree
    return total.component((i + 2 * s * (prime - 1), j + s * (prime - 1)))


def normal_inverse_todd(op: Operation, module: ThomModule) -> Elem:
    op = op.fitted(module.base.dimension)
    return evaluate_genus(inverse_todd_of_operation(op), module.normal)


def apply_to_thom(op: Operation, t: SupportedElem) -> SupportedElem:
    """``phi(tau * a) = tau * (itd(N) * phi(a))``."""
    module = t.module
    if module.normal is None:
        raise UsageError(f"{module!r} has no normal bundle")
    itd = normal_inverse_todd(op, module)
    return SupportedElem(module, itd * apply_operation(op, t.a))


def _check_integral(ring: RingCtx, x: Elem) -> None:
    for (exps, _), _c in x.terms.items():
        for gen_name, e in zip(ring.names, exps):
            if e and not ring.generator(gen_name).integral:
                raise UsageError(
                    f"Bockstein of {gen_name} in {ring.name} has no carrier: odd-degree classes are not modelled"
                )


def bockstein(x: Union[Elem, SupportedElem]) -> Union[Elem, SupportedElem]:
    """The degree-(1,0) derivation; zero on integral generators and on ``tau``."""
    if isinstance(x, SupportedElem):
        # beta(tau * a) = beta(tau) * a + tau * beta(a), and tau is integral
        return SupportedElem(x.module, bockstein(x.a))
    _check_integral(x.owner, x)
    return x.owner.zero()


def bockstein_trace(x: Union[Elem, SupportedElem]) -> List[str]:
    """The Leibniz expansion of ``beta(x)`` term by term."""
    if isinstance(x, SupportedElem):
        return [f"beta({x}) = beta(tau)*({x.a}) + tau*beta({x.a}) = 0 + tau*0"]
    ring = x.owner
    _check_integral(ring, x)
    lines = []
    for (exps, theta), c in x.items():
        factors = [(n, e) for n, e in zip(ring.names, exps) if e]
        mono = ring.format_monomial(exps, theta)
        if not factors:
            lines.append(f"beta({mono}) = 0")
            continue
        parts = []
        for n, e in factors:
            rest = list(exps)
            rest[ring.position[n]] -= 1
            coeff = f"{e}*" if e > 1 else ""
            parts.append(f"{coeff}beta({n})*{ring.format_monomial(tuple(rest), theta)}")
        lines.append(f"beta({mono}) = " + " + ".join(parts) + " = 0")
    return lines or ["beta(0) = 0"]


class TwistedOperation:
    """``U(alpha) = phi(alpha) * td(TP)`` on classes supported in the ambient space ``P``."""

    def __init__(self, op: Operation, ambient: Space):
        tangent = ambient.require_tangent()
        self.op = op.fitted(ambient.dimension)
        self.ambient = ambient
        self.todd = evaluate_genus(todd_of_operation(self.op), tangent)

    def __call__(self, alpha: Union[Elem, SupportedElem]) -> Union[Elem, SupportedElem]:
        if isinstance(alpha, SupportedElem):
            if alpha.module.ambient is not self.ambient:
                raise UsageError(f"twist by td(T{self.ambient.name}) applied to a class supported elsewhere")
            return apply_to_thom(self.op, alpha).act(self.todd)
        return apply_operation(self.op, alpha) * self.todd

    def __repr__(self) -> str:
        return f"TwistedOperation({self.op.label} over {self.ambient.name})"


def twisted_operation(op: Operation, ambient: Space) -> TwistedOperation:
    """Raises NotWellDefined when ``op`` has no Todd genus."""
    return TwistedOperation(op, ambient)


class HomologyClass:
    """A homology class ``H_i(X, j)`` through its avatar in ``A_X(P)``:
    ``H_i(X, j) <-> A^{2d-i, d-j}_X(P)``, ``d = dim P``."""

    def __init__(self, avatar: SupportedElem, bidegree: Optional[Tuple[int, int]] = None, weight_twist: int = 0):
        d = avatar.module.ambient.dimension
        if bidegree is None:
            avatar_degree = avatar.bidegree
            if avatar_degree is None:
                raise UsageError(f"avatar {avatar} is zero or inhomogeneous; give the homological bidegree")
            bidegree = (2 * d - avatar_degree[0], d - avatar_degree[1])
        self.avatar = avatar
        self.bidegree = tuple(bidegree)
        self.dimension = d
        self.weight_twist = weight_twist

    @classmethod
    def fundamental(cls, module: ThomModule) -> "HomologyClass":
        return cls(module.tau())

    def avatar_bidegree(self) -> Tuple[int, int]:
        i, j = self.bidegree
        return 2 * self.dimension - i, self.dimension - j

    def is_zero(self) -> bool:
        return self.avatar.is_zero()

    def __str__(self) -> str:
        i, j = self.bidegree
        twist = f", twist {self.weight_twist}" if self.weight_twist else ""
        return f"[{self.avatar}] in H_{i}(X, {j}){twist}"


def homological_degree_law(op: Operation, bidegree: Tuple[int, int], s: int, dimension: int) -> Tuple[int, int]:
    """Target bidegree of the ``s``-th dual operation on ``H_i(X, j)``."""
    i, j = bidegree
    l = op.prime
    if op.mode == OperationMode.PMOTIVIC:
        return i - 2 * s * (l - 1), j - s * (l - 1)
    return i - 2 * s * (l - 1), l * j - dimension * (l - 1)


def dual_homology_operation(op: Operation, h: HomologyClass, s: int, twisted: bool = False) -> HomologyClass:
    """Conjugate the operation by duality with localization; the ``s``-th piece."""
    module = h.avatar.module
    transform = twisted_operation(op, module.ambient) if twisted else (lambda t: apply_to_thom(op, t))
    total = transform(h.avatar)
    piece = supported_graded_piece(total, h.avatar_bidegree(), s, op.prime)
    target = homological_degree_law(op, h.bidegree, s, h.dimension)
    ring_j = h.bidegree[1] - s * (op.prime - 1)
    if target[0] < 0:
        logger.debug(f"Dual operation s={s} of {op.label} lands in negative degree {target}: zero")
        return HomologyClass(module.zero(), target)
    return HomologyClass(piece, target, weight_twist=target[1] - ring_j)
