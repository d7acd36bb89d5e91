"""Catalog of cohomology-ring models: point, projective spaces, Grassmannians,
products and projective bundles."""
import inspect
import logging
import threading
from enum import Enum
from functools import lru_cache, wraps
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..chern import Bundle
from ..errors import PresentationError, UnresolvedName, UsageError
from ..ring import Elem, Generator, RingCtx, RingMorphism, make_quotient_ring
from ..ring.quotient import Exponents, Polynomial

logger = logging.getLogger("thomcalc")

# reentrant: memoized constructors call each other
_build_lock = threading.RLock()


class SpaceKind(str, Enum):
    POINT = "point"
    PROJ = "proj"
    PRODUCT = "product"
    GRASSMANNIAN = "grassmannian"
    PROJ_BUNDLE = "proj_bundle"


class CoefficientMode(str, Enum):
    """``pure``: A(pt) is F_l in bidegree (0,0) only. ``weight``: an invertible theta of
    bidegree (0,1) is adjoined."""
    PURE_POINT = "pure"
    WEIGHT_UNIT = "weight"


class Space:
    """A catalog space: its ring, dimension, point class and named bundles."""

    def __init__(
        self,
        kind: SpaceKind,
        ring: RingCtx,
        mode: CoefficientMode,
        name: str,
        point_class: Optional[Elem] = None,
        factors: Tuple["Space", ...] = (),
    ):
        self.kind = kind
        self.ring = ring
        self.mode = mode
        self.name = name
        self.factors = factors
        self.params: Dict[str, int] = {}
        self.factor_maps: Tuple[RingMorphism, ...] = ()
        self.base: Optional["Space"] = None
        self.tangent: Optional[Bundle] = None
        self.bundles: Dict[str, Bundle] = {}
        self.point_class = point_class if point_class is not None else ring.one()
        terms = self.point_class.terms
        if len(terms) != 1 or self.point_class.bidegree != (ring.top_degree, ring.dimension):
            raise PresentationError(f"point class {self.point_class} of {name} is not a single top-degree monomial")
        ((self._point_monomial, _), self._point_coeff), = terms.items()

    @property
    def prime(self) -> int:
        return self.ring.prime

    @property
    def dimension(self) -> int:
        return self.ring.dimension

    @property
    def point_term(self) -> Tuple[Exponents, int]:
        """Standard monomial of the top degree and the coefficient of the point class on it."""
        return self._point_monomial, self._point_coeff

    def bundle(self, name: str) -> Bundle:
        if name == "T":
            return self.require_tangent()
        if name not in self.bundles:
            raise UnresolvedName(f"{self.name} has no bundle {name!r}; known: {sorted(self.bundles)}")
        return self.bundles[name]

    def require_tangent(self) -> Bundle:
        if self.tangent is None:
            raise UsageError(f"no tangent data is stored for {self.name}")
        return self.tangent

    def add_bundle(self, bundle: Bundle) -> None:
        if bundle.base is not self:
            raise UsageError(f"bundle {bundle.name} lives over {bundle.base.name}, not {self.name}")
        self.bundles[bundle.name] = bundle
        if bundle.name == "T":
            self.tangent = bundle

    def odd_bidegree_dimensions(self) -> Dict[Tuple[int, int], int]:
        """Basis sizes of every odd-first-degree bidegree up to the top degree."""
        return {
            (i, j): len(self.ring.basis((i, j)))
            for i in range(1, self.ring.top_degree + 1, 2)
            for j in range(i + 1)
        }

    def __repr__(self) -> str:
        return f"Space({self.name}, prime={self.prime}, mode={self.mode.value})"


def memoized(func):
    """``lru_cache`` keyed on the bound arguments, so defaults and keywords share entries."""
    signature = inspect.signature(func)
    cached = lru_cache(maxsize=None)(func)

    @wraps(func)
    def wrapper(*args, **kwargs):
        bound = signature.bind(*args, **kwargs)
        bound.apply_defaults()
        with _build_lock:
            return cached(*bound.args)

    wrapper.cache_clear = cached.cache_clear
    return wrapper


def _chern_generators(group: str, rank: int, prefix: str) -> List[Generator]:
    return [
        Generator(name=f"{prefix}{i}", bidegree=(2 * i, i), bundle=group, index=i)
        for i in range(1, rank + 1)
    ]


def _group_total(ring: RingCtx, group: str) -> Elem:
    total = ring.one()
    for g in ring.generators:
        if g.bundle == group:
            total = total + ring.gen(g.name)
    return total


def elem_to_polynomial(x: Elem, shift: Optional[Mapping[str, int]] = None) -> List[Tuple[int, Dict[str, int]]]:
    """Names-based polynomial of a theta-free element, each monomial times ``shift``."""
    if x.has_theta():
        raise UsageError(f"{x} involves the weight unit")
    poly = []
    for (exps, _), c in x.items():
        powers = {n: e for n, e in zip(x.owner.names, exps) if e}
        for n, e in (shift or {}).items():
            powers[n] = powers.get(n, 0) + e
        poly.append((c, powers))
    return poly


def _ring_relations(ring: RingCtx, rename: Mapping[str, str]) -> List[Polynomial]:
    relations = []
    for _, poly in ring.relations:
        relations.append([
            (c, {rename[n]: e for n, e in zip(ring.names, exps) if e}) for exps, c in poly.items()
        ])
    return relations


def _fresh(name: str, taken: Sequence[str]) -> str:
    if name not in taken:
        return name
    k = 2
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


@memoized
def point(prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT) -> Space:
    ring = make_quotient_ring([], [], 0, prime, weight_unit=mode == CoefficientMode.WEIGHT_UNIT, name="pt")
    space = Space(SpaceKind.POINT, ring, mode, "pt")
    space.add_bundle(Bundle(space, 0, ring.one(), "T"))
    return space


@memoized
def projective_space(n: int, prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT,
                     variable: str = "u") -> Space:
    """``F_l[u]/(u^(n+1))`` with ``u = c1(O(1))`` and ``c(T) = (1+u)^(n+1)``."""
    if n < 0:
        raise UsageError(f"projective space dimension must be nonnegative, got {n}")
    if n == 0:
        return point(prime, mode)
    name = f"P{n}"
    ring = make_quotient_ring(
        [Generator(name=variable, bidegree=(2, 1), bundle="L", index=1)],
        [[(1, {variable: n + 1})]],
        2 * n,
        prime,
        weight_unit=mode == CoefficientMode.WEIGHT_UNIT,
        chern_ranks={"L": 1},
        name=name,
    )
    u = ring.gen(variable)
    space = Space(SpaceKind.PROJ, ring, mode, name, point_class=u ** n)
    space.params = {"n": n}
    space.add_bundle(Bundle(space, 1, ring.one() + u, "L"))
    space.add_bundle(Bundle(space, n, (ring.one() + u) ** (n + 1), "T"))
    logger.info(f"Built {name} over F_{prime} ({mode.value})")
    return space


@memoized
def grassmannian(k: int, n: int, prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT) -> Space:
    """``Gr(k, n)``: Chern classes ``c_i`` of the tautological subbundle S and ``d_i`` of the
    quotient Q, modulo the graded pieces of ``c(S) c(Q) = 1``. No tangent data is stored."""
    if not 0 < k < n:
        raise UsageError(f"Gr({k},{n}) needs 0 < k < N")
    q = n - k
    generators = _chern_generators("S", k, "c") + _chern_generators("Q", q, "d")
    relations: List[Polynomial] = []
    for m in range(1, n + 1):
        rel = []
        for a in range(max(0, m - q), min(k, m) + 1):
            b = m - a
            powers = {}
            if a:
                powers[f"c{a}"] = 1
            if b:
                powers[f"d{b}"] = 1
            rel.append((1, powers))
        relations.append(rel)
    name = f"Gr({k},{n})"
    ring = make_quotient_ring(
        generators, relations, 2 * k * q, prime,
        weight_unit=mode == CoefficientMode.WEIGHT_UNIT,
        chern_ranks={"S": k, "Q": q},
        name=name,
    )
    space = Space(SpaceKind.GRASSMANNIAN, ring, mode, name, point_class=ring.gen(f"d{q}") ** k)
    space.params = {"k": k, "N": n}
    space.add_bundle(Bundle(space, k, _group_total(ring, "S"), "S"))
    space.add_bundle(Bundle(space, q, _group_total(ring, "Q"), "Q"))
    logger.info(f"Built {name} over F_{prime}: total dimension {ring.total_dimension()}")
    return space


@memoized
def product(x: Space, y: Space) -> Space:
    """``X x Y`` with disjoint generators; colliding names in ``Y`` get a numeric suffix."""
    if x.prime != y.prime or x.mode != y.mode:
        raise UsageError(f"cannot multiply {x!r} and {y!r}: coefficients differ")
    if y.kind == SpaceKind.POINT:
        return x
    if x.kind == SpaceKind.POINT:
        return y
    taken = list(x.ring.names)
    rename_y: Dict[str, str] = {}
    for n in y.ring.names:
        rename_y[n] = _fresh(n, taken)
        taken.append(rename_y[n])
    groups = dict(x.ring.chern_ranks)
    rename_group: Dict[str, str] = {}
    for group, rank in y.ring.chern_ranks.items():
        rename_group[group] = _fresh(group, list(groups))
        groups[rename_group[group]] = rank

    generators = list(x.ring.generators)
    for g in y.ring.generators:
        bundle = rename_group.get(g.bundle) if g.bundle else None
        generators.append(g.model_copy(update={"name": rename_y[g.name], "bundle": bundle}))
    relations = _ring_relations(x.ring, {n: n for n in x.ring.names}) + _ring_relations(y.ring, rename_y)
    name = f"{x.name}x{y.name}"
    ring = make_quotient_ring(
        generators, relations, x.ring.top_degree + y.ring.top_degree, x.prime,
        weight_unit=x.mode == CoefficientMode.WEIGHT_UNIT,
        chern_ranks=groups,
        name=name,
    )
    pr1 = RingMorphism(x.ring, ring, {n: ring.gen(n) for n in x.ring.names})
    pr2 = RingMorphism(y.ring, ring, {n: ring.gen(rename_y[n]) for n in y.ring.names})
    space = Space(SpaceKind.PRODUCT, ring, x.mode, name,
                  point_class=pr1(x.point_class) * pr2(y.point_class), factors=(x, y))
    space.factor_maps = (pr1, pr2)
    for b in x.bundles.values():
        if b.name != "T":
            space.add_bundle(b.pullback(pr1, space))
    for b in y.bundles.values():
        if b.name != "T":
            space.add_bundle(b.pullback(pr2, space, _fresh(b.name, list(space.bundles))))
    if x.tangent is not None and y.tangent is not None:
        space.add_bundle(Bundle(space, x.tangent.rank + y.tangent.rank,
                                pr1(x.tangent.total) * pr2(y.tangent.total), "T"))
    logger.info(f"Built {name}: {len(ring.names)} generators, D={ring.top_degree}")
    return space


@memoized
def projective_bundle(base: Space, bundle: Bundle, variable: str = "xi") -> Space:
    """``P(E) -> X``: adjoin ``xi`` with ``xi^r + c1(E) xi^(r-1) + ... + c_r(E) = 0``."""
    if bundle.base is not base:
        raise UsageError(f"bundle {bundle.name} does not live over {base.name}")
    r = bundle.rank
    if r < 1:
        raise UsageError("projective bundle of a rank-0 bundle is empty")
    xi = _fresh(variable, list(base.ring.names))
    group = _fresh("H", list(base.ring.chern_ranks))
    relation: List[Tuple[int, Dict[str, int]]] = [(1, {xi: r})]
    for i in range(1, r + 1):
        relation.extend(elem_to_polynomial(bundle.chern(i), {xi: r - i}))
    relations = _ring_relations(base.ring, {n: n for n in base.ring.names}) + [relation]
    name = f"PB({base.name};{bundle.name})"
    chern_ranks = dict(base.ring.chern_ranks)
    chern_ranks[group] = 1
    ring = make_quotient_ring(
        list(base.ring.generators) + [Generator(name=xi, bidegree=(2, 1), bundle=group, index=1)],
        relations,
        base.ring.top_degree + 2 * (r - 1),
        base.prime,
        weight_unit=base.mode == CoefficientMode.WEIGHT_UNIT,
        chern_ranks=chern_ranks,
        name=name,
    )
    pi = RingMorphism(base.ring, ring, {n: ring.gen(n) for n in base.ring.names})
    h = ring.gen(xi)
    space = Space(SpaceKind.PROJ_BUNDLE, ring, base.mode, name, point_class=pi(base.point_class) * h ** (r - 1))
    space.base = base
    space.factor_maps = (pi,)
    for b in base.bundles.values():
        if b.name != "T":
            space.add_bundle(b.pullback(pi, space))
    space.add_bundle(Bundle(space, 1, ring.one() + h, _fresh("H", list(space.bundles))))
    if base.tangent is not None:
        relative = ring.zero()
        for i in range(r + 1):
            relative = relative + pi(bundle.chern(i)) * (ring.one() + h) ** (r - i)
        space.add_bundle(Bundle(space, base.tangent.rank + r - 1, pi(base.tangent.total) * relative, "T"))
    logger.info(f"Built {name}: D={ring.top_degree}")
    return space
