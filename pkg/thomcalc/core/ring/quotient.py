"""Finitely presented bigraded commutative rings over F_l.

A ring is given by generators of even positive first degree, homogeneous relations
and a top first-degree ``D`` above which every element vanishes. Normal forms come
from linear algebra inside each bidegree: the degree-``b`` piece of the relation
ideal is

    I_b = sum_g x_g * I_{b - deg g}  +  span(relations of bidegree b)

and is row-reduced over F_l. Columns are ordered ascending lexicographically in the
exponent vectors, so pivots land on monomials rich in later generators and the
standard monomials favour earlier ones (``c``'s over ``d``'s in a Grassmannian,
base classes over ``xi`` in a projective bundle).

An optional weight unit ``theta`` of bidegree (0, 1) is carried as a separate
integer exponent. It never enters a relation, so each theta-power is reduced
independently.
"""
import logging
import re
import threading
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict
from sympy.polys.matrices import DomainMatrix

from ..errors import NotInvertible, PresentationError, UsageError
from .field import Coeff, coefficient_field, inverse

logger = logging.getLogger("thomcalc")

Bidegree = Tuple[int, int]
Exponents = Tuple[int, ...]
# (generator exponents, weight-unit power)
Term = Tuple[Exponents, int]
# names-based polynomial: [(coefficient, {"u": 3}), ...]
Polynomial = Sequence[Tuple[int, Mapping[str, int]]]

THETA = "theta"
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Generator(BaseModel):
    """A ring generator.

    ``bundle``/``index`` mark the generator as the ``index``-th Chern class of the
    named bundle, which is how operations act on it through the splitting principle.
    """
    model_config = ConfigDict(frozen=True)

    name: str
    bidegree: Tuple[int, int]
    integral: bool = True
    bundle: Optional[str] = None
    index: Optional[int] = None


GeneratorLike = Union[Generator, Tuple[str, Tuple[int, int]], Tuple[str, Tuple[int, int], bool]]


def _as_generator(spec: GeneratorLike) -> Generator:
    if isinstance(spec, Generator):
        return spec
    if len(spec) == 2:
        name, bidegree = spec
        return Generator(name=name, bidegree=tuple(bidegree))
    name, bidegree, integral = spec
    return Generator(name=name, bidegree=tuple(bidegree), integral=integral)


class _Piece:
    """Row-reduced ideal piece of a single bidegree."""
    __slots__ = ("columns", "index", "pivots")

    def __init__(self, columns: List[Exponents], pivots: Dict[int, Dict[int, int]]):
        self.columns = columns
        self.index = {m: k for k, m in enumerate(columns)}
        self.pivots = pivots

    @property
    def basis(self) -> List[Exponents]:
        return [m for k, m in enumerate(self.columns) if k not in self.pivots]

    def reduce(self, vector: Mapping[Exponents, int], prime: int) -> Dict[Exponents, int]:
        dense = {self.index[m]: c for m, c in vector.items()}
        # reduced rows vanish on every other pivot column, one pass suffices
        for col in [k for k in dense if k in self.pivots]:
            factor = dense[col]
            for k, v in self.pivots[col].items():
                dense[k] = (dense.get(k, 0) - factor * v) % prime
        return {self.columns[k]: c for k, c in dense.items() if c}


class RingCtx:
    """A finitely presented bigraded commutative ring over F_prime.

    Bases are computed lazily per bidegree and memoized behind a lock; the
    presentation itself never changes after construction.
    """

    def __init__(
        self,
        generators: Sequence[GeneratorLike],
        relations: Sequence[Polynomial],
        top_degree: int,
        prime: int,
        weight_unit: bool = False,
        chern_ranks: Optional[Mapping[str, int]] = None,
        name: Optional[str] = None,
    ):
        self.field = coefficient_field(prime)
        self.prime = prime
        self.generators: Tuple[Generator, ...] = tuple(_as_generator(g) for g in generators)
        self.names: Tuple[str, ...] = tuple(g.name for g in self.generators)
        self.position = {n: k for k, n in enumerate(self.names)}
        self.weight_unit = weight_unit
        self.chern_ranks: Dict[str, int] = dict(chern_ranks or {})
        self.name = name or "A"
        self._validate_generators(top_degree)
        self.top_degree = top_degree
        self.relations: Tuple[Tuple[Bidegree, Dict[Exponents, int]], ...] = tuple(
            r for r in (self._convert_relation(rel) for rel in relations) if r is not None
        )
        self._lock = threading.RLock()
        self._monomial_memo: Dict[int, List[Exponents]] = {}
        self._pieces: Dict[Bidegree, _Piece] = {}
        logger.debug(
            f"Ring {self.name}: generators={list(self.names)}, relations={len(self.relations)}, "
            f"D={top_degree}, prime={prime}, weight_unit={weight_unit}"
        )

    # -- presentation -----------------------------------------------------------------

    def _validate_generators(self, top_degree: int) -> None:
        if len(set(self.names)) != len(self.names):
            raise PresentationError(f"duplicate generator names in {list(self.names)}")
        for g in self.generators:
            if not _NAME.match(g.name) or g.name == THETA:
                raise PresentationError(f"invalid generator name {g.name!r}")
            i, _ = g.bidegree
            if i <= 0 or i % 2:
                raise PresentationError(
                    f"generator {g.name} has first degree {i}; first degrees must be even and positive"
                )
        if top_degree < 0:
            raise PresentationError(f"top degree must be nonnegative, got {top_degree}")
        highest = max((g.bidegree[0] for g in self.generators), default=0)
        if top_degree < highest:
            raise PresentationError(f"top degree {top_degree} is below generator degree {highest}")

    def _convert_relation(self, relation: Polynomial) -> Optional[Tuple[Bidegree, Dict[Exponents, int]]]:
        poly: Dict[Exponents, int] = {}
        for coeff, powers in relation:
            exps = self.exponents(powers)
            poly[exps] = (poly.get(exps, 0) + int(coeff)) % self.prime
        poly = {m: c for m, c in poly.items() if c}
        if not poly:
            return None
        degrees = {self.monomial_bidegree(m) for m in poly}
        if len(degrees) != 1:
            raise PresentationError(f"relation {self.format_terms({(m, 0): c for m, c in poly.items()})} "
                                    f"is inhomogeneous: bidegrees {sorted(degrees)}")
        return degrees.pop(), poly

    def exponents(self, powers: Mapping[str, int]) -> Exponents:
        exps = [0] * len(self.names)
        for gen_name, e in powers.items():
            if gen_name not in self.position:
                raise PresentationError(f"unknown generator {gen_name!r} in ring {self.name}")
            if e < 0:
                raise PresentationError(f"negative exponent for {gen_name}")
            exps[self.position[gen_name]] += e
        return tuple(exps)

    @property
    def dimension(self) -> int:
        return self.top_degree // 2

    def generator(self, gen_name: str) -> Generator:
        if gen_name not in self.position:
            raise UsageError(f"ring {self.name} has no generator {gen_name!r}")
        return self.generators[self.position[gen_name]]

    def monomial_bidegree(self, exps: Exponents, theta: int = 0) -> Bidegree:
        i = sum(e * g.bidegree[0] for e, g in zip(exps, self.generators))
        j = sum(e * g.bidegree[1] for e, g in zip(exps, self.generators))
        return i, j + theta

    # -- monomials and bases ----------------------------------------------------------

    def _monomials_of_degree(self, first_degree: int) -> List[Exponents]:
        with self._lock:
            if first_degree not in self._monomial_memo:
                degrees = [g.bidegree[0] for g in self.generators]

                def build(k: int, remaining: int) -> Iterator[Exponents]:
                    if k == len(degrees):
                        if remaining == 0:
                            yield ()
                        return
                    for e in range(remaining // degrees[k] + 1):
                        for rest in build(k + 1, remaining - e * degrees[k]):
                            yield (e,) + rest

                found = list(build(0, first_degree)) if first_degree >= 0 else []
                self._monomial_memo[first_degree] = sorted(found)
            return self._monomial_memo[first_degree]

    def monomials(self, bidegree: Bidegree) -> List[Exponents]:
        """All theta-free monomials of a bidegree, in column order."""
        i, j = bidegree
        if i < 0 or i > self.top_degree:
            return []
        return [m for m in self._monomials_of_degree(i) if self.monomial_bidegree(m)[1] == j]

    def _piece(self, bidegree: Bidegree) -> _Piece:
        with self._lock:
            piece = self._pieces.get(bidegree)
            if piece is None:
                piece = self._compute_piece(bidegree)
                self._pieces[bidegree] = piece
            return piece

    def _compute_piece(self, bidegree: Bidegree) -> _Piece:
        columns = self.monomials(bidegree)
        index = {m: k for k, m in enumerate(columns)}
        rows: List[Dict[int, int]] = []
        for rel_degree, poly in self.relations:
            if rel_degree == bidegree:
                rows.append({index[m]: c for m, c in poly.items()})
        for k, g in enumerate(self.generators):
            lower = (bidegree[0] - g.bidegree[0], bidegree[1] - g.bidegree[1])
            if lower[0] < 0:
                continue
            below = self._piece(lower)
            for row in below.pivots.values():
                shifted = {}
                for col, v in row.items():
                    m = list(below.columns[col])
                    m[k] += 1
                    shifted[index[tuple(m)]] = v
                rows.append(shifted)

        pivots: Dict[int, Dict[int, int]] = {}
        if rows and columns:
            K = self.field
            matrix = DomainMatrix(
                {r: {c: K(v) for c, v in row.items()} for r, row in enumerate(rows)},
                (len(rows), len(columns)),
                K,
            )
            reduced, pivot_cols = matrix.rref()
            entries = reduced.to_sparse().rep
            for r, col in enumerate(pivot_cols):
                pivots[col] = {
                    c: int(v) % self.prime for c, v in entries.get(r, {}).items() if int(v) % self.prime
                }
        piece = _Piece(columns, pivots)
        logger.debug(
            f"Ring {self.name}: bidegree {bidegree} has {len(columns)} monomials, "
            f"{len(rows)} ideal rows, basis size {len(columns) - len(pivots)}"
        )
        return piece

    def basis(self, bidegree: Bidegree) -> List[Exponents]:
        """Standard monomials spanning the quotient in a theta-free bidegree."""
        i, _ = bidegree
        if i < 0 or i > self.top_degree:
            return []
        return self._piece(bidegree).basis

    def bidegrees(self) -> List[Bidegree]:
        """Every theta-free bidegree carried by some monomial up to the top degree."""
        found = set()
        for i in range(self.top_degree + 1):
            for m in self._monomials_of_degree(i):
                found.add(self.monomial_bidegree(m))
        return sorted(found)

    def basis_table(self) -> Dict[Bidegree, List[Exponents]]:
        """Nonzero per-bidegree bases."""
        table = {}
        for b in self.bidegrees():
            basis = self.basis(b)
            if basis:
                table[b] = basis
        return table

    def total_dimension(self) -> int:
        return sum(len(basis) for basis in self.basis_table().values())

    # -- element construction ---------------------------------------------------------

    def _reduce(self, terms: Mapping[Term, int]) -> Dict[Term, int]:
        groups: Dict[Tuple[Bidegree, int], Dict[Exponents, int]] = {}
        for (exps, theta), c in terms.items():
            c %= self.prime
            if not c:
                continue
            if theta and not self.weight_unit:
                raise UsageError(f"ring {self.name} has no weight unit")
            b = self.monomial_bidegree(exps)
            if b[0] > self.top_degree:
                continue
            vec = groups.setdefault((b, theta), {})
            vec[exps] = (vec.get(exps, 0) + c) % self.prime
        result: Dict[Term, int] = {}
        for (b, theta), vec in groups.items():
            for m, c in self._piece(b).reduce(vec, self.prime).items():
                result[(m, theta)] = c
        return result

    def element(self, terms: Mapping[Term, int]) -> "Elem":
        return Elem._wrap(self, self._reduce(terms))

    def normal_form(self, x: Union["Elem", Mapping[Term, int]]) -> "Elem":
        if isinstance(x, Elem):
            self._check_owner(x)
            return Elem._wrap(self, self._reduce(x.terms))
        return self.element(x)

    def from_polynomial(self, poly: Polynomial) -> "Elem":
        terms: Dict[Term, int] = {}
        for coeff, powers in poly:
            key = (self.exponents(powers), 0)
            terms[key] = terms.get(key, 0) + int(coeff)
        return self.element(terms)

    def zero(self) -> "Elem":
        return Elem._wrap(self, {})

    def scalar(self, value: int) -> "Elem":
        return self.element({((0,) * len(self.names), 0): value})

    def one(self) -> "Elem":
        return self.scalar(1)

    def gen(self, gen_name: str) -> "Elem":
        k = self.position.get(gen_name)
        if k is None:
            raise UsageError(f"ring {self.name} has no generator {gen_name!r}")
        exps = [0] * len(self.names)
        exps[k] = 1
        return self.element({(tuple(exps), 0): 1})

    def theta(self, power: int = 1) -> "Elem":
        if not self.weight_unit:
            raise UsageError(f"ring {self.name} has no weight unit")
        return self.element({((0,) * len(self.names), power): 1})

    def monomial(self, exps: Exponents, theta: int = 0, coeff: int = 1) -> "Elem":
        return self.element({(tuple(exps), theta): coeff})

    def _check_owner(self, x: "Elem") -> None:
        if x.owner is not self:
            raise UsageError(f"element of {x.owner.name} used in ring {self.name}")

    # -- printing ---------------------------------------------------------------------

    def format_monomial(self, exps: Exponents, theta: int = 0) -> str:
        factors = []
        for gen_name, e in zip(self.names, exps):
            if e == 1:
                factors.append(gen_name)
            elif e:
                factors.append(f"{gen_name}^{e}")
        if theta == 1:
            factors.append(THETA)
        elif theta:
            factors.append(f"{THETA}^{theta}")
        return "*".join(factors) if factors else "1"

    def term_order(self, term: Term) -> Tuple:
        exps, theta = term
        return (self.monomial_bidegree(exps)[0], theta, tuple(-e for e in exps))

    def format_terms(self, terms: Mapping[Term, int]) -> str:
        if not terms:
            return "0"
        parts = []
        for term in sorted(terms, key=self.term_order):
            c = terms[term]
            mono = self.format_monomial(*term)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"RingCtx({self.name}, prime={self.prime}, D={self.top_degree})"


class Elem:
    """A normal-form element of a ``RingCtx``."""
    __slots__ = ("owner", "terms")

    def __init__(self, owner: RingCtx, terms: Mapping[Term, int]):
        self.owner = owner
        self.terms = owner._reduce(terms)

    @classmethod
    def _wrap(cls, owner: RingCtx, terms: Dict[Term, int]) -> "Elem":
        obj = cls.__new__(cls)
        obj.owner = owner
        obj.terms = terms
        return obj

    # -- arithmetic -------------------------------------------------------------------

    def _coerce(self, other) -> "Elem":
        if isinstance(other, Elem):
            if other.owner is not self.owner:
                raise UsageError(f"cannot combine elements of {self.owner.name} and {other.owner.name}")
            return other
        if isinstance(other, int):
            return self.owner.scalar(other)
        return NotImplemented

    def __add__(self, other) -> "Elem":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.owner.prime
        terms = dict(self.terms)
        for t, c in other.terms.items():
            v = (terms.get(t, 0) + c) % p
            if v:
                terms[t] = v
            else:
                terms.pop(t, None)
        return Elem._wrap(self.owner, terms)

    __radd__ = __add__

    def __neg__(self) -> "Elem":
        p = self.owner.prime
        return Elem._wrap(self.owner, {t: (-c) % p for t, c in self.terms.items()})

    def __sub__(self, other) -> "Elem":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Elem":
        return (-self) + other

    def scale(self, factor: int) -> "Elem":
        p = self.owner.prime
        factor %= p
        if not factor:
            return self.owner.zero()
        return Elem._wrap(self.owner, {t: (c * factor) % p for t, c in self.terms.items()})

    def __mul__(self, other) -> "Elem":
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        raw: Dict[Term, int] = {}
        top = self.owner.top_degree
        for (m1, t1), c1 in self.terms.items():
            d1 = self.owner.monomial_bidegree(m1)[0]
            for (m2, t2), c2 in other.terms.items():
                if d1 + self.owner.monomial_bidegree(m2)[0] > top:
                    continue
                key = (tuple(a + b for a, b in zip(m1, m2)), t1 + t2)
                raw[key] = raw.get(key, 0) + c1 * c2
        return self.owner.element(raw)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Elem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.owner.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def inverse(self) -> "Elem":
        """Invert a unit: an invertible degree-zero term plus a nilpotent part."""
        degree_zero = {t: c for t, c in self.terms.items() if self.owner.monomial_bidegree(t[0])[0] == 0}
        if len(degree_zero) != 1:
            raise NotInvertible(f"{self} is not a unit")
        (exps, theta), c = next(iter(degree_zero.items()))
        unit_inv = self.owner.element({(exps, -theta): inverse(c, self.owner.prime)})
        nilpotent = self * unit_inv - 1
        result = self.owner.one()
        power = self.owner.one()
        for _ in range(self.owner.dimension + 1):
            power = power * (-nilpotent)
            if power.is_zero():
                break
            result = result + power
        return result * unit_inv

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == self.owner.scalar(other)
        if not isinstance(other, Elem):
            return NotImplemented
        return self.owner is other.owner and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((id(self.owner), frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- gradings ---------------------------------------------------------------------

    def bidegrees(self) -> List[Bidegree]:
        return sorted({self.owner.monomial_bidegree(m, theta) for m, theta in self.terms})

    @property
    def bidegree(self) -> Optional[Bidegree]:
        """The bidegree of a nonzero homogeneous element; ``None`` for zero or inhomogeneous."""
        degrees = self.bidegrees()
        return degrees[0] if len(degrees) == 1 else None

    def component(self, bidegree: Bidegree) -> "Elem":
        return Elem._wrap(self.owner, {
            t: c for t, c in self.terms.items() if self.owner.monomial_bidegree(*t) == tuple(bidegree)
        })

    def components(self) -> Dict[Bidegree, "Elem"]:
        return {b: self.component(b) for b in self.bidegrees()}

    def first_degree_part(self, first_degree: int) -> "Elem":
        return Elem._wrap(self.owner, {
            t: c for t, c in self.terms.items() if self.owner.monomial_bidegree(t[0])[0] == first_degree
        })

    def has_theta(self) -> bool:
        return any(theta for _, theta in self.terms)

    def theta_slices(self) -> Dict[int, "Elem"]:
        """Split into theta-free parts: ``self == sum(theta^k * slices[k])``."""
        slices: Dict[int, Dict[Term, int]] = {}
        for (exps, theta), c in self.terms.items():
            slices.setdefault(theta, {})[(exps, 0)] = c
        return {k: Elem._wrap(self.owner, v) for k, v in sorted(slices.items())}

    def coefficient(self, exps: Exponents, theta: int = 0) -> Coeff:
        return self.owner.field(self.terms.get((tuple(exps), theta), 0))

    def constant_term(self) -> int:
        return self.terms.get(((0,) * len(self.owner.names), 0), 0)

    def items(self) -> List[Tuple[Term, int]]:
        return [(t, self.terms[t]) for t in sorted(self.terms, key=self.owner.term_order)]

    def __str__(self) -> str:
        return self.owner.format_terms(self.terms)

    def __repr__(self) -> str:
        return f"Elem({self.owner.name}: {self})"


class RingMorphism:
    """A ring map given by the images of the source generators; theta maps to theta."""

    def __init__(self, source: RingCtx, target: RingCtx, images: Mapping[str, Elem]):
        for gen_name, image in images.items():
            if gen_name not in source.position:
                raise UsageError(f"{source.name} has no generator {gen_name!r}")
            if image.owner is not target:
                raise UsageError(f"image of {gen_name} does not live in {target.name}")
        self.source = source
        self.target = target
        self.images: Dict[str, Elem] = dict(images)

    @classmethod
    def identity(cls, ring: RingCtx) -> "RingMorphism":
        return cls(ring, ring, {n: ring.gen(n) for n in ring.names})

    def apply(self, x: Elem) -> Elem:
        if x.owner is not self.source:
            raise UsageError(f"morphism from {self.source.name} applied to an element of {x.owner.name}")
        powers: Dict[Tuple[int, int], Elem] = {}
        result = self.target.zero()
        for (exps, theta), c in x.terms.items():
            value = self.target.scalar(c)
            for k, e in enumerate(exps):
                if not e:
                    continue
                gen_name = self.source.names[k]
                if gen_name not in self.images:
                    raise UsageError(f"no image declared for generator {gen_name} of {self.source.name}")
                if (k, e) not in powers:
                    powers[(k, e)] = self.images[gen_name] ** e
                value = value * powers[(k, e)]
            if theta:
                value = value * self.target.theta(theta)
            result = result + value
        return result

    __call__ = apply

    def compose(self, first: "RingMorphism") -> "RingMorphism":
        """``self o first``: apply ``first`` then ``self``."""
        if first.target is not self.source:
            raise UsageError("morphisms do not compose")
        return RingMorphism(first.source, self.target, {n: self.apply(img) for n, img in first.images.items()})


def make_quotient_ring(
    generators: Sequence[GeneratorLike],
    relations: Sequence[Polynomial],
    top_degree: int,
    prime: int,
    weight_unit: bool = False,
    chern_ranks: Optional[Mapping[str, int]] = None,
    name: Optional[str] = None,
) -> RingCtx:
    """Build a quotient ring; see ``RingCtx``."""
    return RingCtx(generators, relations, top_degree, prime, weight_unit, chern_ranks, name)


def normal_form(x: Elem) -> Elem:
    return x.owner.normal_form(x)
