"""Resolve catalog spec strings into spaces, embeddings and maps."""
import logging
import re
from typing import Tuple

from ..models.descriptors import SpaceDescriptor
from .chern import Bundle, trivial_bundle
from .errors import ParseError, UnresolvedName
from .pushforward import ProperMap, cover_map, identity_map, projection_map, structure_map
from .spaces import (
    CoefficientMode,
    EmbeddingData,
    Space,
    SpaceKind,
    cover_embedding,
    grassmannian,
    identity_embedding,
    linear_embedding,
    point,
    product,
    projective_bundle,
    projective_space,
)
from .spaces.catalog import memoized

logger = logging.getLogger("thomcalc")

_TRIVIAL = re.compile(r"O(\d+)\Z")


@memoized
def _trivial_over(base: Space, rank: int) -> Bundle:
    return trivial_bundle(base, rank, f"O{rank}")


def _bundle_for(base: Space, name: str) -> Bundle:
    m = _TRIVIAL.match(name)
    if m:
        return _trivial_over(base, int(m.group(1)))
    return base.bundle(name)


def build_space(descriptor: SpaceDescriptor, prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT) -> Space:
    kind = descriptor.kind
    if kind == SpaceKind.POINT:
        return point(prime, mode)
    if kind == SpaceKind.PROJ:
        return projective_space(descriptor.params["n"], prime, mode)
    if kind == SpaceKind.GRASSMANNIAN:
        return grassmannian(descriptor.params["k"], descriptor.params["N"], prime, mode)
    if kind == SpaceKind.PRODUCT:
        first, second = (build_space(f, prime, mode) for f in descriptor.factors)
        return product(first, second)
    base = build_space(descriptor.factors[0], prime, mode)
    return projective_bundle(base, _bundle_for(base, descriptor.bundle))


def parse_space(text: str, prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT) -> Space:
    """``pt``, ``P2``, ``Gr(2,4)``, ``P1xP2``, ``PB(P1;O2)``."""
    return build_space(SpaceDescriptor.parse(text), prime, mode)


def _integers(spec: str, rest: str, count: int) -> Tuple[int, ...]:
    parts = rest.split(":")
    if len(parts) != count or not all(p.strip().isdigit() for p in parts):
        raise ParseError(f"{spec!r} needs {count} nonnegative integer argument(s)", spec)
    return tuple(int(p) for p in parts)


def resolve_embedding(spec: str, prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT) -> EmbeddingData:
    """``linear:m:n``, ``identity:<space>`` or ``cover:d``."""
    kind, _, rest = spec.partition(":")
    if kind == "linear":
        m, n = _integers(spec, rest, 2)
        return linear_embedding(m, n, prime, mode)
    if kind == "identity":
        return identity_embedding(parse_space(rest, prime, mode))
    if kind == "cover":
        (d,) = _integers(spec, rest, 1)
        return cover_embedding(d, prime, mode)
    raise UnresolvedName(f"unknown embedding {spec!r}; expected linear:m:n, identity:<space> or cover:d")


def resolve_map(spec: str, prime: int, mode: CoefficientMode = CoefficientMode.PURE_POINT) -> ProperMap:
    """``structure:m:n``, ``projection:n:m``, ``identity:<space>``, ``cover:d`` or
    ``embedding:<embedding spec>``."""
    kind, _, rest = spec.partition(":")
    if kind == "structure":
        m, n = _integers(spec, rest, 2)
        return structure_map(m, n, prime, mode)
    if kind == "projection":
        n, m = _integers(spec, rest, 2)
        return projection_map(n, m, prime, mode)
    if kind == "identity":
        return identity_map(parse_space(rest, prime, mode))
    if kind == "cover":
        (d,) = _integers(spec, rest, 1)
        return cover_map(d, prime, mode)
    if kind == "embedding":
        return ProperMap.from_embedding(resolve_embedding(rest, prime, mode))
    raise UnresolvedName(
        f"unknown map {spec!r}; expected structure:m:n, projection:n:m, identity:<space>, cover:d "
        f"or embedding:<embedding>"
    )
