"""Descriptor models for spaces, bundles, embeddings and maps, and the workspace document."""
import re
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from ..core.errors import ParseError
from ..core.spaces import CoefficientMode, SpaceKind

_PROJ = re.compile(r"P(\d+)\Z")
_GRASSMANNIAN = re.compile(r"Gr\((\d+),(\d+)\)\Z")
_PROJ_BUNDLE = re.compile(r"PB\((.+);([A-Za-z_][A-Za-z0-9_]*)\)\Z")


def _split_product(text: str) -> List[str]:
    """Split ``AxB`` on every ``x`` outside parentheses."""
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "x" and depth == 0:
            parts.append(text[start:k])
            start = k + 1
    parts.append(text[start:])
    return parts


class SpaceDescriptor(BaseModel):
    """A catalog space by kind and parameters.

    The spec-string form is the space's printed name: ``pt``, ``P2``, ``Gr(2,4)``,
    ``P1xP2`` and ``PB(P1;T)``.
    """
    kind: SpaceKind
    params: Dict[str, int] = Field(default_factory=dict)
    factors: List["SpaceDescriptor"] = Field(default_factory=list)
    bundle: Optional[str] = None

    @classmethod
    def parse(cls, text: str) -> "SpaceDescriptor":
        source = text
        text = text.replace(" ", "")
        parts = _split_product(text)
        if len(parts) > 1:
            if not all(parts):
                raise ParseError(f"empty factor in product {source!r}", source)
            descriptor = cls.parse(parts[0])
            for part in parts[1:]:
                descriptor = cls(kind=SpaceKind.PRODUCT, factors=[descriptor, cls.parse(part)])
            return descriptor
        if text == "pt":
            return cls(kind=SpaceKind.POINT)
        m = _PROJ.match(text)
        if m:
            return cls(kind=SpaceKind.PROJ, params={"n": int(m.group(1))})
        m = _GRASSMANNIAN.match(text)
        if m:
            return cls(kind=SpaceKind.GRASSMANNIAN, params={"k": int(m.group(1)), "N": int(m.group(2))})
        m = _PROJ_BUNDLE.match(text)
        if m:
            return cls(kind=SpaceKind.PROJ_BUNDLE, factors=[cls.parse(m.group(1))], bundle=m.group(2))
        raise ParseError(f"unknown space {source!r}; expected pt, P<n>, Gr(k,N), PB(<space>;<bundle>) "
                         f"or a product AxB", source)

    def spec(self) -> str:
        if self.kind == SpaceKind.POINT:
            return "pt"
        if self.kind == SpaceKind.PROJ:
            return f"P{self.params['n']}"
        if self.kind == SpaceKind.GRASSMANNIAN:
            return f"Gr({self.params['k']},{self.params['N']})"
        if self.kind == SpaceKind.PRODUCT:
            return "x".join(f.spec() for f in self.factors)
        return f"PB({self.factors[0].spec()};{self.bundle})"


SpaceDescriptor.model_rebuild()


class BundleDescriptor(BaseModel):
    """A bundle over a space: rank and total Chern class as an expression in the space's ring."""
    space: str
    rank: int
    total: str = "1"


class EmbeddingDescriptor(BaseModel):
    """A closed embedding. ``graph`` embeds ``source`` in ``base x P^n`` with the given
    pullback images; the other kinds are catalog embeddings."""
    kind: Literal["linear", "identity", "cover", "graph"]
    m: Optional[int] = None
    n: Optional[int] = None
    d: Optional[int] = None
    space: Optional[str] = None
    source: Optional[str] = None
    base: Optional[str] = None
    images: Dict[str, str] = Field(default_factory=dict)
    line: Optional[str] = None


class MapDescriptor(BaseModel):
    """A proper map. ``factored`` composes a named embedding into ``target x P^n`` with the
    projection; ``embedding`` pushes forward along a named embedding alone."""
    kind: Literal["structure", "projection", "identity", "cover", "embedding", "factored"]
    m: Optional[int] = None
    n: Optional[int] = None
    d: Optional[int] = None
    space: Optional[str] = None
    embedding: Optional[str] = None
    target: Optional[str] = None
    degree: int = 1


class WorkspaceModel(BaseModel):
    """The persisted workspace: defaults plus named entries."""
    version: int = 1
    prime: Optional[int] = None
    mode: CoefficientMode = CoefficientMode.PURE_POINT
    char_p: Optional[bool] = None
    spaces: Dict[str, SpaceDescriptor] = Field(default_factory=dict)
    bundles: Dict[str, BundleDescriptor] = Field(default_factory=dict)
    embeddings: Dict[str, EmbeddingDescriptor] = Field(default_factory=dict)
    maps: Dict[str, MapDescriptor] = Field(default_factory=dict)
