"""Resolve command-line names against the workspace, falling back to catalog specs."""
import logging
from typing import Dict, Optional

from ..core.builders import build_space, parse_space, resolve_embedding, resolve_map
from ..core.chern import Bundle
from ..core.errors import UnresolvedName, UsageError
from ..core.pushforward import ProperMap
from ..core.ring import Elem
from ..core.spaces import CoefficientMode, EmbeddingData, Space, graph_embedding
from ..core.workspace import JsonWorkspace
from ..models.descriptors import EmbeddingDescriptor, MapDescriptor
from ..operations.operation import Operation
from ..operations.presets import steenrod_total
from .expr import EvalContext, evaluate_text

logger = logging.getLogger("thomcalc")


class Session:
    """One command's view of the workspace at a fixed prime and coefficient mode."""

    def __init__(self, workspace: JsonWorkspace, prime: int, mode: CoefficientMode,
                 char_p: Optional[bool] = None):
        self.workspace = workspace
        self.prime = prime
        self.mode = mode
        self.char_p = char_p
        self._bundles: Dict[str, Bundle] = {}
        self._embeddings: Dict[str, EmbeddingData] = {}

    def space(self, name: str) -> Space:
        """A workspace space by name, otherwise a catalog spec such as ``P2`` or ``Gr(2,4)``."""
        if self.workspace.has("spaces", name):
            return build_space(self.workspace.get_space(name), self.prime, self.mode)
        return parse_space(name, self.prime, self.mode)

    def element(self, space: Space, text: str):
        return evaluate_text(text, EvalContext(space.ring, space.bundles, char_p=self.char_p))

    def bundle(self, name: str) -> Bundle:
        if name in self._bundles:
            return self._bundles[name]
        descriptor = self.workspace.get_bundle(name)
        space = self.space(descriptor.space)
        total = self.element(space, descriptor.total)
        if not isinstance(total, Elem):
            raise UsageError(f"total Chern class of {name} must be an unsupported class, got {total}")
        bundle = Bundle(space, descriptor.rank, total, name)
        self._bundles[name] = bundle
        logger.debug(f"Resolved bundle {name} over {space.name}: rank {bundle.rank}, c = {bundle.total}")
        return bundle

    def bundles_over(self, space: Space) -> Dict[str, Bundle]:
        """Catalog bundles of ``space`` plus every workspace bundle living over it."""
        found = dict(space.bundles)
        if space.tangent is not None:
            found["T"] = space.tangent
        for name, descriptor in self.workspace.data.bundles.items():
            if self.space(descriptor.space) is space:
                found[name] = self.bundle(name)
        return found

    def _build_embedding(self, name: str, descriptor: EmbeddingDescriptor) -> EmbeddingData:
        if descriptor.kind == "linear":
            return resolve_embedding(f"linear:{descriptor.m}:{descriptor.n}", self.prime, self.mode)
        if descriptor.kind == "identity":
            return resolve_embedding(f"identity:{descriptor.space}", self.prime, self.mode)
        if descriptor.kind == "cover":
            return resolve_embedding(f"cover:{descriptor.d}", self.prime, self.mode)
        if descriptor.source is None or descriptor.base is None or descriptor.n is None:
            raise UsageError(f"graph embedding {name} needs source, base and n")
        source = self.space(descriptor.source)
        base = self.space(descriptor.base)
        images = {gen: self.element(source, text) for gen, text in descriptor.images.items()}
        line = self.element(source, descriptor.line) if descriptor.line else None
        return graph_embedding(source, base, images, descriptor.n, line, name=name)

    def embedding(self, name: str) -> EmbeddingData:
        """A workspace embedding by name, otherwise a catalog spec such as ``linear:1:2``."""
        if name in self._embeddings:
            return self._embeddings[name]
        if self.workspace.has("embeddings", name):
            embedding = self._build_embedding(name, self.workspace.get_embedding(name))
        else:
            embedding = resolve_embedding(name, self.prime, self.mode)
        self._embeddings[name] = embedding
        return embedding

    def _build_map(self, name: str, descriptor: MapDescriptor) -> ProperMap:
        kind = descriptor.kind
        if kind == "structure":
            f = resolve_map(f"structure:{descriptor.m}:{descriptor.n}", self.prime, self.mode)
        elif kind == "projection":
            f = resolve_map(f"projection:{descriptor.n}:{descriptor.m}", self.prime, self.mode)
        elif kind == "identity":
            f = resolve_map(f"identity:{descriptor.space}", self.prime, self.mode)
        elif kind == "cover":
            f = resolve_map(f"cover:{descriptor.d}", self.prime, self.mode)
        elif kind == "embedding":
            if descriptor.embedding is None:
                raise UsageError(f"map {name} needs an embedding")
            return ProperMap.from_embedding(self.embedding(descriptor.embedding), descriptor.degree)
        else:
            if descriptor.embedding is None or descriptor.target is None or descriptor.n is None:
                raise UsageError(f"factored map {name} needs embedding, target and n")
            embedding = self.embedding(descriptor.embedding)
            return ProperMap(embedding.source, self.space(descriptor.target), embedding, descriptor.n,
                             degree=descriptor.degree, name=name)
        if descriptor.degree != f.degree:
            f = ProperMap(f.source, f.target, f.embedding, f.n, degree=descriptor.degree, name=name)
        return f

    def proper_map(self, name: str) -> ProperMap:
        """A workspace map by name, otherwise a catalog spec such as ``structure:2:2``."""
        if self.workspace.has("maps", name):
            return self._build_map(name, self.workspace.get_map(name))
        return resolve_map(name, self.prime, self.mode)

    def operation(self, name: str) -> Operation:
        return steenrod_total(name, self.prime, self.char_p)

    def eval_context(self, space: Optional[Space] = None, embedding: Optional[EmbeddingData] = None,
                     genus_bundle: Optional[str] = None) -> EvalContext:
        """Names for an expression over ``space``, or over the source of ``embedding`` with
        ``tau`` and the normal bundle ``N`` in scope."""
        if embedding is not None:
            space = embedding.source
        if space is None:
            raise UsageError("an expression needs --space or --embedding")
        bundles = self.bundles_over(space)
        module = None
        if embedding is not None:
            bundles["N"] = embedding.normal
            module = embedding.module
        if genus_bundle is not None:
            if genus_bundle not in bundles:
                raise UnresolvedName(f"no bundle {genus_bundle!r} over {space.name}; known: {sorted(bundles)}")
            chosen = bundles[genus_bundle]
        elif embedding is not None:
            chosen = embedding.normal
        else:
            chosen = space.tangent
        return EvalContext(space.ring, bundles, chosen, module, self.char_p)
