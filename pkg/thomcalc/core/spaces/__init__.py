"""Space catalog and Thom modules."""
from .catalog import (
    CoefficientMode,
    Space,
    SpaceKind,
    grassmannian,
    point,
    product,
    projective_bundle,
    projective_space,
)
from .thom import (
    EmbeddingData,
    SupportedElem,
    ThomModule,
    cover_embedding,
    graph_embedding,
    identity_embedding,
    linear_embedding,
    normal_bundle_from_tangents,
    restrict,
    thom_module,
)

__all__ = [
    "CoefficientMode",
    "Space",
    "SpaceKind",
    "grassmannian",
    "point",
    "product",
    "projective_bundle",
    "projective_space",
    "EmbeddingData",
    "SupportedElem",
    "ThomModule",
    "cover_embedding",
    "graph_embedding",
    "identity_embedding",
    "linear_embedding",
    "normal_bundle_from_tangents",
    "restrict",
    "thom_module",
]
