"""Models for presentations, descriptors and reports."""
from .algebra import ElemModel, RingModel, TermModel
from .descriptors import (
    BundleDescriptor,
    EmbeddingDescriptor,
    MapDescriptor,
    SpaceDescriptor,
    WorkspaceModel,
)
from .reports import CheckRequest, InstanceKey, Report, SuiteResult, SuiteSummary, canonical_json

__all__ = [
    "ElemModel",
    "RingModel",
    "TermModel",
    "BundleDescriptor",
    "EmbeddingDescriptor",
    "MapDescriptor",
    "SpaceDescriptor",
    "WorkspaceModel",
    "CheckRequest",
    "InstanceKey",
    "Report",
    "SuiteResult",
    "SuiteSummary",
    "canonical_json",
]
