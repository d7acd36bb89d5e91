"""JSON workspace store: named spaces, bundles, embeddings and maps in one document."""
import logging
from pathlib import Path
from typing import Dict, Optional, Union

from pydantic import BaseModel, ValidationError

from ..models.descriptors import (
    BundleDescriptor,
    EmbeddingDescriptor,
    MapDescriptor,
    SpaceDescriptor,
    WorkspaceModel,
)
from ..models.reports import canonical_json
from .errors import UnresolvedName, UsageError

logger = logging.getLogger("thomcalc")

_SECTIONS = ("spaces", "bundles", "embeddings", "maps")


class JsonWorkspace:
    """JSON-backed workspace.

    Holds the in-memory ``WorkspaceModel`` and serializes it canonically, so that
    save, load and save again write the same bytes.
    """

    def __init__(self, model: Optional[WorkspaceModel] = None, path: Optional[Path] = None):
        self._model = model or WorkspaceModel()
        self.path = path
        self._str = ""

    @classmethod
    def load(cls, path: Union[str, Path]) -> "JsonWorkspace":
        """Read a workspace file; a missing file gives an empty workspace bound to ``path``."""
        path = Path(path)
        if not path.exists():
            logger.debug(f"No workspace at {path}, starting empty")
            return cls(path=path)
        try:
            model = WorkspaceModel.model_validate_json(path.read_text())
        except ValidationError as e:
            raise UsageError(f"workspace {path} is not a valid workspace document: {e}") from e
        logger.debug(f"Loaded workspace {path}: " + ", ".join(f"{len(getattr(model, s))} {s}" for s in _SECTIONS))
        return cls(model, path)

    def save(self, path: Optional[Union[str, Path]] = None) -> Path:
        target = Path(path) if path is not None else self.path
        if target is None:
            raise UsageError("workspace has no file to save to")
        try:
            target.write_text(self.update())
        except OSError as e:
            logger.error(f"Failed to write workspace {target}: {e}")
            raise
        logger.info(f"Saved workspace to {target}")
        self.path = target
        return target

    def _section(self, section: str) -> Dict[str, BaseModel]:
        return getattr(self._model, section)

    def _add(self, section: str, name: str, entry: BaseModel) -> None:
        if not name or not name.replace("_", "").isalnum():
            raise UsageError(f"invalid {section[:-1]} name {name!r}")
        entries = self._section(section)
        if name in entries:
            logger.info(f"Replacing {section[:-1]} {name}")
        entries[name] = entry
        self._str = ""

    def _get(self, section: str, name: str) -> BaseModel:
        entries = self._section(section)
        if name not in entries:
            known = ", ".join(sorted(entries)) or "none"
            raise UnresolvedName(f"no {section[:-1]} named {name!r} in the workspace (known: {known})")
        return entries[name]

    def add_space(self, name: str, descriptor: SpaceDescriptor) -> None:
        self._add("spaces", name, descriptor)

    def add_bundle(self, name: str, descriptor: BundleDescriptor) -> None:
        self._add("bundles", name, descriptor)

    def add_embedding(self, name: str, descriptor: EmbeddingDescriptor) -> None:
        self._add("embeddings", name, descriptor)

    def add_map(self, name: str, descriptor: MapDescriptor) -> None:
        self._add("maps", name, descriptor)

    def get_space(self, name: str) -> SpaceDescriptor:
        return self._get("spaces", name)

    def get_bundle(self, name: str) -> BundleDescriptor:
        return self._get("bundles", name)

    def get_embedding(self, name: str) -> EmbeddingDescriptor:
        return self._get("embeddings", name)

    def get_map(self, name: str) -> MapDescriptor:
        return self._get("maps", name)

    def has(self, section: str, name: str) -> bool:
        return name in self._section(section)

    def update(self) -> str:
        """Re-serialize the workspace and return the JSON text."""
        self._str = canonical_json(self._model)
        return self._str

    def __str__(self) -> str:
        if not self._str:
            self.update()
        return self._str

    @property
    def data(self) -> WorkspaceModel:
        return self._model
