"""thomcalc - characteristic classes, Steenrod-type operations and pushforwards over Z/l."""
from .cli.main import main, run
from .core.builders import parse_space, resolve_embedding, resolve_map
from .core.chern import Bundle, Genus, evaluate_genus
from .core.pushforward import ProperMap
from .core.ring import Elem, RingCtx, Series
from .core.spaces import CoefficientMode, EmbeddingData, Space
from .core.workspace import JsonWorkspace
from .operations import Operation, apply_operation, steenrod_total
from .verify import execute, run_suite
from .config.logger import setup_logging

__version__ = "0.1.0"

__all__ = [
    "main",
    "run",
    "parse_space",
    "resolve_embedding",
    "resolve_map",
    "Bundle",
    "Genus",
    "evaluate_genus",
    "ProperMap",
    "Elem",
    "RingCtx",
    "Series",
    "CoefficientMode",
    "EmbeddingData",
    "Space",
    "JsonWorkspace",
    "Operation",
    "apply_operation",
    "steenrod_total",
    "execute",
    "run_suite",
    "setup_logging",
]
