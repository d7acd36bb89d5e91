"""User-supplied operation series: ``custom:<polynomial in u>``."""
import logging
from typing import Dict

from sympy import Poly, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from ...core.errors import UsageError
from ..operation import OperationMode
from .base import BaseOperationPreset

logger = logging.getLogger("thomcalc")

PREFIX = "custom:"
VARIABLE = Symbol("u")


class CustomPreset(BaseOperationPreset):
    """Any integer polynomial in ``u``, e.g. ``custom:u + 2*u^3``."""

    mode = OperationMode.CUSTOM

    def preset_name(self) -> str:
        return "custom"

    def can_handle(self, name: str) -> bool:
        return name.startswith(PREFIX)

    def label(self, name: str, prime: int, char_p: bool) -> str:
        return f"{name[len(PREFIX):].strip()} mod {prime}"

    def series_terms(self, name: str, prime: int) -> Dict[int, int]:
        text = name[len(PREFIX):].strip()
        if not text:
            raise UsageError("custom operation needs a series, e.g. custom:u+u^3")
        try:
            expr = parse_expr(text, local_dict={"u": VARIABLE},
                              transformations=standard_transformations + (convert_xor,))
            poly = Poly(expr, VARIABLE)
        except Exception as e:
            raise UsageError(f"cannot read custom series {text!r}: {e}") from e
        if poly.free_symbols - {VARIABLE} or not poly.domain.is_ZZ:
            raise UsageError(f"custom series {text!r} must have integer coefficients in u")
        terms = {monom[0]: int(c) % prime for monom, c in poly.terms()}
        logger.debug(f"Custom series {text!r} over F_{prime}: {terms}")
        return terms
