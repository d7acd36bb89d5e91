"""Finitely presented bigraded rings over prime fields, and truncated power series."""
from .field import Coeff, coefficient_field, inverse
from .quotient import Generator, RingCtx, Elem, RingMorphism, make_quotient_ring, normal_form
from .series import Series, series_invert

__all__ = [
    "Coeff",
    "coefficient_field",
    "inverse",
    "Generator",
    "RingCtx",
    "Elem",
    "RingMorphism",
    "make_quotient_ring",
    "normal_form",
    "Series",
    "series_invert",
]
