"""Exact polynomial arithmetic, Groebner bases and submodule arithmetic."""

from .field import GF, QQ, FieldSpec
from .ring import Poly, PolyRing, parse_poly
from .submodule import (
    FreeSub,
    colon,
    eliminate,
    groebner_basis,
    height,
    intersect,
    krull_dim,
    normal_form,
    saturate,
    syzygies,
)

__all__ = [
    "FieldSpec", "QQ", "GF", "Poly", "PolyRing", "parse_poly", "FreeSub",
    "groebner_basis", "normal_form", "syzygies", "intersect", "colon", "saturate",
    "eliminate", "krull_dim", "height",
]
