"""Exact hulls of finitely presented graded modules over polynomial rings."""

from .algebra import GF, QQ, FreeSub, PolyRing
from .homological import FPModule, ModuleMap
from .hulls import hull, local_hull, pure_hull, reflexive_hull

__version__ = "0.1.0"

__all__ = ["FPModule", "FreeSub", "GF", "ModuleMap", "PolyRing", "QQ", "hull", "local_hull",
           "pure_hull", "reflexive_hull"]
