from .audit import (
    induced_hull_map,
    inclusion,
    invariant_triple,
    left_exact,
    same_invariants,
    coherence_audit,
)
from .local import N_MAX, HullResult, find_nzd, h1_local, local_hull, punctual_hull
from .locus import is_s1, is_s2, local_depth, low_depth_points, non_s2_locus
from .oracle import iterative_hull
from .pipeline import hull, pure_hull, reflexive_hull
from .torsion import CenterSpec, Submodule, emb, pure_torsion, tors_along

__all__ = [
    "CenterSpec", "HullResult", "N_MAX", "Submodule", "emb", "find_nzd", "h1_local", "hull",
    "inclusion", "induced_hull_map", "invariant_triple", "is_s1", "is_s2", "iterative_hull",
    "left_exact", "local_depth", "local_hull", "low_depth_points", "non_s2_locus",
    "punctual_hull", "pure_hull", "pure_torsion", "reflexive_hull", "same_invariants",
    "coherence_audit", "tors_along",
]
