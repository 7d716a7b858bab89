"""Cross-checks between hull constructions.

Modules are compared through invariants only: the Hilbert series numerator
(hence the Hilbert function in every degree), the annihilator and the length
of coker tau.
"""

from ..errors import InvariantFailure, NoncoherentCap
from ..homological import FPModule, ModuleMap, Subquotient, annihilator, map_kernel
from ..primes import associated_primes, ideal_key
from .local import h1_local, local_hull, punctual_hull
from .locus import non_s2_locus
from .torsion import CenterSpec, emb


def invariant_triple(res):
    H = res.hull
    hs = tuple(sorted(H.hilbert_numerator().items())) if H.is_graded() else None
    return hs, ideal_key(annihilator(H)), res.coker_length


def sufficient_range(*results):
    """Degrees over which equal Hilbert functions force equal series: up to the top numerator degree."""
    lo, hi = 0, 0
    for r in results:
        num = r.hull.hilbert_numerator()
        if num:
            lo = min(lo, min(num), min(r.hull.degrees, default=0))
            hi = max(hi, max(num))
    return lo, hi


def same_invariants(a, b):
    return invariant_triple(a) == invariant_triple(b)


def _coherent(f):
    try:
        f()
        return True
    except NoncoherentCap:
        return False


def coherence_audit(M, n_max=32):
    """At every maximal point x of the non-S2 locus of M/emb M, compare the coherence conditions.

    Returns one dict per point with the punctual coherence, finiteness of H^1_x,
    and the same two conditions for every component S/W through x.
    """
    M1 = emb(M).quotient()
    rows = []
    for Q in non_s2_locus(M1):
        if Q.dim != 0:
            continue
        x = CenterSpec(Q.ideal, "point")
        punctual = _coherent(lambda: punctual_hull(M1, x, n_max))
        h1_finite, h1_len = h1_local(M1, x, n_max)
        comp_hull, comp_punctual, comp_h1 = True, True, True
        for W in associated_primes(M1):
            if not Q.contains(W) or W.key() == Q.key():
                continue
            OW = FPModule.quotient(W.ideal)
            comp_hull &= _coherent(lambda: local_hull(OW, x, n_max))
            comp_punctual &= _coherent(lambda: punctual_hull(OW, x, n_max))
            comp_h1 &= h1_local(OW, x, n_max)[0]
        rows.append({"point": Q.strings(), "punctual_coherent": punctual, "h1_finite": h1_finite,
                     "h1_length": h1_len, "components_local_coherent": comp_hull,
                     "components_punctual_coherent": comp_punctual, "components_h1_finite": comp_h1})
    return rows


def audit_agrees(row):
    flags = [row["punctual_coherent"], row["h1_finite"], row["components_local_coherent"],
             row["components_punctual_coherent"], row["components_h1_finite"]]
    return all(flags) or not any(flags)


# -- functoriality --------------------------------------------------------------

def inclusion(F, vecs):
    """The submodule G of F generated by free-cover vectors, with the inclusion G -> F."""
    sq = Subquotient(F.ring, F.rank, F.degrees, vecs, F.relation_vecs)
    G = sq.module
    return G, ModuleMap(G, F, [dict(v) for v in sq.gens]).certify()


def induced_hull_map(iota, hull_G, hull_F):
    """hull(G) -> hull(F) induced by iota: G -> F, via sections w / s^n.

    Needs the nonzerodivisor used for hull(G) to stay a nonzerodivisor on F / emb F,
    which holds when G and F have the same support.
    """
    ring = iota.source.ring
    den = hull_G.s_terms or {(0,) * ring.nvars: ring.field.one}
    cols = []
    gens = hull_G.sq.gens if hull_G.sq is not None else None
    if gens is None:
        raise InvariantFailure("hull of the source carries no section representatives")
    for w in gens:
        c = hull_F.fraction_coords(iota.image_vec(w), den)
        if c is None:
            raise InvariantFailure("image of a hull section is not a section of the target hull")
        cols.append(c)
    return ModuleMap(hull_G.hull, hull_F.hull, cols).certify()


def left_exact(iota, hull_G, hull_F):
    return map_kernel(induced_hull_map(iota, hull_G, hull_F)).is_zero()


