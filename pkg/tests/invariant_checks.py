"""Hull invariants over the bundled corpus, shared by the invariant tests and the acceptance gate.

Each check takes a module and returns a short status string ("ok" or "n/a: why")
or raises AssertionError.
"""

from hullforge.algebra.submodule import to_vec
from hullforge.errors import NoncoherentCap, PurityViolation
from hullforge.homological import FPModule, annihilator, depth_along, map_kernel
from hullforge.hulls import (
    CenterSpec,
    emb,
    hull,
    inclusion,
    is_s1,
    is_s2,
    iterative_hull,
    left_exact,
    local_hull,
    non_s2_locus,
    reflexive_hull,
    same_invariants,
    coherence_audit,
    tors_along,
)
from hullforge.hulls.audit import audit_agrees
from hullforge.primes import purity_check, support_components

from conftest import VERONESE, corpus_modules, cyclic, ideal, ring, two_planes, veronese_ring


def _hull_or_none(M):
    try:
        return hull(M)
    except (PurityViolation, NoncoherentCap):
        return None


def check_idempotent(M):
    res = _hull_or_none(M)
    if res is None:
        return "n/a: no coherent hull"
    again = hull(res.hull)
    assert again.is_identity(), "hull of a hull moved"
    return "ok"


def check_depth_certificate(M):
    M1 = emb(M).quotient()
    locus = non_s2_locus(M1)
    if not locus:
        return "n/a: S2 already"
    for Q in locus:
        try:
            res = local_hull(M1, Q.ideal)
        except NoncoherentCap:
            continue
        assert depth_along(Q.ideal, res.hull) >= 2, f"depth below 2 along {Q.strings()}"
        assert support_components(res.hull).same_primes(support_components(M1)), "local hull moved the support"
        # tau is an isomorphism away from Q
        if not res.coker.is_zero():
            assert tors_along(res.coker, Q.ideal).is_whole(), "coker tau not supported on the center"
    return "ok"


def check_support_preserved(M):
    res = _hull_or_none(M)
    if res is None:
        return "n/a: no coherent hull"
    M1 = emb(M).quotient()
    assert support_components(res.hull).same_primes(support_components(M1)), "support changed"
    assert purity_check(support_components(res.hull)).pure, "hull support is not pure"
    return "ok"


def check_exact_sequence(M):
    """coker of the local hull at Z equals the Z-torsion of hull(M)/M (length and Hilbert series)."""
    if not is_s1(M):
        return "n/a: not S1"
    res = _hull_or_none(M)
    if res is None:
        return "n/a: no coherent hull"
    locus = [Q for Q in non_s2_locus(M) if Q.height >= 2]
    if not locus:
        return "n/a: empty locus"
    for Q in locus:
        local = local_hull(M, Q.ideal)
        part = tors_along(res.coker, Q.ideal).module
        assert local.coker.length() == part.length(), "lengths disagree"
        if M.is_graded():
            assert local.coker.hilbert_numerator() == part.hilbert_numerator(), "Hilbert series disagree"
    return "ok"


def check_iterative_oracle(M):
    M1 = emb(M).quotient()
    locus = non_s2_locus(M1)
    if not locus:
        return "n/a: S2 already"
    done = 0
    for Q in locus:
        try:
            direct = local_hull(M1, Q.ideal)
        except NoncoherentCap:
            continue
        it = iterative_hull(M1, Q.ideal)
        assert same_invariants(it, direct), f"iterative and saturation hulls disagree at {Q.strings()}"
        done += 1
    return "ok" if done else "n/a: no coherent center"


def check_reflexive_oracle(M):
    if not annihilator(M).is_zero() or not emb(M).is_zero():
        return "n/a: not torsion-free with full support"
    a, b = reflexive_hull(M), hull(M)
    assert same_invariants(a, b), "reflexive hull and hull disagree"
    return "ok"


def check_s2_consistency(M):
    s2 = is_s2(M)
    res = _hull_or_none(M)
    if s2:
        assert res is not None and res.is_identity(), "S2 module with a nontrivial hull"
    if res is not None:
        assert is_s2(res.hull), "hull is not S2"
        assert is_s1(res.hull)
    return "ok"


def check_coherence_audit(M):
    rows = coherence_audit(M)
    if not rows:
        return "n/a: no maximal non-S2 points"
    M1 = emb(M).quotient()
    for row in rows:
        assert audit_agrees(row), f"coherence conditions disagree: {row}"
        try:
            local_hull(M1, CenterSpec(ideal(M1.ring, *row["point"]), "point"))
            stabilizes = True
        except NoncoherentCap:
            stabilizes = False
        assert stabilizes == row["punctual_coherent"], "local hull stabilization disagrees"
    return "ok"


CHECKS = {
    "idempotence": check_idempotent,
    "depth certificate": check_depth_certificate,
    "support preservation": check_support_preserved,
    "exact sequence accounting": check_exact_sequence,
    "iterative oracle": check_iterative_oracle,
    "reflexive oracle": check_reflexive_oracle,
    "S1/S2 consistency": check_s2_consistency,
}


# -- left exactness ----------------------------------------------------------------

def inclusion_pairs():
    """Five inclusions G -> F with supp G = supp F and F of pure support."""
    pairs = []
    S, P = two_planes()
    pairs.append(("two planes: (x+u)F", P, [to_vec([S("x + u")])]))
    pairs.append(("two planes: mF", P, [to_vec([S(v)]) for v in "xyuv"]))
    V = veronese_ring()
    W = cyclic(V, *VERONESE)
    pairs.append(("veronese: (a, d)F", W, [to_vec([V("a")]), to_vec([V("d")])]))
    D = P.direct_sum(P.shift(-1))
    pairs.append(("planes sum: first summand", D, [to_vec([S.one, S.zero])]))
    T = ring("x y")
    K = FPModule.coker(T, 2, [["-y", "x"]], (1, 1))
    pairs.append(("maximal ideal: (x)", K, [to_vec([T.one, T.zero])]))
    return pairs


def check_left_exact(F, vecs):
    G, iota = inclusion(F, vecs)
    assert map_kernel(iota).is_zero()
    assert support_components(G).same_primes(support_components(F))
    hG, hF = hull(G), hull(F)
    assert left_exact(iota, hG, hF), "induced map on hulls has a kernel"
    return "ok"


def all_modules():
    return corpus_modules()
