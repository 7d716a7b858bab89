"""S1/S2 predicates and the non-S2 locus via local duality on the ambient ring.

At a prime Q, depth M_Q = height Q - max{i : Q contains Ann Ext^i(M, S)}.
"""

from ..algebra.submodule import ideal_sum
from ..errors import MalformedInput
from ..primes import (
    ComponentSet,
    associated_primes,
    codim_in_support,
    ext_annihilators,
    minimal_elements,
    minimal_primes,
    purity_check,
    support_components,
)


def _contains_ideal(Q, A):
    return all(not Q.ideal.reduce(v) for v in A.vecs)


def local_depth(M, Q, anns=None):
    """depth of M_Q for a prime record Q in the support."""
    anns = anns if anns is not None else ext_annihilators(M)
    e = max((i for i, A in enumerate(anns) if not A.is_whole() and _contains_ideal(Q, A)), default=None)
    if e is None:
        return None
    return Q.height - e


def is_s1(M):
    if M.is_zero():
        raise MalformedInput("S1 test on the zero module")
    return associated_primes(M).same_primes(support_components(M))


def non_s2_locus(M):
    """Minimal primes Q with depth M_Q <= 1 and codimension >= 2 in supp M."""
    if M.is_zero() or not is_s1(M):
        raise MalformedInput("the non-S2 locus needs an S1 module")
    comps = list(support_components(M))
    anns = ext_annihilators(M)
    cands = []
    for A in anns:
        if not A.is_whole():
            cands.extend(minimal_primes(A))
    # points where components meet can fail S2 without being Ext-annihilator components
    for i, P in enumerate(comps):
        for Pj in comps[i + 1:]:
            J = ideal_sum(P.ideal, Pj.ideal)
            if not J.is_whole():
                cands.extend(minimal_primes(J))
    bad = []
    seen = set()
    for Q in cands:
        if Q.key() in seen:
            continue
        seen.add(Q.key())
        cs = codim_in_support(Q, comps)
        if cs is None or cs < 2:
            continue
        d = local_depth(M, Q, anns)
        if d is not None and d <= 1:
            bad.append(Q)
    return ComponentSet(minimal_elements(bad), "non-s2-locus")


def is_s2(M):
    if not is_s1(M):
        return False
    if non_s2_locus(M):
        return False
    return purity_check(support_components(M)).pure


def low_depth_points(M, I):
    """Generic points inside V(I) where depth M <= 1: minimal primes P of Ann Ext^i + I with height P <= i + 1."""
    anns = ext_annihilators(M)
    pts = []
    for i, A in enumerate(anns):
        J = ideal_sum(A, I)
        if J.is_whole():
            continue
        pts.extend(P for P in minimal_primes(J) if P.height <= i + 1)
    return minimal_elements(pts)
