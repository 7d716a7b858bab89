"""Global hulls: the S2 hull, the pure hull and the reflexive hull."""

from ..algebra.submodule import FreeSub, intersect, unit_vec
from ..errors import InvariantFailure, MalformedInput, PurityViolation
from ..homological import FPModule, ModuleMap, Subquotient, annihilator, hom_module, map_kernel_sub
from ..primes import (
    codim_in_support,
    minimal_primes,
    purity_check,
    support_components,
)
from .local import N_MAX, HullResult, local_hull
from .locus import non_s2_locus
from .torsion import CenterSpec, Submodule, emb, pure_torsion, tors_along


def _locus_ideal(locus):
    I = None
    for Q in locus:
        I = Q.ideal if I is None else intersect(I, Q.ideal)
    return I


def _identity_result(M, M1, kernel, kind, purity, locus):
    """M1 = M / kernel on the same free cover, pruned, with tau the quotient map."""
    R1 = M1.relation_vecs
    sq = Subquotient(M.ring, M.rank, M.degrees, [unit_vec(M.ring, i) for i in range(M.rank)], R1)
    cols = [sq.coords(unit_vec(M.ring, i)) for i in range(M.rank)]
    tau = ModuleMap(M, sq.module, cols).certify()
    return HullResult(M, sq.module, tau, kind, 0, sq=sq, base=M1, purity=purity,
                      locus=locus, kernel=kernel)


def _pipeline(M, kernel, kind, purity, n_max, check):
    M1 = kernel.quotient()
    locus = non_s2_locus(M1)
    if not locus:
        res = _identity_result(M, M1, kernel, kind, purity, locus)
    else:
        Z = CenterSpec(_locus_ideal(locus))
        lh = local_hull(M1, Z, n_max, check=check)
        # M and M1 share generators, so tau of M1 is tau of M
        tau = ModuleMap(M, lh.hull, lh.tau.columns).certify()
        res = HullResult(M, lh.hull, tau, kind, lh.stabilization_exponent, sq=lh.sq, base=M1,
                         s_terms=lh.s_terms, purity=purity, locus=locus, kernel=kernel, center=Z)
        res.nzd = lh.nzd
    for Q in locus:
        if Q.dim == 0 and not res.coker.is_zero():
            n = tors_along(res.coker, Q.ideal).module.length()
            res.coker_length_at_isolated_points.append((Q, n))
    if check:
        check_hull(res, M1)
    return res


def check_hull(res, M1):
    """Support preservation, kernel of tau, and codimension of coker tau."""
    comps = support_components(M1)
    if not res.hull.is_zero() and not support_components(res.hull).same_primes(comps):
        raise InvariantFailure("hull changed the support")
    K = map_kernel_sub(res.tau)
    src = res.source
    kern = FreeSub(src.ring, src.rank, list(K.gens) + list(src.relation_vecs), src.degrees)
    if not kern.same_as(res.kernel.ambient()):
        raise InvariantFailure("kernel of tau differs from the removed submodule")
    if not res.coker.is_zero():
        for Q in minimal_primes(annihilator(res.coker)):
            c = codim_in_support(Q, list(comps))
            if c is None or c < 2:
                raise InvariantFailure("coker tau has a component of codimension below 2")


def hull(M, n_max=N_MAX, check=True):
    """The S2 hull: kill emb, check purity, then the local hull along the non-S2 locus."""
    if M.is_zero():
        raise MalformedInput("hull of the zero module")
    e = emb(M)
    M1 = e.quotient()
    verdict = purity_check(support_components(M1))
    if not verdict.pure:
        Q, Pi, Pj = verdict.witness
        raise PurityViolation("support fails codimension-one purity",
                              witness={"Q": Q.strings(), "P_i": Pi.strings(), "P_j": Pj.strings()})
    return _pipeline(M, e, "emb", verdict, n_max, check)


def pure_hull(M, n_max=N_MAX, check=True):
    """Hull after removing the sections of lower-dimensional support."""
    if M.is_zero():
        raise MalformedInput("pure hull of the zero module")
    t = pure_torsion(M)
    M1 = t.quotient()
    verdict = purity_check(support_components(M1))
    if not verdict.pure:
        raise InvariantFailure("pure-dimensional support failed the purity check")
    return _pipeline(M, t, "dim-torsion", verdict, n_max, check)


def reflexive_hull(M):
    """M** with tau the evaluation map m -> (phi -> phi(m))."""
    if not annihilator(M).is_zero():
        raise MalformedInput("the reflexive hull needs full support (zero annihilator)")
    ring = M.ring
    S1 = FPModule.free(ring, 1)
    D1, app1 = hom_module(M, S1)
    D2, app2 = hom_module(D1, S1)
    cols = []
    for j in range(M.rank):
        v = {}
        ej = unit_vec(ring, j)
        for k in range(D1.rank):
            for t, c in app1.apply_vec(k, ej).items():
                v[t[:-1] + (k,)] = c
        c = app2.sq.coords(v)
        if c is None:
            raise InvariantFailure("evaluation is not an element of the double dual")
        cols.append(c)
    tau = ModuleMap(M, D2, cols).certify()
    K = map_kernel_sub(tau)
    kernel = Submodule(M, K.gens)
    res = HullResult(M, D2, tau, "emb", 0, kernel=kernel)
    res.dual = D1
    return res
