"""Local and punctual hulls.

With s in I_Z a homogeneous nonzerodivisor on M = F/R, the sections of M
off Z form the union over n of s^-n V_n, where
``V_n = (s^n F + R) : I_Z^infinity``.  The chain stabilizes at the first n
with ``V_{n+1} = s V_n + R``; then the local hull is V_n / R with generator
degrees lowered by n deg(s), and tau sends e_i to s^n e_i.
"""

from itertools import product
from math import lcm

from ..algebra.submodule import (
    FreeSub,
    canonical,
    colon_poly,
    saturate,
    unit_vec,
    vec_scale_poly,
)
from ..errors import InvariantFailure, NoncoherentCap, TorsionPresent
from ..homological import (
    ModuleMap,
    Subquotient,
    depth_along,
    map_cokernel,
    map_kernel,
)
from .torsion import CenterSpec, tors_along

N_MAX = 32


class HullResult:
    """A hull together with tau and its diagnostics."""

    def __init__(self, source, hull, tau, kernel_kind, exponent, sq=None, base=None,
                 s_terms=None, purity=None, locus=None, kernel=None, center=None):
        self.source = source
        self.hull = hull
        self.tau = tau
        self.kernel_kind = kernel_kind
        self.stabilization_exponent = exponent
        self.sq = sq
        self.base = base            # module the hull was built over (same free cover as source)
        self.s_terms = s_terms      # s^n as a term dict
        self.purity = purity
        self.non_s2_locus = locus
        self.kernel = kernel        # Submodule of source, or None
        self.center = center
        self.rounds = None
        self.coker = map_cokernel(tau)
        n = self.coker.length()
        self.coker_length = n if self.coker.dim() <= 0 else None
        self.coker_length_at_isolated_points = []

    def is_identity(self):
        return self.coker.is_zero() and map_kernel(self.tau).is_zero()

    def fraction_coords(self, num_vec, den_terms):
        """Hull coordinates of num/den (num a free-cover vector), or None when it is not a section."""
        base = self.base
        ring = base.ring
        p = ring.field.characteristic
        target = vec_scale_poly(num_vec, self.s_terms or {(0,) * ring.nvars: ring.field.one}, p)
        gens = [vec_scale_poly(unit_vec(ring, i), den_terms, p) for i in range(base.rank)]
        lifter = FreeSub(ring, base.rank, gens + list(base.relation_vecs), base.degrees)
        coeffs = lifter.lift_vec(target)
        if coeffs is None:
            return None
        y = {}
        for i, cf in enumerate(coeffs[:base.rank]):
            for e, c in cf.items():
                y[e + (i,)] = c
        return self.sq.coords(y) if self.sq is not None else base.reduce(y)

    def hilbert(self, lo, hi):
        return self.hull.hilbert_function(lo, hi)

    def to_json(self, lo=0, hi=4):
        H = self.hull
        out = {
            "hull": module_json(H, lo, hi),
            "tau": self.tau.matrix_strings(),
            "kernel_kind": self.kernel_kind,
            "stabilization_exponent": self.stabilization_exponent,
            "coker_length": self.coker_length,
            "coker_dim": self.coker.dim(),
            "coker_length_at_isolated_points": [
                {"point": P.strings(), "length": n} for P, n in self.coker_length_at_isolated_points],
        }
        if self.coker.is_graded():
            out["coker_hilbert"] = self.coker.hilbert_function(lo, hi)
        if self.purity is not None:
            out["purity"] = self.purity.to_json()
        if self.non_s2_locus is not None:
            out["non_s2_locus"] = self.non_s2_locus.to_json()
        if self.kernel is not None:
            out["tau_kernel"] = self.kernel.generator_strings()
        if self.center is not None:
            out["center"] = self.center.strings()
        if self.rounds is not None:
            out["rounds"] = self.rounds
        return out


def module_json(M, lo=0, hi=4):
    out = {"rank": M.rank, "degrees": list(M.degrees), "relations": M.relation_strings()}
    if M.is_graded():
        out["hilbert"] = {"range": [lo, hi], "values": M.hilbert_function(lo, hi)}
        num = M.hilbert_numerator()
        out["hilbert_numerator"] = [[k, str(v)] for k, v in num.items()]
    return out


# -- nonzerodivisors -------------------------------------------------------------

def is_nzd(M, f_terms):
    R = canonical(M.relations) if M.relation_vecs else M.relations
    return colon_poly(R, f_terms).same_as(R)


def find_nzd(M, I, bound=200):
    """A nonzerodivisor on M inside I: generators first, then small combinations of equal-degree powers."""
    gens = sorted(canonical(I).polys, key=lambda f: (f.degree(), str(f)))
    for g in gens:
        if is_nzd(M, g.terms):
            return g
    graded = M.is_graded() and all(g.is_homogeneous() for g in gens)
    if graded:
        D = lcm(*[g.degree() for g in gens])
        powered = [g ** (D // g.degree()) for g in gens]
    else:
        powered = gens
    ring = I.ring
    tries = 0
    for cs in product((1, -1, 2, -2, 3, -3), repeat=len(powered)):
        tries += 1
        if tries > bound:
            break
        f = ring.zero
        for c, g in zip(cs, powered):
            f = f + g.scale(ring.field(c))
        if f and is_nzd(M, f.terms):
            return f
    raise InvariantFailure("no nonzerodivisor found inside the center ideal")


# -- local hull -----------------------------------------------------------------

def local_hull(M, Z, n_max=N_MAX, check=True):
    """Sections of M off Z, as a finitely presented module with tau: M -> hull."""
    Z = CenterSpec.of(Z)
    I = Z.ideal
    if n_max < 1:
        raise InvariantFailure("n_max must be at least 1")
    ring = M.ring
    p = ring.field.characteristic
    if not tors_along(M, Z).is_zero():
        raise TorsionPresent("the module has sections supported on the center")
    R = canonical(M.relations) if M.relation_vecs else M.relations
    if M.is_zero():
        tau = ModuleMap(M, M, [unit_vec(ring, i) for i in range(M.rank)])
        return HullResult(M, M, tau, "Z-torsion", 0, base=M, center=Z)
    s = find_nzd(M, I)
    ds = s.degree()
    V = FreeSub.free(ring, M.rank, M.degrees)
    n = 0
    while True:
        sV = FreeSub(ring, M.rank, [vec_scale_poly(v, s.terms, p) for v in V.vecs] + list(R.vecs), M.degrees)
        nxt, _ = saturate(sV, I)
        if nxt.same_as(sV):
            break
        n += 1
        if n > n_max:
            raise NoncoherentCap(f"local hull did not stabilize within {n_max} steps",
                                 n_max=n_max, center=Z.strings())
        V = nxt
    s_n = (s ** n).terms
    degs = tuple(d - n * ds for d in M.degrees)
    sq = Subquotient(ring, M.rank, degs, V.vecs, R.vecs)
    cols = []
    for i in range(M.rank):
        c = sq.coords(vec_scale_poly(unit_vec(ring, i), s_n, p))
        if c is None:
            raise InvariantFailure("tau image is not a hull section")
        cols.append(c)
    tau = ModuleMap(M, sq.module, cols).certify()
    res = HullResult(M, sq.module, tau, "Z-torsion", n, sq=sq, base=M, s_terms=s_n, center=Z)
    res.nzd = s
    if check:
        check_local(res, I)
    return res


def check_local(res, I):
    """Depth certificate, injectivity of tau and I-torsion cokernel."""
    H = res.hull
    if not H.is_zero() and depth_along(I, H) < 2:
        raise InvariantFailure("local hull has depth below 2 along the center")
    if not map_kernel(res.tau).is_zero():
        raise InvariantFailure("tau of a local hull is not injective")
    if not res.coker.is_zero() and not tors_along(res.coker, I).is_whole():
        raise InvariantFailure("coker tau is not supported on the center")


def punctual_hull(M, x, n_max=N_MAX):
    """Local hull at a rational point; records the length of coker tau."""
    x = x if isinstance(x, CenterSpec) and x.kind == "point" else CenterSpec(
        x.ideal if isinstance(x, CenterSpec) else x, "point")
    res = local_hull(M, x, n_max)
    if res.coker_length is None:
        raise InvariantFailure("coker of a punctual hull must have finite length")
    res.coherent = True
    return res


def h1_local(M, Z, n_max=N_MAX):
    """(finite, length) for H^1_Z(M) = coker tau of the local hull."""
    try:
        res = local_hull(M, Z, n_max)
    except NoncoherentCap:
        return False, None
    if res.coker_length is None:
        return False, None
    return True, res.coker_length
