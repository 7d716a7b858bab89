"""Torsion along a center, the embedded-point submodule emb(M), and pure torsion."""

from itertools import combinations, product

from ..algebra.ring import format_poly
from ..algebra.submodule import (
    FreeSub,
    canonical,
    intersect,
    saturate,
    saturate_poly,
    split_components,
    to_vec,
)
from ..errors import EmbWitnessNotFound, MalformedInput
from ..homological import Subquotient
from ..primes import associated_primes, minimal_primes, support_components


class CenterSpec:
    """The ideal of a closed subset Z; ``kind`` is "subscheme" or "point"."""

    def __init__(self, ideal, kind="subscheme"):
        if kind not in ("subscheme", "point"):
            raise MalformedInput(f"unknown center kind {kind!r}")
        ideal._need_ideal()
        self.ideal = canonical(ideal)
        self.kind = kind
        if kind == "point":
            if self.ideal.is_whole():
                raise MalformedInput("a point needs a proper ideal")
            mp = minimal_primes(self.ideal)
            if len(mp) != 1 or mp.primes[0].dim != 0 or not mp.primes[0].ideal.same_as(self.ideal):
                raise MalformedInput("a point center must be a maximal ideal")

    @classmethod
    def of(cls, z):
        return z if isinstance(z, CenterSpec) else cls(z)

    def strings(self):
        return [str(f) for f in self.ideal.polys]


class Submodule:
    """A submodule (K + R)/R of M = F/R, kept with its ambient generators."""

    def __init__(self, parent, vecs):
        self.parent = parent
        self.sq = Subquotient(parent.ring, parent.rank, parent.degrees, vecs, parent.relation_vecs)
        self.vecs = self.sq.gens
        self.module = self.sq.module

    def is_zero(self):
        return not self.vecs

    def is_whole(self):
        return self.quotient().is_zero()

    def ambient(self):
        """K + R as a FreeSub of the free cover."""
        P = self.parent
        return FreeSub(P.ring, P.rank, list(self.vecs) + list(P.relation_vecs), P.degrees)

    def quotient(self):
        return self.parent.quotient_by(self.vecs)

    def same_as(self, other):
        return self.ambient().same_as(other.ambient())

    def generator_strings(self):
        P = self.parent
        return [[format_poly(P.ring, c) for c in split_components(v, P.rank)] for v in self.vecs]

    def __repr__(self):
        return f"Submodule({self.generator_strings()})"

    def to_json(self):
        return {"generators": self.generator_strings(), "zero": self.is_zero()}


def tors_along(M, Z):
    """{m in M : I_Z^n m = 0 for some n}."""
    Z = CenterSpec.of(Z)
    sat, _ = saturate(M.relations, Z.ideal)
    return Submodule(M, sat.vecs)


def _poly_vec(f):
    return to_vec([f])


def _witness(P, B, bound=200):
    """f in the intersection of the primes B but not in P, by deterministic search."""
    J = B[0].ideal
    for Q in B[1:]:
        J = intersect(J, Q.ideal)
    gens = sorted(canonical(J).polys, key=lambda f: (f.degree(), str(f)))
    for f in gens:
        if P.ideal.reduce(_poly_vec(f)):
            return f
    tries = 0
    coeffs = (1, -1, 2, -2, 3, -3)
    for k in range(2, len(gens) + 1):
        for idx in combinations(range(len(gens)), k):
            if len({gens[i].degree() for i in idx}) > 1:
                continue
            for cs in product(coeffs, repeat=k):
                tries += 1
                if tries > bound:
                    raise EmbWitnessNotFound("no separating element within the search bound")
                f = sum((gens[i].scale(gens[i].ring.field(c)) for i, c in zip(idx, cs)), gens[0].ring.zero)
                if f and P.ideal.reduce(_poly_vec(f)):
                    return f
    raise EmbWitnessNotFound("no separating element within the search bound")


def _kernel_over(M, targets, ass):
    """Intersection over P in targets of (0 :_M f_P^infinity), certified component by component."""
    K = None
    for P in targets:
        B = [Q for Q in ass if not P.contains(Q)]
        if not B:
            Ki = canonical(M.relations) if M.relation_vecs else M.relations
        else:
            f = _witness(P, B)
            Ki = saturate_poly(M.relations, f.terms)
            quot = M.quotient_by(Ki.vecs)
            if not quot.is_zero():
                bad = [Q for Q in associated_primes(quot) if not P.contains(Q)]
                if bad:
                    raise EmbWitnessNotFound(f"certification failed at component {P}")
        K = Ki if K is None else intersect(K, Ki)
    return K


def emb(M):
    """Sections whose support contains no component of supp M."""
    if M.is_zero():
        raise MalformedInput("emb of the zero module")
    ass = associated_primes(M)
    comps = support_components(M)
    K = _kernel_over(M, list(comps), ass)
    return Submodule(M, K.vecs)


def pure_torsion(M):
    """Sections whose support has dimension below dim M."""
    if M.is_zero():
        raise MalformedInput("pure torsion of the zero module")
    ass = associated_primes(M)
    comps = support_components(M)
    top = max(P.dim for P in comps)
    K = _kernel_over(M, [P for P in comps if P.dim == top], ass)
    return Submodule(M, K.vecs)
