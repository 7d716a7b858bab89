"""Finitely presented graded modules and the homological toolkit.

A module is ``F / R`` where ``F = S^n`` has generator degrees and ``R`` is
a FreeSub (the relation columns).  Hom and Ext are built from the complex
``Hom(F_., N)`` of a free resolution; submodules and quotients are carried
as subquotients ``(K + R) / R`` of a free module so that elements can be
moved back and forth between a presentation and its ambient.
"""

import math

from .algebra.hilbert import (
    hilbert_function_from_leads,
    hilbert_numerator_from_leads,
    leads_by_position,
    length_from_leads,
)
from .algebra.ring import format_poly
from .algebra.submodule import (
    FreeSub,
    canonical,
    component,
    dim_from_leads,
    from_vec,
    ideal_sum,
    intersect,
    kernel_mod,
    lin_comb,
    split_components,
    syzygies,
    to_vec,
    unit_vec,
    vec_add,
    vec_degree,
    vec_is_homogeneous,
    vec_primitive,
    vec_scale_poly,
    vec_shift_pos,
)
from .errors import InvariantFailure, MalformedInput

INF = math.inf


class FPModule:
    """coker(relations) with generators of the given degrees."""

    def __init__(self, ring, degrees, relations):
        self.ring = ring
        self.degrees = tuple(degrees)
        if relations.rank != len(self.degrees):
            raise MalformedInput("relation columns must have one entry per generator")
        self.relations = relations

    # -- constructors ------------------------------------------------------

    @classmethod
    def coker(cls, ring, rank, relations=(), degrees=None):
        degrees = tuple(degrees) if degrees is not None else (0,) * rank
        if len(degrees) != rank:
            raise MalformedInput(f"{len(degrees)} degrees given for rank {rank}")
        return cls(ring, degrees, FreeSub(ring, rank, relations, degrees))

    @classmethod
    def free(cls, ring, rank, degrees=None):
        return cls.coker(ring, rank, (), degrees)

    @classmethod
    def quotient(cls, ideal):
        """S / I as a cyclic module generated in degree 0."""
        ideal._need_ideal()
        return cls(ideal.ring, (0,), FreeSub(ideal.ring, 1, ideal.vecs, (0,)))

    @classmethod
    def from_ideal(cls, ideal):
        """The ideal I as a module: its generators with their syzygies."""
        I = ideal.minimalized()
        degs = tuple(vec_degree(I.ring, v, (0,)) for v in I.vecs)
        syz = syzygies(FreeSub(I.ring, 1, I.vecs, (0,)))
        return cls(I.ring, degs, FreeSub(I.ring, len(I.vecs), syz.vecs, degs))

    # -- basic properties --------------------------------------------------

    @property
    def rank(self):
        return len(self.degrees)

    @property
    def p(self):
        return self.ring.field.characteristic

    @property
    def relation_vecs(self):
        return self.relations.vecs

    def is_graded(self):
        return self.relations.is_homogeneous()

    def is_zero(self):
        return self.rank == 0 or self.relations.is_whole()

    def reduce(self, vec):
        return self.relations.reduce(vec)

    def element_is_zero(self, vec):
        return not self.relations.reduce(vec)

    def relation_leads(self):
        return leads_by_position(self.relations.leading_terms())

    def dim(self):
        return dim_from_leads(self.ring.nvars, self.relation_leads(), self.rank)

    def hilbert_function(self, lo, hi):
        if not self.is_graded():
            raise MalformedInput("Hilbert function needs a homogeneous module")
        return hilbert_function_from_leads(self.ring.weights, self.degrees, self.relation_leads(), lo, hi)

    def hilbert_numerator(self):
        if not self.is_graded():
            raise MalformedInput("Hilbert series needs a homogeneous module")
        return hilbert_numerator_from_leads(self.ring.weights, self.degrees, self.relation_leads())

    def length(self):
        """k-dimension when finite, else None."""
        return length_from_leads(self.ring.nvars, self.relation_leads(), self.rank)

    def direct_sum(self, other):
        n = self.rank
        rels = list(self.relation_vecs) + [vec_shift_pos(v, n) for v in other.relation_vecs]
        degs = self.degrees + other.degrees
        return FPModule(self.ring, degs, FreeSub(self.ring, n + other.rank, rels, degs))

    def shift(self, k):
        """M(k): generator degrees lowered by k."""
        degs = tuple(d - k for d in self.degrees)
        return FPModule(self.ring, degs, FreeSub(self.ring, self.rank, self.relation_vecs, degs))

    def quotient_by(self, vecs):
        """M / (submodule generated by vecs in the free cover)."""
        rels = list(self.relation_vecs) + [v for v in vecs if v]
        return FPModule(self.ring, self.degrees, FreeSub(self.ring, self.rank, rels, self.degrees))

    def relation_strings(self):
        return [[format_poly(self.ring, c) for c in split_components(v, self.rank)]
                for v in self.relation_vecs]

    def __repr__(self):
        return f"FPModule(rank={self.rank}, degrees={list(self.degrees)}, relations={self.relation_strings()})"


# -- presentations ---------------------------------------------------------

def _unit_entry(vec):
    """(pos, constant) of the first component that is a nonzero constant, else None."""
    comps = {}
    for t, c in vec.items():
        comps.setdefault(t[-1], []).append((t, c))
    for pos in sorted(comps):
        terms = comps[pos]
        if len(terms) == 1 and not any(terms[0][0][:-1]):
            return pos, terms[0][1]
    return None


def _drop_slot(vec, i):
    return {t[:-1] + (t[-1] - (t[-1] > i),): c for t, c in vec.items() if t[-1] != i}


def prune(ring, degrees, rel_vecs):
    """Eliminate generators killed by unit-entry relations (fixed scan order).

    Returns (degrees, relation vecs, old_to_new, kept) where old_to_new[j] is
    the image of the original generator j in the new generators and ``kept``
    lists the surviving original indices.
    """
    p = ring.field.characteristic
    degrees = list(degrees)
    rels = [dict(v) for v in rel_vecs if v]
    n = len(degrees)
    old_to_new = [unit_vec(ring, j) for j in range(n)]
    kept = list(range(n))
    while True:
        hit = None
        for ri, r in enumerate(rels):
            u = _unit_entry(r)
            if u is not None:
                hit = (ri, u)
                break
        if hit is None:
            break
        ri, (i, c) = hit
        r = rels.pop(ri)
        inv = ring.field.inv(c)
        # e_i = -(1/c) * (r - c e_i)
        expr = {t: ((-v * inv) % p if p else -v * inv) for t, v in r.items() if t[-1] != i}
        new_rels = []
        for s in rels:
            si = component(s, i, ring.nvars)
            if si:
                s = vec_add(s, vec_scale_poly(r, {e: ((-v * inv) % p if p else -v * inv) for e, v in si.items()}, p), p)
            new_rels.append(_drop_slot(s, i))
        rels = [s for s in new_rels if s]
        for j, v in enumerate(old_to_new):
            vi = component(v, i, ring.nvars)
            if vi:
                v = {t: c for t, c in v.items() if t[-1] != i}
                v = vec_add(v, vec_scale_poly(expr, vi, p), p)
            old_to_new[j] = _drop_slot(v, i)
        degrees.pop(i)
        kept.pop(i)
    return tuple(degrees), rels, old_to_new, kept


def canonical_relations(ring, degrees, rel_vecs):
    """Reduced GB of the relation module, then a minimal generating subset when graded."""
    R = FreeSub(ring, len(degrees), rel_vecs, degrees)
    if not R.vecs:
        return R
    C = canonical(R)
    if C.is_homogeneous():
        C2 = C.minimalized()
        if C2 is not C:
            C2._gb["pot"] = C.gb()
        C = C2
    return C


def pruned(M):
    """Canonical pruned presentation of M; returns (module, old_to_new, kept)."""
    degs, rels, old_to_new, kept = prune(M.ring, M.degrees, M.relation_vecs)
    R = canonical_relations(M.ring, degs, rels)
    return FPModule(M.ring, degs, R), old_to_new, kept


class Subquotient:
    """(K + R) / R inside a free module S^rank, presented as an FPModule.

    ``gens`` are ambient vectors of the chosen generators; ``coords`` expresses an
    ambient vector of K + R in terms of them.
    """

    def __init__(self, ring, rank, degrees, K_vecs, R_vecs):
        self.ring = ring
        self.rank = rank
        self.degrees = tuple(degrees)
        R = FreeSub(ring, rank, R_vecs, degrees)
        self.R = R
        p = ring.field.characteristic
        cands = []
        seen = set()
        for v in K_vecs:
            w = R.reduce(v) if R.vecs else dict(v)
            if not w:
                continue
            w = vec_primitive(ring, w)
            key = tuple(sorted((t, str(c)) for t, c in w.items()))
            if key in seen:
                continue
            seen.add(key)
            cands.append(w)
        homogeneous = all(vec_is_homogeneous(ring, v, self.degrees) for v in cands)
        if homogeneous:
            cands.sort(key=lambda v: vec_degree(ring, v, self.degrees))
        kept = []
        base = list(R.gb()) if R.vecs else []
        for v in cands:
            if (base or kept) and FreeSub(ring, rank, base + kept, degrees).contains_vec(v):
                continue
            kept.append(v)
        gdeg = tuple(vec_degree(ring, v, self.degrees) for v in kept)
        rel = kernel_mod(ring, kept, rank, base, self.degrees, gdeg) if kept else []
        degs, rels, old_to_new, keep_idx = prune(ring, gdeg, rel)
        self.gens = [kept[i] for i in keep_idx]
        self.module = FPModule(ring, degs, canonical_relations(ring, degs, rels))
        self._lifter = None
        self.p = p

    def coords(self, vec):
        """Coordinates of an ambient vector in the generators, or None if not in K + R."""
        if self._lifter is None:
            self._lifter = FreeSub(self.ring, self.rank, list(self.gens) + list(self.R.vecs), self.degrees)
        coeffs = self._lifter.lift_vec(vec)
        if coeffs is None:
            return None
        out = {}
        for i, cf in enumerate(coeffs[:len(self.gens)]):
            for e, c in cf.items():
                out[e + (i,)] = c
        return self.module.reduce(out) if self.module.relation_vecs else out

    def ambient(self, coord_vec):
        """Ambient vector of a coordinate vector."""
        return lin_comb(split_components(coord_vec, len(self.gens)), self.gens, self.p)


def submodule(M, vecs):
    """The submodule of M generated by free-cover vectors, as a Subquotient."""
    return Subquotient(M.ring, M.rank, M.degrees, vecs, M.relation_vecs)


# -- resolutions -------------------------------------------------------------

class Resolution:
    """maps[k] holds the columns of d_{k+1}: F_{k+1} -> F_k."""

    def __init__(self, ranks, degrees, maps):
        self.ranks = ranks
        self.degrees = degrees
        self.maps = maps

    def __len__(self):
        return len(self.maps)

    def matrix_strings(self, k):
        d = self.maps[k]
        return [[format_poly(d.ring, c) for c in split_components(v, d.rank)] for v in d.vecs]


def free_resolution(M, length):
    """Minimal (when graded) free resolution of M through homological degree ``length``."""
    if length < 0:
        raise MalformedInput("resolution length must be nonnegative")
    ring = M.ring
    ranks = [M.rank]
    degrees = [tuple(M.degrees)]
    maps = []
    cur = M.relations
    if cur.is_homogeneous():
        cur = cur.minimalized()
    for _ in range(length):
        maps.append(cur)
        cols = cur.vecs
        ranks.append(len(cols))
        col_degs = tuple(vec_degree(ring, v, cur.degrees) for v in cols)
        degrees.append(col_degs)
        if not cols:
            cur = FreeSub(ring, 0, [], ())
            continue
        syz = syzygies(FreeSub(ring, cur.rank, cols, cur.degrees))
        syz = FreeSub(ring, len(cols), syz.vecs, col_degs)
        cur = syz.minimalized() if syz.is_homogeneous() else syz
    return Resolution(ranks, degrees, maps)


def check_resolution(res):
    """Consecutive maps compose to zero exactly."""
    p = res.maps[0].ring.field.characteristic if res.maps else 0
    for k in range(len(res.maps) - 1):
        d1, d2 = res.maps[k], res.maps[k + 1]
        for col in d2.vecs:
            img = lin_comb(split_components(col, len(d1.vecs)), d1.vecs, p)
            if img:
                return False
    return True


# -- Hom / Ext ---------------------------------------------------------------

def _hom_degrees(src_degs, tgt_degs):
    g0 = len(tgt_degs)
    return tuple(tgt_degs[a] - src_degs[j] for j in range(len(src_degs)) for a in range(g0))


def _dual_images(dmap, n_src, g0, p):
    """Images of the basis E_{j,a} of Hom(F_i, G0) under precomposition with d: F_{i+1} -> F_i."""
    cols = [split_components(v, n_src) for v in dmap.vecs]
    images = []
    for j in range(n_src):
        for a in range(g0):
            img = {}
            for k, col in enumerate(cols):
                for e, c in col[j].items():
                    img[e + (k * g0 + a,)] = c
            images.append(img)
    return images


def _block_relations(N, f):
    g0 = N.rank
    return [vec_shift_pos(v, j * g0) for j in range(f) for v in N.relation_vecs]


def _hom_term(res, N, i):
    """Subquotient computing H^i(Hom(F_., N))."""
    ring = N.ring
    p = ring.field.characteristic
    g0 = N.rank
    f_i = res.ranks[i]
    degs_i = _hom_degrees(res.degrees[i], N.degrees)
    rank_i = f_i * g0
    if i + 1 < len(res.ranks) and res.ranks[i + 1] > 0:
        images = _dual_images(res.maps[i], f_i, g0, p)
        f_next = res.ranks[i + 1]
        degs_next = _hom_degrees(res.degrees[i + 1], N.degrees)
        Z = kernel_mod(ring, images, f_next * g0, _block_relations(N, f_next), degs_next, degs_i)
    else:
        Z = [unit_vec(ring, k) for k in range(rank_i)]
    R = _block_relations(N, f_i)
    if i > 0 and f_i > 0:
        R = R + [v for v in _dual_images(res.maps[i - 1], res.ranks[i - 1], g0, p) if v]
    return Subquotient(ring, rank_i, degs_i, Z, R)


def hom_module(M, N):
    """Hom(M, N) as an FPModule together with an applicator.

    ``applicator(k, m)`` evaluates the k-th generator of Hom(M, N) on an
    element ``m`` of M (a list of Polys over M's generators) and returns the
    image in N (list of Polys, reduced modulo N's relations).
    """
    if M.ring != N.ring:
        raise MalformedInput("Hom needs modules over the same ring")
    res = Resolution([M.rank, len(M.relation_vecs)],
                     [M.degrees, tuple(vec_degree(M.ring, v, M.degrees) for v in M.relation_vecs)],
                     [M.relations])
    sq = _hom_term(res, N, 0)
    return sq.module, HomApplicator(M, N, sq)


class HomApplicator:
    def __init__(self, M, N, sq):
        self.M, self.N, self.sq = M, N, sq

    def apply_vec(self, k, m_vec):
        """Image of the free-cover vector m_vec of M under the k-th Hom generator."""
        g0 = self.N.rank
        phi = split_components(self.sq.gens[k], self.M.rank * g0)
        p = self.N.p
        out = {}
        mcomps = split_components(m_vec, self.M.rank)
        for j, mj in enumerate(mcomps):
            if not mj:
                continue
            block = {}
            for a in range(g0):
                for e, c in phi[j * g0 + a].items():
                    block[e + (a,)] = c
            out = vec_add(out, vec_scale_poly(block, mj, p), p)
        return self.N.reduce(out) if self.N.relation_vecs else out

    def apply_coords_vec(self, hom_vec, m_vec):
        """Image of m under an arbitrary element of Hom(M, N) given in generator coordinates."""
        p = self.N.p
        out = {}
        for k, cf in enumerate(split_components(hom_vec, len(self.sq.gens))):
            if cf:
                out = vec_add(out, vec_scale_poly(self.apply_vec(k, m_vec), cf, p), p)
        return self.N.reduce(out) if self.N.relation_vecs else out

    def __call__(self, k, m):
        vec = to_vec([self.M.ring(x) for x in m])
        return from_vec(self.N.ring, self.apply_vec(k, vec), self.N.rank)


def ext_module(i, M, N):
    """Ext^i(M, N) as an FPModule."""
    if i < 0:
        raise MalformedInput("Ext index must be nonnegative")
    res = free_resolution(M, i + 1)
    return _hom_term(res, N, i).module


def ext_modules(M, N, top):
    """[Ext^0, ..., Ext^top] from one resolution."""
    res = free_resolution(M, top + 1)
    return [_hom_term(res, N, i).module for i in range(top + 1)]


# -- annihilators, depth, length ------------------------------------------------

def annihilator(M):
    """Ann(M) as the intersection of (R : e_i) over the generators."""
    ring = M.ring
    if M.rank == 0:
        return FreeSub.ideal(ring, [ring.one])
    result = None
    for i in range(M.rank):
        e = unit_vec(ring, i)
        ann_i = kernel_mod(ring, [e], M.rank, M.relation_vecs, M.degrees, (M.degrees[i],))
        I = FreeSub(ring, 1, ann_i)
        result = I if result is None else intersect(result, I)
    return canonical(result)


def depth_along(I, M):
    """min{i : Ext^i(S/I, M) != 0}; INF when V(I) misses the support of M."""
    if M.is_zero():
        raise MalformedInput("depth of the zero module is undefined")
    if ideal_sum(I, annihilator(M)).is_whole():
        return INF
    Q = FPModule.quotient(I)
    n = M.ring.nvars
    res = free_resolution(Q, n + 1)
    for i in range(n + 1):
        if not _hom_term(res, M, i).module.is_zero():
            return i
    raise InvariantFailure("no nonvanishing Ext found below the number of variables")


def length_finite(M):
    """k-dimension of a module with zero-dimensional support."""
    if M.is_zero():
        return 0
    n = M.length()
    if n is None:
        raise MalformedInput("module has positive-dimensional support")
    return n


def hilbert_function(M, lo, hi):
    return M.hilbert_function(lo, hi)


# -- maps ----------------------------------------------------------------------

class ModuleMap:
    """A map source -> target given by the images of the source generators.

    ``columns[j]`` is a free-cover vector of the target.
    """

    def __init__(self, source, target, columns):
        if len(columns) != source.rank:
            raise MalformedInput("one column per source generator is required")
        self.source = source
        self.target = target
        self.columns = [dict(c) for c in columns]

    @classmethod
    def from_matrix(cls, source, target, matrix):
        """matrix: list of rows (target gens) of Polys/strings, columns = source gens."""
        ring = source.ring
        cols = []
        for j in range(source.rank):
            cols.append(to_vec([ring(matrix[i][j]) for i in range(target.rank)]))
        return cls(source, target, cols)

    @classmethod
    def identity(cls, M):
        return cls(M, M, [unit_vec(M.ring, i) for i in range(M.rank)])

    @property
    def p(self):
        return self.source.ring.field.characteristic

    def image_vec(self, vec):
        return lin_comb(split_components(vec, self.source.rank), self.columns, self.p)

    def is_well_defined(self):
        """Certificate: every source relation maps into the target relations."""
        return all(self.target.element_is_zero(self.image_vec(r)) for r in self.source.relation_vecs)

    def certify(self):
        if not self.is_well_defined():
            raise InvariantFailure("module map is not well defined")
        return self

    def compose(self, inner):
        """self o inner."""
        return ModuleMap(inner.source, self.target, [self.image_vec(c) for c in inner.columns])

    def matrix_strings(self):
        t = self.target
        rows = []
        for i in range(t.rank):
            rows.append([format_poly(t.ring, component(c, i, t.ring.nvars)) for c in self.columns])
        return rows

    def reduced(self):
        return ModuleMap(self.source, self.target, [self.target.reduce(c) for c in self.columns])


def map_kernel_sub(f):
    f.certify()
    S, T = f.source, f.target
    K = kernel_mod(S.ring, f.columns, T.rank, T.relation_vecs, T.degrees, S.degrees)
    return Subquotient(S.ring, S.rank, S.degrees, K, S.relation_vecs)


def map_kernel(f):
    return map_kernel_sub(f).module


def map_cokernel(f):
    f.certify()
    return f.target.quotient_by(f.columns)


def map_image(f):
    f.certify()
    return Subquotient(f.target.ring, f.target.rank, f.target.degrees, f.columns, f.target.relation_vecs).module


def is_injective(f):
    return map_kernel(f).is_zero()


def is_surjective(f):
    return map_cokernel(f).is_zero()
