"""Submodules of free modules S^r and the ideal/module arithmetic built on them."""

from itertools import combinations
from math import gcd, lcm

from ..errors import MalformedInput
from .groebner import buchberger, reduced_basis_object, term_order
from .ring import Poly, format_poly


# -- internal vector helpers -------------------------------------------------

def to_vec(polys):
    """[Poly, ...] -> internal dict vector."""
    out = {}
    for i, f in enumerate(polys):
        for e, c in f.terms.items():
            out[e + (i,)] = c
    return out


def from_vec(ring, vec, rank):
    comps = [{} for _ in range(rank)]
    for t, c in vec.items():
        comps[t[-1]][t[:-1]] = c
    return [Poly(ring, d) for d in comps]


def unit_vec(ring, i):
    return {(0,) * ring.nvars + (i,): ring.field.one}


def vec_add(a, b, p):
    out = dict(a)
    for t, c in b.items():
        v = out.get(t, 0) + c
        if p:
            v %= p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vec_scale_poly(vec, poly_terms, p, pos_shift=0):
    """Multiply a vector by a polynomial (given by its terms dict)."""
    out = {}
    for t, c in vec.items():
        e = t[:-1]
        pos = t[-1] + pos_shift
        for m, d in poly_terms.items():
            u = tuple(a + b for a, b in zip(e, m)) + (pos,)
            v = out.get(u, 0) + c * d
            if p:
                v %= p
            out[u] = v
    return {t: c for t, c in out.items() if c}


def vec_shift_pos(vec, k):
    return {t[:-1] + (t[-1] + k,): c for t, c in vec.items()}


def lin_comb(coeffs, vecs, p):
    """sum_i coeffs[i] * vecs[i] where coeffs are polynomial term dicts."""
    out = {}
    for cf, v in zip(coeffs, vecs):
        if not cf or not v:
            continue
        out = vec_add(out, vec_scale_poly(v, cf, p), p)
    return out


def component(vec, i, nvars):
    """Polynomial term dict of component i."""
    return {t[:-1]: c for t, c in vec.items() if t[-1] == i}


def split_components(vec, rank):
    comps = [{} for _ in range(rank)]
    for t, c in vec.items():
        comps[t[-1]][t[:-1]] = c
    return comps


def vec_degree(ring, vec, degrees):
    """Max shifted weighted degree of the terms (None for the zero vector)."""
    if not vec:
        return None
    w = ring.weights
    return max(sum(a * b for a, b in zip(w, t[:-1])) + degrees[t[-1]] for t in vec)


def vec_is_homogeneous(ring, vec, degrees):
    w = ring.weights
    return len({sum(a * b for a, b in zip(w, t[:-1])) + degrees[t[-1]] for t in vec}) <= 1


def vec_primitive(ring, vec, order=None):
    """Canonical scalar multiple: integer content-free with positive lead over QQ, monic over GF(p)."""
    if not vec:
        return vec
    order = order or term_order(ring, "pot")
    lead = order.leading(vec)
    F = ring.field
    p = F.characteristic
    if p:
        inv = pow(int(vec[lead]), -1, p)
        return {t: c * inv % p for t, c in vec.items()}
    den = 1
    for c in vec.values():
        den = lcm(den, int(c.denominator))
    num = 0
    for c in vec.values():
        num = gcd(num, int(c * den))
    s = F(den) / num
    if vec[lead] < 0:
        s = -s
    return {t: c * s for t, c in vec.items()}


def vec_key(ring, vec):
    """Hashable canonical form of an internal vector (for dedup / caching)."""
    return tuple(sorted((t, ring.field.format(c)) for t, c in vec.items()))


def format_vec(ring, vec, rank):
    return [format_poly(ring, comps) for comps in split_components(vec, rank)]


# -- FreeSub -----------------------------------------------------------------

class FreeSub:
    """Submodule of S^rank generated by column vectors; ideals are the rank-1 case.

    ``gens`` may be a list of Poly vectors (lists of length ``rank``), bare
    Polys (rank 1) or internal dict vectors.  Zero generators are dropped.
    """

    def __init__(self, ring, rank, gens=(), degrees=None):
        if rank < 0:
            raise MalformedInput("ambient rank must be nonnegative")
        self.ring = ring
        self.rank = rank
        self.degrees = tuple(degrees) if degrees is not None else (0,) * rank
        if len(self.degrees) != rank:
            raise MalformedInput("one degree per ambient basis element is required")
        vecs = []
        for g in gens:
            if isinstance(g, dict):
                v = g
            elif isinstance(g, Poly):
                if rank != 1:
                    raise MalformedInput("bare polynomial generator needs ambient rank 1")
                v = to_vec([g])
            else:
                g = list(g)
                if len(g) != rank:
                    raise MalformedInput(f"generator has length {len(g)}, expected {rank}")
                v = to_vec([ring(x) for x in g])
            if any(t[-1] >= rank for t in v):
                raise MalformedInput("generator component out of range")
            if v:
                vecs.append(v)
        self.vecs = tuple(vecs)
        self._gb = {}
        self._lift = None

    @classmethod
    def ideal(cls, ring, polys):
        return cls(ring, 1, [ring(f) for f in polys])

    @classmethod
    def free(cls, ring, rank, degrees=None):
        return cls(ring, rank, [unit_vec(ring, i) for i in range(rank)], degrees)

    @property
    def p(self):
        return self.ring.field.characteristic

    @property
    def generators(self):
        return [from_vec(self.ring, v, self.rank) for v in self.vecs]

    @property
    def polys(self):
        """Generators of an ideal as Polys."""
        self._need_ideal()
        return [Poly(self.ring, component(v, 0, self.ring.nvars)) for v in self.vecs]

    def _need_ideal(self):
        if self.rank != 1:
            raise MalformedInput("operation requires an ideal (ambient rank 1)")

    def __len__(self):
        return len(self.vecs)

    def __repr__(self):
        body = ", ".join(str(x[0]) if self.rank == 1 else "[" + ", ".join(map(str, x)) + "]"
                         for x in self.generators)
        return f"FreeSub(rank={self.rank}, [{body}])"

    def is_homogeneous(self):
        return all(vec_is_homogeneous(self.ring, v, self.degrees) for v in self.vecs)

    def with_gens(self, vecs):
        return FreeSub(self.ring, self.rank, vecs, self.degrees)

    # -- Groebner machinery ----------------------------------------------

    def order(self, kind="pot"):
        return term_order(self.ring, kind, self.degrees if kind == "top" else ())

    def gb(self, kind="pot"):
        """Reduced Groebner basis as internal monic vectors (cached)."""
        g = self._gb.get(kind)
        if g is None:
            g = buchberger(list(self.vecs), self.order(kind), self.p)
            self._gb[kind] = g
        return g

    def gb_object(self, kind="pot"):
        key = ("obj", kind)
        obj = self._gb.get(key)
        if obj is None:
            obj = reduced_basis_object(self.gb(kind), self.order(kind), self.p)
            self._gb[key] = obj
        return obj

    def reduce(self, vec, kind="pot"):
        return self.gb_object(kind).reduce(vec)

    def contains_vec(self, vec):
        return not self.reduce(vec)

    def contains(self, v):
        return self.contains_vec(self._coerce(v))

    def _coerce(self, v):
        if isinstance(v, dict):
            return v
        if isinstance(v, Poly):
            return to_vec([v])
        return to_vec([self.ring(x) for x in v])

    def contains_sub(self, other):
        return all(self.contains_vec(v) for v in other.vecs)

    def same_as(self, other):
        return self.rank == other.rank and self.gb() == other.gb()

    def is_zero(self):
        return not self.vecs

    def is_whole(self):
        """True when the submodule is all of S^rank (the unit ideal for rank 1)."""
        lead_units = {t[-1] for g in self.gb() for t in [self.order().leading(g)] if not any(t[:-1])}
        return len(lead_units) == self.rank

    def leading_terms(self, kind="pot"):
        order = self.order(kind)
        return [order.leading(g) for g in self.gb(kind)]

    # -- lifting -----------------------------------------------------------

    def _lift_basis(self):
        if self._lift is None:
            r = self.rank
            k = len(self.vecs)
            aug = []
            for i, v in enumerate(self.vecs):
                w = dict(v)
                w[(0,) * self.ring.nvars + (r + i,)] = self.ring.field.one
                aug.append(w)
            shifts = tuple(self.degrees) + tuple(
                vec_degree(self.ring, v, self.degrees) for v in self.vecs)
            order = term_order(self.ring, "top", shifts, r)
            gb = buchberger(aug, order, self.p)
            self._lift = (reduced_basis_object(gb, order, self.p), k)
        return self._lift

    def lift_vec(self, vec):
        """Coefficients c (list of term dicts) with vec = sum c_i gens_i, or None."""
        B, k = self._lift_basis()
        r = self.rank
        rem = B.reduce(vec)
        if any(t[-1] < r for t in rem):
            return None
        p = self.p
        coeffs = [{} for _ in range(k)]
        for t, c in rem.items():
            coeffs[t[-1] - r][t[:-1]] = (-c) % p if p else -c
        return coeffs

    def lift(self, v):
        coeffs = self.lift_vec(self._coerce(v))
        if coeffs is None:
            return None
        return [Poly(self.ring, c) for c in coeffs]


# -- kernel computations --------------------------------------------------

def kernel_mod(ring, images, target_rank, sub_vecs=(), target_degrees=None, source_degrees=None):
    """Generators of {c in S^k : sum_i c_i * images[i] in span(sub_vecs)}.

    Computed by a Groebner basis of the augmented vectors (image_i, e_i) and
    (s_j, 0) in a block order that ranks the target block first.
    """
    k = len(images)
    r = target_rank
    if k == 0:
        return []
    if target_degrees is None:
        target_degrees = (0,) * r
    if source_degrees is None:
        source_degrees = tuple(
            vec_degree(ring, img, target_degrees) if img else 0 for img in images)
    one = ring.field.one
    zero_e = (0,) * ring.nvars
    aug = []
    for i, img in enumerate(images):
        w = dict(img)
        w[zero_e + (r + i,)] = one
        aug.append(w)
    aug.extend(v for v in sub_vecs if v)
    order = term_order(ring, "top", tuple(target_degrees) + tuple(source_degrees), r)
    gb = buchberger(aug, order, ring.field.characteristic)
    out = []
    for g in gb:
        if order.leading(g)[-1] >= r:
            out.append(vec_shift_pos(g, -r))
    return out


def syzygies(sub):
    """Kernel of S^k -> S^rank sending e_i to the i-th generator."""
    degs = tuple(vec_degree(sub.ring, v, sub.degrees) for v in sub.vecs)
    vecs = kernel_mod(sub.ring, list(sub.vecs), sub.rank, (), sub.degrees, degs)
    return FreeSub(sub.ring, len(sub.vecs), vecs, degs)


def intersect(a, b):
    if a.rank != b.rank or a.ring != b.ring:
        raise MalformedInput("intersection needs the same ambient free module")
    if a.is_zero() or b.is_zero():
        return a.with_gens([])
    coeffs = kernel_mod(a.ring, list(a.vecs), a.rank, b.vecs, a.degrees)
    p = a.p
    vecs = []
    for c in coeffs:
        parts = split_components(c, len(a.vecs))
        v = lin_comb(parts, a.vecs, p)
        if v:
            vecs.append(v)
    return a.with_gens(vecs).minimalized()


def colon_poly(sub, f_terms):
    """(sub : f) = {v : f v in sub} for a single polynomial f."""
    if not f_terms:
        return FreeSub.free(sub.ring, sub.rank, sub.degrees)
    ring = sub.ring
    r = sub.rank
    images = [vec_scale_poly(unit_vec(ring, i), f_terms, sub.p) for i in range(r)]
    if sub.is_zero():
        return sub.with_gens([])
    fdeg = max(ring.wdeg(e) for e in f_terms)
    src = tuple(d + fdeg for d in sub.degrees)
    vecs = kernel_mod(ring, images, r, sub.vecs, sub.degrees, src)
    return sub.with_gens(vecs)


def colon(sub, ideal):
    """(sub : I) = {v in S^r : I v subset of sub}."""
    ideal._need_ideal()
    polys = [component(v, 0, sub.ring.nvars) for v in ideal.gb()]
    if not polys:
        return FreeSub.free(sub.ring, sub.rank, sub.degrees)
    result = None
    for f in polys:
        c = colon_poly(sub, f)
        result = c if result is None else intersect(result, c)
    return canonical(result)


def saturate(sub, ideal):
    """(sub : I^infinity) by iterated colon; returns (result, stabilization exponent)."""
    ideal._need_ideal()
    current = canonical(sub)
    exponent = 0
    while True:
        nxt = colon(current, ideal)
        if nxt.same_as(current):
            return current, exponent
        current = nxt
        exponent += 1


def saturate_poly(sub, f_terms):
    """(sub : f^infinity) for a single polynomial."""
    current = canonical(sub)
    while True:
        nxt = canonical(colon_poly(current, f_terms))
        if nxt.same_as(current):
            return current
        current = nxt


def canonical(sub):
    """Same submodule, generated by its reduced Groebner basis."""
    out = FreeSub(sub.ring, sub.rank, [vec_primitive(sub.ring, g) for g in sub.gb()], sub.degrees)
    out._gb["pot"] = sub.gb()
    return out


def _minimalized(self):
    """Drop generators already in the span of earlier (lower-degree) ones."""
    if len(self.vecs) <= 1:
        return self
    ring = self.ring
    if self.is_homogeneous():
        vecs = sorted(self.vecs, key=lambda v: vec_degree(ring, v, self.degrees))
    else:
        vecs = list(self.vecs)
    kept = []
    for v in vecs:
        if kept and FreeSub(ring, self.rank, kept, self.degrees).contains_vec(v):
            continue
        kept.append(v)
    if len(kept) == len(self.vecs):
        return self
    return self.with_gens(kept)


FreeSub.minimalized = _minimalized


def sum_sub(a, b):
    return a.with_gens(list(a.vecs) + list(b.vecs))


def groebner_basis(sub, kind="pot"):
    """The reduced Groebner basis, as a FreeSub with canonically scaled generators."""
    return canonical(sub) if kind == "pot" else FreeSub(
        sub.ring, sub.rank, [vec_primitive(sub.ring, g) for g in sub.gb(kind)], sub.degrees)


def normal_form(v, gb):
    """Fully reduced remainder of v modulo the submodule gb (as a Poly vector)."""
    vec = gb._coerce(v)
    if any(t[-1] >= gb.rank for t in vec):
        raise MalformedInput("vector does not live in the ambient free module")
    if isinstance(v, (list, tuple)) and len(v) != gb.rank:
        raise MalformedInput(f"ambient rank mismatch: {len(v)} vs {gb.rank}")
    rem = gb.reduce(vec)
    out = from_vec(gb.ring, rem, gb.rank)
    return out[0] if isinstance(v, Poly) else out


# -- ideals --------------------------------------------------------------

def ideal_sum(a, b):
    a._need_ideal()
    b._need_ideal()
    return sum_sub(a, b)


def ideal_product(a, b):
    p = a.p
    vecs = []
    for u in a.vecs:
        fu = component(u, 0, a.ring.nvars)
        for v in b.vecs:
            w = vec_scale_poly(v, fu, p)
            if w:
                vecs.append(w)
    return FreeSub(a.ring, 1, vecs)


def ideal_power(a, n):
    out = FreeSub.ideal(a.ring, [a.ring.one])
    for _ in range(n):
        out = canonical(ideal_product(out, a))
    return out


def eliminate(ideal, names):
    """I intersected with k[remaining variables], via a block elimination order."""
    ideal._need_ideal()
    ring = ideal.ring
    names = [n for n in names]
    if not names:
        return canonical(ideal)
    idx = [ring.index(n) for n in names]
    er = ring.with_order("weighted-elimination(" + ",".join(names) + ")")
    order = term_order(er, "pot")
    gb = buchberger([dict(v) for v in ideal.vecs], order, ideal.p)
    keep = [g for g in gb if all(t[i] == 0 for t in g for i in idx)]
    return canonical(FreeSub(ring, 1, keep))


def dim_from_leads(nvars, leads_by_pos, rank):
    """Krull dimension of F/N from the monomial ideals of leading exponents per component."""
    best = -1
    for pos in range(rank):
        leads = leads_by_pos.get(pos, [])
        if any(not any(e) for e in leads):
            continue
        supports = [frozenset(i for i, a in enumerate(e) if a) for e in leads]
        d = 0
        for size in range(nvars, -1, -1):
            found = False
            for U in combinations(range(nvars), size):
                Uset = set(U)
                if all(not s <= Uset for s in supports):
                    found = True
                    break
            if found:
                d = size
                break
        best = max(best, d)
    return best


def krull_dim(sub):
    """dim S^r/sub; -1 for the whole module (the unit ideal sentinel)."""
    leads = {}
    for t in sub.leading_terms():
        leads.setdefault(t[-1], []).append(t[:-1])
    return dim_from_leads(sub.ring.nvars, leads, sub.rank)


def height(ideal):
    d = krull_dim(ideal)
    return ideal.ring.nvars - d if d >= 0 else ideal.ring.nvars + 1


def in_radical(f_terms, ideal):
    """f in sqrt(I) iff I : f^infinity is the unit ideal."""
    if not f_terms:
        return True
    return saturate_poly(ideal, f_terms).is_whole()


def ideal_contains(big, small):
    """small subset of big (as ideals)."""
    return big.contains_sub(small)
