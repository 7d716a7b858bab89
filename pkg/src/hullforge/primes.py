"""Minimal primes of ideals, associated primes of modules, and the purity check.

Minimal primes come from recursive splitting on factorable Groebner basis
elements.  Leaves are certified prime when a proof is cheap (linear
substitution down to zero, a principal irreducible, or a saturated lattice
ideal); otherwise they are flagged ``assumed-prime``.
"""

import contextvars
import random
import warnings
from fractions import Fraction

import sympy
from sympy.matrices.normalforms import smith_normal_form

from .algebra.ring import Poly
from .algebra.submodule import (
    FreeSub,
    canonical,
    colon_poly,
    component,
    ideal_sum,
    krull_dim,
    saturate_poly,
    vec_key,
)
from .errors import MalformedInput
from .homological import annihilator, ext_modules, FPModule

PROVED = "proved"
ASSUMED = "assumed-prime"


class PrimeRecord:
    def __init__(self, ideal, certified=PROVED):
        self.ideal = canonical(ideal)
        d = krull_dim(self.ideal)
        self.dim = d
        self.height = ideal.ring.nvars - d
        self.certified = certified

    @property
    def assumed(self):
        return self.certified == ASSUMED

    def key(self):
        return ideal_key(self.ideal)

    def strings(self):
        return [str(f) for f in self.ideal.polys]

    def contains(self, other):
        """other.ideal subset of self.ideal."""
        return all(not self.ideal.reduce(v) for v in other.ideal.vecs)

    def __eq__(self, other):
        return isinstance(other, PrimeRecord) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        flag = "" if self.certified == PROVED else ", assumed"
        return f"Prime({', '.join(self.strings())}{flag})"

    def to_json(self):
        return {"ideal": self.strings(), "height": self.height, "dim": self.dim,
                "certified": self.certified}


def ideal_key(ideal):
    return tuple(vec_key(ideal.ring, v) for v in canonical(ideal).vecs)


def sort_key(rec):
    return (rec.height, rec.strings())


class ComponentSet:
    def __init__(self, primes, source):
        uniq = {}
        for p in primes:
            k = p.key()
            if k not in uniq or (uniq[k].assumed and not p.assumed):
                uniq[k] = p
        self.primes = sorted(uniq.values(), key=sort_key)
        self.source = source

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def __bool__(self):
        return bool(self.primes)

    def __repr__(self):
        return f"ComponentSet({self.primes})"

    def keys(self):
        return [p.key() for p in self.primes]

    def same_primes(self, other):
        return self.keys() == other.keys()

    @property
    def any_assumed(self):
        return any(p.assumed for p in self.primes)

    def to_json(self):
        return [p.to_json() for p in self.primes]


def minimal_elements(records):
    """Drop records that strictly contain another one (and duplicates)."""
    recs = sorted({r.key(): r for r in records}.values(), key=sort_key)
    out = []
    for r in recs:
        if not any(o.key() != r.key() and r.contains(o) for o in recs):
            out.append(r)
    return out


# -- factorization ---------------------------------------------------------------

def _to_sympy(poly):
    ring = poly.ring
    gens = sympy.symbols(ring.variables)
    expr = sympy.Integer(0)
    F = ring.field
    for e, c in poly.terms.items():
        q = F.to_fraction(c)
        if F.characteristic and q.numerator > F.characteristic // 2:
            q = Fraction(q.numerator - F.characteristic)
        term = sympy.Rational(q.numerator, q.denominator)
        for g, a in zip(gens, e):
            if a:
                term *= g ** a
        expr += term
    return expr, gens


def _from_sympy(ring, expr, gens):
    sp = sympy.Poly(expr, *gens)
    terms = {}
    for e, c in sp.terms():
        c = sympy.Rational(c)
        val = ring.field(Fraction(int(c.p), int(c.q)))
        if val:
            terms[tuple(int(a) for a in e)] = val
    return Poly(ring, terms)


def _sympy_factor(poly):
    expr, gens = _to_sympy(poly)
    p = poly.ring.field.characteristic
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        used = [g for i, g in enumerate(gens) if any(e[i] for e in poly.terms)]
        if p and len(used) <= 1:
            _, facs = sympy.factor_list(expr, *used, modulus=p)
        else:
            _, facs = sympy.factor_list(expr, *gens)
    out = []
    for f, m in facs:
        fp = _from_sympy(poly.ring, f, gens)
        if not fp.is_constant():
            out.append((fp, int(m)))
    if p:
        # a rational factorization is only usable when it survives reduction mod p
        prod = poly.ring.one
        for f, m in out:
            prod = prod * f ** m
        if prod.is_zero() or prod.monic() != poly.monic():
            return [(poly, 1)]
    return out


def factor_poly(f):
    """Factors with multiplicities, monomial content first; primitive, deterministic order."""
    if f.is_zero():
        raise MalformedInput("cannot factor the zero polynomial")
    ring = f.ring
    n = ring.nvars
    content = [min(e[i] for e in f.terms) for i in range(n)]
    out = []
    for i, a in enumerate(content):
        if a:
            out.append((ring.var(ring.variables[i]), a))
    rest = Poly(ring, {tuple(x - y for x, y in zip(e, content)): c for e, c in f.terms.items()})
    if not rest.is_constant():
        facs = _sympy_factor(rest)
        merged = {}
        for g, m in facs:
            g = g.primitive()
            merged[g] = merged.get(g, 0) + m
        out.extend(merged.items())
    out = [(g.primitive(), m) for g, m in out]
    out.sort(key=lambda gm: (gm[0].degree(), str(gm[0])))
    return out


def is_irreducible(f):
    facs = factor_poly(f)
    return len(facs) == 1 and facs[0][1] == 1


# -- primality certificates ----------------------------------------------------

def _substitute(poly_terms, i, repl, ring):
    """Replace x_i by the polynomial repl in a term dict."""
    out = ring.zero
    p_cache = {0: ring.one}
    for e, c in poly_terms.items():
        k = e[i]
        if k not in p_cache:
            p_cache[k] = repl ** k
        rest = e[:i] + (0,) + e[i + 1:]
        out = out + Poly(ring, {rest: c}) * p_cache[k]
    return out


def _linear_pivot(ring, polys):
    """(index of poly, variable) where poly = c*x + h with x absent from h."""
    for j, f in enumerate(polys):
        for i in range(ring.nvars):
            lin = [e for e in f.terms if e[i]]
            if len(lin) == 1 and lin[0][i] == 1 and sum(lin[0]) == 1:
                return j, i
    return None


def _lattice_prime(ring, polys):
    """Pure-difference binomials whose ideal is saturated by the variables and whose lattice is saturated."""
    F = ring.field
    rows = []
    for f in polys:
        if len(f.terms) != 2:
            return False
        (e1, c1), (e2, c2) = f.terms.items()
        if c1 + c2 != 0 if not F.characteristic else (c1 + c2) % F.characteristic:
            return False
        rows.append([a - b for a, b in zip(e1, e2)])
    I = FreeSub.ideal(ring, polys)
    prod = {(1,) * ring.nvars: F.one}
    if not saturate_poly(I, prod).same_as(canonical(I)):
        return False
    mat = sympy.Matrix(rows)
    snf = smith_normal_form(mat, domain=sympy.ZZ)
    diag = [snf[i, i] for i in range(min(snf.shape)) if snf[i, i] != 0]
    return all(abs(d) == 1 for d in diag)


def certify_prime(ideal):
    """True when the ideal is provably prime by a cheap certificate."""
    ring = ideal.ring
    I = canonical(ideal)
    if I.is_whole():
        return False
    polys = list(I.polys)
    while True:
        if not polys:
            return True
        piv = _linear_pivot(ring, polys)
        if piv is None:
            break
        j, i = piv
        f = polys[j]
        c = f.terms[tuple(1 if k == i else 0 for k in range(ring.nvars))]
        h = f - Poly(ring, {tuple(1 if k == i else 0 for k in range(ring.nvars)): c})
        repl = h.scale(-ring.field.inv(c))
        rest = [_substitute(g.terms, i, repl, ring) for k, g in enumerate(polys) if k != j]
        rest = [g for g in rest if not g.is_zero()]
        if any(g.is_constant() for g in rest):
            return False
        if not rest:
            return True
        polys = list(canonical(FreeSub.ideal(ring, rest)).polys)
    if len(polys) == 1:
        return is_irreducible(polys[0])
    return _lattice_prime(ring, polys)


# -- overrides -----------------------------------------------------------------------

_OVERRIDES = contextvars.ContextVar("hullforge_prime_overrides", default=())
_TRACKER = contextvars.ContextVar("hullforge_assumed_tracker", default=None)


class track_assumed:
    """Collects every assumed-prime record produced inside the block."""

    def __init__(self):
        self.records = []
        self._token = None

    def __enter__(self):
        self._token = _TRACKER.set(self)
        return self

    def __exit__(self, *exc):
        _TRACKER.reset(self._token)

    @property
    def any(self):
        return bool(self.records)


def _note(component_set):
    t = _TRACKER.get()
    if t is not None:
        t.records.extend(p for p in component_set if p.assumed)


class assumed_decompositions:
    """Context manager installing externally supplied minimal-prime lists.

    Each entry is (ideal, [prime ideals]).  Containment of the ideal in every
    prime and V(ideal) = union of the V(prime) are verified on entry.
    """

    def __init__(self, entries):
        checked = []
        for I, primes in entries:
            verify_decomposition(I, primes)
            recs = [PrimeRecord(P, PROVED if certify_prime(P) else ASSUMED) for P in primes]
            checked.append((ideal_key(I), tuple(recs)))
        self.entries = tuple(checked)
        self._token = None

    def __enter__(self):
        self._token = _OVERRIDES.set(_OVERRIDES.get() + self.entries)
        return self

    def __exit__(self, *exc):
        _OVERRIDES.reset(self._token)


def verify_decomposition(I, primes, samples=50, seed=0):
    """I inside every prime, the product of the primes inside rad(I), and random spot checks."""
    if not primes:
        raise MalformedInput("empty decomposition")
    for P in primes:
        if not all(not P.reduce(v) for v in I.vecs):
            raise MalformedInput("declared prime does not contain the ideal")
    prod = None
    for P in primes:
        prod = P if prod is None else FreeSub(I.ring, 1, [_mul(a, b, I.p) for a in prod.vecs for b in P.vecs])
    for v in prod.vecs:
        if not saturate_poly(I, component(v, 0, I.ring.nvars)).is_whole():
            raise MalformedInput("declared primes do not cover the radical")
    rng = random.Random(seed)
    ring = I.ring
    for _ in range(samples):
        f = _random_poly(ring, rng)
        in_all = all(not P.reduce({e + (0,): c for e, c in f.terms.items()}) for P in primes)
        in_rad = saturate_poly(I, f.terms).is_whole() if f.terms else True
        if in_all != in_rad:
            raise MalformedInput("declared decomposition fails a radical-membership check")


def _mul(a, b, p):
    out = {}
    for t, c in a.items():
        for s, d in b.items():
            u = tuple(x + y for x, y in zip(t[:-1], s[:-1])) + (0,)
            v = out.get(u, 0) + c * d
            if p:
                v %= p
            if v:
                out[u] = v
            else:
                out.pop(u, None)
    return out


def _random_poly(ring, rng, terms=3, degree=2):
    out = {}
    for _ in range(terms):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(ring.nvars)] += 1
        out[tuple(e)] = ring.field(rng.randint(-3, 3))
    return Poly(ring, {e: c for e, c in out.items() if c})


def _lookup_override(I):
    k = ideal_key(I)
    for key, recs in _OVERRIDES.get():
        if key == k:
            return recs
    return None


# -- minimal primes --------------------------------------------------------------------

def _find_split(I):
    """First reducible GB element by (degree, string); returns its first factor or None."""
    cands = sorted(I.polys, key=lambda f: (f.degree(), str(f)))
    for f in cands:
        facs = factor_poly(f)
        if len(facs) > 1 or (facs and facs[0][1] > 1):
            return facs[0][0]
    return None


def _leaves(I):
    """Prime leaves of the splitting tree (possibly non-minimal)."""
    stack = [canonical(I)]
    leaves = []
    while stack:
        J = stack.pop()
        if J.is_whole():
            continue
        over = _lookup_override(J)
        if over is not None:
            leaves.extend(over)
            continue
        g = _find_split(J)
        if g is None:
            leaves.append(PrimeRecord(J, PROVED if certify_prime(J) else ASSUMED))
            continue
        # branch order is fixed: the saturation first, then the sum
        sat = saturate_poly(J, g.terms)
        with_g = canonical(ideal_sum(J, FreeSub.ideal(J.ring, [g])))
        stack.append(with_g)
        stack.append(sat)
    return leaves


def minimal_primes(I):
    """Minimal primes of a proper ideal as a ComponentSet."""
    I._need_ideal()
    if I.is_whole():
        raise MalformedInput("the unit ideal has no minimal primes")
    cache_key = (I.ring, ideal_key(I), _OVERRIDES.get())
    result = _MIN_CACHE.get(cache_key)
    if result is None:
        result = ComponentSet(minimal_elements(_leaves(I)), "minimal-of-ideal")
        _MIN_CACHE[cache_key] = result
    _note(result)
    return result


_MIN_CACHE = {}
_ASS_CACHE = {}
_EXTANN_CACHE = {}


def module_key(M):
    rels = canonical(M.relations) if M.relation_vecs else M.relations
    return (M.ring, M.degrees, tuple(vec_key(M.ring, v) for v in rels.vecs))


def ext_annihilators(M):
    """[Ann Ext^i(M, S) for i = 0..nvars]."""
    key = module_key(M)
    hit = _EXTANN_CACHE.get(key)
    if hit is None:
        S = FPModule.free(M.ring, 1)
        hit = [annihilator(E) for E in ext_modules(M, S, M.ring.nvars)]
        _EXTANN_CACHE[key] = hit
    return hit


def associated_primes(M):
    """Ass(M) from the minimal primes of the Ext annihilators of matching height."""
    if M.is_zero():
        raise MalformedInput("the zero module has no associated primes")
    key = (module_key(M), _OVERRIDES.get())
    hit = _ASS_CACHE.get(key)
    if hit is not None:
        _note(hit)
        return hit
    recs = []
    for i, A in enumerate(ext_annihilators(M)):
        if A.is_whole():
            continue
        for P in minimal_primes(A):
            if P.height == i:
                recs.append(P)
    result = ComponentSet(recs, "associated-of-module")
    _ASS_CACHE[key] = result
    return result


def support_components(M):
    """Minimal primes of Ann(M)."""
    return minimal_primes(annihilator(M))


def clear_caches():
    _MIN_CACHE.clear()
    _ASS_CACHE.clear()
    _EXTANN_CACHE.clear()


# -- purity ----------------------------------------------------------------------------

class PurityVerdict:
    def __init__(self, pure, witness=None):
        self.pure = pure
        self.witness = witness  # (Q, P_i, P_j)

    def __repr__(self):
        return "pure" if self.pure else f"violated({self.witness})"

    def to_json(self):
        if self.pure:
            return {"verdict": "pure"}
        Q, Pi, Pj = self.witness
        return {"verdict": "violated", "witness": {"Q": Q.strings(), "P_i": Pi.strings(), "P_j": Pj.strings()}}


def purity_check(components):
    """Codimension-one purity of a support given by its components."""
    comps = sorted(components, key=sort_key)
    if not comps:
        raise MalformedInput("purity check needs at least one component")
    for Pi in comps:
        for Pj in comps:
            if Pi.key() == Pj.key():
                continue
            J = ideal_sum(Pi.ideal, Pj.ideal)
            if J.is_whole():
                continue
            for Q in minimal_primes(J):
                if Q.height - Pi.height == 1 and Q.height - Pj.height >= 2:
                    return PurityVerdict(False, (Q, Pi, Pj))
    return PurityVerdict(True)


def codim_in_support(Q, comps):
    """max over components P inside Q of height(Q) - height(P); None if Q is off the support."""
    best = None
    for P in comps:
        if Q.contains(P):
            d = Q.height - P.height
            best = d if best is None else max(best, d)
    return best


def colon_is_trivial(R, f_terms):
    """f is a nonzerodivisor on S^r / R."""
    return colon_poly(R, f_terms).same_as(R)
