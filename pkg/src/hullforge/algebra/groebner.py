"""Buchberger's algorithm for submodules of free modules S^r.

Internal vectors are plain dicts ``{term: coeff}`` where ``term`` is the
exponent tuple with the component index appended (``exps + (pos,)``).
Coefficients are gmpy2.mpq over QQ and reduced ints over GF(p).
"""

from functools import lru_cache
from heapq import heapify, heappop, heappush
from operator import add, ge, sub


class TermOrder:
    """A module term order on terms ``exps + (pos,)``.

    kind ``"pot"``: position over term, lower component index is larger.
    kind ``"top"``: shifted weighted degree first, then the ring order, then position.
    ``block``: components ``>= block`` form a lower block (every term of
    the upper block exceeds every term of the lower block).
    """

    def __init__(self, ring, kind="pot", shifts=(), block=None):
        if kind not in ("pot", "top"):
            raise ValueError(f"unknown module order {kind!r}")
        self.ring = ring
        self.kind = kind
        self.shifts = tuple(shifts)
        self.block = block
        self._cache = {}
        self._ncache = {}
        mk = ring.mono_key
        w = ring.weights
        sh = self.shifts
        nsh = len(sh)

        def shift_of(pos):
            return sh[pos] if pos < nsh else 0

        if kind == "pot":
            def raw(t):
                return (-t[-1],) + mk(t[:-1])
        else:
            def raw(t):
                e = t[:-1]
                pos = t[-1]
                return (sum(a * b for a, b in zip(w, e)) + shift_of(pos),) + mk(e) + (-pos,)
        if block is not None:
            inner = raw

            def raw(t):
                return (0 if t[-1] >= block else 1,) + inner(t)
        self._raw = raw
        self.shift_of = shift_of

    def key(self, t):
        k = self._cache.get(t)
        if k is None:
            k = self._raw(t)
            self._cache[t] = k
        return k

    def negkey(self, t):
        k = self._ncache.get(t)
        if k is None:
            k = tuple(-a for a in self.key(t))
            self._ncache[t] = k
        return k

    def degree(self, t):
        w = self.ring.weights
        return sum(a * b for a, b in zip(w, t[:-1])) + self.shift_of(t[-1])

    def leading(self, vec):
        return max(vec, key=self.key)


@lru_cache(maxsize=None)
def term_order(ring, kind="pot", shifts=(), block=None):
    return TermOrder(ring, kind, shifts, block)


def _scale(vec, c, p):
    if p:
        return {t: v * c % p for t, v in vec.items()}
    return {t: v * c for t, v in vec.items()}


def make_monic(vec, order, p):
    lead = order.leading(vec)
    lc = vec[lead]
    if lc == 1:
        return vec
    inv = pow(int(lc), -1, p) if p else 1 / lc
    return _scale(vec, inv, p)


def sugar_of(vec, order):
    return max(order.degree(t) for t in vec)


class GBasis:
    """A growing set of monic vectors with a reducer index by component."""

    def __init__(self, order, p):
        self.order = order
        self.p = p
        self.elems = []      # list of (lead, vec)
        self.by_pos = {}     # pos -> list of (lead exps, idx)

    def add(self, vec):
        lead = self.order.leading(vec)
        idx = len(self.elems)
        self.elems.append((lead, vec))
        self.by_pos.setdefault(lead[-1], []).append((lead[:-1], idx))
        return idx

    def deactivate(self, idx):
        lead = self.elems[idx][0]
        lst = self.by_pos[lead[-1]]
        lst[:] = [x for x in lst if x[1] != idx]

    def active(self):
        return sorted(i for lst in self.by_pos.values() for _, i in lst)

    def find_reducer(self, t, skip=None):
        lst = self.by_pos.get(t[-1])
        if not lst:
            return None
        e = t[:-1]
        for le, idx in lst:
            if idx != skip and all(map(ge, e, le)):
                return idx
        return None

    def reduce(self, f, skip=None):
        """Full normal form of ``f`` (not modified) w.r.t. the active elements."""
        order = self.order
        nk = order.negkey
        p = self.p
        elems = self.elems
        f = dict(f)
        rem = {}
        heap = [(nk(t), t) for t in f]
        heapify(heap)
        while heap:
            t = heappop(heap)[1]
            c = f.pop(t, None)
            if c is None:
                continue
            idx = self.find_reducer(t, skip)
            if idx is None:
                rem[t] = c
                continue
            lead, g = elems[idx]
            sh = tuple(map(sub, t[:-1], lead[:-1])) + (0,)
            for s, d in g.items():
                if s == lead:
                    continue
                u = tuple(map(add, s, sh))
                old = f.get(u)
                if old is None:
                    v = -c * d
                    if p:
                        v %= p
                    f[u] = v
                    heappush(heap, (nk(u), u))
                else:
                    v = old - c * d
                    if p:
                        v %= p
                    if v:
                        f[u] = v
                    else:
                        del f[u]
        return rem


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a, b):
    return all(map(ge, b, a))


def _spoly(f, lf, g, lg, lcm, p):
    sf = tuple(map(sub, lcm, lf[:-1])) + (0,)
    sg = tuple(map(sub, lcm, lg[:-1])) + (0,)
    out = {}
    for t, c in f.items():
        out[tuple(map(add, t, sf))] = c
    for t, c in g.items():
        u = tuple(map(add, t, sg))
        v = out.get(u, 0) - c
        if p:
            v %= p
        if v:
            out[u] = v
        else:
            out.pop(u, None)
    return out


def buchberger(gens, order, p):
    """Reduced Groebner basis (monic, sorted by decreasing leading term)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    coprime_ok = all(t[-1] == 0 for g in gens for t in g)
    B = GBasis(order, p)
    sugars = []
    wdeg = order.ring.wdeg
    key = order.key

    queue = []  # (sugar, key, tiebreak, kind, payload)
    counter = 0
    for g in gens:
        lead = order.leading(g)
        queue.append((sugar_of(g, order), key(lead), counter, 0, g))
        counter += 1
    heapify(queue)
    pairs = {}  # (i, j) -> lcm exps

    def add_element(h, sug):
        nonlocal counter
        k = B.add(h)
        sugars.append(sug)
        lk = B.elems[k][0]
        pos = lk[-1]
        ek = lk[:-1]
        new = []
        for le, i in list(B.by_pos.get(pos, ())):
            if i == k:
                continue
            new.append((i, _lcm(le, ek), le))
        # chain criterion on old pairs
        for (i, j), lij in list(pairs.items()):
            if B.elems[i][0][-1] != pos:
                continue
            if _divides(ek, lij):
                li = _lcm(B.elems[i][0][:-1], ek)
                lj = _lcm(B.elems[j][0][:-1], ek)
                if li != lij and lj != lij:
                    del pairs[(i, j)]
        # drop new pairs whose lcm is properly divisible by another new lcm
        kept = []
        for i, lik, le in new:
            dominated = False
            for j, ljk, _ in new:
                if j != i and ljk != lik and _divides(ljk, lik):
                    dominated = True
                    break
            if not dominated:
                kept.append((i, lik, le))
        # one representative per lcm class; drop the class if any member is coprime
        classes = {}
        for i, lik, le in kept:
            classes.setdefault(lik, []).append((i, le))
        for lik, members in classes.items():
            if coprime_ok and any(all(a == 0 or b == 0 for a, b in zip(le, ek)) for _, le in members):
                continue
            i = min(m[0] for m in members)
            pair = (i, k)
            pairs[pair] = lik
            si = sugars[i] + wdeg(lik) - wdeg(B.elems[i][0][:-1])
            sk = sug + wdeg(lik) - wdeg(ek)
            heappush(queue, (max(si, sk), key(lik + (pos,)), counter, 1, pair))
            counter += 1
        # older elements with divisible leads become redundant
        for le, i in list(B.by_pos.get(pos, ())):
            if i != k and _divides(ek, le):
                B.deactivate(i)

    while queue:
        sug, _, _, kind, payload = heappop(queue)
        if kind == 0:
            h = B.reduce(payload)
        else:
            if payload not in pairs:
                continue
            i, j = payload
            lcm = pairs.pop(payload)
            li, fi = B.elems[i]
            lj, fj = B.elems[j]
            h = B.reduce(_spoly(fi, li, fj, lj, lcm, p))
        if h:
            add_element(make_monic(h, order, p), sug)

    active = B.active()
    result = []
    for i in active:
        lead, g = B.elems[i]
        tail = {t: c for t, c in g.items() if t != lead}
        red = B.reduce(tail, skip=i)
        red[lead] = g[lead]
        result.append((lead, red))
    result.sort(key=lambda lg: key(lg[0]), reverse=True)
    return [g for _, g in result]


def reduced_basis_object(gb, order, p):
    """Wrap a reduced GB list into a GBasis usable for normal forms."""
    B = GBasis(order, p)
    for g in gb:
        B.add(g)
    return B
