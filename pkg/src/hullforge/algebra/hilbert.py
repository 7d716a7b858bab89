"""Standard monomials, Hilbert functions and Hilbert series numerators.

Everything here works from the leading terms of a Groebner basis: for a
homogeneous submodule N of F = sum S(-d_i), the standard monomials of each
component form a k-basis of F/N degree by degree, whatever the term order.
"""

from functools import lru_cache
from operator import ge


def monomials_of_degree(weights, d):
    """All exponent vectors of weighted degree exactly d (deterministic order)."""
    n = len(weights)
    out = []

    def rec(i, left, acc):
        if i == n - 1:
            w = weights[i]
            if left % w == 0:
                out.append(tuple(acc) + (left // w,))
            return
        w = weights[i]
        for a in range(left // w, -1, -1):
            rec(i + 1, left - a * w, acc + [a])

    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    return out


def _standard(e, leads):
    for le in leads:
        if all(map(ge, e, le)):
            return False
    return True


def leads_by_position(lead_terms):
    out = {}
    for t in lead_terms:
        out.setdefault(t[-1], []).append(t[:-1])
    return out


def hilbert_function_from_leads(weights, degrees, leads, lo, hi):
    """dim_k (F/N)_d for d in [lo, hi], counting standard monomials slot by slot."""
    values = []
    for d in range(lo, hi + 1):
        total = 0
        for pos, shift in enumerate(degrees):
            L = leads.get(pos, [])
            for e in monomials_of_degree(weights, d - shift):
                if _standard(e, L):
                    total += 1
        values.append(total)
    return values


def standard_monomials(nvars, leads):
    """All standard monomials of S/J when J (given by leads) is zero-dimensional.

    Returns None when the quotient is infinite-dimensional.
    """
    if any(not any(le) for le in leads):
        return []
    for i in range(nvars):
        if not any(le[i] > 0 and all(a == 0 for j, a in enumerate(le) if j != i) for le in leads):
            return None
    out = []
    seen = {(0,) * nvars}
    stack = [(0,) * nvars]
    while stack:
        e = stack.pop()
        if not _standard(e, leads):
            continue
        out.append(e)
        for i in range(nvars):
            f = e[:i] + (e[i] + 1,) + e[i + 1:]
            if f not in seen:
                seen.add(f)
                stack.append(f)
    return sorted(out)


def length_from_leads(nvars, leads, rank):
    """Total number of standard monomials over all slots, or None if infinite."""
    total = 0
    for pos in range(rank):
        sm = standard_monomials(nvars, leads.get(pos, []))
        if sm is None:
            return None
        total += len(sm)
    return total


# -- Hilbert series numerators ------------------------------------------------

def _poly_add(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
        if not out[k]:
            del out[k]
    return out


def _poly_shift(a, s):
    return {k + s: v for k, v in a.items()}


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(all(map(ge, g, h)) for h in out):
            out.append(g)
    return tuple(out)


@lru_cache(maxsize=4096)
def _numerator(weights, gens):
    """K(t) with HS(S/J) = K(t) / prod(1 - t^w_i), J monomial (minimal gens)."""
    if not gens:
        return ((0, 1),)
    if any(not any(g) for g in gens):
        return ()
    def wd(e):
        return sum(a * b for a, b in zip(weights, e))
    # pairwise coprime generators give a product of (1 - t^deg)
    support = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    coprime = all(not (support[i] & support[j]) for i in range(len(gens)) for j in range(i))
    if coprime:
        acc = {0: 1}
        for g in gens:
            acc = _poly_add(acc, _poly_shift(acc, wd(g)), -1)
        return tuple(sorted(acc.items()))
    # pivot on the last generator: N(J) = N(J') - t^deg(m) N(J' : m)
    m = gens[-1]
    rest = gens[:-1]
    quot = _minimalize(tuple(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest))
    a = dict(_numerator(weights, _minimalize(rest)))
    b = dict(_numerator(weights, quot))
    return tuple(sorted(_poly_add(a, _poly_shift(b, wd(m)), -1).items()))


def hilbert_numerator_from_leads(weights, degrees, leads):
    """Numerator of the Hilbert series of F/N over the denominator prod(1 - t^w_i)."""
    total = {}
    for pos, shift in enumerate(degrees):
        num = dict(_numerator(tuple(weights), _minimalize(tuple(leads.get(pos, ())))))
        total = _poly_add(total, _poly_shift(num, shift))
    return dict(sorted(total.items()))


def expand_series(weights, numerator, lo, hi):
    """Coefficients of numerator / prod(1 - t^w) for degrees lo..hi."""
    # coefficients of 1/prod(1-t^w) up to the needed degree
    if not numerator:
        return [0] * (hi - lo + 1)
    low = min(numerator)
    top = hi - low
    if top < 0:
        return [0] * (hi - lo + 1)
    inv = [0] * (top + 1)
    inv[0] = 1
    for w in weights:
        for d in range(w, top + 1):
            inv[d] += inv[d - w]
    out = []
    for d in range(lo, hi + 1):
        out.append(sum(c * inv[d - k] for k, c in numerator.items() if 0 <= d - k <= top))
    return out
