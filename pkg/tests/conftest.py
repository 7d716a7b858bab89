import itertools
import os

import pytest
import sympy
from hypothesis import HealthCheck, settings

from hullforge.algebra import QQ, FreeSub, PolyRing
from hullforge.homological import FPModule
from hullforge.primes import clear_caches

settings.register_profile(
    "default", max_examples=25, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("thorough", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def _fresh_caches():
    clear_caches()
    yield


def ring(names, weights=None, field=QQ):
    return PolyRing(names.split(), weights, "grevlex", field)


def ideal(S, *polys):
    return FreeSub.ideal(S, list(polys))


def cyclic(S, *polys):
    return FPModule.quotient(ideal(S, *polys))


def two_planes():
    S = ring("x y u v")
    return S, cyclic(S, "x*u", "x*v", "y*u", "y*v")


def plane_line():
    S = ring("x y z")
    return S, cyclic(S, "x*z", "y*z")


def veronese_ring():
    return ring("a b c d", (4, 4, 4, 4))


VERONESE = ("b*c - a*d", "c^3 - b*d^2", "a*c^2 - b^2*d", "b^3 - a^2*c")


def koszul_ideal_module():
    S = ring("x y")
    return S, FPModule.coker(S, 2, [["-y", "x"]], (1, 1))


def to_sympy(f):
    syms = sympy.symbols(f.ring.variables)
    return sympy.Add(*[sympy.Rational(str(c)) * sympy.Mul(*[s ** e for s, e in zip(syms, ex)])
                       for ex, c in f.terms.items()])


def monomials(weights, d):
    out = []
    for e in itertools.product(*[range(d // w + 1) for w in weights]):
        if sum(a * w for a, w in zip(e, weights)) == d:
            out.append(e)
    return out


def hilbert_by_rank(S, polys, lo, hi):
    """dim_k (S/I)_d by the rank of the degree-d multiplication matrix (independent of Groebner bases)."""
    w = S.weights
    values = []
    for d in range(lo, hi + 1):
        basis = monomials(w, d)
        index = {m: i for i, m in enumerate(basis)}
        rows = []
        for f in polys:
            fd = f.degree()
            if fd > d:
                continue
            for m in monomials(w, d - fd):
                row = [0] * len(basis)
                for e, c in f.terms.items():
                    row[index[tuple(a + b for a, b in zip(e, m))]] = sympy.Rational(str(c))
                rows.append(row)
        rank = sympy.Matrix(rows).rank() if rows else 0
        values.append(len(basis) - rank)
    return values


def corpus_modules(graded_only=False):
    """Distinct modules declared in the bundled corpus as (label, FPModule)."""
    from hullforge.cli import bundled_corpus, parse_job
    from hullforge.cli.runner import Context
    out, seen = [], set()
    for path in sorted(bundled_corpus().glob("*.job")):
        try:
            job = parse_job(path.read_text())
        except Exception:
            continue
        ctx = Context(job)
        for name in job.modules:
            M = ctx.module(name)
            key = (M.ring, M.degrees, tuple(map(tuple, M.relation_strings())))
            if key in seen or (graded_only and not M.is_graded()):
                continue
            seen.add(key)
            out.append((f"{path.stem}:{name}", M))
    return out


def corpus_ideals():
    from hullforge.cli import bundled_corpus, parse_job
    from hullforge.cli.runner import Context
    out = []
    for path in sorted(bundled_corpus().glob("*.job")):
        try:
            job = parse_job(path.read_text())
        except Exception:
            continue
        ctx = Context(job)
        out.extend((f"{path.stem}:{name}", ctx.ideal(name)) for name in job.ideals)
    return out


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
