"""Execute parsed jobs and build the JSON report."""

import json
import time

from ..algebra.submodule import FreeSub, canonical, eliminate
from ..errors import HullforgeError, InvariantFailure
from ..homological import INF, FPModule, depth_along
from ..hulls import (
    CenterSpec,
    emb,
    h1_local,
    hull,
    is_s1,
    is_s2,
    iterative_hull,
    local_hull,
    punctual_hull,
    pure_hull,
    reflexive_hull,
    tors_along,
)
from ..hulls.local import N_MAX, module_json
from ..primes import (
    assumed_decompositions,
    associated_primes,
    clear_caches,
    minimal_primes,
    purity_check,
    support_components,
    track_assumed,
)
from .grammar import parse_job

SCHEMA = "hullforge-report/1"
TIMING_KEY = "timing"

# most severe first; exit codes not listed rank below success
SEVERITY = (6, 4, 5, 2, 3)


def combine_exit(codes):
    for c in SEVERITY:
        if c in codes:
            return c
    return 0


class Context:
    def __init__(self, job, max_power=None):
        self.job = job
        self.ring = job.ring.build()
        self.n_max = max_power or job.max_power or N_MAX
        self.lo, self.hi = job.degree_range or (0, 4)
        self._ideals = {}
        self._modules = {}

    def ideal(self, name):
        if name not in self._ideals:
            self._ideals[name] = FreeSub.ideal(self.ring, [self.ring(s) for s in self.job.ideals[name]])
        return self._ideals[name]

    def module(self, name):
        if name not in self._modules:
            rank, degrees, rels = self.job.modules[name]
            self._modules[name] = FPModule.coker(self.ring, rank, [list(c) for c in rels], degrees)
        return self._modules[name]


def _ideal_strings(I):
    return [str(f) for f in canonical(I).polys]


def _submodule_json(ctx, sub):
    out = sub.to_json()
    out["quotient"] = module_json(sub.quotient(), ctx.lo, ctx.hi)
    return out


def _execute(ctx, cmd):
    v, a = cmd.verb, cmd.args
    lo, hi = ctx.lo, ctx.hi
    if v == "hull":
        return hull(ctx.module(a[0]), ctx.n_max).to_json(lo, hi)
    if v == "pure-hull":
        return pure_hull(ctx.module(a[0]), ctx.n_max).to_json(lo, hi)
    if v == "reflexive-hull":
        return reflexive_hull(ctx.module(a[0])).to_json(lo, hi)
    if v == "local-hull":
        return local_hull(ctx.module(a[0]), ctx.ideal(a[1]), ctx.n_max).to_json(lo, hi)
    if v == "punctual-hull":
        res = punctual_hull(ctx.module(a[0]), CenterSpec(ctx.ideal(a[1]), "point"), ctx.n_max)
        out = res.to_json(lo, hi)
        out["coherent"] = True
        out["h1_length"] = res.coker_length
        return out
    if v == "oracle-iterative-hull":
        return iterative_hull(ctx.module(a[0]), ctx.ideal(a[1]), ctx.n_max).to_json(lo, hi)
    if v == "h1":
        finite, length = h1_local(ctx.module(a[0]), ctx.ideal(a[1]), ctx.n_max)
        return {"finite": finite, "length": length}
    if v == "tors":
        return _submodule_json(ctx, tors_along(ctx.module(a[0]), ctx.ideal(a[1])))
    if v == "emb":
        return _submodule_json(ctx, emb(ctx.module(a[0])))
    if v == "ass":
        return {"primes": associated_primes(ctx.module(a[0])).to_json()}
    if v == "min-primes":
        return {"primes": minimal_primes(ctx.ideal(a[0])).to_json()}
    if v == "purity":
        name = a[0]
        comps = minimal_primes(ctx.ideal(name)) if name in ctx.job.ideals else support_components(ctx.module(name))
        return {"components": comps.to_json(), **purity_check(comps).to_json()}
    if v == "depth":
        d = depth_along(ctx.ideal(a[0]), ctx.module(a[1]))
        return {"depth": "inf" if d == INF else d}
    if v == "is-s1":
        return {"s1": is_s1(ctx.module(a[0]))}
    if v == "is-s2":
        return {"s2": is_s2(ctx.module(a[0]))}
    if v == "hilbert":
        return module_json(ctx.module(a[0]), lo, hi)
    if v == "eliminate":
        E = eliminate(ctx.ideal(a[0]), list(a[1:]))
        keep = [x for x in ctx.ring.variables if x not in a[1:]]
        return {"ideal": _ideal_strings(E), "variables": keep}
    raise InvariantFailure(f"verb {v!r} has no handler")


def run_job(job, max_power=None, name=None):
    """Run every command; returns (report dict, exit code)."""
    clear_caches()
    t0 = time.perf_counter()
    ctx = Context(job, max_power)
    results = []
    codes = []
    timings = []
    assumed_any = False
    entries = [(ctx.ideal(I), [ctx.ideal(P) for P in Ps]) for I, Ps in job.assumptions]
    try:
        overrides = assumed_decompositions(entries)
    except HullforgeError as e:
        report = _report(job, name, [], {"code": e.code, "message": str(e)}, e.exit_code, False, [], t0)
        return report, e.exit_code
    with overrides:
        for cmd in job.commands:
            t1 = time.perf_counter()
            entry = {"cmd": cmd.text()}
            with track_assumed() as tracker:
                try:
                    entry["result"] = _execute(ctx, cmd)
                    entry["status"] = "ok"
                    code = 0
                except HullforgeError as e:
                    entry["status"] = "error"
                    entry["error"] = e.to_json()
                    code = e.exit_code
                except Exception as e:  # any other exception is an engine bug
                    entry["status"] = "error"
                    entry["error"] = {"code": "INTERNAL", "message": f"{type(e).__name__}: {e}"}
                    code = 6
            flagged = tracker.any
            entry["assumed_prime"] = flagged
            if flagged:
                assumed_any = True
                entry["assumed_primes"] = sorted({tuple(p.strings()) for p in tracker.records})
                codes.append(3)
            entry["exit_code"] = code
            codes.append(code)
            results.append(entry)
            timings.append(round(time.perf_counter() - t1, 4))
    exit_code = combine_exit(codes)
    return _report(job, name, results, None, exit_code, assumed_any, timings, t0), exit_code


def _report(job, name, results, error, exit_code, assumed, timings, t0):
    r = job.ring
    report = {
        "schema": SCHEMA,
        "job": name,
        "ring": {"name": r.name, "char": r.char, "vars": list(r.variables),
                 "weights": list(r.weights), "order": r.order},
        "results": results,
        "flags": {"assumed_prime": assumed},
        "exit_code": exit_code,
        TIMING_KEY: {"total_seconds": round(time.perf_counter() - t0, 4), "per_command": timings},
    }
    if error is not None:
        report["error"] = error
    return report


def strip_timing(report):
    return {k: v for k, v in report.items() if k != TIMING_KEY}


def dumps(report):
    """Canonical JSON text (sorted keys, fixed indentation)."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run_text(text, max_power=None, name=None):
    return run_job(parse_job(text), max_power, name)
