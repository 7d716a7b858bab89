import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hullforge.algebra import GF
from hullforge.algebra.ring import Poly
from hullforge.algebra.submodule import in_radical
from hullforge.errors import MalformedInput
from hullforge.homological import FPModule, annihilator
from hullforge.primes import (
    PrimeRecord,
    assumed_decompositions,
    associated_primes,
    certify_prime,
    factor_poly,
    is_irreducible,
    minimal_primes,
    purity_check,
    track_assumed,
)

from conftest import VERONESE, corpus_ideals, corpus_modules, cyclic, ideal, ring, veronese_ring


def test_factor_examples():
    S = ring("x y z a b c d")
    assert [(str(f), k) for f, k in factor_poly(S("x*z"))] == [("x", 1), ("z", 1)]
    assert sorted(str(f) for f, _ in factor_poly(S("x^2 - y^2"))) == ["x + y", "x - y"]
    assert [str(f) for f, _ in factor_poly(S("b*c - a*d"))] == ["b*c - a*d"]
    assert is_irreducible(S("b*c - a*d")) and not is_irreducible(S("x^2*y"))


def test_factor_over_gf():
    S = ring("x y", field=GF(5))
    facs = factor_poly(S("x^2 - 1"))
    assert sorted(str(f) for f, _ in facs) == ["x + 1", "x - 1"]
    assert len(factor_poly(S("x*y - y^2"))) == 2


def test_minimal_primes_examples():
    T = ring("x y u v")
    mp = minimal_primes(ideal(T, "x*u", "x*v", "y*u", "y*v"))
    assert {frozenset(p.strings()) for p in mp} == {frozenset({"x", "y"}), frozenset({"u", "v"})}
    assert all(p.certified == "proved" for p in mp)
    S = ring("x y z")
    mp = minimal_primes(ideal(S, "x*z", "y*z"))
    assert {frozenset(p.strings()) for p in mp} == {frozenset({"z"}), frozenset({"x", "y"})}
    assert [p.strings() for p in minimal_primes(ideal(S, "x"))] == [["x"]]


def test_minimal_primes_of_unit_ideal_is_an_error():
    S = ring("x y")
    with pytest.raises(MalformedInput):
        minimal_primes(ideal(S, "1"))


def test_veronese_toric_ideal_is_proved_prime():
    V = veronese_ring()
    (P,) = minimal_primes(ideal(V, *VERONESE))
    assert P.certified == "proved" and P.height == 2


def test_associated_primes_examples():
    S = ring("x y")
    assert [p.strings() for p in associated_primes(cyclic(S, "x^2"))] == [["x"]]
    ass = associated_primes(cyclic(S, "x^2", "x*y"))
    assert [set(p.strings()) for p in ass] == [{"x"}, {"x", "y"}]
    assert [p.height for p in associated_primes(FPModule.free(S, 1))] == [0]


def test_purity_examples():
    T = ring("x y u v")
    assert purity_check([PrimeRecord(ideal(T, "x", "y")), PrimeRecord(ideal(T, "u", "v"))]).pure
    S = ring("x y z")
    v = purity_check([PrimeRecord(ideal(S, "z")), PrimeRecord(ideal(S, "x", "y"))])
    assert not v.pure
    Q, Pi, Pj = v.witness
    assert set(Q.strings()) == {"x", "y", "z"}
    assert set(Pi.strings()) == {"x", "y"} and Pj.strings() == ["z"]
    assert purity_check([PrimeRecord(ideal(S, "x"))]).pure


def test_unsplittable_leaf_is_flagged():
    P = ring("x y z w")
    I = ideal(P, "x*y - z^2 - w^2", "x^2 + y*z - w^2")
    with track_assumed() as t:
        mp = minimal_primes(I)
    assert mp.any_assumed and t.any
    assert [r.key() for r in t.records] == [p.key() for p in mp]


def test_decomposition_override_is_verified_and_used():
    S = ring("x y z")
    I = ideal(S, "x*z", "y*z")
    good = [ideal(S, "z"), ideal(S, "x", "y")]
    with assumed_decompositions([(I, good)]):
        assert {frozenset(p.strings()) for p in minimal_primes(I)} == {frozenset({"z"}), frozenset({"x", "y"})}
    with pytest.raises(MalformedInput):
        assumed_decompositions([(I, [ideal(S, "z")])])
    with pytest.raises(MalformedInput):
        assumed_decompositions([(I, [ideal(S, "x"), ideal(S, "z")])])


def test_override_of_uncertified_prime_stays_flagged():
    P = ring("x y z w")
    I = ideal(P, "x*y - z^2 - w^2", "x^2 + y*z - w^2")
    with assumed_decompositions([(I, [I])]):
        with track_assumed() as t:
            minimal_primes(I)
    assert t.any


def test_certificates():
    S = ring("x y z")
    assert certify_prime(ideal(S, "x - y*z", "y - z^2"))
    assert certify_prime(ideal(S, "x^2 + y^2 + z^2"))
    assert not certify_prime(ideal(S, "x^2 - y^2"))


# -- corpus properties -------------------------------------------------------------

IDEALS = [(l, I) for l, I in corpus_ideals() if not I.is_whole()]
MODULES = [(l, M) for l, M in corpus_modules() if not M.is_zero()]


def _random_poly(S, rng):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        e = [0] * S.nvars
        for _ in range(rng.randint(0, 3)):
            e[rng.randrange(S.nvars)] += 1
        terms[tuple(e)] = S.field(rng.choice([-2, -1, 1, 2]))
    return Poly(S, terms)


@pytest.mark.parametrize("label,I", IDEALS, ids=[l for l, _ in IDEALS])
def test_minimal_primes_incomparable_and_radical(label, I):
    mp = list(minimal_primes(I))
    for a in mp:
        for b in mp:
            if a is not b:
                assert not a.contains(b)
    rng = random.Random(0)
    S = I.ring
    samples = [_random_poly(S, rng) for _ in range(50)]
    # products of prime generators land in the radical, so the check is not vacuous
    gens = [P.ideal.polys[0] for P in mp]
    prod = gens[0]
    for g in gens[1:]:
        prod = prod * g
    samples.append(prod)
    for f in samples:
        in_all = all(P.ideal.contains(f) for P in mp)
        assert in_all == in_radical(f.terms, I)


@pytest.mark.parametrize("label,M", MODULES, ids=[l for l, _ in MODULES])
def test_ass_contains_minimal_primes_of_annihilator(label, M):
    ass = {p.key() for p in associated_primes(M)}
    assert {p.key() for p in minimal_primes(annihilator(M))} <= ass


_SUMMANDS = [
    ("x y", ["x^2", "x*y"]),
    ("x y", ["x"]),
    ("x y", ["y^2"]),
    ("x y", ["x", "y"]),
    ("x y", []),
]


@given(st.lists(st.sampled_from(range(len(_SUMMANDS))), min_size=2, max_size=3))
def test_ass_of_direct_sum_is_union(idx):
    S = ring("x y")
    mods = [cyclic(S, *_SUMMANDS[i][1]) if _SUMMANDS[i][1] else FPModule.free(S, 1) for i in idx]
    total = mods[0]
    for M in mods[1:]:
        total = total.direct_sum(M)
    union = set()
    for M in mods:
        union |= {p.key() for p in associated_primes(M)}
    assert {p.key() for p in associated_primes(total)} == union


_COMPONENT_SETS = [
    ("x y u v", [["x", "y"], ["u", "v"]]),
    ("x y z", [["z"], ["x", "y"]]),
    ("x y z", [["x"], ["y"], ["z"]]),
    ("x y z w", [["x", "y"], ["z", "w"], ["x", "z"]]),
    ("x y z w", [["w"], ["x", "y", "z"], ["x", "y"]]),
]


@given(st.sampled_from(_COMPONENT_SETS), st.randoms(use_true_random=False))
def test_purity_symmetric_under_permutation(case, rnd):
    names, comps = case
    S = ring(names)
    recs = [PrimeRecord(ideal(S, *c)) for c in comps]
    shuffled = list(recs)
    rnd.shuffle(shuffled)
    a, b = purity_check(recs), purity_check(shuffled)
    assert a.to_json() == b.to_json()


def test_assumed_flag_reaches_the_report():
    from hullforge.cli import run_text
    text = ("ring P char 0 vars x y z w\n"
            "ideal I = [ x*y - z^2 - w^2, x^2 + y*z - w^2 ]\n"
            "cmd min-primes I\n")
    report, code = run_text(text)
    assert code == 3
    entry = report["results"][0]
    assert entry["assumed_prime"] and entry["assumed_primes"]
    assert report["flags"]["assumed_prime"]
