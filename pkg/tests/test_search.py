from itertools import product

import pytest

import oracles
from partial_galois.search import (FUNCTOR_NAMES, claim, consistency_sweep, counterexample_search,
                                   function_pool, relation_pool, carrier)

GOLDEN_COMMUTATION = (
    "L1={(0,0)} R1={(0,0),(0,1),(1,0),(1,1)} l1=[0] r1=[0,0]",
    "L2={(1,1)} R2={(0,0)} l2=[1,0] r2=[1,0]",
)


def all_pair_sets(n):
    cells = [(x, y) for x in range(n) for y in range(n)]
    for bits in product([0, 1], repeat=len(cells)):
        yield {c for c, b in zip(cells, bits) if b}


@pytest.mark.parametrize("n", [1, 2])
def test_pool_sizes_match_brute_force(n):
    raw = lambda r: {(x.value, y.value) for x, y in r.pairs}
    everything = list(all_pair_sets(n))
    full = set(range(n))
    pers = [s for s in everything if oracles.symmetric_on(full, s) and oracles.transitive_on(full, s)]
    pres = [s for s in everything if oracles.preorder_on_field(s)]
    assert len(relation_pool("X", n)) == len(everything)
    assert sorted(map(sorted, map(raw, relation_pool("X", n, "per")))) == sorted(map(sorted, pers))
    assert sorted(map(sorted, map(raw, relation_pool("X", n, "preorder")))) == sorted(map(sorted, pres))


def test_function_pool_size():
    assert len(function_pool(carrier("A", 2), carrier("B", 3))) == 9


def test_pool_kind_is_validated():
    with pytest.raises(ValueError):
        relation_pool("X", 2, "lattice")


def test_unknown_claim_and_hypothesis():
    with pytest.raises(ValueError, match="unknown theorem"):
        claim("no_such_theorem")
    with pytest.raises(ValueError, match="unknown hypothesis"):
        counterexample_search("comp_galequiv", "nonexistent", 2)


def test_commutation_counterexample_is_golden():
    rep = counterexample_search("comp_galequiv", "commutation", 3)
    assert not rep
    assert rep.property == "comp_galequiv_without_commutation"
    assert rep.witness == GOLDEN_COMMUTATION
    assert "half_galois_left witness=(0,0)" in rep.detail


def test_guard_counterexample_is_golden():
    rep = counterexample_search("subtraction_guard", "guard", 2)
    assert not rep and rep.witness == ("0", "1")


def test_full_hypotheses_exhaust_without_counterexample():
    assert counterexample_search("subtraction_guard", None, 2)
    assert counterexample_search("comp_galequiv", None, 2)
    assert counterexample_search("depfunrel_galequiv", None, 1)


def test_sweeps_are_deterministic_and_quiet():
    a = consistency_sweep("comp_galequiv", n=50, seed=3)
    b = consistency_sweep("comp_galequiv", n=50, seed=3)
    assert a.ok and (a.total, a.applicable) == (b.total, b.applicable) == (50, a.applicable)


@pytest.mark.parametrize("name", FUNCTOR_NAMES)
def test_functor_sweeps_quiet(name):
    assert consistency_sweep(f"functor_{name}_per_equiv", n=40).ok


def test_unknown_sweep():
    with pytest.raises(ValueError):
        consistency_sweep("nonsense")
