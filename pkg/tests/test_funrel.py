import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import records
from partial_galois import fixtures as fx
from partial_galois.funrel import (DepFunClosureInput, build_dep_fun_closure, check_mono_conditions,
                                   mono_collapse_check, nondep_input, relator_differs,
                                   similarity_check, verify_closure_theorem)
from partial_galois.galois import galois_class_check
from partial_galois.relations import DepFunTable, DepRel, Rel
from partial_galois.values import CapExceeded, FunTable, fun_space_carrier


def test_identity_closure_is_identity_on_function_space():
    I = fx.identity_record()
    out = build_dep_fun_closure(nondep_input(I, I))
    assert len(out.space_L) == 4
    assert out.E.L == Rel.eq(out.space_L)
    assert out.E.l == FunTable.identity(out.space_L)
    assert galois_class_check("per_equiv", out.E)
    assert verify_closure_theorem(nondep_input(I, I), "pre_equiv")


def test_transport_maps_follow_defining_equations():
    E1, E2 = fx.fixture_e(), fx.fixture_e_double()
    out = build_dep_fun_closure(nondep_input(E1, E2))
    for f in out.space_L:
        g = out.l_map(f)
        assert all(g(x2) == E2.l(f(E1.r(x2))) for x2 in E1.beta)
    for g in out.space_R:
        f = out.r_map(g)
        assert all(f(x) == E2.r(g(E1.l(x))) for x in E1.alpha)


def test_halving_lifted_is_connection():
    inp = nondep_input(fx.fixture_e(), fx.fixture_e_double())
    rep = verify_closure_theorem(inp, "connection")
    assert rep.applicable and rep and not rep.alarm


def test_closure_relation_matches_oracle():
    E1, E2 = fx.fixture_e(), fx.fixture_e_double()
    out = build_dep_fun_closure(nondep_input(E1, E2))
    expected = set()
    for f in out.space_L:
        for g in out.space_L:
            if oracles.fun_relator_mono(E1.L.pairs, E2.L.pairs, dict(f.items()), dict(g.items())):
                expected.add((f, g))
    assert set(out.E.L.pairs) == expected


def test_cap_is_enforced():
    inp = nondep_input(fx.fixture_e(), fx.fixture_e_double())
    small = DepFunClosureInput(inp.E1, inp.L2, inp.R2, inp.l2, inp.r2, fun_space_cap=10)
    with pytest.raises(CapExceeded):
        build_dep_fun_closure(small)


def test_seeded_subspace_is_closed():
    E = fx.fixture_b()
    seed = FunTable.from_function(fx.int5(), fx.int5(), lambda i: fx.clamp(i.value + 1))
    inp = nondep_input(E, E, seeds_L=(seed,))
    out = build_dep_fun_closure(inp)
    assert out.subspace and seed in out.space_L.index
    assert all(out.l_map(f) in out.space_R.index for f in out.space_L)
    assert all(out.r_map(g) in out.space_L.index for g in out.space_R)


def test_collapse_with_non_per_codomain():
    E = fx.fixture_e()
    L2 = DepRel.const(fx.le(fx.b2()), fx.four(), fx.four())
    space = fun_space_carrier(fx.four(), fx.b2(), cap=16)
    assert not mono_collapse_check(E.L, L2, space).applicable
    assert not relator_differs(E.L, L2, space)


def test_collapse_under_per_hypotheses():
    I = fx.identity_record()
    L2 = DepRel.const(Rel.eq(fx.b2()), fx.b2(), fx.b2())
    rep = mono_collapse_check(I.L, L2)
    assert rep.applicable and rep


def test_mono_condition_variants():
    inp = nondep_input(fx.fixture_b(), fx.fixture_b())
    assert check_mono_conditions(inp, "main")
    assert check_mono_conditions(inp, "appendix")
    with pytest.raises(ValueError):
        check_mono_conditions(inp, "other")


def test_similarity_on_halving():
    inp = nondep_input(fx.fixture_e(), fx.fixture_e_double())
    rep = similarity_check(inp, variant="appendix")
    assert rep and not rep.alarm


@settings(max_examples=60, deadline=None)
@given(records(max_size=2), records(max_size=2), st.sampled_from(["pre_equiv", "per_equiv", "connection"]))
def test_closure_theorem_never_alarms(E1, E2, star):
    inp = nondep_input(E1, E2)
    rep = verify_closure_theorem(inp, star)
    assert not rep.alarm and rep.verdict


@settings(max_examples=60, deadline=None)
@given(records(max_size=2), records(max_size=2))
def test_similarity_never_alarms(E1, E2):
    inp = nondep_input(E1, E2)
    for variant in ("main", "appendix"):
        rep = similarity_check(inp, variant=variant)
        assert not rep.alarm and rep.verdict


def test_dependent_codomain():
    # L2 depends on the parameter: equality when the inputs agree, full otherwise.
    E1 = fx.identity_record()
    B = fx.b2()
    cases = {(a, b): Rel.eq(B) if a == b else Rel.full(B, B) for a in B for b in B}
    L2 = DepRel(B, B, B, B, cases)
    ident = DepFunTable.const(FunTable.identity(B), B, B)
    inp = DepFunClosureInput(E1, L2, L2, ident, ident)
    rep = verify_closure_theorem(inp, "per_equiv")
    assert rep and not rep.alarm
