import pytest
from hypothesis import given, settings, strategies as st

from conftest import records
from partial_galois import fixtures as fx
from partial_galois.functors import (STARS, build_functor_closure, builtin_functor, functor_laws,
                                     functor_map, functor_rel, functor_similarity_check,
                                     verify_functor_theorem)
from partial_galois.galois import galois_class_check
from partial_galois.values import Cons, Int, List, Tuple, list_bound

UNARY = ["identity", "option", "list2"]
BINARY = ["product", "sum"]


def option_oracle(pairs):
    """Option relator written out by hand."""
    out = {(Cons("None"), Cons("None"))}
    out |= {(Cons("Some", (x,)), Cons("Some", (y,))) for x, y in pairs}
    return out


def test_option_relator_matches_oracle():
    zp = fx.zpos()
    assert set(builtin_functor("option").rel_fn([zp]).pairs) == option_oracle(zp.pairs)


def test_option_closure_of_b():
    E = build_functor_closure(builtin_functor("option"), [fx.fixture_b()])
    assert (len(E.alpha), len(E.beta)) == (6, 4)
    assert galois_class_check("per_equiv", E)
    assert verify_functor_theorem(builtin_functor("option"), [fx.fixture_b()], "per_equiv")


def test_list2_closure_of_b():
    F = builtin_functor("list2")
    assert verify_functor_theorem(F, [fx.fixture_b()], "per_equiv").applicable
    assert galois_class_check("per_equiv", build_functor_closure(F, [fx.fixture_b()]))


def test_option_closure_of_halving():
    rep = verify_functor_theorem(builtin_functor("option"), [fx.fixture_e()], "connection")
    assert rep.applicable and rep


def test_map_and_rel_helpers():
    F = builtin_functor("product")
    to_nat = fx.to_nat_table()
    assert functor_map(F, [to_nat, to_nat], Tuple((Int(-1), Int(2)))) == Tuple((Int(0), Int(2)))
    assert functor_rel(builtin_functor("list2"), [fx.zpos()], List([Int(1)]), List([Int(1)]))
    assert not functor_rel(builtin_functor("list2"), [fx.zpos()], List([Int(-1)]), List([Int(-1)]))


@pytest.mark.parametrize("name", UNARY + BINARY)
def test_functor_laws(name):
    F = builtin_functor(name)
    assert functor_laws(F, [fx.b2()] * F.arity)


def test_const_functor():
    F = builtin_functor("const", fx.b2())
    assert F.arity == 0 and functor_laws(F, [])
    with pytest.raises(ValueError):
        builtin_functor("const")


def test_list_bound_limits_list_functor():
    with list_bound(2):
        with pytest.raises(ValueError):
            builtin_functor("list3")


def test_arity_is_checked():
    with pytest.raises(ValueError):
        build_functor_closure(builtin_functor("product"), [fx.fixture_b()])


def test_unknown_functor():
    with pytest.raises(ValueError):
        builtin_functor("tree")


@pytest.mark.parametrize("name", UNARY)
@pytest.mark.parametrize("make", [fx.fixture_b, fx.fixture_e, fx.fixture_e_double])
def test_unary_similarity_is_exact(name, make):
    assert functor_similarity_check(builtin_functor(name), [make()])


@pytest.mark.parametrize("name", BINARY)
def test_binary_similarity_is_exact(name):
    assert functor_similarity_check(builtin_functor(name), [fx.fixture_b(), fx.fixture_e()])


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(UNARY + BINARY), records(max_size=2), records(max_size=2), st.sampled_from(STARS))
def test_functor_theorem_never_alarms(name, E1, E2, star):
    F = builtin_functor(name)
    comps = [E1, E2][:F.arity]
    rep = verify_functor_theorem(F, comps, star)
    assert rep and not rep.alarm
