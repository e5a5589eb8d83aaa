import pytest
from hypothesis import given, strategies as st

from partial_galois import fixtures as fx
from partial_galois.engine import (Atom, Compose, DepFun, EngineError, EqExpr, EquivSide,
                                   FunctorExpr, Guard, Registry, SideConditionError,
                                   TransportError, elaborate, format_expr, free_binders,
                                   parse_expr, register_equivalence, synthesize, transport)
from partial_galois.galois import galois_class_check
from partial_galois.values import CapExceeded, Int, List

names = st.sampled_from(["A", "Zpos", "Nat3", "x1"])
leaves = st.one_of(names.map(Atom), names.map(EqExpr),
                   st.tuples(names, st.sampled_from(["left", "right"])).map(lambda t: EquivSide(*t)))
exprs = st.recursive(leaves, lambda kids: st.one_of(
    st.builds(DepFun, st.just("x"), st.just("y"), kids,
              st.one_of(st.none(), st.just(Guard("geq", ("x", "y")))), kids),
    st.builds(FunctorExpr, st.sampled_from(["option", "product"]), st.lists(kids, min_size=1, max_size=2).map(tuple)),
    st.builds(Compose, kids, kids)), max_leaves=5)


@given(exprs)
def test_format_parse_round_trip(e):
    assert parse_expr(format_expr(e)) == e


@pytest.mark.parametrize("text,column", [
    ("fun(x : atom Z) -> eq N", 7), ("atom", 5), ("atom Z)", 7), ("eq N $", 6)])
def test_parse_errors_carry_columns(text, column):
    with pytest.raises(EngineError, match=f"column {column}"):
        parse_expr(text)


def test_free_binders():
    e = parse_expr(fx.SUBTRACTION_L)
    assert free_binders(e) == frozenset()
    assert free_binders(e.codomain) == frozenset({"i1"})


def test_registry_rejects_non_per_and_duplicates():
    reg = fx.subtraction_registry()
    with pytest.raises(SideConditionError, match="reverse_half_galois_left witness=\\(0,0\\)"):
        register_equivalence(reg, "halving", fx.fixture_e())
    with pytest.raises(EngineError):
        register_equivalence(reg, "int_nat", fx.fixture_b())
    with pytest.raises(EngineError):
        reg.with_carrier("Int5", fx.int5())
    assert isinstance(reg.with_cap(10), Registry)


def test_leaf_resolution():
    reg = fx.subtraction_registry()
    assert elaborate(reg, "atom Zpos", "eq Nat3").same_as(fx.fixture_b())
    assert elaborate(reg, "lhs int_nat", "rhs int_nat").same_as(fx.fixture_b())
    with pytest.raises(EngineError, match="unknown relation"):
        elaborate(reg, "atom Nope", "eq Nat3")


def test_non_parallel_expressions():
    reg = fx.subtraction_registry()
    with pytest.raises(EngineError, match="not parallel"):
        elaborate(reg, "atom Zpos", "functor option(eq Nat3)")


def test_functor_and_compose_nodes():
    reg = register_equivalence(fx.subtraction_registry(), "renaming", fx.renaming())
    E = elaborate(reg, "functor option(lhs int_nat)", "functor option(rhs int_nat)")
    assert galois_class_check("per_equiv", E)
    E = elaborate(reg, "compose(lhs int_nat, lhs renaming)", "compose(rhs int_nat, rhs renaming)")
    assert E.beta == fx.nat3_prime() and galois_class_check("per_equiv", E)


def test_full_function_space_respects_cap():
    reg = fx.subtraction_registry()
    with pytest.raises(CapExceeded):
        synthesize(reg, "fun(x _: atom Zpos) -> eq Nat3", "fun(_ y: eq Nat3) -> eq Nat3")


def test_unknown_condition():
    reg = fx.subtraction_registry()
    with pytest.raises(EngineError):
        synthesize(reg, fx.SUBTRACTION_L.replace("geq(", "gt("), fx.SUBTRACTION_R, seeds=[fx.sub_int()])


def test_max_list_transport():
    res = transport(fx.lists_fsets_registry(), "max_list", fx.MAX_L, fx.MAX_R)
    for s, n in res.term_out.items():
        assert n.value == fx.max_fset_oracle(s)
    assert res.relatedness and res.similarity


def test_subtraction_transport():
    res = transport(fx.subtraction_registry(), "sub_int", fx.SUBTRACTION_L, fx.SUBTRACTION_R)
    for n1 in fx.nat3():
        for n2 in fx.nat3():
            assert res.term_out(n1)(n2).value == fx.sub_nat_oracle(n1.value, n2.value)
    assert res.similarity and res.side_conditions


def test_unguarded_subtraction_fails_with_witness():
    with pytest.raises(TransportError) as info:
        transport(fx.subtraction_registry(), "sub_int", fx.SUBTRACTION_UNGUARDED_L,
                  fx.SUBTRACTION_UNGUARDED_R)
    assert info.value.witness == (Int(0), Int(1))


def test_unguarded_index_fails_with_witness():
    with pytest.raises(TransportError) as info:
        transport(fx.indexing_registry(), "index", fx.INDEX_UNGUARDED_L, fx.INDEX_UNGUARDED_R)
    assert info.value.witness == (List(), Int(0))


def test_unknown_term():
    with pytest.raises(EngineError):
        transport(fx.subtraction_registry(), "mul_int", fx.SUBTRACTION_L, fx.SUBTRACTION_R)
