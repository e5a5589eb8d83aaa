import pytest
from hypothesis import given, strategies as st

from partial_galois.values import (CapExceeded, Carrier, Cons, FunTable, Int, List, Tuple,
                                   ValueSyntaxError, enumerate_fun_tables, format_value,
                                   parse_value, space_size, val)

ints = st.integers(-5, 5).map(Int)
values = st.recursive(ints, lambda kids: st.one_of(
    st.lists(kids, max_size=3).map(List),
    st.lists(kids, min_size=2, max_size=3).map(lambda xs: Tuple(tuple(xs))),
    st.lists(kids, max_size=2).map(lambda xs: Cons("Box", tuple(xs)))), max_leaves=6)


@given(values)
def test_format_parse_round_trip(v):
    assert parse_value(format_value(v)) == v


@pytest.mark.parametrize("text", ["(", "[1,", "1 2", "", ")"])
def test_malformed_values_raise(text):
    with pytest.raises(ValueSyntaxError):
        parse_value(text)


def test_val_lifts_python_data():
    assert val(3) == Int(3)
    assert val([1, 2]) == List((Int(1), Int(2)))


def test_fun_table_lookup_and_compose():
    A = Carrier.of("A", range(3))
    f = FunTable.from_function(A, A, lambda x: (x.value + 1) % 3)
    assert f(Int(2)) == Int(0)
    assert f.then(f)(Int(0)) == Int(2)
    assert FunTable.identity(A).then(f) == f


def test_fun_table_rejects_foreign_input():
    A = Carrier.of("A", range(2))
    f = FunTable.identity(A)
    with pytest.raises(ValueError):
        f(Int(7))


def test_enumeration_counts_and_cap():
    A, B = Carrier.of("A", range(2)), Carrier.of("B", range(3))
    assert space_size(A, B) == 9
    tabs = enumerate_fun_tables(A, B, cap=9)
    assert len(set(tabs)) == 9
    with pytest.raises(CapExceeded):
        enumerate_fun_tables(A, B, cap=8)

