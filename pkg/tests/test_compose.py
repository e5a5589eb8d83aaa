import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import relations, small_carrier, tables
from partial_galois import fixtures as fx
from partial_galois.compose import (build_composition, commutation_check, comp_similarity_check,
                                    lifting_comparison_check, verify_comp_coincide,
                                    verify_comp_theorem)
from partial_galois.galois import EquivalenceRecord, PartialQuotient, galois_class_check
from partial_galois.relations import Rel
from partial_galois.values import Cons, Int


def test_b_then_renaming_is_per_equiv():
    E1, E2 = fx.fixture_b(), fx.renaming()
    E = build_composition(E1, E2)
    assert galois_class_check("per_equiv", E)
    assert all(E.l(i) == Cons("N", (Int(max(i.value, 0)),)) for i in fx.int5())
    assert E.L == fx.zpos()
    assert verify_comp_theorem(E1, E2, "per_equiv").applicable


def test_composition_relations_match_oracle():
    E1, E2 = fx.fixture_e(), fx.fixture_e_double()
    E = build_composition(E1, E2)
    A1, B1, L1, R1, l1, r1 = oracles.flat(E1)
    A2, B2, L2, R2, l2, r2 = oracles.flat(E2)
    gL1 = oracles.galois_rel(A1, B1, L1, R1, r1)
    gR1 = oracles.galois_rel(B1, A1, R1, L1, l1)
    assert set(E.L.pairs) == oracles.compose(oracles.compose(gL1, L2), gR1)


def test_identity_chain():
    I = fx.identity_record()
    assert verify_comp_theorem(I, I, "pre_equiv")
    assert verify_comp_coincide(I, I, "order_equiv").applicable


def test_coincide_on_b_and_renaming():
    rep = verify_comp_coincide(fx.fixture_b(), fx.renaming(), "per_equiv")
    assert rep.applicable and rep


def test_similarity_on_b_and_renaming():
    rep = comp_similarity_check(fx.fixture_b(), fx.renaming())
    assert rep.applicable and rep
    assert comp_similarity_check(fx.fixture_b(), fx.renaming(), "appendix")


def test_unsupported_stars():
    with pytest.raises(ValueError):
        verify_comp_theorem(fx.fixture_b(), fx.renaming(), "half_left")
    with pytest.raises(ValueError):
        verify_comp_coincide(fx.fixture_b(), fx.renaming(), "galois_prop")


def test_middle_carrier_must_agree():
    with pytest.raises(ValueError):
        build_composition(fx.fixture_b(), fx.fixture_e())


def test_commutation_witness_is_smallest():
    A = small_carrier("X", 2)
    R1 = Rel(A, A, [(Int(0), Int(1))])
    L2 = Rel(A, A, [(Int(1), Int(0))])
    rep = commutation_check(R1, L2)
    assert not rep and rep.witness == (Int(0), Int(0))


def test_lifting_comparison_on_quotients():
    assert lifting_comparison_check(fx.fixture_b_quotient(), fx.renaming_quotient())
    C = fx.fixture_c()
    assert lifting_comparison_check(C.quotient, PartialQuotient.identity(C.fsets))


A2, B2, C2 = small_carrier("A", 2), small_carrier("B", 2), small_carrier("C", 2)


@st.composite
def chain(draw):
    E1 = EquivalenceRecord(draw(relations(A2, A2)), draw(relations(B2, B2)),
                           draw(tables(A2, B2)), draw(tables(B2, A2)))
    E2 = EquivalenceRecord(draw(relations(B2, B2)), draw(relations(C2, C2)),
                           draw(tables(B2, C2)), draw(tables(C2, B2)))
    return E1, E2


@settings(max_examples=150, deadline=None)
@given(chain(), st.sampled_from(["pre_equiv", "per_equiv", "connection_conclusion"]))
def test_composition_theorem_never_alarms(pair, star):
    rep = verify_comp_theorem(*pair, star)
    assert rep and not rep.alarm


@settings(max_examples=150, deadline=None)
@given(chain())
def test_composition_similarity_never_alarms(pair):
    for variant in ("main", "appendix"):
        rep = comp_similarity_check(*pair, variant)
        assert rep and not rep.alarm
