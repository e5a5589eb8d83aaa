"""Composition of Galois connections and equivalences through Galois-relator chains."""

from __future__ import annotations

from .galois import (EquivalenceRecord, PartialQuotient, galois_class_check, galois_relator,
                     induced_left_rel, mono_check, partial_quotient_check)
from .relations import Pred, Rel, _same_carrier, order_property, rel_compose, rel_inverse, reflexive_on
from .reports import CheckReport, conjunction, equality_report, gated


def _rename(rep: CheckReport, name: str) -> CheckReport:
    return CheckReport(name, rep.verdict, rep.witness, rep.sub_reports, rep.applicable,
                       rep.detail, rep.alarm)


def build_composition(E1: EquivalenceRecord, E2: EquivalenceRecord) -> EquivalenceRecord:
    """``L = <~L1 o L2 o <~R1``, ``R = <~R2 o R1 o <~L2``, ``l = l2 . l1``, ``r = r1 . r2``."""
    _same_carrier(E1.beta, E2.alpha, "composition middle")
    gL1 = galois_relator(E1.L, E1.R, E1.r)
    gR1 = galois_relator(E1.R, E1.L, E1.l)
    gL2 = galois_relator(E2.L, E2.R, E2.r)
    gR2 = galois_relator(E2.R, E2.L, E2.l)
    L = rel_compose(rel_compose(gL1, E2.L), gR1)
    R = rel_compose(rel_compose(gR2, E1.R), gL2)
    return EquivalenceRecord(L, R, E1.l.then(E2.l), E2.r.then(E1.r))


def commutation_check(R1: Rel, L2: Rel) -> CheckReport:
    """``R1 o L2 = L2 o R1``; the witness is the smallest pair in only one side."""
    return equality_report("commutation", rel_compose(R1, L2), rel_compose(L2, R1))


COMP_STARS = ("pre_equiv", "per_equiv", "connection_conclusion")


def comp_hypotheses(E1: EquivalenceRecord, E2: EquivalenceRecord, star: str) -> list[CheckReport]:
    if star in ("pre_equiv", "per_equiv"):
        return [_rename(galois_class_check(star, E1), f"first_{star}"),
                _rename(galois_class_check(star, E2), f"second_{star}"),
                commutation_check(E1.R, E2.L)]
    if star == "connection_conclusion":
        return [_rename(galois_class_check("galois_equiv", E1), "first_galois_equiv"),
                _rename(galois_class_check("galois_equiv", E2), "second_galois_equiv"),
                _rename(order_property("preorder_on", Pred.in_field(E1.R), E1.R), "R1_preorder_on_field"),
                _rename(order_property("preorder_on", Pred.in_field(E2.L), E2.L), "L2_preorder_on_field"),
                commutation_check(E1.R, E2.L)]
    raise ValueError(f"unsupported composition class {star!r}")


def verify_comp_theorem(E1: EquivalenceRecord, E2: EquivalenceRecord, star: str) -> CheckReport:
    conclusion = "connection" if star == "connection_conclusion" else star
    return gated(f"composition_{star}", comp_hypotheses(E1, E2, star),
                 lambda: galois_class_check(conclusion, build_composition(E1, E2)))


COINCIDE_STARS = ("connection", "galois_equiv", "order_equiv", "pre_equiv", "per_equiv")


def verify_comp_coincide(E1: EquivalenceRecord, E2: EquivalenceRecord, star: str) -> CheckReport:
    """With ``R1 = L2`` the plain composite ``(L1, R2, l2 . l1, r1 . r2)`` inherits ``star``."""
    if star not in COINCIDE_STARS:
        raise ValueError(f"unsupported class {star!r}")
    _same_carrier(E1.beta, E2.alpha, "composition middle")
    hyps = [_rename(galois_class_check(star, E1), f"first_{star}"),
            _rename(galois_class_check(star, EquivalenceRecord(E1.R, E2.R, E2.l, E2.r)),
                    f"second_over_R1_{star}"),
            equality_report("R1_eq_L2", E1.R, E2.L)]
    target = EquivalenceRecord(E1.L, E2.R, E1.l.then(E2.l), E2.r.then(E1.r))
    return gated(f"composition_coincide_{star}", hyps, lambda: galois_class_check(star, target))


def comp_similarity_hypotheses(E1: EquivalenceRecord, E2: EquivalenceRecord,
                               variant: str) -> list[CheckReport]:
    if variant == "main":
        return [_rename(galois_class_check("pre_equiv", E1), "first_pre_equiv"),
                _rename(galois_class_check("pre_equiv", E2), "second_pre_equiv"),
                commutation_check(E1.R, E2.L)]
    if variant == "appendix":
        return [mono_check("mono_r1", E1.R, E1.L, E1.r),
                galois_class_check("galois_prop", E1),
                _rename(galois_class_check("half_left", E1.flipped()), "reverse_half_galois_left_1"),
                _rename(order_property("preorder_on", Pred.in_field(E1.R), E1.R), "R1_preorder_on_field"),
                mono_check("mono_l2", E2.L, E2.R, E2.l),
                _rename(galois_class_check("half_left", E2.flipped()), "reverse_half_galois_left_2"),
                _rename(reflexive_on(Pred.in_dom(E2.L), E2.L), "L2_reflexive_on_dom"),
                commutation_check(E1.R, E2.L)]
    raise ValueError(f"unknown variant {variant!r}")


def comp_similarity_conclusion(E1: EquivalenceRecord, E2: EquivalenceRecord) -> CheckReport:
    E = build_composition(E1, E2)
    lhs = galois_relator(E.L, E.R, E.r)
    rhs = rel_compose(galois_relator(E1.L, E1.R, E1.r), galois_relator(E2.L, E2.R, E2.r))
    return equality_report("galois_eq_chain", lhs, rhs)


def comp_similarity_check(E1: EquivalenceRecord, E2: EquivalenceRecord,
                          variant: str = "main") -> CheckReport:
    return gated(f"composition_similarity_{variant}", comp_similarity_hypotheses(E1, E2, variant),
                 lambda: comp_similarity_conclusion(E1, E2))


def quotient_record(Q: PartialQuotient) -> EquivalenceRecord:
    """``(~, (=), Abs, Rep)`` for the induced relation ``~``."""
    return EquivalenceRecord(induced_left_rel(Q), Rel.eq(Q.T.right), Q.Abs, Q.Rep)


def compose_quotients(Q1: PartialQuotient, Q2: PartialQuotient) -> PartialQuotient:
    return PartialQuotient(rel_compose(Q1.T, Q2.T), Q1.Abs.then(Q2.Abs), Q2.Rep.then(Q1.Rep))


def lifting_comparison_check(Q1: PartialQuotient, Q2: PartialQuotient) -> CheckReport:
    """The Galois-chain construction agrees with the partial-quotient composition."""
    _same_carrier(Q1.T.right, Q2.T.left, "quotient composition middle")

    def concl():
        E1, E2 = quotient_record(Q1), quotient_record(Q2)
        T1, L1, L2 = Q1.T, E1.L, E2.L
        eq_beta = Rel.eq(Q1.T.right)
        gal = galois_relator(L1, eq_beta, Q1.Rep)
        gal_inv = galois_relator(eq_beta, L1, Q1.Abs)
        lifting_chain = rel_compose(rel_compose(T1, L2), rel_inverse(T1))
        built = build_composition(E1, E2)
        return conjunction("lifting_agreement", [
            equality_report("T1_eq_galois", T1, gal),
            equality_report("T1_inverse_eq_galois", rel_inverse(T1), gal_inv),
            equality_report("chain_eq_galois_chain", lifting_chain,
                            rel_compose(rel_compose(gal, L2), gal_inv)),
            equality_report("composed_induced_eq_chain",
                            induced_left_rel(compose_quotients(Q1, Q2)), built.L),
            _rename(commutation_check(E1.R, E2.L), "commutation_vacuous"),
        ])
    return gated("lifting_comparison", [
        _rename(partial_quotient_check(Q1), "first_partial_quotient"),
        _rename(partial_quotient_check(Q2), "second_partial_quotient"),
    ], concl)
