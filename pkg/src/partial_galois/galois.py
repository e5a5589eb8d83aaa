"""Galois relators, the hierarchy of partial Galois properties, and partial quotients."""

from __future__ import annotations

from dataclasses import dataclass

from .relations import (Pred, Rel, _same_carrier, order_property, point_property,
                        reflexive_on, unrelativised)
from .reports import (CheckReport, conjunction, equality_report, first_failure,
                      gated)
from .values import Carrier, FunTable

CLASSES = ("half_left", "half_right", "galois_prop", "connection", "galois_equiv",
           "order_equiv", "pre_equiv", "per_equiv")


@dataclass(frozen=True)
class EquivalenceRecord:
    """A quadruple ``(L, R, l, r)``; ``claimed_class`` is advisory only."""

    L: Rel
    R: Rel
    l: FunTable
    r: FunTable
    claimed_class: str = "per_equiv"

    def __post_init__(self):
        _same_carrier(self.L.left, self.L.right, "L must be homogeneous")
        _same_carrier(self.R.left, self.R.right, "R must be homogeneous")
        _same_carrier(self.l.dom, self.L.left, "l domain")
        _same_carrier(self.l.cod, self.R.left, "l codomain")
        _same_carrier(self.r.dom, self.R.left, "r domain")
        _same_carrier(self.r.cod, self.L.left, "r codomain")
        if self.claimed_class not in CLASSES:
            raise ValueError(f"unknown class {self.claimed_class!r}")

    @property
    def alpha(self) -> Carrier:
        return self.L.left

    @property
    def beta(self) -> Carrier:
        return self.R.left

    def flipped(self) -> EquivalenceRecord:
        """The record read in the other direction, ``(R, L, r, l)``."""
        return EquivalenceRecord(self.R, self.L, self.r, self.l, self.claimed_class)

    @classmethod
    def identity(cls, rel: Rel) -> EquivalenceRecord:
        ident = FunTable.identity(rel.left)
        return cls(rel, rel, ident, ident)

    def same_as(self, other: EquivalenceRecord) -> bool:
        return (self.L == other.L and self.R == other.R
                and self.l == other.l and self.r == other.r)


@dataclass(frozen=True)
class PartialQuotient:
    T: Rel
    Abs: FunTable
    Rep: FunTable

    def __post_init__(self):
        _same_carrier(self.Abs.dom, self.T.left, "Abs domain")
        _same_carrier(self.Abs.cod, self.T.right, "Abs codomain")
        _same_carrier(self.Rep.dom, self.T.right, "Rep domain")
        _same_carrier(self.Rep.cod, self.T.left, "Rep codomain")

    @classmethod
    def identity(cls, carrier: Carrier) -> PartialQuotient:
        ident = FunTable.identity(carrier)
        return cls(Rel.eq(carrier), ident, ident)


def unit_counit(l: FunTable, r: FunTable) -> tuple[FunTable, FunTable]:
    """``(eta, epsilon) = (r . l, l . r)``."""
    _same_carrier(l.cod, r.dom, "unit")
    _same_carrier(r.cod, l.dom, "counit")
    return l.then(r), r.then(l)


def galois_relator(L: Rel, R: Rel, r: FunTable) -> Rel:
    """``x <~ y  <->  in_codom R y and L x (r y)`` on ``alpha x beta``."""
    _same_carrier(r.dom, R.left, "galois_relator")
    _same_carrier(r.cod, L.left, "galois_relator")
    pairs = [(x, y) for y in R.right if R.in_codom(y) for x in L.pred(r(y))]
    return Rel(L.left, R.right, pairs, check=False)


def flip_galois_relator(L: Rel, R: Rel, l: FunTable) -> Rel:
    """The dual: ``x ~> y  <->  in_dom L x and R (l x) y``."""
    _same_carrier(l.dom, L.left, "flip_galois_relator")
    _same_carrier(l.cod, R.left, "flip_galois_relator")
    pairs = [(x, y) for x in L.left if L.in_dom(x) for y in R.succ(l(x))]
    return Rel(L.left, R.right, pairs, check=False)


# --- the class hierarchy -------------------------------------------------------

def mono_check(name: str, A: Rel, B: Rel, f: FunTable) -> CheckReport:
    """``((A) => (B)) f``: ``A x y --> B (f x) (f y)``."""
    return first_failure(name, A.sorted_pairs(), lambda x, y: B.holds(f(x), f(y)))


def _half_left(E: EquivalenceRecord, prefix: str) -> CheckReport:
    g = galois_relator(E.L, E.R, E.r)
    return first_failure(prefix + "half_galois_left", g.sorted_pairs(),
                         lambda x, y: E.R.holds(E.l(x), y))


def _half_right(E: EquivalenceRecord, prefix: str) -> CheckReport:
    g = flip_galois_relator(E.L, E.R, E.l)
    return first_failure(prefix + "half_galois_right", g.sorted_pairs(),
                         lambda x, y: E.L.holds(x, E.r(y)))


def _galois_prop(E: EquivalenceRecord, prefix: str) -> CheckReport:
    return conjunction(prefix + "galois_prop", [_half_left(E, prefix), _half_right(E, prefix)])


def _connection(E: EquivalenceRecord, prefix: str) -> CheckReport:
    return conjunction(prefix + "connection", [
        _galois_prop(E, prefix),
        mono_check(prefix + "mono_l", E.L, E.R, E.l),
        mono_check(prefix + "mono_r", E.R, E.L, E.r),
    ])


def _galois_equiv(E: EquivalenceRecord) -> CheckReport:
    return conjunction("galois_equiv", [_connection(E, ""),
                                        _connection(E.flipped(), "reverse_")])


def _order_equiv(E: EquivalenceRecord) -> CheckReport:
    eta, eps = unit_counit(E.l, E.r)
    return conjunction("order_equiv", [
        mono_check("mono_l", E.L, E.R, E.l),
        mono_check("mono_r", E.R, E.L, E.r),
        _named(point_property("rel_equivalence_on", Pred.in_field(E.L), E.L, eta), "unit_rel_equivalence_on"),
        _named(point_property("rel_equivalence_on", Pred.in_field(E.R), E.R, eps), "counit_rel_equivalence_on"),
    ])


def _named(rep: CheckReport, name: str) -> CheckReport:
    return CheckReport(name, rep.verdict, rep.witness, rep.sub_reports,
                       rep.applicable, rep.detail, rep.alarm)


def _field_property(kind: str, E: EquivalenceRecord) -> list[CheckReport]:
    return [_named(order_property(kind, Pred.in_field(E.L), E.L), f"L_{kind}"),
            _named(order_property(kind, Pred.in_field(E.R), E.R), f"R_{kind}")]


def galois_class_check(cls: str, E: EquivalenceRecord) -> CheckReport:
    """Evaluate one predicate of the hierarchy exactly as defined."""
    if cls == "half_left":
        return _half_left(E, "")
    if cls == "half_right":
        return _half_right(E, "")
    if cls == "galois_prop":
        return _galois_prop(E, "")
    if cls == "connection":
        return _connection(E, "")
    if cls == "galois_equiv":
        return _galois_equiv(E)
    if cls == "order_equiv":
        return _order_equiv(E)
    if cls == "pre_equiv":
        return conjunction("pre_equiv", [_galois_equiv(E)] + _field_property("preorder_on", E))
    if cls == "per_equiv":
        return conjunction("per_equiv", [_galois_equiv(E)] + _field_property("per_on", E))
    raise ValueError(f"unknown class {cls!r}")


# --- partial quotients ---------------------------------------------------------

def partial_quotient_check(Q: PartialQuotient) -> CheckReport:
    T = Q.T

    def unique_cands():
        for x in T.left:
            ys = T.succ(x)
            for y in ys:
                for y2 in ys:
                    yield x, y, y2

    return conjunction("partial_quotient", [
        first_failure("right_unique", unique_cands(), lambda x, y, y2: y == y2),
        first_failure("right_total", ((y,) for y in T.right), T.in_codom),
        first_failure("abs_respects", T.sorted_pairs(), lambda x, y: Q.Abs(x) == y),
        first_failure("rep_respects", ((y,) for y in T.right),
                      lambda y: T.holds(Q.Rep(y), y)),
    ])


def induced_left_rel(Q: PartialQuotient, literal: bool = False) -> Rel:
    """The relation identifying values of ``alpha`` with the same abstraction.

    By default ``x1 ~ x2  <->  in_dom T x1 and in_dom T x2 and Abs x1 = Abs x2``.
    With ``literal=True`` the second domain guard is dropped, which is only
    equivalent when ``Abs`` never maps a value outside ``in_dom T`` onto the
    abstraction of a value inside it.
    """
    T, Abs = Q.T, Q.Abs
    by_abs: dict = {}
    for x in T.left:
        if literal or T.in_dom(x):
            by_abs.setdefault(Abs(x), []).append(x)
    pairs = [(x1, x2) for x1 in T.left if T.in_dom(x1) for x2 in by_abs[Abs(x1)]]
    return Rel(T.left, T.left, pairs, check=False)


def abs_closed_check(prop: str, dom: Pred, f: FunTable) -> CheckReport:
    """``dom x1 and f x1 = f x2 --> dom x2``.

    With the partial functions of the examples totalized, values outside the
    intended domain may collide with values inside it; this is the condition
    under which the totalization cannot be observed.
    """
    def cands():
        for x1 in dom.sorted():
            for x2 in f.dom:
                if f(x1) == f(x2):
                    yield x1, x2
    return first_failure(prop, cands(), lambda x1, x2: x2 in dom)


def quotient_of(E: EquivalenceRecord) -> PartialQuotient:
    """``(Galois L (=) r, l, r)``, the quotient a PER equivalence onto ``(=)`` describes."""
    return PartialQuotient(galois_relator(E.L, E.R, E.r), E.l, E.r)


def lemma_galois_is_transport(Q: PartialQuotient) -> CheckReport:
    """A partial quotient's transport relation is the Galois relator of its induced relation."""
    def concl():
        L = induced_left_rel(Q)
        return equality_report("T_eq_galois", Q.T, galois_relator(L, Rel.eq(Q.T.right), Q.Rep))
    return gated("lemma_transport_is_galois", [partial_quotient_check(Q)], concl)


def lemma_quotient_to_equiv(Q: PartialQuotient) -> CheckReport:
    """Partial quotient implies PER equivalence of the induced relation with ``(=)``."""
    def concl():
        L = induced_left_rel(Q)
        E = EquivalenceRecord(L, Rel.eq(Q.T.right), Q.Abs, Q.Rep)
        return galois_class_check("per_equiv", E)
    return gated("lemma_quotient_to_per_equiv", [partial_quotient_check(Q)], concl)


def lemma_equiv_to_quotient(E: EquivalenceRecord) -> CheckReport:
    """PER equivalence onto ``(=)`` yields a partial quotient inducing ``L``."""
    def concl():
        Q = quotient_of(E)
        return conjunction("quotient_inducing_L", [
            partial_quotient_check(Q),
            equality_report("induced_eq_L", induced_left_rel(Q), E.L),
        ])
    return gated("lemma_per_equiv_to_quotient", [
        equality_report("R_is_eq", E.R, Rel.eq(E.beta)),
        galois_class_check("per_equiv", E),
    ], concl)


def lemma_galois_iff_flip(E: EquivalenceRecord) -> CheckReport:
    def concl():
        return equality_report("galois_eq_flip", galois_relator(E.L, E.R, E.r),
                               flip_galois_relator(E.L, E.R, E.l))
    return gated("lemma_galois_iff_flip", [galois_class_check("galois_prop", E)], concl)


def lemma_order_to_galois(E: EquivalenceRecord) -> CheckReport:
    return gated("lemma_order_equiv_to_galois_equiv", [
        galois_class_check("order_equiv", E),
        _named(unrelativised("transitive_on", E.L), "L_transitive"),
        _named(unrelativised("transitive_on", E.R), "R_transitive"),
    ], lambda: galois_class_check("galois_equiv", E))


def lemma_galois_to_order(E: EquivalenceRecord) -> CheckReport:
    return gated("lemma_galois_equiv_to_order_equiv", [
        galois_class_check("galois_equiv", E),
        _named(reflexive_on(Pred.in_field(E.L), E.L), "L_reflexive_on_field"),
        _named(reflexive_on(Pred.in_field(E.R), E.R), "R_reflexive_on_field"),
    ], lambda: galois_class_check("order_equiv", E))


def galois_lemma_suite(subject: EquivalenceRecord | PartialQuotient) -> CheckReport:
    """Run every lemma whose input shape matches ``subject``.

    Inapplicable lemmas pass vacuously; the suite fails only when some lemma
    had its hypotheses met and its conclusion refuted.
    """
    if isinstance(subject, PartialQuotient):
        Q = subject
        subs = [lemma_galois_is_transport(Q), lemma_quotient_to_equiv(Q)]
        if partial_quotient_check(Q):
            L = induced_left_rel(Q)
            E = EquivalenceRecord(L, Rel.eq(Q.T.right), Q.Abs, Q.Rep)
            subs.append(lemma_equiv_to_quotient(E))
    else:
        E = subject
        subs = [lemma_galois_iff_flip(E), lemma_order_to_galois(E), lemma_galois_to_order(E)]
        if E.R == Rel.eq(E.beta):
            subs.append(lemma_equiv_to_quotient(E))
    return conjunction("galois_lemmas", subs)


def connection_unit_inflationary(E: EquivalenceRecord) -> CheckReport:
    """For a connection, ``L x (r (l x))`` on ``in_dom L``."""
    eta, _ = unit_counit(E.l, E.r)
    return gated("connection_unit_inflationary", [galois_class_check("connection", E)],
                 lambda: point_property("inflationary_on", Pred.in_dom(E.L), E.L, eta))


__all__ = [
    "CLASSES", "EquivalenceRecord", "PartialQuotient", "unit_counit", "galois_relator",
    "flip_galois_relator", "galois_class_check", "partial_quotient_check",
    "induced_left_rel", "galois_lemma_suite", "mono_check", "quotient_of",
    "lemma_galois_is_transport", "lemma_quotient_to_equiv", "lemma_equiv_to_quotient",
    "lemma_galois_iff_flip", "lemma_order_to_galois", "lemma_galois_to_order",
    "abs_closed_check", "connection_unit_inflationary",
]
