"""Closure of Galois connections and equivalences under (monotone) dependent function relators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .galois import EquivalenceRecord, galois_class_check, galois_relator, mono_check, unit_counit
from .relations import (DepFunTable, DepRel, Pred, Rel, _same_carrier, dep_fun_map,
                        materialize_relator, reflexive_on, relator_violation,
                        unrelativised)
from .reports import CheckReport, conjunction, equality_report, first_failure, gated
from .values import (CapExceeded, Carrier, FunTable, canon_key, enumerate_fun_tables,
                     fun_space_carrier, space_size)

DEFAULT_CAP = 4096


@dataclass(frozen=True)
class DepFunClosureInput:
    """Components of the closure.

    ``L2`` is indexed by ``alpha1 x alpha1``, ``R2`` by ``alpha2 x alpha2``,
    ``l2`` by ``(x', x)`` in ``alpha2 x alpha1`` and ``r2`` by ``(x, x')`` in
    ``alpha1 x alpha2``.  When ``seeds_L``/``seeds_R`` are given, the
    function spaces are the smallest sets containing the seeds and closed
    under the transports instead of the full spaces.
    """

    E1: EquivalenceRecord
    L2: DepRel
    R2: DepRel
    l2: DepFunTable
    r2: DepFunTable
    fun_space_cap: int = DEFAULT_CAP
    seeds_L: tuple[FunTable, ...] | None = None
    seeds_R: tuple[FunTable, ...] | None = None

    def __post_init__(self):
        a1, a2 = self.E1.alpha, self.E1.beta
        for dep, p1, p2 in ((self.L2, a1, a1), (self.R2, a2, a2)):
            _same_carrier(dep.param1, p1, "dependent relation parameter")
            _same_carrier(dep.param2, p2, "dependent relation parameter")
        _same_carrier(self.L2.base_left, self.L2.base_right, "L2 must be homogeneous")
        _same_carrier(self.R2.base_left, self.R2.base_right, "R2 must be homogeneous")
        _same_carrier(self.l2.param1, a2, "l2 first parameter")
        _same_carrier(self.l2.param2, a1, "l2 second parameter")
        _same_carrier(self.r2.param1, a1, "r2 first parameter")
        _same_carrier(self.r2.param2, a2, "r2 second parameter")
        _same_carrier(self.l2.dom, self.beta1, "l2 domain")
        _same_carrier(self.l2.cod, self.beta2, "l2 codomain")
        _same_carrier(self.r2.dom, self.beta2, "r2 domain")
        _same_carrier(self.r2.cod, self.beta1, "r2 codomain")

    @property
    def beta1(self) -> Carrier:
        return self.L2.base_left

    @property
    def beta2(self) -> Carrier:
        return self.R2.base_left

    @property
    def eta1(self) -> FunTable:
        return unit_counit(self.E1.l, self.E1.r)[0]

    @property
    def eps1(self) -> FunTable:
        return unit_counit(self.E1.l, self.E1.r)[1]

    def param_record(self, x, x2) -> EquivalenceRecord:
        """The component record at ``x <~L1 x2``."""
        E1 = self.E1
        return EquivalenceRecord(self.L2.at(x, E1.r(x2)), self.R2.at(E1.l(x), x2),
                                 self.l2.at(x2, x), self.r2.at(x, x2))


def nondep_input(E1: EquivalenceRecord, E2: EquivalenceRecord, **kw) -> DepFunClosureInput:
    """Input for the non-dependent relator ``L1 => L2`` (all parameters ignored)."""
    a1, a2 = E1.alpha, E1.beta
    return DepFunClosureInput(
        E1,
        DepRel.const(E2.L, a1, a1), DepRel.const(E2.R, a2, a2),
        DepFunTable.const(E2.l, a2, a1), DepFunTable.const(E2.r, a1, a2), **kw)


@dataclass(frozen=True)
class DepFunClosureOutput:
    E: EquivalenceRecord
    l_map: Callable[[FunTable], FunTable]
    r_map: Callable[[FunTable], FunTable]
    subspace: bool = False

    @property
    def space_L(self) -> Carrier:
        return self.E.alpha

    @property
    def space_R(self) -> Carrier:
        return self.E.beta


def transport_maps(inp: DepFunClosureInput):
    E1 = inp.E1

    def l_map(f: FunTable) -> FunTable:
        return dep_fun_map(E1.r, inp.l2, f)

    def r_map(g: FunTable) -> FunTable:
        return dep_fun_map(E1.l, inp.r2, g)

    return l_map, r_map


def close_spaces(seeds_L: Sequence[FunTable], seeds_R: Sequence[FunTable],
                 l_map, r_map, limit: int) -> tuple[list[FunTable], list[FunTable]]:
    """Smallest table sets containing the seeds and closed under both transports."""
    left = dict.fromkeys(seeds_L)
    right = dict.fromkeys(seeds_R)
    todo_l, todo_r = list(left), list(right)
    while todo_l or todo_r:
        new_r = [l_map(f) for f in todo_l]
        new_l = [r_map(g) for g in todo_r]
        todo_l = [f for f in new_l if f not in left]
        todo_r = [g for g in new_r if g not in right]
        left.update(dict.fromkeys(todo_l))
        right.update(dict.fromkeys(todo_r))
        if len(left) * len(left) > limit or len(right) * len(right) > limit:
            raise CapExceeded(f"closed subspace exceeds cap {limit}")
    key = canon_key
    return sorted(left, key=key), sorted(right, key=key)


def build_dep_fun_closure(inp: DepFunClosureInput) -> DepFunClosureOutput:
    """Build ``(L, R, l, r)`` over function-space carriers."""
    E1 = inp.E1
    cap = inp.fun_space_cap
    l_map, r_map = transport_maps(inp)
    subspace = inp.seeds_L is not None or inp.seeds_R is not None
    if subspace:
        tabs_L, tabs_R = close_spaces(
            [t.retarget(cod=inp.beta1) for t in inp.seeds_L or ()],
            [t.retarget(cod=inp.beta2) for t in inp.seeds_R or ()], l_map, r_map, cap)
    else:
        for dom, cod in ((E1.alpha, inp.beta1), (E1.beta, inp.beta2)):
            n = space_size(dom, cod)
            if n * n > cap:
                raise CapExceeded(f"relator over function space {dom.name}->{cod.name} "
                                  f"has {n}x{n} candidate pairs, cap is {cap}")
        tabs_L = enumerate_fun_tables(E1.alpha, inp.beta1, cap)
        tabs_R = enumerate_fun_tables(E1.beta, inp.beta2, cap)
    space_L = fun_space_carrier(E1.alpha, inp.beta1, tabs_L)
    space_R = fun_space_carrier(E1.beta, inp.beta2, tabs_R)
    L = materialize_relator("mono_relator", E1.L, inp.L2, space_L, space_L, cap)
    R = materialize_relator("mono_relator", E1.R, inp.R2, space_R, space_R, cap)
    l_tab = FunTable(space_L, space_R, [l_map(f) for f in space_L])
    r_tab = FunTable(space_R, space_L, [r_map(g) for g in space_R])
    return DepFunClosureOutput(EquivalenceRecord(L, R, l_tab, r_tab), l_map, r_map, subspace)


# --- monotonicity conditions ---------------------------------------------------

def _chains(rel: Rel, length: int, start: Sequence | None = None) -> Iterator[tuple]:
    """``x1 R x2 R ... R xn`` in lexicographic order."""
    def go(prefix):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for nxt in rel.succ(prefix[-1]):
            yield from go(prefix + [nxt])
    for x in (rel.left if start is None else start):
        yield from go([x])


def _finer_condition(name: str, cands, pair_of) -> CheckReport:
    """For each chain ``c``, ``pair_of(c) = (A, B)`` must satisfy ``A <= B``."""
    for c in cands:
        a, b = pair_of(c)
        if a is b or a.pairs <= b.pairs:
            continue
        missing = min(a.pairs - b.pairs, key=lambda p: (canon_key(p[0]), canon_key(p[1])))
        return CheckReport(name, False, tuple(c) + tuple(missing))
    return CheckReport(name, True)


def _cond_left_chain4(inp: DepFunClosureInput) -> CheckReport:
    L1, L2 = inp.E1.L, inp.L2
    return _finer_condition("M1_left_antimono", _chains(L1, 4),
                            lambda c: (L2.at(c[1], c[2]), L2.at(c[0], c[3])))


def _cond_right_chain4(inp: DepFunClosureInput) -> CheckReport:
    R1, R2 = inp.E1.R, inp.R2
    return _finer_condition("M2_right_antimono", _chains(R1, 4),
                            lambda c: (R2.at(c[1], c[2]), R2.at(c[0], c[3])))


def _mixed_chains(inp: DepFunClosureInput) -> Iterator[tuple]:
    """``x1 L1 x2 <~L1 x1' R1 x2'``."""
    E1 = inp.E1
    g1 = galois_relator(E1.L, E1.R, E1.r)
    for x1 in E1.alpha:
        for x2 in E1.L.succ(x1):
            for y1 in g1.succ(x2):
                for y2 in E1.R.succ(y1):
                    yield x1, x2, y1, y2


def _field(rel: Rel) -> list:
    return [y for y in rel.left if rel.in_field(y)]


def _cond_l2(inp: DepFunClosureInput) -> CheckReport:
    E1, L2, R2, l2 = inp.E1, inp.L2, inp.R2, inp.l2

    def cands():
        for x1, x2, y1, y2 in _mixed_chains(inp):
            for y in _field(L2.at(x1, E1.r(y2))):
                yield x1, x2, y1, y2, y

    return first_failure("M3_l2_mono", cands(), lambda x1, x2, y1, y2, y: R2.at(E1.l(x1), y2).holds(
        l2.at(y1, x1)(y), l2.at(y2, x2)(y)))


def _cond_r2(inp: DepFunClosureInput) -> CheckReport:
    E1, L2, R2, r2 = inp.E1, inp.L2, inp.R2, inp.r2

    def cands():
        for x1, x2, y1, y2 in _mixed_chains(inp):
            for y in _field(R2.at(E1.l(x1), y2)):
                yield x1, x2, y1, y2, y

    return first_failure("M4_r2_mono", cands(), lambda x1, x2, y1, y2, y: L2.at(x1, E1.r(y2)).holds(
        r2.at(x1, y1)(y), r2.at(x2, y2)(y)))


def _cond_left_eta(inp: DepFunClosureInput) -> CheckReport:
    """``x1 L1 x2 L1 x3 L1 x4 L1 eta1 x3  ==>  L2 x2 x4 <= L2 x1 x3``."""
    L1, L2, eta = inp.E1.L, inp.L2, inp.eta1
    cands = (c for c in _chains(L1, 4) if L1.holds(c[3], eta(c[2])))
    return _finer_condition("A7_left_antimono_eta", cands,
                            lambda c: (L2.at(c[1], c[3]), L2.at(c[0], c[2])))


def _cond_right_eps(inp: DepFunClosureInput) -> CheckReport:
    """``eps1 x2' R1 x1' R1 x2' R1 x3' R1 x4'  ==>  R2 x1' x3' <= R2 x2' x4'``."""
    R1, R2, eps = inp.E1.R, inp.R2, inp.eps1
    cands = (c for c in _chains(R1, 4) if R1.holds(eps(c[1]), c[0]))
    return _finer_condition("A8_right_mono_eps", cands,
                            lambda c: (R2.at(c[0], c[2]), R2.at(c[1], c[3])))


def check_mono_conditions(inp: DepFunClosureInput, variant: str = "main") -> CheckReport:
    if variant == "main":
        subs = [_cond_left_chain4(inp), _cond_right_chain4(inp), _cond_l2(inp), _cond_r2(inp)]
    elif variant == "appendix":
        subs = [_cond_left_eta(inp), _cond_right_eps(inp), _cond_l2(inp), _cond_r2(inp)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return conjunction(f"mono_conditions_{variant}", subs)


# --- theorems ------------------------------------------------------------------

def param_class_check(inp: DepFunClosureInput, cls: str) -> CheckReport:
    """``x <~L1 x'  ==>  (L2 x (r1 x')  cls  R2 (l1 x) x') (l2 x' x) (r2 x x')``."""
    E1 = inp.E1
    g1 = galois_relator(E1.L, E1.R, E1.r)
    for x, x2 in g1.sorted_pairs():
        rep = galois_class_check(cls, inp.param_record(x, x2))
        if not rep:
            return CheckReport(f"param_{cls}", False, (x, x2), (rep,), detail=rep.summary())
    return CheckReport(f"param_{cls}", True)


def _param_transitive(name: str, rel1: Rel, dep: DepRel) -> CheckReport:
    for a, b in rel1.sorted_pairs():
        rep = unrelativised("transitive_on", dep.at(a, b))
        if not rep:
            return CheckReport(name, False, (a, b) + rep.witness)
    return CheckReport(name, True)


def closure_hypotheses(inp: DepFunClosureInput, star: str) -> list[CheckReport]:
    E1 = inp.E1
    if star in ("pre_equiv", "per_equiv"):
        return [galois_class_check(star, E1), param_class_check(inp, star),
                check_mono_conditions(inp, "main")]
    if star == "connection":
        return [galois_class_check("connection", E1),
                _rename(reflexive_on(Pred.in_field(E1.L), E1.L), "L1_reflexive_on_field"),
                _rename(reflexive_on(Pred.in_field(E1.R), E1.R), "R1_reflexive_on_field"),
                param_class_check(inp, "connection"),
                _param_transitive("L2_transitive", E1.L, inp.L2),
                _param_transitive("R2_transitive", E1.R, inp.R2),
                check_mono_conditions(inp, "appendix")]
    raise ValueError(f"unsupported closure class {star!r}")


def _rename(rep: CheckReport, name: str) -> CheckReport:
    return CheckReport(name, rep.verdict, rep.witness, rep.sub_reports, rep.applicable,
                       rep.detail, rep.alarm)


def verify_closure_theorem(inp: DepFunClosureInput, star: str,
                           out: DepFunClosureOutput | None = None) -> CheckReport:
    """Hypothesis-gated check of the closure theorem for ``star``.

    The connection case uses the unit/counit-bounded ("appendix") conditions,
    the equivalence cases the four-chain ("main") ones.  ``alarm`` on the result marks met hypotheses with a
    refuted conclusion.
    """
    hyps = closure_hypotheses(inp, star)

    def concl():
        built = out if out is not None else build_dep_fun_closure(inp)
        return galois_class_check(star, built.E)
    return gated(f"dep_fun_closure_{star}", hyps, concl)


def similarity_relator(inp: DepFunClosureInput) -> tuple[Rel, DepRel]:
    """``(<~L1, x x' |-> Galois (L2 x (r1 x')) (R2 (l1 x) x') (r2 x x'))``."""
    E1 = inp.E1
    g1 = galois_relator(E1.L, E1.R, E1.r)
    cases = {}
    for x, x2 in g1.pairs:
        cases[(x, x2)] = galois_relator(inp.L2.at(x, E1.r(x2)), inp.R2.at(E1.l(x), x2),
                                        inp.r2.at(x, x2))
    dep = DepRel(E1.alpha, E1.beta, inp.beta1, inp.beta2, cases)
    return g1, dep


def similarity_conclusion(inp: DepFunClosureInput, out: DepFunClosureOutput) -> CheckReport:
    """For ``f`` in ``in_dom L`` and ``g`` in ``in_codom R``: ``f <~L g`` iff the similarity relator holds."""
    E = out.E
    gal = galois_relator(E.L, E.R, E.r)
    g1, dep = similarity_relator(inp)
    fs = [f for f in E.alpha if E.L.in_dom(f)]
    gs = [g for g in E.beta if E.R.in_codom(g)]

    def agree(f, g):
        return gal.holds(f, g) == (relator_violation(g1, dep, f, g) is None)
    return first_failure("similarity_iff", ((f, g) for f in fs for g in gs), agree)


def similarity_hypotheses(inp: DepFunClosureInput, variant: str) -> list[CheckReport]:
    E1 = inp.E1
    if variant == "main":
        return [galois_class_check("pre_equiv", E1), param_class_check(inp, "pre_equiv"),
                _cond_left_chain4(inp), _cond_r2(inp)]
    if variant == "appendix":
        g1 = galois_relator(E1.L, E1.R, E1.r)
        L1, L2, eta = E1.L, inp.L2, inp.eta1

        def r2_mono():
            for x, x2 in g1.sorted_pairs():
                rec = inp.param_record(x, x2)
                if not mono_check("mono", rec.R, rec.L, rec.r):
                    return CheckReport("param_r2_mono", False, (x, x2))
            return CheckReport("param_r2_mono", True)

        return [galois_class_check("connection", E1),
                _rename(reflexive_on(Pred.in_field(L1), L1), "L1_reflexive_on_field"),
                r2_mono(),
                _param_transitive("L2_transitive", L1, L2),
                _finer_condition("L2_mono_second", _chains(L1, 3),
                                 lambda c: (L2.at(c[0], c[1]), L2.at(c[0], c[2]))),
                _finer_condition("L2_antimono_second_eta",
                                 (c for c in _chains(L1, 3) if L1.holds(c[2], eta(c[1]))),
                                 lambda c: (L2.at(c[0], c[2]), L2.at(c[0], c[1]))),
                _cond_r2(inp)]
    raise ValueError(f"unknown variant {variant!r}")


def similarity_check(inp: DepFunClosureInput, out: DepFunClosureOutput | None = None,
                     variant: str = "main") -> CheckReport:
    """Hypothesis-gated similarity theorem for the dependent function relator.

    The side conditions on individual ``f``/``g`` (in_dom, in_codom) are the
    range of the biconditional rather than global hypotheses.
    """
    built = out if out is not None else build_dep_fun_closure(inp)
    return gated(f"dep_fun_similarity_{variant}", similarity_hypotheses(inp, variant),
                 lambda: similarity_conclusion(inp, built))


def mono_collapse_check(L1: Rel, L2: DepRel, space: Carrier | None = None,
                        cap: int = DEFAULT_CAP) -> CheckReport:
    """Monotone and plain dependent relators coincide under PER-style hypotheses."""
    _same_carrier(L1.left, L1.right, "mono_collapse L1")
    if space is None:
        space = fun_space_carrier(L1.left, L2.base_left, cap=cap)
    hyps = [
        _rename(reflexive_on(Pred.in_field(L1), L1), "L1_reflexive_on_field"),
        _finer_condition("L2_second_diag", L1.sorted_pairs(),
                         lambda c: (L2.at(c[1], c[1]), L2.at(c[0], c[1]))),
        _finer_condition("L2_first_diag", L1.sorted_pairs(),
                         lambda c: (L2.at(c[0], c[0]), L2.at(c[0], c[1]))),
        _param_per(L1, L2),
    ]
    return gated("mono_relator_collapse", hyps, lambda: equality_report(
        "mono_eq_plain", materialize_relator("mono_relator", L1, L2, space, space, cap),
        materialize_relator("plain", L1, L2, space, space, cap)))


def _param_per(L1: Rel, L2: DepRel) -> CheckReport:
    for a, b in L1.sorted_pairs():
        rep = unrelativised("per_on", L2.at(a, b))
        if not rep:
            return CheckReport("L2_per", False, (a, b) + rep.witness)
    return CheckReport("L2_per", True)


def relator_differs(L1: Rel, L2: DepRel, space: Carrier, cap: int = DEFAULT_CAP) -> CheckReport:
    """Equality of the plain and monotone relators, without hypotheses."""
    return equality_report("mono_eq_plain",
                           materialize_relator("mono_relator", L1, L2, space, space, cap),
                           materialize_relator("plain", L1, L2, space, space, cap))
