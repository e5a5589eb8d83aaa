"""Small-scope counterexample search and randomized consistency sweeps for the closure theorems."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from .compose import (build_composition, commutation_check, verify_comp_coincide,
                      verify_comp_theorem)
from .functors import builtin_functor, verify_functor_theorem
from .funrel import (DepFunClosureInput, build_dep_fun_closure, closure_hypotheses,
                     verify_closure_theorem)
from .galois import EquivalenceRecord, galois_class_check
from .relations import DepFunTable, DepRel, Pred, Rel, order_property, unrelativised
from .reports import CheckReport, conjunction
from .values import CapExceeded, Carrier, FunTable, format_value

SEARCH_LIMIT = 2_000_000


# --- finite pools --------------------------------------------------------------------

@lru_cache(maxsize=None)
def carrier(name: str, n: int) -> Carrier:
    return Carrier.of(f"{name}{n}", range(n))


def _rel_key(r: Rel) -> tuple:
    return (len(r), [(x.value, y.value) for x, y in r.sorted_pairs()])


@lru_cache(maxsize=None)
def relation_pool(name: str, n: int, kind: str = "all") -> tuple[Rel, ...]:
    """Relations on ``name{n}`` in canonical order: by size, then pair list.

    ``kind`` is ``all``, ``per`` (symmetric and transitive) or ``preorder``
    (a preorder on its field).
    """
    c = carrier(name, n)
    cells = [(x, y) for x in c for y in c]
    rels = [Rel(c, c, [p for k, p in enumerate(cells) if mask >> k & 1])
            for mask in range(1 << len(cells))]
    if kind == "per":
        rels = [r for r in rels if unrelativised("per_on", r)]
    elif kind == "preorder":
        rels = [r for r in rels if order_property("preorder_on", Pred.in_field(r), r)]
    elif kind != "all":
        raise ValueError(f"unknown relation pool {kind!r}")
    return tuple(sorted(rels, key=_rel_key))


@lru_cache(maxsize=None)
def function_pool(dom: Carrier, cod: Carrier) -> tuple[FunTable, ...]:
    return tuple(FunTable(dom, cod, outs)
                 for outs in itertools.product(cod.elements, repeat=len(dom)))


_POOL_KIND = {"per_equiv": "per", "pre_equiv": "preorder"}
_MONO = ("connection", "galois_equiv", "order_equiv", "pre_equiv", "per_equiv")


def _monotone(A: Rel, B: Rel, f: FunTable) -> bool:
    return all(B.holds(f(x), f(y)) for x, y in A)


@lru_cache(maxsize=None)
def record_pool(a_name: str, a: int, b_name: str, b: int, cls: str | None) -> tuple[EquivalenceRecord, ...]:
    """All records over the two carriers (passing ``cls`` when given), canonically ordered."""
    kind = _POOL_KIND.get(cls, "all")
    Ls, Rs = relation_pool(a_name, a, kind), relation_pool(b_name, b, kind)
    A, B = carrier(a_name, a), carrier(b_name, b)
    ls, rs = function_pool(A, B), function_pool(B, A)
    raw = len(Ls) * len(Rs) * len(ls) * len(rs)
    if raw > SEARCH_LIMIT:
        raise CapExceeded(f"record family over sizes {a},{b} has {raw} members, "
                          f"limit is {SEARCH_LIMIT}")
    out = []
    for L in Ls:
        for R in Rs:
            good_l = [l for l in ls if cls not in _MONO or _monotone(L, R, l)]
            good_r = [r for r in rs if cls not in _MONO or _monotone(R, L, r)]
            for l in good_l:
                for r in good_r:
                    E = EquivalenceRecord(L, R, l, r)
                    if cls is None or galois_class_check(cls, E):
                        out.append(E)
    return tuple(out)


def describe_record(E: EquivalenceRecord, tag: str = "") -> str:
    def rel(r):
        return "{" + ",".join(f"({format_value(x)},{format_value(y)})" for x, y in r.sorted_pairs()) + "}"

    def fn(f):
        return "[" + ",".join(format_value(y) for y in f.outputs) + "]"
    return f"L{tag}={rel(E.L)} R{tag}={rel(E.R)} l{tag}={fn(E.l)} r{tag}={fn(E.r)}"


def _sizes(count: int, bound: int) -> list[tuple[int, ...]]:
    return sorted(itertools.product(range(1, bound + 1), repeat=count), key=lambda s: (sum(s), s))


# --- claims --------------------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    describe: tuple[str, ...]
    data: tuple
    cache: dict = field(default_factory=dict, compare=False, repr=False)


@dataclass(frozen=True)
class Claim:
    name: str
    hypotheses: tuple[str, ...]
    family: Callable[[int, frozenset], Iterator[Instance]]
    hypothesis: Callable[[str, Instance], bool]
    conclusion: Callable[[Instance], CheckReport]


def _class_hyp(cls: str, E: EquivalenceRecord) -> bool:
    return bool(galois_class_check(cls, E))


def _comp_claim(name: str, cls: str) -> Claim:
    first, second = f"first_{cls}", f"second_{cls}"

    def family(bound, dropped):
        for a, b, c in _sizes(3, bound):
            pool1 = record_pool("A", a, "B", b, None if first in dropped else cls)
            pool2 = record_pool("B", b, "C", c, None if second in dropped else cls)
            for E1 in pool1:
                for E2 in pool2:
                    yield Instance((describe_record(E1, "1"), describe_record(E2, "2")), (E1, E2))

    def hyp(h, inst):
        E1, E2 = inst.data
        if h == first:
            return _class_hyp(cls, E1)
        if h == second:
            return _class_hyp(cls, E2)
        return bool(commutation_check(E1.R, E2.L))

    def concl(inst):
        return galois_class_check(cls, build_composition(*inst.data))
    return Claim(name, (first, second, "commutation"), family, hyp, concl)


def _comp_better_claim() -> Claim:
    hyps = ("first_galois_equiv", "second_galois_equiv", "R1_preorder_on_field",
            "L2_preorder_on_field", "commutation")

    def family(bound, dropped):
        for a, b, c in _sizes(3, bound):
            pool1 = record_pool("A", a, "B", b, None if hyps[0] in dropped else "galois_equiv")
            pool2 = record_pool("B", b, "C", c, None if hyps[1] in dropped else "galois_equiv")
            for E1 in pool1:
                for E2 in pool2:
                    yield Instance((describe_record(E1, "1"), describe_record(E2, "2")), (E1, E2))

    def hyp(h, inst):
        E1, E2 = inst.data
        if h == hyps[0]:
            return _class_hyp("galois_equiv", E1)
        if h == hyps[1]:
            return _class_hyp("galois_equiv", E2)
        if h == hyps[2]:
            return bool(order_property("preorder_on", Pred.in_field(E1.R), E1.R))
        if h == hyps[3]:
            return bool(order_property("preorder_on", Pred.in_field(E2.L), E2.L))
        return bool(commutation_check(E1.R, E2.L))

    def concl(inst):
        return galois_class_check("connection", build_composition(*inst.data))
    return Claim("comp_galequiv_better", hyps, family, hyp, concl)


def _coincide_claim() -> Claim:
    cls = "per_equiv"
    hyps = (f"first_{cls}", f"second_over_R1_{cls}", "R1_eq_L2")

    def family(bound, dropped):
        for a, b, c in _sizes(3, bound):
            pool1 = record_pool("A", a, "B", b, None if hyps[0] in dropped else cls)
            pool2 = record_pool("B", b, "C", c, None if hyps[1] in dropped else cls)
            for E1 in pool1:
                for E2 in pool2:
                    if hyps[2] not in dropped and E2.L != E1.R:
                        continue
                    yield Instance((describe_record(E1, "1"), describe_record(E2, "2")), (E1, E2))

    def hyp(h, inst):
        E1, E2 = inst.data
        if h == hyps[0]:
            return _class_hyp(cls, E1)
        if h == hyps[1]:
            return _class_hyp(cls, EquivalenceRecord(E1.R, E2.R, E2.l, E2.r))
        return E1.R == E2.L

    def concl(inst):
        E1, E2 = inst.data
        return galois_class_check(cls, EquivalenceRecord(E1.L, E2.R, E1.l.then(E2.l), E2.r.then(E1.r)))
    return Claim("comp_galc_coincide", hyps, family, hyp, concl)


def _dep_claim(name: str, star: str) -> Claim:
    if star == "connection":
        hyps = ("E1_connection", "L1_reflexive_on_field", "R1_reflexive_on_field", "param_connection",
                "L2_transitive", "R2_transitive", "A7_left_antimono_eta", "A8_right_mono_eps",
                "M3_l2_mono", "M4_r2_mono")
        base_cls = "connection"
    else:
        hyps = (f"E1_{star}", f"param_{star}", "M1_left_antimono", "M2_right_antimono",
                "M3_l2_mono", "M4_r2_mono")
        base_cls = star
    kind = _POOL_KIND.get(star, "all")

    def family(bound, dropped):
        if bound > 2:
            raise CapExceeded("dependent-function search is limited to carriers of size 2")
        for a1, a2, b1, b2 in _sizes(4, bound):
            pool1 = record_pool("A", a1, "B", a2, None if hyps[0] in dropped else base_cls)
            L2s = relation_pool("C", b1, kind)
            R2s = relation_pool("D", b2, kind)
            raw = len(pool1) * len(L2s) ** (a1 * a1) * len(R2s) ** (a2 * a2) * b2 ** b1 * b1 ** b2
            if raw > SEARCH_LIMIT:
                raise CapExceeded(f"dependent-function family over sizes {(a1, a2, b1, b2)} "
                                  f"has {raw} members, limit is {SEARCH_LIMIT}")
            C, D = carrier("C", b1), carrier("D", b2)
            for E1 in pool1:
                A1, A2 = E1.alpha, E1.beta
                keys1 = [(x, y) for x in A1 for y in A1]
                keys2 = [(x, y) for x in A2 for y in A2]
                for cases1 in itertools.product(L2s, repeat=len(keys1)):
                    L2 = DepRel(A1, A1, C, C, dict(zip(keys1, cases1)))
                    for cases2 in itertools.product(R2s, repeat=len(keys2)):
                        R2 = DepRel(A2, A2, D, D, dict(zip(keys2, cases2)))
                        for l2 in function_pool(C, D):
                            for r2 in function_pool(D, C):
                                inp = DepFunClosureInput(E1, L2, R2, DepFunTable.const(l2, A2, A1),
                                                         DepFunTable.const(r2, A1, A2))
                                desc = (describe_record(E1, "1"),
                                        "L2=" + _dep_desc(L2, keys1), "R2=" + _dep_desc(R2, keys2),
                                        "l2=" + format_value(l2), "r2=" + format_value(r2))
                                yield Instance(desc, (inp,))

    def hyp(h, inst):
        if "hyps" not in inst.cache:
            inst.cache["hyps"] = conjunction("hypotheses", closure_hypotheses(inst.data[0], star))
        return bool(_find_hyp(inst.cache["hyps"], h))

    def concl(inst):
        (inp,) = inst.data
        return galois_class_check(star, build_dep_fun_closure(inp).E)
    return Claim(name, hyps, family, hyp, concl)


def _dep_desc(dep: DepRel, keys) -> str:
    parts = []
    for k in keys:
        r = dep.at(*k)
        body = ",".join(f"({format_value(x)},{format_value(y)})" for x, y in r.sorted_pairs())
        parts.append(f"{format_value(k[0])}{format_value(k[1])}:{{{body}}}")
    return "[" + ";".join(parts) + "]"


_HYP_ALIASES = {"E1_connection": "connection", "E1_per_equiv": "per_equiv",
                "E1_pre_equiv": "pre_equiv"}


def _find_hyp(hyps: CheckReport, name: str) -> CheckReport:
    target = _HYP_ALIASES.get(name, name)
    for sub in hyps.sub_reports:
        hit = sub.find(target)
        if hit is not None:
            return hit
    raise ValueError(f"hypothesis {name!r} not found")


def _subtraction_claim() -> Claim:
    """Subtraction stays inside Zpos for related inputs; the guard is ``i1 >= i2``."""
    from .fixtures import clamp, int5, zpos
    from .values import Int
    Z, P = int5(), zpos()

    def family(bound, dropped):
        xs = [x for x in Z if abs(x.value) <= bound]
        for i1 in xs:
            for i2 in xs:
                yield Instance((format_value(i1), format_value(i2)), (i1, i2))

    def hyp(h, inst):
        i1, i2 = inst.data
        if h == "domain":
            return P.in_field(i1) and P.in_field(i2)
        return i1.value >= i2.value

    def concl(inst):
        i1, i2 = inst.data
        d = Int(clamp(i1.value - i2.value))
        return CheckReport("difference_in_Zpos", P.in_field(d), None if P.in_field(d) else (d,))
    return Claim("subtraction_guard", ("domain", "guard"), family, hyp, concl)


CLAIMS: dict[str, Callable[[], Claim]] = {
    "comp_galequiv": lambda: _comp_claim("comp_galequiv", "per_equiv"),
    "comp_galequiv_pre": lambda: _comp_claim("comp_galequiv_pre", "pre_equiv"),
    "comp_galequiv_better": _comp_better_claim,
    "comp_galc_coincide": _coincide_claim,
    "depfunrel_galequiv": lambda: _dep_claim("depfunrel_galequiv", "per_equiv"),
    "depfunrel_galequiv_pre": lambda: _dep_claim("depfunrel_galequiv_pre", "pre_equiv"),
    "depfunrel_galc": lambda: _dep_claim("depfunrel_galc", "connection"),
    "subtraction_guard": _subtraction_claim,
}


def claim(name: str) -> Claim:
    if name not in CLAIMS:
        raise ValueError(f"unknown theorem id {name!r}; known: {', '.join(sorted(CLAIMS))}")
    return CLAIMS[name]()


def counterexample_search(claim_id: str, dropped: str | None, bound: int) -> CheckReport:
    """Smallest instance (by carrier sizes, then canonical order) where the kept
    hypotheses hold and the conclusion fails.

    ``dropped`` names a hypothesis of the claim, or is None to drop nothing.
    A passing report means the family within ``bound`` was exhausted.
    """
    c = claim(claim_id)
    if dropped is not None and dropped not in c.hypotheses:
        raise ValueError(f"unknown hypothesis {dropped!r} for {claim_id}; "
                         f"known: {', '.join(c.hypotheses)}")
    if bound < 1:
        raise ValueError("bound must be positive")
    drop = frozenset([dropped] if dropped else [])
    kept = [h for h in c.hypotheses if h not in drop]
    prop = f"{claim_id}_without_{dropped}" if dropped else claim_id
    n = 0
    for inst in c.family(bound, drop):
        n += 1
        if all(c.hypothesis(h, inst) for h in kept):
            rep = c.conclusion(inst)
            if not rep:
                return CheckReport(prop, False, inst.describe, (rep,),
                                   detail=f"counterexample after {n} instances: {rep.summary()}")
    return CheckReport(prop, True, detail=f"exhausted {n} instances within bound {bound}")


# --- randomized sweeps -----------------------------------------------------------------

@dataclass
class SweepResult:
    theorem: str
    total: int = 0
    applicable: int = 0
    alarms: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.alarms

    def add(self, rep: CheckReport, describe: Callable[[], str]) -> None:
        self.total += 1
        self.applicable += rep.applicable
        if rep.alarm or (rep.applicable and not rep.verdict):
            self.alarms.append((describe(), rep.summary()))


def random_record(rng: random.Random, a_name: str, a: int, b_name: str, b: int,
                  cls: str | None, p_arbitrary: float = 0.25) -> EquivalenceRecord:
    """A record over small carriers, drawn from the ``cls`` pool with an occasional arbitrary one."""
    if cls is None or rng.random() < p_arbitrary:
        A, B = carrier(a_name, a), carrier(b_name, b)
        return EquivalenceRecord(rng.choice(relation_pool(a_name, a)), rng.choice(relation_pool(b_name, b)),
                                 rng.choice(function_pool(A, B)), rng.choice(function_pool(B, A)))
    pool = record_pool(a_name, a, b_name, b, cls)
    return rng.choice(pool)


def random_dep_input(rng: random.Random, star: str) -> DepFunClosureInput:
    """E1 and a base E2 from the ``star`` pool; some cases of L2/R2 perturbed."""
    cls = "connection" if star == "connection" else star
    a1, a2 = rng.randint(1, 2), rng.randint(1, 2)
    b1, b2 = rng.randint(1, 2), rng.randint(1, 2)
    E1 = random_record(rng, "A", a1, "B", a2, cls)
    E2 = random_record(rng, "C", b1, "D", b2, cls)
    kind = _POOL_KIND.get(star, "all")

    def dep(p: Carrier, base: Rel, name: str, n: int) -> DepRel:
        cases = {}
        for x in p:
            for y in p:
                cases[(x, y)] = base
                if rng.random() < 0.2:
                    cases[(x, y)] = rng.choice(relation_pool(name, n, kind))
        return DepRel(p, p, base.left, base.right, cases)

    L2 = dep(E1.alpha, E2.L, "C", b1)
    R2 = dep(E1.beta, E2.R, "D", b2)
    l2 = DepFunTable.const(E2.l, E1.beta, E1.alpha)
    r2 = DepFunTable.const(E2.r, E1.alpha, E1.beta)
    if rng.random() < 0.2:
        x2, x = rng.choice(E1.beta.elements), rng.choice(E1.alpha.elements)
        alt = rng.choice(function_pool(E2.alpha, E2.beta))
        l2 = DepFunTable(E1.beta, E1.alpha, E2.l, {(x2, x): alt})
    return DepFunClosureInput(E1, L2, R2, l2, r2)


FUNCTOR_NAMES = ("identity", "const", "product", "sum", "option", "list2")


def random_functor_case(rng: random.Random, name: str, star: str):
    F = builtin_functor(name, carrier("K", 2) if name == "const" else None)
    comps = [random_record(rng, f"A{k}_", rng.randint(1, 2), f"B{k}_", rng.randint(1, 2), star)
             for k in range(F.arity)]
    return F, comps


def random_comp_case(rng: random.Random, theorem: str):
    cls = {"comp_galequiv": "per_equiv", "comp_galequiv_pre": "pre_equiv",
           "comp_galequiv_better": "galois_equiv", "comp_galc_coincide": "per_equiv"}[theorem]
    a, b, c = (rng.randint(1, 2) for _ in range(3))
    E1 = random_record(rng, "A", a, "B", b, cls)
    E2 = random_record(rng, "B", b, "C", c, cls)
    if theorem == "comp_galc_coincide" and rng.random() < 0.7:
        matching = [E for E in record_pool("B", b, "C", c, cls) if E.L == E1.R]
        if matching:
            E2 = rng.choice(matching)
    return E1, E2


SWEEP_THEOREMS = (("depfunrel_galequiv_per", "depfunrel_galequiv_pre", "depfunrel_galc")
                  + tuple(f"functor_{name}_{star}" for name in FUNCTOR_NAMES
                          for star in ("connection", "galois_equiv", "pre_equiv", "per_equiv"))
                  + ("comp_galequiv", "comp_galequiv_pre", "comp_galequiv_better",
                     "comp_galc_coincide"))


def consistency_sweep(theorem: str, n: int = 200, seed: int = 0) -> SweepResult:
    """Run ``n`` random instances of a closure theorem and collect alarms.

    Theorem ids: ``depfunrel_galequiv_per``, ``depfunrel_galequiv_pre``,
    ``depfunrel_galc``, ``functor_<name>_<star>``, ``comp_galequiv``,
    ``comp_galequiv_pre``, ``comp_galequiv_better``, ``comp_galc_coincide``.
    """
    rng = random.Random(f"{theorem}:{seed}")
    res = SweepResult(theorem)
    for _ in range(n):
        if theorem.startswith("depfunrel_"):
            star = {"depfunrel_galequiv_per": "per_equiv", "depfunrel_galequiv_pre": "pre_equiv",
                    "depfunrel_galc": "connection"}[theorem]
            inp = random_dep_input(rng, star)
            res.add(verify_closure_theorem(inp, star), lambda: describe_record(inp.E1, "1"))
        elif theorem.startswith("functor_"):
            _, name, star = theorem.split("_", 2)
            F, comps = random_functor_case(rng, name, star)
            res.add(verify_functor_theorem(F, comps, star),
                    lambda: " ".join(describe_record(E, str(k)) for k, E in enumerate(comps)))
        elif theorem in ("comp_galequiv", "comp_galequiv_pre", "comp_galequiv_better"):
            E1, E2 = random_comp_case(rng, theorem)
            star = {"comp_galequiv": "per_equiv", "comp_galequiv_pre": "pre_equiv",
                    "comp_galequiv_better": "connection_conclusion"}[theorem]
            res.add(verify_comp_theorem(E1, E2, star),
                    lambda: describe_record(E1, "1") + " " + describe_record(E2, "2"))
        elif theorem == "comp_galc_coincide":
            E1, E2 = random_comp_case(rng, theorem)
            res.add(verify_comp_coincide(E1, E2, "per_equiv"),
                    lambda: describe_record(E1, "1") + " " + describe_record(E2, "2"))
        else:
            raise ValueError(f"unknown sweep theorem {theorem!r}")
    return res
