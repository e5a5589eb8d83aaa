"""Natural functors over bounded finite carriers and their closure theorems."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .galois import EquivalenceRecord, galois_class_check, galois_relator
from .relations import Rel
from .reports import CheckReport, conjunction, equality_report, gated
from .values import Carrier, Cons, FunTable, List, Tuple, Value, config


@dataclass(frozen=True)
class FunctorDef:
    """A functor given by its action on carriers, values and related pairs.

    ``map_value(fs, v)`` applies component functions inside ``v``;
    ``related(rel_succ, x)`` yields every ``y`` related to ``x`` given, for
    each component, a successor function of the component relation.
    """

    name: str
    arity: int
    elements: Callable[[Sequence[Carrier]], list]
    map_value: Callable[[Sequence[FunTable], Value], Value]
    related: Callable[[Sequence[Callable], Value], list]

    def build_carrier(self, carriers: Sequence[Carrier]) -> Carrier:
        self._arity(carriers)
        for c in carriers:
            for x in c:
                if not isinstance(x, Value):
                    raise ValueError(f"functor {self.name} needs first-order carriers, "
                                     f"{c.name} holds function tables")
        args = ",".join(c.name for c in carriers)
        return Carrier(f"{self.name}({args})", self.elements(carriers))

    def map_fn(self, fs: Sequence[FunTable]) -> FunTable:
        self._arity(fs)
        dom = self.build_carrier([f.dom for f in fs])
        cod = self.build_carrier([f.cod for f in fs])
        return FunTable(dom, cod, [self.map_value(fs, v) for v in dom])

    def rel_fn(self, rels: Sequence[Rel]) -> Rel:
        self._arity(rels)
        left = self.build_carrier([r.left for r in rels])
        right = self.build_carrier([r.right for r in rels])
        succs = [r.succ for r in rels]
        pairs = [(x, y) for x in left for y in self.related(succs, x)]
        return Rel(left, right, pairs)

    def _arity(self, xs: Sequence) -> None:
        if len(xs) != self.arity:
            raise ValueError(f"functor {self.name} takes {self.arity} arguments, got {len(xs)}")


def _identity() -> FunctorDef:
    return FunctorDef("identity", 1, lambda cs: list(cs[0].elements),
                      lambda fs, v: fs[0](v), lambda ss, x: list(ss[0](x)))


def _const(c: Carrier) -> FunctorDef:
    return FunctorDef(f"const_{c.name}", 0, lambda cs: list(c.elements),
                      lambda fs, v: v, lambda ss, x: [x])


def _product() -> FunctorDef:
    def elements(cs):
        return [Tuple(p) for p in itertools.product(cs[0].elements, cs[1].elements)]

    def mapv(fs, v):
        return Tuple((fs[0](v.items[0]), fs[1](v.items[1])))

    def related(ss, x):
        return [Tuple(p) for p in itertools.product(ss[0](x.items[0]), ss[1](x.items[1]))]
    return FunctorDef("product", 2, elements, mapv, related)


def _sum() -> FunctorDef:
    tags = ("Inl", "Inr")

    def elements(cs):
        return [Cons(t, (a,)) for t, c in zip(tags, cs) for a in c]

    def mapv(fs, v):
        return Cons(v.name, (fs[tags.index(v.name)](v.args[0]),))

    def related(ss, x):
        return [Cons(x.name, (b,)) for b in ss[tags.index(x.name)](x.args[0])]
    return FunctorDef("sum", 2, elements, mapv, related)


def _option() -> FunctorDef:
    none = Cons("None")

    def elements(cs):
        return [none] + [Cons("Some", (a,)) for a in cs[0]]

    def mapv(fs, v):
        return v if v == none else Cons("Some", (fs[0](v.args[0]),))

    def related(ss, x):
        return [none] if x == none else [Cons("Some", (b,)) for b in ss[0](x.args[0])]
    return FunctorDef("option", 1, elements, mapv, related)


def _list(k: int) -> FunctorDef:
    if not 0 <= k <= config.list_bound:
        raise ValueError(f"list({k}) exceeds the global list bound {config.list_bound}")

    def elements(cs):
        return [List(p) for n in range(k + 1) for p in itertools.product(cs[0].elements, repeat=n)]

    def mapv(fs, v):
        return List(fs[0](a) for a in v.items)

    def related(ss, x):
        return [List(p) for p in itertools.product(*(ss[0](a) for a in x.items))]
    return FunctorDef(f"list{k}", 1, elements, mapv, related)


def builtin_functor(name: str, carrier: Carrier | None = None) -> FunctorDef:
    """``identity``, ``const`` (needs ``carrier``), ``product``, ``sum``, ``option``, ``listK``."""
    if name == "identity":
        return _identity()
    if name == "const":
        if carrier is None:
            raise ValueError("const functor needs a carrier")
        return _const(carrier)
    if name == "product":
        return _product()
    if name == "sum":
        return _sum()
    if name == "option":
        return _option()
    if name.startswith("list") and name[4:].isdigit():
        return _list(int(name[4:]))
    raise ValueError(f"unknown functor {name!r}")


def functor_map(F: FunctorDef, fs: Sequence[FunTable], v: Value) -> Value:
    F.build_carrier([f.dom for f in fs]).check(v, f"{F.name} argument")
    return F.map_value(fs, v)


def functor_rel(F: FunctorDef, rels: Sequence[Rel], x: Value, y: Value) -> bool:
    F.build_carrier([r.left for r in rels]).check(x, f"{F.name} left argument")
    F.build_carrier([r.right for r in rels]).check(y, f"{F.name} right argument")
    return y in F.related([r.succ for r in rels], x)


def build_functor_closure(F: FunctorDef, components: Sequence[EquivalenceRecord]) -> EquivalenceRecord:
    if F.name == "identity":
        return components[0]
    return EquivalenceRecord(F.rel_fn([E.L for E in components]),
                             F.rel_fn([E.R for E in components]),
                             F.map_fn([E.l for E in components]),
                             F.map_fn([E.r for E in components]))


STARS = ("connection", "galois_equiv", "pre_equiv", "per_equiv")


def verify_functor_theorem(F: FunctorDef, components: Sequence[EquivalenceRecord],
                           star: str) -> CheckReport:
    if star not in STARS:
        raise ValueError(f"unsupported class {star!r}")
    hyps = [_rename(galois_class_check(star, E), f"component{i}_{star}")
            for i, E in enumerate(components)]
    return gated(f"functor_{F.name}_{star}", hyps,
                 lambda: galois_class_check(star, build_functor_closure(F, components)))


def functor_similarity_check(F: FunctorDef, components: Sequence[EquivalenceRecord]) -> CheckReport:
    E = build_functor_closure(F, components)
    lhs = galois_relator(E.L, E.R, E.r)
    rhs = F.rel_fn([galois_relator(C.L, C.R, C.r) for C in components])
    return equality_report(f"functor_{F.name}_similarity", lhs, rhs)


def functor_laws(F: FunctorDef, carriers: Sequence[Carrier]) -> CheckReport:
    """``map id = id`` and the relator of equalities is equality."""
    built = F.build_carrier(carriers)
    ident = F.map_fn([FunTable.identity(c) for c in carriers])
    return conjunction(f"functor_{F.name}_laws", [
        equality_report("map_identity", Rel.graph(ident), Rel.eq(built)),
        equality_report("rel_equality", F.rel_fn([Rel.eq(c) for c in carriers]), Rel.eq(built)),
    ])


def _rename(rep: CheckReport, name: str) -> CheckReport:
    return CheckReport(name, rep.verdict, rep.witness, rep.sub_reports, rep.applicable,
                       rep.detail, rep.alarm)
