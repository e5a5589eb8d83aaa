"""Extensional binary relations and the order-theoretic vocabulary over them.

Relations are finite pair sets between two carriers, so every quantifier in
the definitions below is a finite enumeration.  Checks return
:class:`~partial_galois.reports.CheckReport` objects whose failure witnesses
are canonically minimal.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .reports import CheckReport, conjunction, first_failure
from .values import (CapExceeded, Carrier, Element, FunTable, canon_key,
                     format_value)


class Rel:
    """A relation ``left x right`` stored as a frozen set of pairs."""

    __slots__ = ("left", "right", "pairs", "_succ", "_pred", "_hash")

    def __init__(self, left: Carrier, right: Carrier,
                 pairs: Iterable[tuple[Element, Element]], *, check: bool = True):
        pairs = frozenset(pairs)
        if check:
            for x, y in pairs:
                left.check(x, "left component")
                right.check(y, "right component")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "_succ", None)
        object.__setattr__(self, "_pred", None)
        object.__setattr__(self, "_hash", hash((left, right, pairs)))

    def __setattr__(self, name, value):
        raise AttributeError("relations are immutable")

    # construction helpers

    @classmethod
    def eq(cls, carrier: Carrier) -> Rel:
        return cls(carrier, carrier, ((x, x) for x in carrier), check=False)

    @classmethod
    def full(cls, left: Carrier, right: Carrier) -> Rel:
        return cls(left, right, ((x, y) for x in left for y in right), check=False)

    @classmethod
    def empty(cls, left: Carrier, right: Carrier | None = None) -> Rel:
        return cls(left, left if right is None else right, (), check=False)

    @classmethod
    def from_predicate(cls, left: Carrier, right: Carrier,
                       pred: Callable[[Element, Element], bool]) -> Rel:
        return cls(left, right, ((x, y) for x in left for y in right if pred(x, y)),
                   check=False)

    @classmethod
    def graph(cls, f: FunTable) -> Rel:
        return cls(f.dom, f.cod, f.items(), check=False)

    # queries

    def holds(self, x: Element, y: Element) -> bool:
        return (x, y) in self.pairs

    __call__ = holds

    def _index(self) -> None:
        succ: dict = {}
        pred: dict = {}
        for x, y in self.pairs:
            succ.setdefault(x, []).append(y)
            pred.setdefault(y, []).append(x)
        for d in (succ, pred):
            for k, v in d.items():
                d[k] = tuple(sorted(v, key=canon_key))
        object.__setattr__(self, "_succ", succ)
        object.__setattr__(self, "_pred", pred)

    def succ(self, x: Element) -> tuple:
        """Elements ``y`` with ``x R y``, canonically sorted."""
        if self._succ is None:
            self._index()
        return self._succ.get(x, ())

    def pred(self, y: Element) -> tuple:
        if self._pred is None:
            self._index()
        return self._pred.get(y, ())

    def in_dom(self, x: Element) -> bool:
        return bool(self.succ(x))

    def in_codom(self, y: Element) -> bool:
        return bool(self.pred(y))

    def in_field(self, x: Element) -> bool:
        return self.in_dom(x) or self.in_codom(x)

    def sorted_pairs(self) -> list[tuple[Element, Element]]:
        return sorted(self.pairs, key=lambda p: (canon_key(p[0]), canon_key(p[1])))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[Element, Element]]:
        return iter(self.sorted_pairs())

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Rel):
            return NotImplemented
        return (self._hash == other._hash and self.pairs == other.pairs
                and self.left == other.left and self.right == other.right)

    def __hash__(self) -> int:
        return self._hash

    def __le__(self, other: Rel) -> bool:
        return bool(rel_finer(self, other))

    def __repr__(self) -> str:
        body = ", ".join(f"({format_value(x)},{format_value(y)})"
                         for x, y in self.sorted_pairs()[:8])
        more = ", ..." if len(self.pairs) > 8 else ""
        return f"Rel({self.left.name}x{self.right.name}: {{{body}{more}}})"

    @property
    def is_homogeneous(self) -> bool:
        return self.left == self.right


class Pred:
    """A predicate on a carrier, given by its members."""

    __slots__ = ("carrier", "members")

    def __init__(self, carrier: Carrier, members: Iterable[Element]):
        members = frozenset(members)
        for x in members:
            carrier.check(x, "predicate member")
        self.carrier = carrier
        self.members = members

    @classmethod
    def full(cls, carrier: Carrier) -> Pred:
        return cls(carrier, carrier.elements)

    @classmethod
    def in_dom(cls, r: Rel) -> Pred:
        return cls(r.left, (x for x in r.left if r.in_dom(x)))

    @classmethod
    def in_codom(cls, r: Rel) -> Pred:
        return cls(r.right, (y for y in r.right if r.in_codom(y)))

    @classmethod
    def in_field(cls, r: Rel) -> Pred:
        _same_carrier(r.left, r.right, "in_field")
        return cls(r.left, (x for x in r.left if r.in_field(x)))

    def __contains__(self, x: object) -> bool:
        return x in self.members

    def sorted(self) -> list[Element]:
        return [x for x in self.carrier if x in self.members]

    def __repr__(self) -> str:
        return f"Pred({self.carrier.name}: {[format_value(x) for x in self.sorted()]})"


class DepRel:
    """A relation on ``base_left x base_right`` indexed by a parameter pair.

    Parameter pairs without an explicit case use ``default``, which is the
    empty relation unless stated otherwise.
    """

    __slots__ = ("param1", "param2", "base_left", "base_right", "cases", "default", "_fn")

    def __init__(self, param1: Carrier, param2: Carrier, base_left: Carrier,
                 base_right: Carrier, cases: Mapping[tuple, Rel] | None = None,
                 default: Rel | None = None):
        default = Rel.empty(base_left, base_right) if default is None else default
        cases = dict(cases or {})
        for (a, b), rel in cases.items():
            param1.check(a, "parameter")
            param2.check(b, "parameter")
            _rel_on(rel, base_left, base_right, "dependent relation case")
        _rel_on(default, base_left, base_right, "dependent relation default")
        self.param1, self.param2 = param1, param2
        self.base_left, self.base_right = base_left, base_right
        self.cases, self.default = cases, default
        self._fn = None

    @classmethod
    def const(cls, rel: Rel, param1: Carrier, param2: Carrier) -> DepRel:
        return cls(param1, param2, rel.left, rel.right, default=rel)

    @classmethod
    def from_function(cls, param1: Carrier, param2: Carrier, base_left: Carrier,
                      base_right: Carrier, fn: Callable[[Element, Element], Rel]) -> DepRel:
        return cls(param1, param2, base_left, base_right,
                   {(a, b): fn(a, b) for a in param1 for b in param2})

    @classmethod
    def lazy(cls, param1: Carrier, param2: Carrier, base_left: Carrier, base_right: Carrier,
             fn: Callable[[Element, Element], Rel]) -> DepRel:
        """Cases computed by ``fn`` on first use and memoised."""
        dep = cls(param1, param2, base_left, base_right)
        dep._fn = fn
        return dep

    def at(self, a: Element, b: Element) -> Rel:
        rel = self.cases.get((a, b))
        if rel is not None:
            return rel
        if self._fn is None:
            return self.default
        rel = self._fn(a, b)
        _rel_on(rel, self.base_left, self.base_right, "dependent relation case")
        self.cases[(a, b)] = rel
        return rel

    __call__ = at

    def is_constant(self) -> bool:
        return all(r == self.default for r in self.cases.values())


class DepFunTable:
    """A function table indexed by a parameter pair (e.g. ``l2 x' x``)."""

    __slots__ = ("param1", "param2", "cases", "default")

    def __init__(self, param1: Carrier, param2: Carrier, default: FunTable,
                 cases: Mapping[tuple, FunTable] | None = None):
        cases = dict(cases or {})
        for (a, b), t in cases.items():
            param1.check(a, "parameter")
            param2.check(b, "parameter")
            if t.dom != default.dom or t.cod != default.cod:
                raise ValueError("dependent function cases must share carriers")
        self.param1, self.param2 = param1, param2
        self.cases, self.default = cases, default

    @classmethod
    def const(cls, table: FunTable, param1: Carrier, param2: Carrier) -> DepFunTable:
        return cls(param1, param2, table)

    @property
    def dom(self) -> Carrier:
        return self.default.dom

    @property
    def cod(self) -> Carrier:
        return self.default.cod

    def at(self, a: Element, b: Element) -> FunTable:
        return self.cases.get((a, b), self.default)

    __call__ = at


def _same_carrier(a: Carrier, b: Carrier, what: str) -> None:
    if a != b:
        raise ValueError(f"{what}: carrier mismatch {a.name} vs {b.name}")


def _rel_on(r: Rel, left: Carrier, right: Carrier, what: str) -> None:
    _same_carrier(r.left, left, what)
    _same_carrier(r.right, right, what)


# --- algebra -----------------------------------------------------------------

def rel_inverse(r: Rel) -> Rel:
    return Rel(r.right, r.left, ((y, x) for x, y in r.pairs), check=False)


def rel_compose(r: Rel, s: Rel) -> Rel:
    """``(r o s) x y  <->  exists z. r x z and s z y``."""
    _same_carrier(r.right, s.left, "rel_compose")
    out = set()
    for x, z in r.pairs:
        for y in s.succ(z):
            out.add((x, y))
    return Rel(r.left, s.right, out, check=False)


def rel_finer(r: Rel, s: Rel) -> CheckReport:
    """``r <= s``; the witness is the smallest pair of ``r`` missing from ``s``."""
    _rel_on(r, s.left, s.right, "rel_finer")
    return first_failure("finer", r.sorted_pairs(), s.holds)


def rel_membership(kind: str, r: Rel, x: Element) -> bool:
    if kind == "in_dom":
        r.left.check(x)
        return r.in_dom(x)
    if kind == "in_codom":
        r.right.check(x)
        return r.in_codom(x)
    if kind == "in_field":
        _same_carrier(r.left, r.right, "in_field")
        r.left.check(x)
        return r.in_field(x)
    raise ValueError(f"unknown membership kind {kind!r}")


def restricted_eq(p: Pred) -> Rel:
    """``x =_P y  <->  P x and x = y``."""
    return Rel(p.carrier, p.carrier, ((x, x) for x in p.members), check=False)


def rel_if(b: bool, s: Rel) -> Rel:
    """``rel_if b s x y  <->  (b --> s x y)``: ``s`` or the full relation."""
    return s if b else Rel.full(s.left, s.right)


# --- relativised order properties --------------------------------------------

def _prop_carrier(p: Pred, r: Rel) -> None:
    _same_carrier(r.left, r.right, "order property")
    _same_carrier(p.carrier, r.left, "order property predicate")


def reflexive_on(p: Pred, r: Rel) -> CheckReport:
    _prop_carrier(p, r)
    return first_failure("reflexive_on", ((x,) for x in p.sorted()),
                         lambda x: r.holds(x, x))


def symmetric_on(p: Pred, r: Rel) -> CheckReport:
    _prop_carrier(p, r)

    def cands():
        for x in p.sorted():
            for y in r.succ(x):
                if y in p.members:
                    yield x, y
    return first_failure("symmetric_on", cands(), lambda x, y: r.holds(y, x))


def transitive_on(p: Pred, r: Rel) -> CheckReport:
    _prop_carrier(p, r)

    def cands():
        for x in p.sorted():
            for y in r.succ(x):
                if y not in p.members:
                    continue
                for z in r.succ(y):
                    if z in p.members:
                        yield x, y, z
    return first_failure("transitive_on", cands(), lambda x, y, z: r.holds(x, z))


def order_property(kind: str, p: Pred, r: Rel) -> CheckReport:
    if kind == "reflexive_on":
        return reflexive_on(p, r)
    if kind == "transitive_on":
        return transitive_on(p, r)
    if kind == "symmetric_on":
        return symmetric_on(p, r)
    if kind == "preorder_on":
        return conjunction("preorder_on", [transitive_on(p, r), reflexive_on(p, r)])
    if kind == "per_on":
        return conjunction("per_on", [transitive_on(p, r), symmetric_on(p, r)])
    raise ValueError(f"unknown order property {kind!r}")


def on_field(kind: str, r: Rel) -> CheckReport:
    """``kind`` relativised to ``in_field r``."""
    return order_property(kind, Pred.in_field(r), r)


def unrelativised(kind: str, r: Rel) -> CheckReport:
    """``kind`` on the whole carrier (the predicate that is always true)."""
    return order_property(kind, Pred.full(r.left), r)


def point_property(kind: str, p: Pred, r: Rel, f: FunTable) -> CheckReport:
    _prop_carrier(p, r)
    _same_carrier(f.dom, r.left, "point property domain")
    _same_carrier(f.cod, r.left, "point property codomain")
    xs = [(x,) for x in p.sorted()]
    if kind == "inflationary_on":
        return first_failure(kind, xs, lambda x: r.holds(x, f(x)))
    if kind == "deflationary_on":
        return first_failure(kind, xs, lambda x: r.holds(f(x), x))
    if kind == "rel_equivalence_on":
        return conjunction(kind, [point_property("inflationary_on", p, r, f),
                                  point_property("deflationary_on", p, r, f)])
    raise ValueError(f"unknown point property {kind!r}")


# --- function relators --------------------------------------------------------

RELATOR_KINDS = ("plain", "mono_fun", "mono_relator")


def _relator_carriers(r1: Rel, s: DepRel, f: FunTable, g: FunTable) -> None:
    _same_carrier(r1.left, f.dom, "relator domain (left)")
    _same_carrier(r1.right, g.dom, "relator domain (right)")
    _same_carrier(s.param1, r1.left, "relator parameters (first)")
    _same_carrier(s.param2, r1.right, "relator parameters (second)")
    _same_carrier(s.base_left, f.cod, "relator codomain (left)")
    _same_carrier(s.base_right, g.cod, "relator codomain (right)")


def relator_violation(r1: Rel, s: DepRel, f: FunTable, g: FunTable) -> tuple | None:
    """Smallest ``(x, y)`` with ``r1 x y`` but not ``s(x, y) (f x) (g y)``."""
    for x, y in r1.sorted_pairs():
        if not s.at(x, y).holds(f(x), g(y)):
            return (x, y)
    return None


def dep_fun_relator(kind: str, r1: Rel, s: DepRel, f: FunTable, g: FunTable) -> bool:
    """``([x y :: r1] => s x y) f g`` and its monotone variants."""
    if kind == "plain":
        _relator_carriers(r1, s, f, g)
        return relator_violation(r1, s, f, g) is None
    if kind == "mono_fun":
        _relator_carriers(r1, s, f, f)
        return relator_violation(r1, s, f, f) is None
    if kind == "mono_relator":
        _relator_carriers(r1, s, f, g)
        return (relator_violation(r1, s, f, g) is None
                and relator_violation(r1, s, f, f) is None
                and relator_violation(r1, s, g, g) is None)
    raise ValueError(f"unknown relator kind {kind!r}")


def dep_fun_map(f: FunTable, g: DepFunTable, h: FunTable) -> FunTable:
    """``([x :: f] => g x) h``, i.e. ``x |-> g x (f x) (h (f x))``."""
    _same_carrier(f.cod, h.dom, "dep_fun_map (f then h)")
    _same_carrier(g.param1, f.dom, "dep_fun_map parameters (first)")
    _same_carrier(g.param2, f.cod, "dep_fun_map parameters (second)")
    _same_carrier(g.dom, h.cod, "dep_fun_map (h then g)")
    out = []
    for x in f.dom:
        fx = f(x)
        out.append(g.at(x, fx)(h(fx)))
    return FunTable(f.dom, g.cod, out)


def materialize_relator(kind: str, r1: Rel, s: DepRel, space_l: Carrier | Sequence[FunTable],
                        space_r: Carrier | Sequence[FunTable], cap: int = 4096) -> Rel:
    """Reify a function relator as a relation between two function-space carriers.

    ``cap`` bounds the number of candidate pairs ``|space_l| * |space_r|``.
    """
    if kind not in RELATOR_KINDS:
        raise ValueError(f"unknown relator kind {kind!r}")
    left = space_l if isinstance(space_l, Carrier) else _space(space_l, r1.left, s.base_left)
    right = space_r if isinstance(space_r, Carrier) else _space(space_r, r1.right, s.base_right)
    if len(left) * len(right) > cap:
        raise CapExceeded(f"relator over {len(left)} x {len(right)} tables exceeds cap {cap}")
    checks = [(x, y, s.at(x, y).pairs) for x, y in r1.sorted_pairs()]
    for t in left.elements[:1]:
        _relator_carriers(r1, s, t, right.elements[0] if right.elements else t)

    def related(f: FunTable, g: FunTable) -> bool:
        return all((f(x), g(y)) in ps for x, y, ps in checks)

    if kind == "mono_fun":
        pairs = [(f, f) for f in left if f in right.index and related(f, f)]
        return Rel(left, right, pairs, check=False)
    lefts = list(left)
    rights = list(right)
    if kind == "mono_relator":
        mono_checks = [(x, y, s.at(x, y).pairs) for x, y in r1.sorted_pairs()]
        if r1.left == r1.right and s.base_left == s.base_right:
            lefts = [f for f in lefts if all((f(x), f(y)) in ps for x, y, ps in mono_checks)]
            rights = [g for g in rights if all((g(x), g(y)) in ps for x, y, ps in mono_checks)]
        else:
            lefts, rights = [], []
    pairs = [(f, g) for f in lefts for g in rights if related(f, g)]
    return Rel(left, right, pairs, check=False)


def _space(tables: Sequence[FunTable], dom: Carrier, cod: Carrier) -> Carrier:
    from .values import fun_space_carrier
    return fun_space_carrier(dom, cod, tables)
