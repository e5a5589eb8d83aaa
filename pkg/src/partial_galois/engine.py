"""Registry of base equivalences, synthesis of composite equivalences, and term transport."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence, Union

from .compose import build_composition, comp_similarity_check, verify_comp_theorem
from .functors import (FunctorDef, builtin_functor,
                       functor_similarity_check, verify_functor_theorem)
from .funrel import (DEFAULT_CAP, DepFunClosureInput, DepFunClosureOutput, close_spaces,
                     similarity_check, similarity_relator, verify_closure_theorem)
from .galois import EquivalenceRecord, galois_class_check, galois_relator
from .relations import (DepFunTable, DepRel, Rel, dep_fun_map, materialize_relator,
                        rel_compose, rel_if, relator_violation)
from .reports import CheckReport, conjunction
from .values import (CapExceeded, Carrier, Element, FunTable, enumerate_fun_tables,
                     format_value, fun_space_carrier, space_size)


class EngineError(ValueError):
    """Unresolvable names, malformed or non-parallel expressions."""


class SideConditionError(EngineError):
    def __init__(self, message: str, report: CheckReport):
        super().__init__(message)
        self.report = report


class TransportError(EngineError):
    def __init__(self, message: str, witness: tuple | None = None,
                 report: CheckReport | None = None):
        super().__init__(message)
        self.witness = witness
        self.report = report


# --- registry --------------------------------------------------------------------

def _frozen(m: Mapping | None) -> Mapping:
    return MappingProxyType(dict(m or {}))


@dataclass(frozen=True)
class Registry:
    """Immutable name tables; ``register_*`` return extended copies."""

    carriers: Mapping[str, Carrier] = field(default_factory=dict)
    relations: Mapping[str, Rel] = field(default_factory=dict)
    functions: Mapping[str, FunTable] = field(default_factory=dict)
    conditions: Mapping[str, Rel] = field(default_factory=dict)
    equivalences: Mapping[str, EquivalenceRecord] = field(default_factory=dict)
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        for name in ("carriers", "relations", "functions", "conditions", "equivalences"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    def _with(self, table: str, name: str, value) -> Registry:
        current = getattr(self, table)
        if name in current:
            raise EngineError(f"duplicate {table[:-1]} name {name!r}")
        tables = {t: getattr(self, t) for t in
                  ("carriers", "relations", "functions", "conditions", "equivalences")}
        tables[table] = {**current, name: value}
        return Registry(cap=self.cap, **tables)

    def with_carrier(self, name: str, c: Carrier) -> Registry:
        return self._with("carriers", name, c)

    def with_relation(self, name: str, r: Rel) -> Registry:
        return self._with("relations", name, r)

    def with_function(self, name: str, f: FunTable) -> Registry:
        return self._with("functions", name, f)

    def with_condition(self, name: str, r: Rel) -> Registry:
        return self._with("conditions", name, r)

    def with_cap(self, cap: int) -> Registry:
        tables = {t: getattr(self, t) for t in
                  ("carriers", "relations", "functions", "conditions", "equivalences")}
        return Registry(cap=cap, **tables)


def register_equivalence(reg: Registry, name: str, E: EquivalenceRecord) -> Registry:
    """Accept ``E`` only if it is a PER Galois equivalence."""
    if name in reg.equivalences:
        raise EngineError(f"duplicate equivalence name {name!r}")
    rep = galois_class_check("per_equiv", E)
    if not rep:
        raise SideConditionError(f"equivalence {name} rejected: {rep.summary()}", rep)
    return reg._with("equivalences", name, E)


# --- relation expressions --------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class EqExpr:
    carrier: str


@dataclass(frozen=True)
class EquivSide:
    name: str
    side: str  # "left" or "right"


@dataclass(frozen=True)
class Guard:
    cond: str
    args: tuple[str, str]


@dataclass(frozen=True)
class DepFun:
    binder1: str
    binder2: str
    domain: RelExpr
    guard: Guard | None
    codomain: RelExpr


@dataclass(frozen=True)
class FunctorExpr:
    name: str
    args: tuple[RelExpr, ...]


@dataclass(frozen=True)
class Compose:
    first: RelExpr
    second: RelExpr


RelExpr = Union[Atom, EqExpr, EquivSide, DepFun, FunctorExpr, Compose]

_EXPR_TOKEN = re.compile(r"\s*(?:(->)|([A-Za-z_][A-Za-z0-9_']*)|([(),:]))")


def parse_expr(text: str) -> RelExpr:
    """Parse the compact prefix syntax.

    ``atom NAME | eq CARRIER | lhs NAME | rhs NAME
    | fun(x y: EXPR [if COND(x,y)]) -> EXPR | functor NAME(EXPR, ...)
    | compose(EXPR, EXPR) | (EXPR)``
    """
    toks: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise EngineError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        toks.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    i = 0

    def peek() -> str:
        return toks[i][0] if i < len(toks) else ""

    def col() -> int:
        return toks[i][1] + 1 if i < len(toks) else len(text) + 1

    def take() -> str:
        nonlocal i
        if i >= len(toks):
            raise EngineError(f"unexpected end of expression at column {col()}")
        i += 1
        return toks[i - 1][0]

    def expect(tok: str) -> None:
        if peek() != tok:
            raise EngineError(f"expected {tok!r} at column {col()}, found {peek() or 'end'!r}")
        take()

    def name() -> str:
        tok = peek()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok or "-"):
            raise EngineError(f"expected a name at column {col()}, found {tok or 'end'!r}")
        return take()

    def expr() -> RelExpr:
        tok = peek()
        if tok == "(":
            take()
            e = expr()
            expect(")")
            return e
        kw = name()
        if kw == "atom":
            return Atom(name())
        if kw == "eq":
            return EqExpr(name())
        if kw in ("lhs", "rhs"):
            return EquivSide(name(), "left" if kw == "lhs" else "right")
        if kw == "fun":
            expect("(")
            b1, b2 = name(), name()
            expect(":")
            dom = expr()
            guard = None
            if peek() == "if":
                take()
                cond = name()
                expect("(")
                a = name()
                expect(",")
                b = name()
                expect(")")
                guard = Guard(cond, (a, b))
            expect(")")
            expect("->")
            return DepFun(b1, b2, dom, guard, expr())
        if kw == "functor":
            fname = name()
            expect("(")
            args = []
            if peek() != ")":
                args.append(expr())
                while peek() == ",":
                    take()
                    args.append(expr())
            expect(")")
            return FunctorExpr(fname, tuple(args))
        if kw == "compose":
            expect("(")
            first = expr()
            expect(",")
            second = expr()
            expect(")")
            return Compose(first, second)
        raise EngineError(f"unknown expression keyword {kw!r}")

    result = expr()
    if i != len(toks):
        raise EngineError(f"trailing input at column {col()}")
    return result


def format_expr(e: RelExpr) -> str:
    if isinstance(e, Atom):
        return f"atom {e.name}"
    if isinstance(e, EqExpr):
        return f"eq {e.carrier}"
    if isinstance(e, EquivSide):
        return f"{'lhs' if e.side == 'left' else 'rhs'} {e.name}"
    if isinstance(e, DepFun):
        guard = f" if {e.guard.cond}({e.guard.args[0]},{e.guard.args[1]})" if e.guard else ""
        return f"fun({e.binder1} {e.binder2}: {format_expr(e.domain)}{guard}) -> {format_expr(e.codomain)}"
    if isinstance(e, FunctorExpr):
        return f"functor {e.name}({', '.join(format_expr(a) for a in e.args)})"
    if isinstance(e, Compose):
        return f"compose({format_expr(e.first)}, {format_expr(e.second)})"
    raise TypeError(e)


def free_binders(e: RelExpr) -> frozenset[str]:
    if isinstance(e, DepFun):
        bound = {e.binder1, e.binder2} - {"_"}
        inner = set(free_binders(e.codomain))
        if e.guard:
            inner |= set(e.guard.args)
        return free_binders(e.domain) | frozenset(inner - bound)
    if isinstance(e, FunctorExpr):
        return frozenset().union(*(free_binders(a) for a in e.args))
    if isinstance(e, Compose):
        return free_binders(e.first) | free_binders(e.second)
    return frozenset()


_LEAVES = (Atom, EqExpr, EquivSide)


def _check_parallel(a: RelExpr, b: RelExpr, path: str = "root") -> None:
    if isinstance(a, _LEAVES) and isinstance(b, _LEAVES):
        return
    if type(a) is not type(b):
        raise EngineError(f"expressions are not parallel at {path}: "
                          f"{format_expr(a)!r} vs {format_expr(b)!r}")
    if isinstance(a, DepFun):
        _check_parallel(a.domain, b.domain, path + ".domain")
        _check_parallel(a.codomain, b.codomain, path + ".codomain")
    elif isinstance(a, FunctorExpr):
        if a.name != b.name or len(a.args) != len(b.args):
            raise EngineError(f"expressions are not parallel at {path}: functor "
                              f"{a.name}/{len(a.args)} vs {b.name}/{len(b.args)}")
        for k, (x, y) in enumerate(zip(a.args, b.args)):
            _check_parallel(x, y, f"{path}.arg{k}")
    elif isinstance(a, Compose):
        _check_parallel(a.first, b.first, path + ".first")
        _check_parallel(a.second, b.second, path + ".second")


# --- elaborated nodes --------------------------------------------------------------

Env = Mapping[str, Element]
SIDES = ("L", "R")


def _bind(env: Env, b1: str, b2: str, x1: Element, x2: Element) -> dict:
    out = dict(env)
    if b1 != "_":
        out[b1] = x1
    if b2 != "_":
        out[b2] = x2
    return out


class Node:
    """An elaborated expression pair.

    ``l``, ``r`` and the carriers do not depend on binder values; the
    relations may, through guards, and are computed per environment.
    """

    alpha: Carrier
    beta: Carrier
    l: FunTable
    r: FunTable
    free: dict[str, frozenset[str]]

    def __init__(self):
        self._cache: dict = {}

    def _key(self, side: str, env: Env) -> tuple:
        return (side,) + tuple((b, env[b]) for b in sorted(self.free[side]))

    def rel(self, side: str, env: Env | None = None) -> Rel:
        env = env or {}
        missing = self.free[side] - set(env)
        if missing:
            raise EngineError(f"unbound binder {sorted(missing)[0]!r}")
        key = self._key(side, env)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = self._rel(side, env)
        return hit

    def _rel(self, side: str, env: Env) -> Rel:
        raise NotImplementedError

    def record(self, env_L: Env | None = None, env_R: Env | None = None) -> EquivalenceRecord:
        return EquivalenceRecord(self.rel("L", env_L), self.rel("R", env_R), self.l, self.r)

    def explain(self, env: Env, f: Element, g: Element) -> tuple | None:
        """Path of left arguments to a failing clause of ``L f g``, or None."""
        return None if self.rel("L", env).holds(f, g) else ()

    def side_conditions(self, env_L: Env, env_R: Env) -> CheckReport:
        return galois_class_check("per_equiv", self.record(env_L, env_R))

    def similarity_reports(self, env_L: Env, env_R: Env, path: str) -> list[tuple[str, CheckReport]]:
        return []


class LeafNode(Node):
    def __init__(self, name: str, E: EquivalenceRecord):
        super().__init__()
        self.name, self.E = name, E
        self.alpha, self.beta, self.l, self.r = E.alpha, E.beta, E.l, E.r
        self.free = {"L": frozenset(), "R": frozenset()}

    def _rel(self, side: str, env: Env) -> Rel:
        return self.E.L if side == "L" else self.E.R

    def describe(self) -> str:
        return self.name


class FunctorNode(Node):
    def __init__(self, F: FunctorDef, children: Sequence[Node], free):
        super().__init__()
        self.F, self.children, self.free = F, tuple(children), free
        if F.name == "identity":
            c = self.children[0]
            self.alpha, self.beta, self.l, self.r = c.alpha, c.beta, c.l, c.r
        else:
            self.alpha = F.build_carrier([c.alpha for c in self.children])
            self.beta = F.build_carrier([c.beta for c in self.children])
            self.l = F.map_fn([c.l for c in self.children])
            self.r = F.map_fn([c.r for c in self.children])

    def _rel(self, side: str, env: Env) -> Rel:
        if self.F.name == "identity":
            return self.children[0].rel(side, env)
        return self.F.rel_fn([c.rel(side, env) for c in self.children])

    def _components(self, env_L, env_R):
        return [c.record(env_L, env_R) for c in self.children]

    def side_conditions(self, env_L, env_R):
        return verify_functor_theorem(self.F, self._components(env_L, env_R), "per_equiv")

    def similarity_reports(self, env_L, env_R, path):
        out = [(path, functor_similarity_check(self.F, self._components(env_L, env_R)))]
        for k, c in enumerate(self.children):
            out.extend(c.similarity_reports(env_L, env_R, f"{path}.arg{k}"))
        return out


class ComposeNode(Node):
    def __init__(self, first: Node, second: Node):
        super().__init__()
        if any(n.free[s] for n in (first, second) for s in SIDES):
            raise EngineError("compose operands may not mention binders")
        self.first, self.second = first, second
        self.E1, self.E2 = first.record(), second.record()
        self.E = build_composition(self.E1, self.E2)
        self.alpha, self.beta, self.l, self.r = self.E.alpha, self.E.beta, self.E.l, self.E.r
        self.free = {"L": frozenset(), "R": frozenset()}

    def _rel(self, side, env):
        return self.E.L if side == "L" else self.E.R

    def side_conditions(self, env_L, env_R):
        return verify_comp_theorem(self.E1, self.E2, "per_equiv")

    def similarity_reports(self, env_L, env_R, path):
        out = [(path, comp_similarity_check(self.E1, self.E2, "main"))]
        out.extend(self.first.similarity_reports({}, {}, path + ".first"))
        out.extend(self.second.similarity_reports({}, {}, path + ".second"))
        return out


class DepFunNode(Node):
    def __init__(self, reg: Registry, exprs: tuple[DepFun, DepFun], dom: Node, cod: Node,
                 seeds_L: Sequence[FunTable] | None, seeds_R: Sequence[FunTable] | None, free):
        super().__init__()
        self.reg, self.exprs, self.dom, self.cod, self.free = reg, exprs, dom, cod, free
        self.l2 = DepFunTable.const(cod.l, dom.beta, dom.alpha)
        self.r2 = DepFunTable.const(cod.r, dom.alpha, dom.beta)
        cap = reg.cap
        self.subspace = seeds_L is not None or seeds_R is not None
        if self.subspace:
            tabs_L, tabs_R = close_spaces(
                [self._seed(t, dom.alpha, cod.alpha) for t in seeds_L or ()],
                [self._seed(t, dom.beta, cod.beta) for t in seeds_R or ()],
                self.l_map, self.r_map, cap)
        else:
            for a, b in ((dom.alpha, cod.alpha), (dom.beta, cod.beta)):
                n = space_size(a, b)
                if n * n > cap:
                    raise CapExceeded(f"relator over function space {a.name}->{b.name} "
                                      f"has {n}x{n} candidate pairs, cap is {cap}")
            tabs_L = enumerate_fun_tables(dom.alpha, cod.alpha, cap)
            tabs_R = enumerate_fun_tables(dom.beta, cod.beta, cap)
        self.alpha = fun_space_carrier(dom.alpha, cod.alpha, tabs_L)
        self.beta = fun_space_carrier(dom.beta, cod.beta, tabs_R)
        self.l = FunTable(self.alpha, self.beta, [self.l_map(f) for f in self.alpha])
        self.r = FunTable(self.beta, self.alpha, [self.r_map(g) for g in self.beta])

    @staticmethod
    def _seed(t: FunTable, dom: Carrier, cod: Carrier) -> FunTable:
        if not isinstance(t, FunTable) or t.dom != dom:
            raise EngineError(f"term {format_value(t)} does not have domain {dom.name}")
        try:
            return t.retarget(cod=cod)
        except ValueError as exc:
            raise EngineError(f"term outputs do not fit {cod.name}: {exc}") from None

    def l_map(self, f: FunTable) -> FunTable:
        return dep_fun_map(self.dom.r, self.l2, f)

    def r_map(self, g: FunTable) -> FunTable:
        return dep_fun_map(self.dom.l, self.r2, g)

    def _guarded(self, side: str, env: Env, x1: Element, x2: Element) -> Rel:
        e = self.exprs[0 if side == "L" else 1]
        inner = _bind(env, e.binder1, e.binder2, x1, x2)
        rel = self.cod.rel(side, inner)
        if e.guard is None:
            return rel
        return rel_if(_guard_holds(self.reg, e.guard, inner), rel)

    def dep_rel(self, side: str, env: Env) -> DepRel:
        p = self.dom.alpha if side == "L" else self.dom.beta
        c = self.cod.alpha if side == "L" else self.cod.beta
        return DepRel.lazy(p, p, c, c, lambda x1, x2: self._guarded(side, env, x1, x2))

    def _rel(self, side: str, env: Env) -> Rel:
        space = self.alpha if side == "L" else self.beta
        return materialize_relator("mono_relator", self.dom.rel(side, env),
                                   self.dep_rel(side, env), space, space, self.reg.cap)

    def closure(self, env_L: Env, env_R: Env) -> tuple[DepFunClosureInput, DepFunClosureOutput]:
        seeds = (tuple(self.alpha), tuple(self.beta)) if self.subspace else (None, None)
        inp = DepFunClosureInput(self.dom.record(env_L, env_R), self.dep_rel("L", env_L),
                                 self.dep_rel("R", env_R), self.l2, self.r2, self.reg.cap,
                                 seeds_L=seeds[0], seeds_R=seeds[1])
        out = DepFunClosureOutput(self.record(env_L, env_R), self.l_map, self.r_map, self.subspace)
        return inp, out

    def explain(self, env, f, g):
        e = self.exprs[0]
        for x, y in self.dom.rel("L", env).sorted_pairs():
            for a, b in ((f(x), g(y)), (f(x), f(y)), (g(x), g(y))):
                inner = _bind(env, e.binder1, e.binder2, x, y)
                if e.guard is not None and not _guard_holds(self.reg, e.guard, inner):
                    continue
                sub = self.cod.explain(inner, a, b)
                if sub is not None:
                    return (x,) + sub
        return None

    def side_conditions(self, env_L, env_R):
        inp, out = self.closure(env_L, env_R)
        return verify_closure_theorem(inp, "per_equiv", out)

    def similarity_reports(self, env_L, env_R, path):
        inp, out = self.closure(env_L, env_R)
        reports = [(path, similarity_check(inp, out, "main"))]
        E1 = inp.E1
        eL, eR = self.exprs
        seen = set()
        for x, x2 in galois_relator(E1.L, E1.R, E1.r).sorted_pairs():
            inner_L = _bind(env_L, eL.binder1, eL.binder2, x, E1.r(x2))
            inner_R = _bind(env_R, eR.binder1, eR.binder2, E1.l(x), x2)
            key = (self.cod._key("L", inner_L), self.cod._key("R", inner_R))
            if key in seen:
                continue
            seen.add(key)
            label = f"{path}.codomain[{format_value(x)},{format_value(x2)}]"
            reports.extend(self.cod.similarity_reports(inner_L, inner_R, label))
        return reports


def _guard_holds(reg: Registry, guard: Guard, env: Env) -> bool:
    cond = reg.conditions[guard.cond]
    a, b = (env[n] for n in guard.args)
    if a not in cond.left or b not in cond.right:
        raise EngineError(f"guard {guard.cond} applied outside its carriers: "
                          f"{format_value(a)}, {format_value(b)}")
    return cond.holds(a, b)


# --- elaboration -------------------------------------------------------------------

def _leaf_rel(reg: Registry, e: RelExpr, side: str) -> Rel:
    if isinstance(e, Atom):
        if e.name not in reg.relations:
            raise EngineError(f"unknown relation {e.name!r}")
        return reg.relations[e.name]
    if isinstance(e, EqExpr):
        if e.carrier not in reg.carriers:
            raise EngineError(f"unknown carrier {e.carrier!r}")
        return Rel.eq(reg.carriers[e.carrier])
    if e.name not in reg.equivalences:
        raise EngineError(f"unknown equivalence {e.name!r}")
    E = reg.equivalences[e.name]
    return E.L if e.side == "left" else E.R


def _resolve_leaf(reg: Registry, eL: RelExpr, eR: RelExpr) -> LeafNode:
    L, R = _leaf_rel(reg, eL, "L"), _leaf_rel(reg, eR, "R")
    if isinstance(eL, EquivSide) and isinstance(eR, EquivSide) and eL.name == eR.name \
            and (eL.side, eR.side) == ("left", "right"):
        return LeafNode(eL.name, reg.equivalences[eL.name])
    for name in sorted(reg.equivalences):
        E = reg.equivalences[name]
        if E.L == L and E.R == R:
            return LeafNode(name, E)
    if L == R:
        return LeafNode(f"identity({format_expr(eL)})", EquivalenceRecord.identity(L))
    raise EngineError(f"no registered equivalence between {format_expr(eL)!r} "
                      f"and {format_expr(eR)!r}")


def _build(reg: Registry, eL: RelExpr, eR: RelExpr, scope: tuple[set, set],
           seeds_L, seeds_R) -> Node:
    free = {"L": free_binders(eL), "R": free_binders(eR)}
    for side, e, sc in (("L", eL, scope[0]), ("R", eR, scope[1])):
        unbound = free[side] - sc
        if unbound:
            raise EngineError(f"unbound binder {sorted(unbound)[0]!r} in {format_expr(e)!r}")
    if isinstance(eL, DepFun):
        for e in (eL, eR):
            if e.guard is not None and e.guard.cond not in reg.conditions:
                raise EngineError(f"unknown condition {e.guard.cond!r}")
        dom = _build(reg, eL.domain, eR.domain, scope, None, None)
        inner_scope = (scope[0] | {eL.binder1, eL.binder2} - {"_"},
                       scope[1] | {eR.binder1, eR.binder2} - {"_"})
        inner_L = inner_R = None
        if seeds_L is not None or seeds_R is not None:
            inner_L = _outputs(seeds_L or ())
            inner_R = _outputs(seeds_R or ())
        cod = _build(reg, eL.codomain, eR.codomain, inner_scope, inner_L, inner_R)
        return DepFunNode(reg, (eL, eR), dom, cod, seeds_L, seeds_R, free)
    if isinstance(eL, FunctorExpr):
        carrier = None
        name = eL.name
        if name.startswith("const_"):
            cname = name[len("const_"):]
            if cname not in reg.carriers:
                raise EngineError(f"unknown carrier {cname!r} in functor {name}")
            carrier, name = reg.carriers[cname], "const"
        try:
            F = builtin_functor(name, carrier)
        except ValueError as exc:
            raise EngineError(str(exc)) from None
        if F.arity != len(eL.args):
            raise EngineError(f"functor {F.name} takes {F.arity} arguments, got {len(eL.args)}")
        children = [_build(reg, a, b, scope, None, None) for a, b in zip(eL.args, eR.args)]
        if F.arity == 0:
            return LeafNode(F.name, EquivalenceRecord.identity(Rel.eq(carrier)))
        try:
            return FunctorNode(F, children, free)
        except ValueError as exc:
            raise EngineError(str(exc)) from None
    if isinstance(eL, Compose):
        return ComposeNode(_build(reg, eL.first, eR.first, scope, None, None),
                           _build(reg, eL.second, eR.second, scope, None, None))
    return _resolve_leaf(reg, eL, eR)


def _outputs(tables: Sequence[FunTable]) -> list:
    return list(dict.fromkeys(y for t in tables for y in t.outputs))


@dataclass(frozen=True)
class Synthesis:
    node: Node
    record: EquivalenceRecord
    side_conditions: CheckReport


def _as_expr(e: RelExpr | str) -> RelExpr:
    return parse_expr(e) if isinstance(e, str) else e


def synthesize(reg: Registry, Lexpr: RelExpr | str, Rexpr: RelExpr | str,
               seeds: Sequence[FunTable] | None = None) -> Synthesis:
    """Elaborate and re-check the root side conditions (raising on failure).

    With ``seeds`` the function-space carriers are the smallest sets
    containing the seeds and closed under the synthesized transports.
    """
    eL, eR = _as_expr(Lexpr), _as_expr(Rexpr)
    _check_parallel(eL, eR)
    node = _build(reg, eL, eR, (set(), set()), seeds, () if seeds is not None else None)
    report = node.side_conditions({}, {})
    if report.status != "PASS":
        raise SideConditionError(f"side conditions failed: {report.summary()}", report)
    return Synthesis(node, node.record(), report)


def elaborate(reg: Registry, Lexpr: RelExpr | str, Rexpr: RelExpr | str) -> EquivalenceRecord:
    return synthesize(reg, Lexpr, Rexpr).record


# --- transport -----------------------------------------------------------------------

@dataclass(frozen=True)
class TransportResult:
    term_out: Element
    relatedness: CheckReport
    similarity: CheckReport
    synthesized: EquivalenceRecord
    side_conditions: CheckReport


def _instance_similarity(node: Node, t: Element, t2: Element) -> CheckReport:
    """The rewritten relatedness statement for the transported pair itself."""
    if isinstance(node, DepFunNode):
        inp, _ = node.closure({}, {})
        g1, dep = similarity_relator(inp)
        bad = relator_violation(g1, dep, t, t2)
        return CheckReport("instance_relator", bad is None, bad)
    if isinstance(node, FunctorNode):
        rel = node.F.rel_fn([galois_relator(C.L, C.R, C.r)
                             for C in node._components({}, {})])
        ok = rel.holds(t, t2)
        return CheckReport("instance_relator", ok, None if ok else (t, t2))
    if isinstance(node, ComposeNode):
        rel = rel_compose(galois_relator(node.E1.L, node.E1.R, node.E1.r),
                          galois_relator(node.E2.L, node.E2.R, node.E2.r))
        ok = rel.holds(t, t2)
        return CheckReport("instance_relator", ok, None if ok else (t, t2))
    E = node.record()
    ok = galois_relator(E.L, E.R, E.r).holds(t, t2)
    return CheckReport("instance_relator", ok, None if ok else (t, t2))


def transport(reg: Registry, term: str, Lexpr: RelExpr | str, Rexpr: RelExpr | str) -> TransportResult:
    """Transport the registered function ``term`` along the synthesized equivalence."""
    if term not in reg.functions:
        raise EngineError(f"unknown term {term!r}")
    t = reg.functions[term]
    syn = synthesize(reg, Lexpr, Rexpr, seeds=(t,))
    E, node = syn.record, syn.node
    if isinstance(node, DepFunNode):
        t = node._seed(t, node.dom.alpha, node.cod.alpha)
    elif t not in E.alpha:
        raise TransportError(f"term {term} is not in {E.alpha.name}")
    if not E.L.holds(t, t):
        witness = node.explain({}, t, t)
        raise TransportError(f"term {term} is not in the domain of L", witness)
    t2 = E.l(t)
    relatedness = conjunction("relatedness", [
        CheckReport("galois_related", galois_relator(E.L, E.R, E.r).holds(t, t2)),
        CheckReport("left_unit", E.L.holds(t, E.r(t2))),
        CheckReport("right_related", E.R.holds(t2, t2)),
    ])
    if not relatedness:
        raise TransportError(f"transported term failed {relatedness.summary()}", None, relatedness)
    subs = [_instance_similarity(node, t, t2)]
    for path, rep in node.similarity_reports({}, {}, "root"):
        subs.append(CheckReport(f"{path}:{rep.property}", rep.verdict, rep.witness,
                                rep.sub_reports, rep.applicable, rep.detail, rep.alarm))
    return TransportResult(t2, relatedness, conjunction("similarity", subs), E,
                           syn.side_conditions)
