"""Batch front end: load a JSON declaration document, run its commands, report."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from . import engine
from .compose import (comp_similarity_check, lifting_comparison_check, verify_comp_coincide,
                      verify_comp_theorem)
from .engine import (Atom, Compose, DepFun, DepFunNode, EngineError, FunctorExpr, Registry,
                     RelExpr, parse_expr)
from .functors import builtin_functor, functor_similarity_check, verify_functor_theorem
from .funrel import DEFAULT_CAP, DepFunClosureInput, similarity_check, verify_closure_theorem
from .galois import (CLASSES, EquivalenceRecord, PartialQuotient, galois_class_check,
                     galois_lemma_suite, partial_quotient_check)
from .relations import DepFunTable, DepRel, Pred, Rel, restricted_eq
from .reports import CheckReport
from .search import counterexample_search
from .values import (CapExceeded, Carrier, FunTable, ValueSyntaxError, format_value,
                     fun_space_carrier, list_bound, parse_value)

STATUSES = ("PASS", "FAIL", "INAPPLICABLE", "ERROR")


class DocumentError(ValueError):
    """The document does not parse or a declaration does not resolve."""


# --- document loading ----------------------------------------------------------------

@dataclass
class Document:
    registry: Registry
    equivalences: dict[str, EquivalenceRecord]
    quotients: dict[str, PartialQuotient]
    dep_relations: dict[str, DepRel]
    dep_functions: dict[str, DepFunTable]
    functors: dict[str, tuple[int, RelExpr]]
    commands: list[dict]


def _value(text: Any, where: str):
    if not isinstance(text, str):
        text = json.dumps(text)
    try:
        return parse_value(text)
    except ValueSyntaxError as exc:
        raise DocumentError(f"{where}: bad value {text!r}: {exc}") from None


def _lookup(table: dict, name: str, what: str):
    if name not in table:
        raise DocumentError(f"unresolved {what} {name!r}")
    return table[name]


def _elem(carrier: Carrier, text: Any, where: str):
    v = _value(text, where)
    if v not in carrier:
        raise DocumentError(f"{where}: {format_value(v)} is not in carrier {carrier.name}")
    return v


def _relation(spec: dict, carriers: dict, functions: dict, name: str) -> Rel:
    where = f"relation {name}"
    if "eq" in spec:
        return Rel.eq(_lookup(carriers, spec["eq"], "carrier"))
    if "restricted_eq" in spec:
        c = _lookup(carriers, spec["restricted_eq"], "carrier")
        return restricted_eq(Pred(c, [_elem(c, m, where) for m in spec["members"]]))
    if "between" in spec:
        a, b = (_lookup(carriers, n, "carrier") for n in spec["between"])
        return Rel(a, b, [(_elem(a, x, where), _elem(b, y, where)) for x, y in spec.get("pairs", [])])
    if "graph" in spec:
        return Rel.graph(_lookup(functions, spec["graph"], "function"))
    if "kernel" in spec:
        f = _lookup(functions, spec["kernel"], "function")
        return Rel.from_predicate(f.dom, f.dom, lambda x, y: f(x) == f(y))
    raise DocumentError(f"{where}: unknown relation form {sorted(spec)}")


def _function(spec: dict, carriers: dict, name: str) -> FunTable:
    where = f"function {name}"
    doms = spec["dom"] if isinstance(spec["dom"], list) else [spec["dom"]]
    doms = [_lookup(carriers, d, "carrier") for d in doms]
    cod = _lookup(carriers, spec["cod"], "carrier")
    rows = {}
    for row in spec["table"]:
        if len(row) != len(doms) + 1:
            raise DocumentError(f"{where}: row {row} does not have {len(doms) + 1} entries")
        key = tuple(_elem(c, v, where) for c, v in zip(doms, row))
        rows[key] = _elem(cod, row[-1], where)
    return _curry(doms, cod, rows, where)


def _curry(doms: list[Carrier], cod: Carrier, rows: dict, where: str, prefix=()) -> FunTable:
    head, rest = doms[0], doms[1:]
    outs = []
    for x in head:
        key = prefix + (x,)
        if rest:
            outs.append(_curry(rest, cod, rows, where, key))
        elif key in rows:
            outs.append(rows[key])
        else:
            raise DocumentError(f"{where}: no entry for {','.join(format_value(k) for k in key)}")
    if rest:
        inner_cod = fun_space_carrier(outs[0].dom, outs[0].cod, sorted(set(outs)))
        return FunTable(head, inner_cod, outs)
    return FunTable(head, cod, outs)


def load_document(text: str) -> Document:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("the document must be a JSON object")
    known = {"carriers", "relations", "dep_relations", "functions", "dep_functions", "functors",
             "equivalences", "quotients", "commands"}
    extra = sorted(set(doc) - known)
    if extra:
        raise DocumentError(f"unknown top-level key {extra[0]!r}")
    carriers = {name: Carrier(name, [_value(v, f"carrier {name}") for v in vals])
                for name, vals in sorted(doc.get("carriers", {}).items())}
    functions = {name: _function(spec, carriers, name)
                 for name, spec in sorted(doc.get("functions", {}).items())}
    # graph/kernel relations may refer to functions, so functions come first
    relations = {name: _relation(spec, carriers, functions, name)
                 for name, spec in sorted(doc.get("relations", {}).items())}
    dep_relations = {}
    for name, spec in sorted(doc.get("dep_relations", {}).items()):
        p1, p2 = (_lookup(carriers, n, "carrier") for n in spec["params"])
        b1, b2 = (_lookup(carriers, n, "carrier") for n in spec["base"])
        cases = {(_elem(p1, c["at"][0], name), _elem(p2, c["at"][1], name)):
                 _lookup(relations, c["rel"], "relation") for c in spec.get("cases", [])}
        default = _lookup(relations, spec["default"], "relation") if "default" in spec else None
        dep_relations[name] = DepRel(p1, p2, b1, b2, cases, default)
    dep_functions = {}
    for name, spec in sorted(doc.get("dep_functions", {}).items()):
        p1, p2 = (_lookup(carriers, n, "carrier") for n in spec["params"])
        cases = {(_elem(p1, c["at"][0], name), _elem(p2, c["at"][1], name)):
                 _lookup(functions, c["fun"], "function") for c in spec.get("cases", [])}
        dep_functions[name] = DepFunTable(p1, p2, _lookup(functions, spec["default"], "function"), cases)
    equivalences = {}
    for name, spec in sorted(doc.get("equivalences", {}).items()):
        try:
            equivalences[name] = EquivalenceRecord(
                _lookup(relations, spec["L"], "relation"), _lookup(relations, spec["R"], "relation"),
                _lookup(functions, spec["l"], "function"), _lookup(functions, spec["r"], "function"),
                spec.get("class", "per_equiv"))
        except KeyError as exc:
            raise DocumentError(f"equivalence {name}: missing field {exc}") from None
    quotients = {name: PartialQuotient(_lookup(relations, spec["T"], "relation"),
                                       _lookup(functions, spec["Abs"], "function"),
                                       _lookup(functions, spec["Rep"], "function"))
                 for name, spec in sorted(doc.get("quotients", {}).items())}
    functors = {}
    for name, spec in sorted(doc.get("functors", {}).items()):
        try:
            functors[name] = (int(spec["arity"]), parse_expr(spec["body"]))
        except EngineError as exc:
            raise DocumentError(f"functor {name}: {exc}") from None
    reg = Registry(carriers=carriers, relations=relations, functions=functions,
                   conditions=relations)
    for name, E in sorted(equivalences.items()):
        # only PER equivalences are registered for synthesis; others stay checkable
        if galois_class_check("per_equiv", E):
            reg = engine.register_equivalence(reg, name, E)
    commands = doc.get("commands", [])
    if not isinstance(commands, list):
        raise DocumentError("commands must be a list")
    return Document(reg, equivalences, quotients, dep_relations, dep_functions, functors, commands)


def expand_functors(e: RelExpr, macros: dict[str, tuple[int, RelExpr]]) -> RelExpr:
    """Replace declared functor names by their bodies (placeholders ``atom _1``, ``atom _2``...)."""
    if isinstance(e, DepFun):
        return DepFun(e.binder1, e.binder2, expand_functors(e.domain, macros), e.guard,
                      expand_functors(e.codomain, macros))
    if isinstance(e, Compose):
        return Compose(expand_functors(e.first, macros), expand_functors(e.second, macros))
    if isinstance(e, FunctorExpr):
        args = tuple(expand_functors(a, macros) for a in e.args)
        if e.name not in macros:
            return FunctorExpr(e.name, args)
        arity, body = macros[e.name]
        if arity != len(args):
            raise EngineError(f"functor {e.name} takes {arity} arguments, got {len(args)}")
        return expand_functors(_substitute(body, args), macros)
    return e


def _substitute(e: RelExpr, args: tuple) -> RelExpr:
    if isinstance(e, Atom) and e.name.startswith("_") and e.name[1:].isdigit():
        k = int(e.name[1:])
        if not 1 <= k <= len(args):
            raise EngineError(f"placeholder {e.name} out of range")
        return args[k - 1]
    if isinstance(e, DepFun):
        return DepFun(e.binder1, e.binder2, _substitute(e.domain, args), e.guard,
                      _substitute(e.codomain, args))
    if isinstance(e, Compose):
        return Compose(_substitute(e.first, args), _substitute(e.second, args))
    if isinstance(e, FunctorExpr):
        return FunctorExpr(e.name, tuple(_substitute(a, args) for a in e.args))
    return e


# --- running ----------------------------------------------------------------------------

@dataclass
class Outcome:
    index: int
    cmd: str
    label: str
    status: str
    detail: str
    witness: list[str] | None = None
    output: dict[str, Any] = field(default_factory=dict)
    report: dict[str, Any] | None = None
    seconds: float = 0.0

    def line(self, timing: bool = False) -> str:
        parts = [self.status, self.cmd, self.label]
        if self.detail:
            parts.append(self.detail)
        text = " ".join(parts)
        return f"{text} [{self.seconds:.2f}s]" if timing else text


@dataclass
class RunReport:
    outcomes: list[Outcome]

    @property
    def exit_code(self) -> int:
        return 1 if any(o.status in ("FAIL", "ERROR") for o in self.outcomes) else 0

    def to_dict(self) -> dict[str, Any]:
        counts = {s: sum(o.status == s for o in self.outcomes) for s in STATUSES}
        commands = []
        for o in self.outcomes:
            d = asdict(o)
            del d["seconds"]  # keeps the structured body byte-stable
            commands.append(d)
        return {"commands": commands, "counts": counts, "exit_code": self.exit_code}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> RunReport:
        return cls([Outcome(**c) for c in d["commands"]])


def _from_report(index: int, cmd: str, label: str, rep: CheckReport, ok_detail: str) -> Outcome:
    status = rep.status
    if status == "PASS":
        detail = ok_detail
    elif status == "INAPPLICABLE":
        detail = rep.detail
    else:
        detail = rep.summary()
    bad = rep.failing()
    witness = None
    if bad is not None and bad.witness is not None:
        witness = [_show(w) for w in bad.witness]
    return Outcome(index, cmd, label, status, detail, witness, report=rep.to_dict())


def _show(x) -> str:
    try:
        return format_value(x)
    except TypeError:
        return str(x)


def _expr(doc: Document, text: str) -> RelExpr:
    return expand_functors(parse_expr(text), doc.functors)


def _check(doc: Document, c: dict, i: int) -> Outcome:
    prop = c.get("class", c.get("property", "per_equiv"))
    if "quotient" in c:
        name = c["quotient"]
        Q = _lookup(doc.quotients, name, "quotient")
        if prop == "lemmas":
            return _from_report(i, "check", name, galois_lemma_suite(Q), "lemmas")
        if prop != "partial_quotient":
            raise DocumentError(f"unknown quotient property {prop!r}")
        return _from_report(i, "check", name, partial_quotient_check(Q), prop)
    name = c["equivalence"]
    E = _lookup(doc.equivalences, name, "equivalence")
    prop = c.get("class", c.get("property", E.claimed_class))
    if prop == "lemmas":
        return _from_report(i, "check", name, galois_lemma_suite(E), "lemmas")
    if prop not in CLASSES:
        raise DocumentError(f"unknown class {prop!r}")
    return _from_report(i, "check", name, galois_class_check(prop, E), prop)


def _transport(doc: Document, c: dict, i: int) -> Outcome:
    term = c["term"]
    try:
        res = engine.transport(doc.registry, term, _expr(doc, c["L"]), _expr(doc, c["R"]))
    except engine.TransportError as exc:
        witness = None if exc.witness is None else [_show(w) for w in exc.witness]
        reason = "not_in_dom" if exc.report is None else exc.report.summary()
        detail = reason + (f" witness=({','.join(witness)})" if witness is not None else "")
        return Outcome(i, "transport", term, "FAIL", detail, witness,
                       report=None if exc.report is None else exc.report.to_dict())
    E = res.synthesized
    status = "PASS" if res.relatedness and res.similarity else "FAIL"
    detail = f"term_out={format_value(res.term_out)}"
    if status == "FAIL":
        detail = res.similarity.summary()
    output = {"term_out": format_value(res.term_out),
              "synthesized": {"alpha": E.alpha.name, "beta": E.beta.name,
                              "alpha_size": len(E.alpha), "beta_size": len(E.beta),
                              "L_pairs": len(E.L), "R_pairs": len(E.R)},
              "relatedness": res.relatedness.to_dict(),
              "similarity": res.similarity.to_dict()}
    return Outcome(i, "transport", term, status, detail, output=output,
                   report=res.side_conditions.to_dict())


def _records(doc: Document, names: list[str]) -> list[EquivalenceRecord]:
    return [_lookup(doc.equivalences, n, "equivalence") for n in names]


def _verify(doc: Document, c: dict, i: int) -> Outcome:
    thm = c["theorem"]
    label = c.get("name", thm)
    star = c.get("star", "per_equiv")
    if thm in ("dep_fun_closure", "dep_fun_similarity"):
        seeds = [_lookup(doc.registry.functions, s, "function") for s in c.get("seeds", [])] or None
        eL, eR = _expr(doc, c["L"]), _expr(doc, c["R"])
        engine._check_parallel(eL, eR)
        node = engine._build(doc.registry, eL, eR, (set(), set()), seeds,
                             () if seeds is not None else None)
        if not isinstance(node, DepFunNode):
            raise EngineError("expected a fun(...) expression")
        inp, out = node.closure({}, {})
        if thm == "dep_fun_closure":
            rep = verify_closure_theorem(inp, star, out)
        else:
            rep = similarity_check(inp, out, c.get("variant", "main"))
        return _from_report(i, "verify", label, rep, rep.property)
    if thm == "dep_fun_closure_raw":
        E1 = _lookup(doc.equivalences, c["E1"], "equivalence")
        inp = DepFunClosureInput(E1, _lookup(doc.dep_relations, c["L2"], "dependent relation"),
                                 _lookup(doc.dep_relations, c["R2"], "dependent relation"),
                                 _lookup(doc.dep_functions, c["l2"], "dependent function"),
                                 _lookup(doc.dep_functions, c["r2"], "dependent function"),
                                 doc.registry.cap)
        rep = verify_closure_theorem(inp, star)
        return _from_report(i, "verify", label, rep, rep.property)
    if thm in ("functor", "functor_similarity"):
        fname = c["functor"]
        carrier = None
        if fname.startswith("const_"):
            carrier = _lookup(doc.registry.carriers, fname[6:], "carrier")
            fname = "const"
        F = builtin_functor(fname, carrier)
        comps = _records(doc, c.get("components", []))
        rep = (verify_functor_theorem(F, comps, star) if thm == "functor"
               else functor_similarity_check(F, comps))
        return _from_report(i, "verify", label, rep, rep.property)
    if thm in ("composition", "composition_coincide", "composition_similarity"):
        E1, E2 = _records(doc, [c["first"], c["second"]])
        if thm == "composition":
            rep = verify_comp_theorem(E1, E2, star)
        elif thm == "composition_coincide":
            rep = verify_comp_coincide(E1, E2, star)
        else:
            rep = comp_similarity_check(E1, E2, c.get("variant", "main"))
        return _from_report(i, "verify", label, rep, rep.property)
    if thm == "lifting_comparison":
        Q1 = _lookup(doc.quotients, c["first"], "quotient")
        Q2 = _lookup(doc.quotients, c["second"], "quotient")
        rep = lifting_comparison_check(Q1, Q2)
        return _from_report(i, "verify", label, rep, rep.property)
    raise DocumentError(f"unknown theorem {thm!r}")


def _counterexample(doc: Document, c: dict, i: int) -> Outcome:
    thm, drop = c["theorem"], c.get("drop")
    bound = int(c.get("bound", 2))
    label = f"{thm}-{drop}" if drop else thm
    rep = counterexample_search(thm, drop, bound)
    found = not rep.verdict
    outcome = "found" if found else "exhausted"
    expect = c.get("expect")
    if expect not in (None, "found", "exhausted"):
        raise DocumentError(f"expect must be 'found' or 'exhausted', not {expect!r}")
    ok = (outcome == expect) if expect else not found
    witness = list(rep.witness) if rep.witness else None
    detail = outcome + (f" witness=({'; '.join(witness)})" if witness else "")
    return Outcome(i, "counterexample", label, "PASS" if ok else "FAIL", detail, witness,
                   report=rep.to_dict())


_COMMANDS = {"check": _check, "transport": _transport, "verify": _verify,
             "counterexample": _counterexample}


def run_document(doc: Document) -> RunReport:
    outcomes = []
    for i, c in enumerate(doc.commands):
        start = time.perf_counter()
        cmd = c.get("cmd", "?") if isinstance(c, dict) else "?"
        try:
            if cmd not in _COMMANDS:
                raise DocumentError(f"unknown command {cmd!r}")
            o = _COMMANDS[cmd](doc, c, i)
        except (DocumentError, EngineError, CapExceeded, ValueError, KeyError) as exc:
            label = str(c.get("term") or c.get("equivalence") or c.get("theorem") or c.get("quotient") or "-")
            msg = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
            o = Outcome(i, cmd, label, "ERROR", msg)
        o.seconds = time.perf_counter() - start
        outcomes.append(o)
    return RunReport(outcomes)


def run_text(text: str, cap: int = DEFAULT_CAP, bound: int = 3) -> RunReport:
    with list_bound(bound):
        doc = load_document(text)
        doc.registry = doc.registry.with_cap(cap)
        return run_document(doc)


def run_file(path: str | Path, cap: int = DEFAULT_CAP, bound: int = 3) -> RunReport:
    return run_text(Path(path).read_text(), cap, bound)


def emit_report(report: RunReport, fmt: str = "text", timing: bool = False) -> str:
    if fmt == "structured":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    return "".join(o.line(timing) + "\n" for o in report.outcomes)


def parse_report(text: str) -> RunReport:
    """Inverse of ``emit_report(..., "structured")``."""
    return RunReport.from_dict(json.loads(text))


# --- shipped documents -------------------------------------------------------------------

def shipped_documents() -> list[str]:
    root = resources.files("partial_galois") / "documents"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def shipped_document(name: str) -> str:
    path = resources.files("partial_galois") / "documents" / f"{name}.json"
    if not path.is_file():
        raise DocumentError(f"no shipped document {name!r}; available: {', '.join(shipped_documents())}")
    return path.read_text()


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="pgc", description="Check, verify and transport along partial Galois equivalences.")
    ap.add_argument("file", nargs="?", help="JSON declaration document")
    ap.add_argument("--fixture", help="run a shipped document by name instead of a file")
    ap.add_argument("--list-fixtures", action="store_true", help="list shipped documents and exit")
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    ap.add_argument("--cap", type=int, default=DEFAULT_CAP, help="function-space pair cap")
    ap.add_argument("--list-bound", type=int, default=3, help="maximum list length")
    ap.add_argument("--timing", action="store_true", help="append elapsed time to text lines")
    args = ap.parse_args(argv)

    if args.list_fixtures:
        print("\n".join(shipped_documents()))
        return 0
    if (args.file is None) == (args.fixture is None):
        ap.error("give exactly one of FILE or --fixture")
    try:
        text = shipped_document(args.fixture) if args.fixture else Path(args.file).read_text()
        report = run_text(text, args.cap, args.list_bound)
    except (DocumentError, OSError, EngineError, ValueError) as exc:
        print(f"ERROR document {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(report, args.format, args.timing))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
