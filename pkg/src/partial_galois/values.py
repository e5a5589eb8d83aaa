"""Value universe: first-order values, finite carriers, and function tables.

Every quantifier in the library ranges over a :class:`Carrier`, an
explicitly enumerated, canonically sorted set of elements.  Elements are
either :class:`Value` instances or, for function-space carriers,
:class:`FunTable` instances.
"""

from __future__ import annotations

import itertools
import re
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "Bool", "Carrier", "CapExceeded", "Cons", "FunTable", "Int", "List",
    "Tuple", "Value", "ValueSyntaxError", "canon_key", "compare_values",
    "config", "enumerate_fun_tables", "format_value", "list_bound",
    "parse_value", "val",
]


class ValueSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class CapExceeded(ValueError):
    """A finite enumeration would exceed its configured cap."""


@dataclass
class _Config:
    list_bound: int = 3


config = _Config()


@contextmanager
def list_bound(k: int) -> Iterator[None]:
    old = config.list_bound
    config.list_bound = k
    try:
        yield
    finally:
        config.list_bound = old


# Tag ranks for the canonical order: Int < Bool < Tuple < List < Cons.
# Function tables sort after every value.
_INT, _BOOL, _TUPLE, _LIST, _CONS, _TABLE = range(6)


class Value:
    """Base class of the closed first-order value grammar."""

    __slots__ = ("_key", "_hash")
    _key: tuple

    def __lt__(self, other: Value) -> bool:
        return self._key < canon_key(other)

    def __le__(self, other: Value) -> bool:
        return self._key <= canon_key(other)

    def __gt__(self, other: Value) -> bool:
        return self._key > canon_key(other)

    def __ge__(self, other: Value) -> bool:
        return self._key >= canon_key(other)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Value):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return format_value(self)

    def _init(self, key: tuple) -> None:
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("values are immutable")


class Int(Value):
    __slots__ = ("value",)

    def __init__(self, value: int):
        object.__setattr__(self, "value", int(value))
        self._init((_INT, self.value))

    def __repr__(self) -> str:
        return f"Int({self.value})"


class Bool(Value):
    __slots__ = ("value",)

    def __init__(self, value: bool):
        object.__setattr__(self, "value", bool(value))
        self._init((_BOOL, self.value))

    def __repr__(self) -> str:
        return f"Bool({self.value})"


class Tuple(Value):
    __slots__ = ("items",)

    def __init__(self, items: Iterable[Value]):
        items = tuple(items)
        if len(items) < 2:
            raise ValueError("tuples have at least two components")
        object.__setattr__(self, "items", items)
        self._init((_TUPLE, tuple(v._key for v in items)))

    def __repr__(self) -> str:
        return f"Tuple({list(self.items)!r})"


class List(Value):
    __slots__ = ("items",)

    def __init__(self, items: Iterable[Value] = ()):
        items = tuple(items)
        if len(items) > config.list_bound:
            raise ValueError(
                f"list of length {len(items)} exceeds the list bound {config.list_bound}")
        object.__setattr__(self, "items", items)
        self._init((_LIST, tuple(v._key for v in items)))

    def __len__(self) -> int:
        return len(self.items)

    def __repr__(self) -> str:
        return f"List({list(self.items)!r})"


class Cons(Value):
    __slots__ = ("name", "args")

    def __init__(self, name: str, args: Iterable[Value] = ()):
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
            raise ValueError(f"invalid constructor name {name!r}")
        args = tuple(args)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "args", args)
        self._init((_CONS, name, tuple(v._key for v in args)))

    def __repr__(self) -> str:
        return f"Cons({self.name!r}, {list(self.args)!r})"


def val(x: Any) -> Value:
    """Convert a Python literal into a :class:`Value`.

    ``bool`` becomes :class:`Bool`, ``int`` :class:`Int`, ``tuple``
    :class:`Tuple` and ``list`` :class:`List`; values pass through.
    """
    if isinstance(x, Value):
        return x
    if isinstance(x, bool):
        return Bool(x)
    if isinstance(x, int):
        return Int(x)
    if isinstance(x, tuple):
        return Tuple(val(v) for v in x)
    if isinstance(x, list):
        return List(val(v) for v in x)
    raise TypeError(f"cannot convert {x!r} to a value")


def canon_key(x: Element) -> tuple:
    if isinstance(x, (Value, FunTable)):
        return x._key
    raise TypeError(f"not a carrier element: {x!r}")


def compare_values(a: Element, b: Element) -> int:
    """Three-way canonical comparison: -1, 0 or 1."""
    ka, kb = canon_key(a), canon_key(b)
    return (ka > kb) - (ka < kb)


def format_value(x: Element) -> str:
    if isinstance(x, Int):
        return str(x.value)
    if isinstance(x, Bool):
        return "true" if x.value else "false"
    if isinstance(x, Tuple):
        return "(" + ",".join(format_value(v) for v in x.items) + ")"
    if isinstance(x, List):
        return "[" + ",".join(format_value(v) for v in x.items) + "]"
    if isinstance(x, Cons):
        return x.name + "(" + ",".join(format_value(v) for v in x.args) + ")"
    if isinstance(x, FunTable):
        return "{" + ",".join(
            f"{format_value(a)}->{format_value(b)}" for a, b in x.items()) + "}"
    raise TypeError(f"not a carrier element: {x!r}")


_TOKEN = re.compile(r"\s*(?:(-?\d+)|([A-Za-z_][A-Za-z0-9_']*)|([()\[\],]))")


def parse_value(text: str) -> Value:
    """Parse ``text`` in the value grammar.

    ``INT | true | false | (v, v, ...) | [v, ...] | IDENT(v, ...)``
    """
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    text_len = len(text.rstrip())
    while pos < text_len:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        kind = ("int", "ident", "punct")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("eof", "", text_len))
    i = 0

    def peek() -> tuple[str, str, int]:
        return tokens[i]

    def expect(tok: str) -> None:
        nonlocal i
        kind, t, p = tokens[i]
        if t != tok or kind != "punct":
            raise ValueSyntaxError(f"expected {tok!r}, found {t or 'end of input'!r}", p)
        i += 1

    def items(close: str) -> list[Value]:
        nonlocal i
        out: list[Value] = []
        if peek()[1] == close:
            i += 1
            return out
        while True:
            out.append(value())
            kind, t, p = peek()
            if t == ",":
                i += 1
            elif t == close:
                i += 1
                return out
            else:
                raise ValueSyntaxError(f"expected ',' or {close!r}", p)

    def value() -> Value:
        nonlocal i
        kind, t, p = peek()
        if kind == "int":
            i += 1
            return Int(int(t))
        if kind == "ident":
            i += 1
            if t in ("true", "false"):
                return Bool(t == "true")
            expect("(")
            return Cons(t, items(")"))
        if t == "(":
            i += 1
            elems = items(")")
            if len(elems) < 2:
                raise ValueSyntaxError("tuples need at least two components", p)
            return Tuple(elems)
        if t == "[":
            i += 1
            elems = items("]")
            if len(elems) > config.list_bound:
                raise ValueSyntaxError(
                    f"list of length {len(elems)} exceeds the list bound {config.list_bound}", p)
            return List(elems)
        raise ValueSyntaxError(f"unexpected token {t or 'end of input'!r}", p)

    result = value()
    if peek()[0] != "eof":
        raise ValueSyntaxError("trailing input", peek()[2])
    return result


class Carrier:
    """A named finite set of elements in canonical order."""

    __slots__ = ("name", "elements", "index", "_hash")

    def __init__(self, name: str, elements: Iterable[Element] = ()):
        elems = sorted(set(elements), key=canon_key)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "elements", tuple(elems))
        object.__setattr__(self, "index", {e: i for i, e in enumerate(elems)})
        object.__setattr__(self, "_hash", hash((name, self.elements)))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("carriers are immutable")

    def __contains__(self, x: object) -> bool:
        return x in self.index

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Carrier):
            return NotImplemented
        return (self._hash == other._hash and self.name == other.name
                and self.elements == other.elements)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Carrier({self.name!r}, {len(self.elements)} elements)"

    @classmethod
    def of(cls, name: str, xs: Iterable[Any]) -> Carrier:
        return cls(name, (val(x) for x in xs))

    def check(self, x: object, what: str = "element") -> None:
        if x not in self.index:
            raise ValueError(f"{what} {_show(x)} is not in carrier {self.name}")


class FunTable:
    """A total function from ``dom`` to ``cod``, stored extensionally."""

    __slots__ = ("dom", "cod", "outputs", "_key", "_hash")

    def __init__(self, dom: Carrier, cod: Carrier, outputs: Sequence[Element]):
        outputs = tuple(outputs)
        if len(outputs) != len(dom):
            raise ValueError(f"table has {len(outputs)} entries for a domain of {len(dom)}")
        for y in outputs:
            cod.check(y, "output")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "outputs", outputs)
        object.__setattr__(self, "_key", (_TABLE, tuple(y._key for y in outputs)))
        object.__setattr__(self, "_hash", hash(self._key))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("function tables are immutable")

    @classmethod
    def from_mapping(cls, dom: Carrier, cod: Carrier, table: Mapping[Element, Element]) -> FunTable:
        missing = [x for x in dom if x not in table]
        if missing:
            raise ValueError(f"table is not total: no entry for {_show(missing[0])}")
        return cls(dom, cod, [table[x] for x in dom])

    @classmethod
    def from_function(cls, dom: Carrier, cod: Carrier, fn: Callable[[Any], Any]) -> FunTable:
        return cls(dom, cod, [_lift(fn(x)) for x in dom])

    @classmethod
    def identity(cls, carrier: Carrier) -> FunTable:
        return cls(carrier, carrier, carrier.elements)

    def __call__(self, x: Element) -> Element:
        try:
            return self.outputs[self.dom.index[x]]
        except KeyError:
            raise ValueError(f"{_show(x)} is not in the domain {self.dom.name}") from None

    def items(self) -> Iterator[tuple[Element, Element]]:
        return zip(self.dom.elements, self.outputs)

    def then(self, other: FunTable) -> FunTable:
        """Diagrammatic composition: ``(self.then(g))(x) == g(self(x))``."""
        if self.cod != other.dom:
            raise ValueError(f"cannot compose: {self.cod.name} vs {other.dom.name}")
        return FunTable(self.dom, other.cod, [other(y) for y in self.outputs])

    def retarget(self, dom: Carrier | None = None, cod: Carrier | None = None) -> FunTable:
        """The same graph viewed between other carriers (must stay total)."""
        dom = self.dom if dom is None else dom
        cod = self.cod if cod is None else cod
        if dom is self.dom:
            return FunTable(dom, cod, self.outputs)
        return FunTable(dom, cod, [self(x) for x in dom])

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FunTable):
            return NotImplemented
        return (self._hash == other._hash and self.outputs == other.outputs
                and self.dom == other.dom and self.cod == other.cod)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: FunTable) -> bool:
        return self._key < canon_key(other)

    def __repr__(self) -> str:
        return f"FunTable({self.dom.name}->{self.cod.name}, {format_value(self)})"

    def __str__(self) -> str:
        return format_value(self)


Element = Union[Value, FunTable]


def _lift(y: Any) -> Element:
    return y if isinstance(y, FunTable) else val(y)


def _show(x: object) -> str:
    if isinstance(x, (Value, FunTable)):
        return format_value(x)
    return repr(x)


def space_size(dom: Carrier, cod: Carrier) -> int:
    return len(cod) ** len(dom)


def enumerate_fun_tables(dom: Carrier, cod: Carrier, cap: int) -> list[FunTable]:
    """All total tables ``dom -> cod`` in canonical order.

    Raises :class:`CapExceeded` when ``|cod| ** |dom|`` exceeds ``cap``.
    """
    n = space_size(dom, cod)
    if n > cap:
        raise CapExceeded(
            f"function space {dom.name}->{cod.name} has {len(cod)}^{len(dom)} = {n} "
            f"tables, cap is {cap}")
    return [FunTable(dom, cod, outs) for outs in itertools.product(cod.elements, repeat=len(dom))]


def fun_space_carrier(dom: Carrier, cod: Carrier, tables: Iterable[FunTable] | None = None,
                      cap: int | None = None) -> Carrier:
    """Carrier of tables ``dom -> cod``: the full space, or the given tables."""
    name = f"({dom.name}=>{cod.name})"
    if tables is None:
        if cap is None:
            raise ValueError("a cap is required to enumerate a full function space")
        tables = enumerate_fun_tables(dom, cod, cap)
    else:
        tables = list(tables)
        for t in tables:
            if t.dom != dom or t.cod != cod:
                raise ValueError(f"table {t!r} does not belong to {name}")
    return Carrier(name, tables)
