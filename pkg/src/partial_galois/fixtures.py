"""Small concrete carriers, relations and equivalences used by tests, docs and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .galois import EquivalenceRecord, PartialQuotient
from .relations import Pred, Rel, restricted_eq
from .values import Carrier, Cons, FunTable, Int, List, canon_key, fun_space_carrier, val

UNIVERSE = (0, 1, 2)


def b2() -> Carrier:
    return Carrier.of("B2", [0, 1])


def int5() -> Carrier:
    return Carrier.of("Int5", range(-2, 3))


def nat3() -> Carrier:
    return Carrier.of("Nat3", range(3))


def to_nat(i: Int) -> Int:
    """Totalized: negatives map to 0."""
    return Int(max(i.value, 0))


def identity_record() -> EquivalenceRecord:
    return EquivalenceRecord.identity(Rel.eq(b2()))


# --- Fixture B: integers and naturals --------------------------------------------

def zpos() -> Rel:
    Z = int5()
    return restricted_eq(Pred(Z, [x for x in Z if x.value >= 0]))


def to_nat_table() -> FunTable:
    return FunTable.from_function(int5(), nat3(), to_nat)


def to_int_table() -> FunTable:
    return FunTable.from_function(nat3(), int5(), lambda n: n)


def fixture_b(broken: bool = False) -> EquivalenceRecord:
    """``(Zpos, (=), to_nat, to_int)``; ``broken`` replaces ``l`` by the constant 0."""
    l = FunTable.from_function(int5(), nat3(), lambda i: 0) if broken else to_nat_table()
    return EquivalenceRecord(zpos(), Rel.eq(nat3()), l, to_int_table())


def zn() -> Rel:
    """``ZN i n  <->  i = to_int n`` on the bounded carriers."""
    return Rel.from_predicate(int5(), nat3(), lambda i, n: i == n)


def fixture_b_quotient() -> PartialQuotient:
    return PartialQuotient(zn(), to_nat_table(), to_int_table())


# --- renaming Nat3 to tagged copies ----------------------------------------------

def nat3_prime() -> Carrier:
    return Carrier("Nat3'", [Cons("N", (Int(n),)) for n in UNIVERSE])


def renaming() -> EquivalenceRecord:
    src, dst = nat3(), nat3_prime()
    fwd = FunTable.from_function(src, dst, lambda n: Cons("N", (n,)))
    back = FunTable.from_function(dst, src, lambda c: c.args[0])
    return EquivalenceRecord(Rel.eq(src), Rel.eq(dst), fwd, back)


def renaming_quotient() -> PartialQuotient:
    E = renaming()
    return PartialQuotient(Rel.graph(E.l), E.l, E.r)


# --- Fixture C: lists and finite sets --------------------------------------------

def fset(xs) -> Cons:
    return Cons("Fset", sorted({val(x) for x in xs}))


@dataclass(frozen=True)
class ListsFsets:
    lists: Carrier
    fsets: Carrier
    nat: Carrier
    LFS: Rel
    LFS_L: Rel
    eq_fset: Rel
    to_fset: FunTable
    to_list_fin: FunTable
    max_list: FunTable

    @property
    def record(self) -> EquivalenceRecord:
        return EquivalenceRecord(self.LFS_L, self.eq_fset, self.to_fset, self.to_list_fin)

    @property
    def quotient(self) -> PartialQuotient:
        return PartialQuotient(self.LFS, self.to_fset, self.to_list_fin)


def all_lists(elements, bound: int) -> list[List]:
    out = [List()]
    frontier = [()]
    for _ in range(bound):
        frontier = [p + (e,) for p in frontier for e in elements]
        out.extend(List(p) for p in frontier)
    return out


@lru_cache(maxsize=None)
def fixture_c() -> ListsFsets:
    elems = [Int(i) for i in UNIVERSE]
    lists = Carrier("List3", all_lists(elems, 3))
    subsets = [[e for k, e in enumerate(elems) if mask >> k & 1] for mask in range(8)]
    fsets = Carrier("Fset3", [fset(s) for s in subsets])
    nat = nat3()
    to_fset = FunTable.from_function(lists, fsets, lambda xs: fset(xs.items))
    to_list_fin = FunTable.from_function(fsets, lists, lambda s: List(s.args))
    LFS = Rel.graph(to_fset)
    LFS_L = Rel.from_predicate(lists, lists, lambda a, b: to_fset(a) == to_fset(b))
    max_list = FunTable.from_function(lists, nat, lambda xs: max((x.value for x in xs.items), default=0))
    return ListsFsets(lists, fsets, nat, LFS, LFS_L, Rel.eq(fsets), to_fset, to_list_fin, max_list)


def max_fset_oracle(s: Cons) -> int:
    """Maximum of the enumerated elements, 0 for the empty set."""
    best = 0
    for e in s.args:
        if e.value > best:
            best = e.value
    return best


# --- Fixture E: halving connection -----------------------------------------------

def le(carrier: Carrier) -> Rel:
    return Rel.from_predicate(carrier, carrier, lambda a, b: a.value <= b.value)


def four() -> Carrier:
    return Carrier.of("Four", range(4))


def fixture_e() -> EquivalenceRecord:
    """``(Le4, Le2, halve, y |-> 2y+1)``: a connection that is not an equivalence."""
    F, B = four(), b2()
    halve = FunTable.from_function(F, B, lambda x: x.value // 2)
    odd = FunTable.from_function(B, F, lambda y: 2 * y.value + 1)
    return EquivalenceRecord(le(F), le(B), halve, odd, "connection")


def fixture_e_double() -> EquivalenceRecord:
    """``(Le2, Le4, y |-> 2y, halve)``, the companion connection in the other direction."""
    F, B = four(), b2()
    double = FunTable.from_function(B, F, lambda y: 2 * y.value)
    halve = FunTable.from_function(F, B, lambda x: x.value // 2)
    return EquivalenceRecord(le(B), le(F), double, halve, "connection")


# --- element PER for the indexing example ----------------------------------------

def elements3() -> Carrier:
    return Carrier.of("Elt3", UNIVERSE)


def element_per() -> Rel:
    """The PER identifying 0 and 1; 2 lies outside its field."""
    E = elements3()
    return Rel.from_predicate(E, E, lambda a, b: a.value < 2 and b.value < 2)


# --- curried tables ----------------------------------------------------------------

def curried(dom1: Carrier, dom2: Carrier, cod: Carrier, fn) -> FunTable:
    """``x |-> (y |-> fn(x, y))`` with the inner tables as the outer codomain."""
    inner = [FunTable.from_function(dom2, cod, lambda y, x=x: fn(x, y)) for x in dom1]
    space = fun_space_carrier(dom2, cod, sorted(set(inner), key=canon_key))
    return FunTable(dom1, space, inner)


# --- Fixture D: guarded subtraction ------------------------------------------------

def clamp(i: int, lo: int = -2, hi: int = 2) -> int:
    return min(max(i, lo), hi)


def sub_int() -> FunTable:
    """Integer subtraction, saturating at the ends of Int5."""
    Z = int5()
    return curried(Z, Z, Z, lambda a, b: clamp(a.value - b.value))


def sub_nat_oracle(n1: int, n2: int) -> int:
    """``to_nat (to_int n1 - to_int n2)``."""
    return max(n1 - n2, 0)


SUBTRACTION_L = "fun(i1 _: atom Zpos) -> fun(i2 _: atom Zpos if geq(i1,i2)) -> atom Zpos"
SUBTRACTION_R = "fun(n1 _: eq Nat3) -> fun(n2 _: eq Nat3 if geq_nat(n1,n2)) -> eq Nat3"
SUBTRACTION_UNGUARDED_L = "fun(i1 _: atom Zpos) -> fun(i2 _: atom Zpos) -> atom Zpos"
SUBTRACTION_UNGUARDED_R = "fun(n1 _: eq Nat3) -> fun(n2 _: eq Nat3) -> eq Nat3"


def subtraction_registry():
    from .engine import Registry, register_equivalence
    Z, N = int5(), nat3()
    reg = Registry(
        carriers={"Int5": Z, "Nat3": N},
        relations={"Zpos": zpos()},
        functions={"sub_int": sub_int()},
        conditions={"geq": Rel.from_predicate(Z, Z, lambda a, b: a.value >= b.value),
                    "geq_nat": Rel.from_predicate(N, N, lambda a, b: a.value >= b.value)})
    return register_equivalence(reg, "int_nat", fixture_b())


# --- indexing: bounded lists and tagged arrays over an element PER ------------------

def arr(xs) -> Cons:
    return Cons("Arr", tuple(val(x) for x in xs))


def index_oracle(xs, i: int) -> int:
    """Out-of-bounds lookups return 2, which lies outside the element PER's field."""
    return xs[i].value if i < len(xs) else 2


INDEX_L = "fun(xs _: atom ListS) -> fun(i _: eq Nat3 if in_bounds(xs,i)) -> atom S"
INDEX_R = "fun(a _: atom ArrS) -> fun(i _: eq Nat3 if in_bounds_arr(a,i)) -> atom S"
INDEX_UNGUARDED_L = "fun(xs _: atom ListS) -> fun(i _: eq Nat3) -> atom S"
INDEX_UNGUARDED_R = "fun(a _: atom ArrS) -> fun(i _: eq Nat3) -> atom S"


def indexing_registry():
    from .engine import Registry, register_equivalence
    from .functors import builtin_functor
    E, N = elements3(), nat3()
    S = element_per()
    list_rel = builtin_functor("list3").rel_fn([S])
    lists = list_rel.left
    arrays = Carrier("Arr3", [arr(xs.items) for xs in lists])
    to_arr = FunTable.from_function(lists, arrays, lambda xs: arr(xs.items))
    to_list = FunTable.from_function(arrays, lists, lambda a: List(a.args))
    arr_rel = Rel(arrays, arrays, [(to_arr(a), to_arr(b)) for a, b in list_rel])
    index = curried(lists, N, E, lambda xs, i: index_oracle(xs.items, i.value))
    reg = Registry(
        carriers={"Elt3": E, "Nat3": N, "List3": lists, "Arr3": arrays},
        relations={"S": S, "ListS": list_rel, "ArrS": arr_rel},
        functions={"index": index},
        conditions={
            "in_bounds": Rel.from_predicate(lists, N, lambda xs, i: i.value < len(xs)),
            "in_bounds_arr": Rel.from_predicate(arrays, N, lambda a, i: i.value < len(a.args))})
    return register_equivalence(reg, "list_arr", EquivalenceRecord(list_rel, arr_rel, to_arr, to_list))


def lists_fsets_registry():
    from .engine import Registry, register_equivalence
    C = fixture_c()
    reg = Registry(carriers={"List3": C.lists, "Fset3": C.fsets, "Nat3": C.nat},
                   relations={"LFS_L": C.LFS_L, "LFS": C.LFS},
                   functions={"max_list": C.max_list})
    return register_equivalence(reg, "lists_fsets", C.record)


MAX_L = "fun(_ _: atom LFS_L) -> eq Nat3"
MAX_R = "fun(_ _: eq Fset3) -> eq Nat3"
