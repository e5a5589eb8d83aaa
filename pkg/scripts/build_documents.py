"""Regenerate the shipped JSON documents from the Python fixtures.

Run from the repository root:  python3 scripts/build_documents.py
"""

import json
from pathlib import Path

from partial_galois import fixtures as fx
from partial_galois.values import format_value as fv

OUT = Path(__file__).resolve().parent.parent / "src" / "partial_galois" / "documents"


def carrier(c):
    return [fv(x) for x in c]


def table(f):
    return {"dom": f.dom.name, "cod": f.cod.name, "table": [[fv(x), fv(y)] for x, y in f.items()]}


def curried(f, cod):
    rows = [[fv(x), fv(y), fv(z)] for x, g in f.items() for y, z in g.items()]
    return {"dom": [f.dom.name, f.cod.elements[0].dom.name], "cod": cod, "table": rows}


def pairs(r):
    return {"between": [r.left.name, r.right.name], "pairs": [[fv(x), fv(y)] for x, y in r.sorted_pairs()]}


def lists_fsets():
    C = fx.fixture_c()
    return {
        "carriers": {"List3": carrier(C.lists), "Fset3": carrier(C.fsets), "Nat3": carrier(C.nat)},
        "functions": {"to_fset": table(C.to_fset), "to_list_fin": table(C.to_list_fin),
                      "max_list": table(C.max_list),
                      "id_fset": {"dom": "Fset3", "cod": "Fset3",
                                  "table": [[fv(s), fv(s)] for s in C.fsets]}},
        "relations": {"LFS_L": {"kernel": "to_fset"}, "LFS": {"graph": "to_fset"},
                      "eq_fset": {"eq": "Fset3"}},
        "equivalences": {"lists_fsets": {"L": "LFS_L", "R": "eq_fset", "l": "to_fset", "r": "to_list_fin"}},
        "quotients": {"lfs": {"T": "LFS", "Abs": "to_fset", "Rep": "to_list_fin"},
                      "fset_id": {"T": "eq_fset", "Abs": "id_fset", "Rep": "id_fset"}},
        "commands": [
            {"cmd": "check", "equivalence": "lists_fsets", "class": "per_equiv"},
            {"cmd": "check", "quotient": "lfs", "property": "partial_quotient"},
            {"cmd": "check", "quotient": "lfs", "property": "lemmas"},
            {"cmd": "transport", "term": "max_list", "L": fx.MAX_L, "R": fx.MAX_R},
            {"cmd": "verify", "theorem": "lifting_comparison", "first": "lfs", "second": "fset_id"},
        ],
    }


def _subtraction_base():
    E = fx.fixture_b()
    Z, N = fx.int5(), fx.nat3()
    return {
        "carriers": {"Int5": carrier(Z), "Nat3": carrier(N)},
        "functions": {"to_nat": table(E.l), "to_int": table(E.r),
                      "sub_int": curried(fx.sub_int(), "Int5")},
        "relations": {"Zpos": {"restricted_eq": "Int5", "members": ["0", "1", "2"]},
                      "eq_nat": {"eq": "Nat3"},
                      "geq": pairs(fx.Rel.from_predicate(Z, Z, lambda a, b: a.value >= b.value)),
                      "geq_nat": pairs(fx.Rel.from_predicate(N, N, lambda a, b: a.value >= b.value))},
        "equivalences": {"int_nat": {"L": "Zpos", "R": "eq_nat", "l": "to_nat", "r": "to_int"}},
    }


def subtraction():
    doc = _subtraction_base()
    doc["commands"] = [
        {"cmd": "check", "equivalence": "int_nat"},
        {"cmd": "transport", "term": "sub_int", "L": fx.SUBTRACTION_L, "R": fx.SUBTRACTION_R},
        {"cmd": "verify", "theorem": "dep_fun_closure", "name": "subtraction_closure",
         "L": fx.SUBTRACTION_L, "R": fx.SUBTRACTION_R, "seeds": ["sub_int"], "star": "per_equiv"},
        {"cmd": "verify", "theorem": "dep_fun_similarity", "name": "subtraction_similarity",
         "L": fx.SUBTRACTION_L, "R": fx.SUBTRACTION_R, "seeds": ["sub_int"]},
        {"cmd": "counterexample", "theorem": "subtraction_guard", "drop": "guard", "bound": 2,
         "expect": "found"},
    ]
    return doc


def subtraction_unguarded():
    doc = _subtraction_base()
    doc["commands"] = [
        {"cmd": "transport", "term": "sub_int", "L": fx.SUBTRACTION_UNGUARDED_L,
         "R": fx.SUBTRACTION_UNGUARDED_R},
    ]
    return doc


def halving():
    E, D = fx.fixture_e(), fx.fixture_e_double()
    return {
        "carriers": {"Four": carrier(fx.four()), "B2": carrier(fx.b2())},
        "functions": {"halve": table(E.l), "odd": table(E.r), "double": table(D.l)},
        "relations": {"Le4": pairs(E.L), "Le2": pairs(E.R)},
        "equivalences": {"halving": {"L": "Le4", "R": "Le2", "l": "halve", "r": "odd", "class": "connection"},
                         "doubling": {"L": "Le2", "R": "Le4", "l": "double", "r": "halve",
                                      "class": "connection"}},
        "dep_relations": {"Le2_const": {"params": ["Four", "Four"], "base": ["B2", "B2"], "default": "Le2"},
                          "Le4_const": {"params": ["B2", "B2"], "base": ["Four", "Four"], "default": "Le4"}},
        "dep_functions": {"double_const": {"params": ["B2", "Four"], "default": "double"},
                          "halve_const": {"params": ["Four", "B2"], "default": "halve"}},
        "commands": [
            {"cmd": "check", "equivalence": "halving"},
            {"cmd": "check", "equivalence": "halving", "property": "lemmas"},
            {"cmd": "verify", "theorem": "functor", "name": "option_halving", "functor": "option",
             "components": ["halving"], "star": "connection"},
            {"cmd": "verify", "theorem": "dep_fun_closure_raw", "name": "lifted_halving",
             "E1": "halving", "L2": "Le2_const", "R2": "Le4_const", "l2": "double_const",
             "r2": "halve_const", "star": "connection"},
        ],
    }


def broken():
    E = fx.fixture_b(broken=True)
    H = fx.fixture_e()
    return {
        "carriers": {"Int5": carrier(fx.int5()), "Nat3": carrier(fx.nat3()),
                     "Four": carrier(fx.four()), "B2": carrier(fx.b2())},
        "functions": {"zero": table(E.l), "to_int": table(E.r), "halve": table(H.l), "odd": table(H.r)},
        "relations": {"Zpos": {"restricted_eq": "Int5", "members": ["0", "1", "2"]},
                      "eq_nat": {"eq": "Nat3"}, "Le4": pairs(H.L), "Le2": pairs(H.R)},
        "equivalences": {"zpos_bad": {"L": "Zpos", "R": "eq_nat", "l": "zero", "r": "to_int",
                                      "class": "connection"},
                         "halving": {"L": "Le4", "R": "Le2", "l": "halve", "r": "odd",
                                     "class": "galois_equiv"}},
        "commands": [
            {"cmd": "check", "equivalence": "zpos_bad", "class": "connection"},
            {"cmd": "check", "equivalence": "halving", "class": "galois_equiv"},
        ],
    }


def indexing():
    reg = fx.indexing_registry()
    f = reg.functions["index"]
    E = reg.equivalences["list_arr"]
    return {
        "carriers": {k: carrier(reg.carriers[k]) for k in ("Elt3", "Nat3", "Arr3")}
        | {"List3": carrier(reg.carriers["List3"])},
        "functions": {"index": {"dom": ["List3", "Nat3"], "cod": "Elt3",
                                "table": [[fv(x), fv(i), fv(v)] for x, g in f.items() for i, v in g.items()]},
                      "to_arr": {"dom": "List3", "cod": "Arr3", "table": [[fv(x), fv(y)] for x, y in E.l.items()]},
                      "to_list": {"dom": "Arr3", "cod": "List3", "table": [[fv(x), fv(y)] for x, y in E.r.items()]}},
        "relations": {"S": {"between": ["Elt3", "Elt3"], "pairs": [[fv(x), fv(y)] for x, y in reg.relations["S"].sorted_pairs()]},
                      "ListS": {"between": ["List3", "List3"], "pairs": [[fv(x), fv(y)] for x, y in E.L.sorted_pairs()]},
                      "ArrS": {"between": ["Arr3", "Arr3"], "pairs": [[fv(x), fv(y)] for x, y in E.R.sorted_pairs()]},
                      "in_bounds": {"between": ["List3", "Nat3"], "pairs": [[fv(x), fv(y)] for x, y in reg.conditions["in_bounds"].sorted_pairs()]},
                      "in_bounds_arr": {"between": ["Arr3", "Nat3"], "pairs": [[fv(x), fv(y)] for x, y in reg.conditions["in_bounds_arr"].sorted_pairs()]}},
        "equivalences": {"list_arr": {"L": "ListS", "R": "ArrS", "l": "to_arr", "r": "to_list"}},
        "commands": [
            {"cmd": "check", "equivalence": "list_arr"},
            {"cmd": "transport", "term": "index", "L": fx.INDEX_L, "R": fx.INDEX_R},
        ],
    }


def compose():
    E, P = fx.fixture_b(), fx.renaming()
    return {
        "carriers": {"Int5": carrier(fx.int5()), "Nat3": carrier(fx.nat3()), "Nat3p": carrier(fx.nat3_prime())},
        "functions": {"to_nat": table(E.l), "to_int": table(E.r),
                      "rename": {"dom": "Nat3", "cod": "Nat3p", "table": [[fv(x), fv(y)] for x, y in P.l.items()]},
                      "unrename": {"dom": "Nat3p", "cod": "Nat3", "table": [[fv(x), fv(y)] for x, y in P.r.items()]}},
        "relations": {"Zpos": {"restricted_eq": "Int5", "members": ["0", "1", "2"]},
                      "eq_nat": {"eq": "Nat3"}, "eq_natp": {"eq": "Nat3p"},
                      "ZN": pairs(fx.zn()), "rename_graph": {"graph": "rename"}},
        "equivalences": {"int_nat": {"L": "Zpos", "R": "eq_nat", "l": "to_nat", "r": "to_int"},
                         "renaming": {"L": "eq_nat", "R": "eq_natp", "l": "rename", "r": "unrename"}},
        "quotients": {"zn": {"T": "ZN", "Abs": "to_nat", "Rep": "to_int"},
                      "rename_q": {"T": "rename_graph", "Abs": "rename", "Rep": "unrename"}},
        "commands": [
            {"cmd": "verify", "theorem": "composition", "first": "int_nat", "second": "renaming",
             "star": "per_equiv"},
            {"cmd": "verify", "theorem": "composition_coincide", "first": "int_nat", "second": "renaming",
             "star": "per_equiv"},
            {"cmd": "verify", "theorem": "composition_similarity", "first": "int_nat", "second": "renaming"},
            {"cmd": "verify", "theorem": "lifting_comparison", "first": "zn", "second": "rename_q"},
            {"cmd": "counterexample", "theorem": "comp_galequiv", "drop": "commutation", "bound": 2,
             "expect": "found"},
        ],
    }


DOCUMENTS = {"lists_fsets": lists_fsets, "subtraction": subtraction,
             "subtraction_unguarded": subtraction_unguarded, "halving": halving,
             "broken_retraction": broken, "indexing": indexing, "compose": compose,
             "empty": lambda: {}}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, build in DOCUMENTS.items():
        (OUT / f"{name}.json").write_text(json.dumps(build(), indent=1) + "\n")
        print("wrote", name)


if __name__ == "__main__":
    main()
