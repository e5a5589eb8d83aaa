"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line verdict; the lines are printed at the end of
the pytest run and also when the module is executed as a script:

    python3 tests/test_acceptance.py
"""

import subprocess
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from partial_galois import fixtures as fx  # noqa: E402
from partial_galois.cli import emit_report, run_text, shipped_document, shipped_documents  # noqa: E402
from partial_galois.compose import comp_similarity_check, lifting_comparison_check  # noqa: E402
from partial_galois.engine import TransportError, synthesize, transport  # noqa: E402
from partial_galois.functors import builtin_functor, functor_similarity_check  # noqa: E402
from partial_galois.funrel import nondep_input, similarity_check  # noqa: E402
from partial_galois.galois import (CLASSES, PartialQuotient, galois_class_check,  # noqa: E402
                                   lemma_equiv_to_quotient, lemma_galois_iff_flip,
                                   lemma_galois_is_transport, lemma_galois_to_order,
                                   lemma_order_to_galois, lemma_quotient_to_equiv)
from partial_galois.relations import DepRel, Rel, dep_fun_relator  # noqa: E402
from partial_galois.search import SWEEP_THEOREMS, consistency_sweep, counterexample_search  # noqa: E402
from partial_galois.values import Int, List  # noqa: E402

RESULTS: dict[int, str] = {}
TITLES = {
    1: "definition hierarchy on all fixtures",
    2: "bridging lemmas",
    3: "lists to finite sets: max transport",
    4: "guarded subtraction transport",
    5: "list to array indexing transport",
    6: "closure-theorem consistency sweeps",
    7: "similarity theorems",
    8: "condition necessity counterexamples",
    9: "lifting comparison",
    10: "CLI determinism and exit codes",
}
IMPLIES = [("per_equiv", "galois_equiv"), ("pre_equiv", "galois_equiv"),
           ("galois_equiv", "connection"), ("connection", "galois_prop"),
           ("galois_prop", "half_left"), ("galois_prop", "half_right")]


def record(n, problems):
    status = "PASS" if not problems else "FAIL"
    line = f"criterion {n:2d} {status} {TITLES[n]}"
    if problems:
        line += ": " + "; ".join(problems[:3])
    RESULTS[n] = line
    print(line)
    assert not problems, line


def subtraction_record():
    syn = synthesize(fx.subtraction_registry(), fx.SUBTRACTION_L, fx.SUBTRACTION_R, seeds=[fx.sub_int()])
    return syn.record


def all_fixtures():
    return {"identity": fx.identity_record(), "B": fx.fixture_b(), "C": fx.fixture_c().record,
            "D": subtraction_record(), "E": fx.fixture_e()}


def test_criterion_01_hierarchy():
    problems = []
    for name, E in all_fixtures().items():
        got = {c: bool(galois_class_check(c, E)) for c in CLASSES}
        want = oracles.classes(E)
        if got != want:
            problems.append(f"{name} disagrees with oracle on "
                            f"{sorted(c for c in CLASSES if got[c] != want[c])}")
        for strong, weak in IMPLIES:
            if got[strong] and not got[weak]:
                problems.append(f"{name}: {strong} without {weak}")
        if name != "E" and not got["per_equiv"]:
            problems.append(f"{name} is not a PER equivalence")
    E = fx.fixture_e()
    if not galois_class_check("connection", E):
        problems.append("E is not a connection")
    rep = galois_class_check("galois_equiv", E)
    if rep or rep.failing().property != "reverse_half_galois_left" or rep.witness != (Int(0), Int(0)):
        problems.append(f"E galois_equiv report was {rep.summary()}")
    record(1, problems)


def test_criterion_02_lemmas():
    problems = []
    records = list(all_fixtures().values()) + [fx.fixture_e_double()]
    C = fx.fixture_c()
    quotients = [fx.fixture_b_quotient(), C.quotient, fx.renaming_quotient(),
                 PartialQuotient.identity(C.fsets)]
    lemmas = {
        "galois_iff_flip": [lemma_galois_iff_flip(E) for E in records],
        "order_to_galois": [lemma_order_to_galois(E) for E in records],
        "galois_to_order": [lemma_galois_to_order(E) for E in records],
        "equiv_to_quotient": [lemma_equiv_to_quotient(E) for E in records],
        "transport_is_galois": [lemma_galois_is_transport(Q) for Q in quotients],
        "quotient_to_equiv": [lemma_quotient_to_equiv(Q) for Q in quotients],
    }
    for name, reps in lemmas.items():
        applicable = [r for r in reps if r.applicable]
        if not applicable:
            problems.append(f"{name} never applicable")
        for r in applicable:
            if not r:
                problems.append(f"{name}: {r.summary()}")
    record(2, problems)


def test_criterion_03_max_list():
    problems = []
    res = transport(fx.lists_fsets_registry(), "max_list", fx.MAX_L, fx.MAX_R)
    C = fx.fixture_c()
    for s in C.fsets:
        if res.term_out(s).value != fx.max_fset_oracle(s):
            problems.append(f"max at {s} is {res.term_out(s)}")
    if not res.relatedness:
        problems.append("relatedness " + res.relatedness.summary())
    eq_nat = DepRel.const(Rel.eq(C.nat), C.lists, C.fsets)
    if not dep_fun_relator("plain", C.LFS, eq_nat, C.max_list, res.term_out):
        problems.append("rewritten relator form fails")
    if not res.similarity:
        problems.append("similarity " + res.similarity.summary())
    record(3, problems)


def test_criterion_04_subtraction():
    problems = []
    reg = fx.subtraction_registry()
    res = transport(reg, "sub_int", fx.SUBTRACTION_L, fx.SUBTRACTION_R)
    N = fx.nat3()
    for n1 in N:
        for n2 in N:
            if res.term_out(n1)(n2).value != fx.sub_nat_oracle(n1.value, n2.value):
                problems.append(f"{n1}-{n2} gave {res.term_out(n1)(n2)}")
    zn, sub = fx.zn(), fx.sub_int()
    for i1, n1 in zn.pairs:
        for i2, n2 in zn.pairs:
            if i1.value >= i2.value and not zn.holds(sub(i1)(i2), res.term_out(n1)(n2)):
                problems.append(f"ZN fails at ({i1},{i2})")
    try:
        transport(reg, "sub_int", fx.SUBTRACTION_UNGUARDED_L, fx.SUBTRACTION_UNGUARDED_R)
        problems.append("unguarded transport succeeded")
    except TransportError as exc:
        if exc.witness != (Int(0), Int(1)):
            problems.append(f"unguarded witness {exc.witness}")
    record(4, problems)


def test_criterion_05_indexing():
    problems = []
    reg = fx.indexing_registry()
    res = transport(reg, "index", fx.INDEX_L, fx.INDEX_R)
    S, ListS, index = reg.relations["S"], reg.relations["ListS"], reg.functions["index"]
    checked = 0
    for xs in reg.carriers["List3"]:
        if not ListS.in_field(xs):
            continue
        a = fx.arr(xs.items)
        for i in fx.nat3():
            if i.value < len(xs.items):
                checked += 1
                if res.term_out(a)(i) != a.args[i.value]:
                    problems.append(f"index {a} {i} gave {res.term_out(a)(i)}")
            elif S.in_field(index(xs)(i)):
                problems.append(f"out-of-bounds lookup {xs} {i} lies in the field of S")
    if not checked:
        problems.append("no in-bounds lookups checked")
    if not (res.relatedness and res.similarity):
        problems.append("relatedness or similarity failed")
    try:
        transport(reg, "index", fx.INDEX_UNGUARDED_L, fx.INDEX_UNGUARDED_R)
        problems.append("unguarded index transport succeeded")
    except TransportError as exc:
        if exc.witness != (List(), Int(0)):
            problems.append(f"unguarded witness {exc.witness}")
    record(5, problems)


def test_criterion_06_sweeps():
    problems = []
    for theorem in SWEEP_THEOREMS:
        res = consistency_sweep(theorem, n=200)
        if res.total < 200:
            problems.append(f"{theorem} ran {res.total}")
        if res.alarms:
            problems.append(f"{theorem}: {res.alarms[0]}")
        if res.applicable == 0:
            problems.append(f"{theorem} never applicable")
    record(6, problems)


def test_criterion_07_similarity():
    problems = []
    comps = [fx.fixture_b(), fx.fixture_e(), fx.fixture_e_double(), fx.identity_record()]
    for name in ("identity", "option", "list2"):
        for E in comps:
            if not functor_similarity_check(builtin_functor(name), [E]):
                problems.append(f"{name} similarity on {E.alpha.name}")
    for name in ("product", "sum"):
        if not functor_similarity_check(builtin_functor(name), comps[:2]):
            problems.append(f"{name} similarity")
    if not functor_similarity_check(builtin_functor("const", fx.b2()), []):
        problems.append("const similarity")
    gated = [
        ("depfun subtraction", transport(fx.subtraction_registry(), "sub_int",
                                         fx.SUBTRACTION_L, fx.SUBTRACTION_R).similarity),
        ("depfun halving", similarity_check(nondep_input(fx.fixture_e(), fx.fixture_e_double()),
                                            variant="appendix")),
        ("depfun identity", similarity_check(nondep_input(fx.identity_record(), fx.identity_record()))),
        ("composition", comp_similarity_check(fx.fixture_b(), fx.renaming())),
    ]
    for label, rep in gated:
        if not rep.applicable or not rep:
            problems.append(f"{label}: {rep.status} {rep.summary()}")
    record(7, problems)


def test_criterion_08_counterexamples():
    problems = []
    rep = counterexample_search("comp_galequiv", "commutation", 3)
    golden = ("L1={(0,0)} R1={(0,0),(0,1),(1,0),(1,1)} l1=[0] r1=[0,0]",
              "L2={(1,1)} R2={(0,0)} l2=[1,0] r2=[1,0]")
    if rep or rep.witness != golden:
        problems.append(f"commutation witness {rep.witness}")
    rep = counterexample_search("subtraction_guard", "guard", 3)
    if rep or rep.witness != ("0", "1"):
        problems.append(f"guard witness {rep.witness}")
    if not counterexample_search("subtraction_guard", None, 3):
        problems.append("guarded subtraction has a counterexample")
    record(8, problems)


def test_criterion_09_lifting():
    problems = []
    C = fx.fixture_c()
    cases = {"lists/fsets": (C.quotient, PartialQuotient.identity(C.fsets)),
             "int/nat": (fx.fixture_b_quotient(), fx.renaming_quotient())}
    parts = ("T1_eq_galois", "T1_inverse_eq_galois", "chain_eq_galois_chain",
             "composed_induced_eq_chain", "commutation_vacuous")
    for label, (Q1, Q2) in cases.items():
        rep = lifting_comparison_check(Q1, Q2)
        if not rep.applicable or not rep:
            problems.append(f"{label}: {rep.summary()}")
        for part in parts:
            sub = rep.find(part)
            if sub is None or not sub:
                problems.append(f"{label}: {part} missing or failed")
    record(9, problems)


EXIT_CONTRACT = {"broken_retraction": 1, "subtraction_unguarded": 1}


def test_criterion_10_cli():
    problems = []
    for name in shipped_documents():
        cmd = [sys.executable, "-m", "partial_galois.cli", "--fixture", name, "--format", "structured"]
        runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
        if runs[0].stdout != runs[1].stdout:
            problems.append(f"{name} output differs between runs")
        want = EXIT_CONTRACT.get(name, 0)
        if any(r.returncode != want for r in runs):
            problems.append(f"{name} exited {runs[0].returncode}, expected {want}")
        report = run_text(shipped_document(name))
        if emit_report(report, "structured").encode() != runs[0].stdout:
            problems.append(f"{name} in-process report differs from the CLI")
        if any(o.status == "ERROR" for o in report.outcomes):
            problems.append(f"{name} has ERROR outcomes")
    if len(shipped_documents()) < 8:
        problems.append("missing shipped documents")
    record(10, problems)


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
