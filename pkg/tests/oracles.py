"""Brute-force reference implementations on plain sets and dicts.

Nothing here imports the checking code of the package; records are
flattened to (carrier lists, pair sets, dicts) and every predicate is
evaluated straight from its quantified definition.
"""

from itertools import product


def flat(E):
    return (list(E.alpha), list(E.beta), set(E.L.pairs), set(E.R.pairs),
            dict(E.l.items()), dict(E.r.items()))


def dom(rel):
    return {x for x, _ in rel}


def codom(rel):
    return {y for _, y in rel}


def field(rel):
    return dom(rel) | codom(rel)


def compose(r, s):
    return {(x, z) for x, y in r for y2, z in s if y == y2}


def inverse(r):
    return {(y, x) for x, y in r}


def mono(A, B, f):
    return all((f[x], f[y]) in B for x, y in A)


def galois_rel(A, B, L, R, r):
    """x ⪅ y  iff  in_codom R y and L x (r y)."""
    cod = codom(R)
    return {(x, y) for x in A for y in B if y in cod and (x, r[y]) in L}


def half_left(A, B, L, R, l, r):
    cod = codom(R)
    return all((l[x], y) in R for x in A for y in B if y in cod and (x, r[y]) in L)


def half_right(A, B, L, R, l, r):
    d = dom(L)
    return all((x, r[y]) in L for x in A for y in B if x in d and (l[x], y) in R)


def galois_prop(A, B, L, R, l, r):
    d, c = dom(L), codom(R)
    return all(((x, r[y]) in L) == ((l[x], y) in R)
               for x in A for y in B if x in d and y in c)


def connection(A, B, L, R, l, r):
    return galois_prop(A, B, L, R, l, r) and mono(L, R, l) and mono(R, L, r)


def galois_equiv(A, B, L, R, l, r):
    return connection(A, B, L, R, l, r) and galois_prop(B, A, R, L, r, l)


def reflexive_on(S, rel):
    return all((x, x) in rel for x in S)


def transitive_on(S, rel):
    return all((x, z) in rel for x, y in rel for y2, z in rel
               if y == y2 and x in S and y in S and z in S)


def symmetric_on(S, rel):
    return all((y, x) in rel for x, y in rel if x in S and y in S)


def preorder_on_field(rel):
    F = field(rel)
    return reflexive_on(F, rel) and transitive_on(F, rel)


def per_on_field(rel):
    F = field(rel)
    return symmetric_on(F, rel) and transitive_on(F, rel)


def order_equiv(A, B, L, R, l, r):
    def rel_equiv(rel, f):
        return all((x, f[x]) in rel and (f[x], x) in rel for x in field(rel))
    eta = {x: r[l[x]] for x in A}
    eps = {y: l[r[y]] for y in B}
    return mono(L, R, l) and mono(R, L, r) and rel_equiv(L, eta) and rel_equiv(R, eps)


def classes(E):
    """Every class of the hierarchy evaluated from scratch."""
    args = flat(E)
    L, R = args[2], args[3]
    ge = galois_equiv(*args)
    return {
        "half_left": half_left(*args),
        "half_right": half_right(*args),
        "galois_prop": galois_prop(*args),
        "connection": connection(*args),
        "galois_equiv": ge,
        "order_equiv": order_equiv(*args),
        "pre_equiv": ge and preorder_on_field(L) and preorder_on_field(R),
        "per_equiv": ge and per_on_field(L) and per_on_field(R),
    }


def min_half_left_witness(E, key):
    """Smallest (x, y) with x ⪅ y but not l x ≤R y, in the given order."""
    A, B, L, R, l, r = flat(E)
    cod = codom(R)
    bad = [(x, y) for x in A for y in B if y in cod and (x, r[y]) in L and (l[x], y) not in R]
    return min(bad, key=lambda p: (key(p[0]), key(p[1]))) if bad else None


def all_tables(dom_list, cod_list):
    for outs in product(cod_list, repeat=len(dom_list)):
        yield dict(zip(dom_list, outs))


def fun_relator_mono(A, S, f, g, mono_required=True):
    """Non-dependent monotone function relator on dict-tables."""
    ok = all((f[x], g[y]) in S for x, y in A)
    if mono_required:
        ok = ok and all((f[x], f[y]) in S for x, y in A) and all((g[x], g[y]) in S for x, y in A)
    return ok
