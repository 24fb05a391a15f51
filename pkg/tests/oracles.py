"""Brute-force reference computations used only by the tests.

Nothing here imports the package's algorithms; everything works on plain
tuples, sets and itertools.
"""
from __future__ import annotations

import itertools
from math import comb, factorial


def is_partial_order(rel, n):
    for i in range(n):
        if not rel[i][i]:
            return False
    for i, j in itertools.product(range(n), repeat=2):
        if i != j and rel[i][j] and rel[j][i]:
            return False
    for i, j, k in itertools.product(range(n), repeat=3):
        if rel[i][j] and rel[j][k] and not rel[i][k]:
            return False
    return True


def all_labeled_posets(n):
    """Every partial order on range(n), from all 2^(n(n-1)) relations."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for bits in itertools.product((False, True), repeat=len(off)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(off, bits):
            rel[i][j] = b
        if is_partial_order(rel, n):
            out.append(tuple(tuple(r) for r in rel))
    return out


def iso_key(rel):
    n = len(rel)
    return min(tuple(rel[p[i]][p[j]] for i in range(n) for j in range(n))
               for p in itertools.permutations(range(n)))


def automorphisms(rel):
    n = len(rel)
    return sum(1 for p in itertools.permutations(range(n))
               if all(rel[p[i]][p[j]] == rel[i][j] for i in range(n) for j in range(n)))


def labeled_count_from_reps(reps):
    """Sum of n!/|Aut(P)| over isomorphism-class representatives."""
    total = 0
    for rel in reps:
        n = len(rel)
        total += factorial(n) // automorphisms(rel)
    return total


LABELED_POSETS = [1, 1, 3, 19, 219, 4231, 130023]  # OEIS A001035
UNLABELED_POSETS = [1, 1, 2, 5, 16, 63, 318, 2045]  # OEIS A000112
UNLABELED_LATTICES = [1, 1, 1, 1, 2, 5, 15, 53]  # OEIS A006966, n = 0..7


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def chains(rel):
    """Every nonempty chain, as a tuple sorted by the order."""
    n = len(rel)
    out = []
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            if all(rel[a][b] or rel[b][a] for a, b in itertools.combinations(sub, 2)):
                out.append(tuple(sorted(sub, key=lambda v: sum(rel[u][v] for u in sub))))
    return out


def brute_level(rel, x):
    return max(len(c) for c in chains(rel) if c[-1] == x)


def brute_maximal_chains(rel):
    cs = [set(c) for c in chains(rel)]
    return sorted(tuple(sorted(c)) for c in cs if not any(c < d for d in cs))


def compose(f, g):
    """f o g on tuples."""
    return tuple(f[x] for x in g)


def closure(gens, n, right=False):
    """Set of maps generated from the identity; products e*g as e o g or g o e."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                p = compose(g, e) if right else compose(e, g)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return seen


def product(a, b, right):
    return compose(b, a) if right else compose(a, b)


def left_cosets(elems, right):
    elems = list(elems)
    return {a: frozenset(product(a, x, right) for x in elems) for a in elems}


def coset_linear(elems, right):
    cos = set(left_cosets(elems, right).values())
    return all(a <= b or b <= a for a in cos for b in cos)


def is_r_trivial_maps(elems, right):
    cos = left_cosets(elems, right)
    return len(set(cos.values())) == len(cos)


def is_almost_r_trivial_maps(elems, right):
    cos = left_cosets(elems, right)
    groups = {}
    for a, c in cos.items():
        groups.setdefault(c, []).append(a)
    for members in groups.values():
        if len(members) > 1:
            for m in members:
                if any(product(x, m, right) != m for x in elems):
                    return False
    return True


def regressive_maps(rel):
    n = len(rel)
    return [f for f in itertools.product(range(n), repeat=n) if all(rel[f[x]][x] for x in range(n))]


def op_regressive_maps(rel):
    n = len(rel)
    return [f for f in regressive_maps(rel)
            if all(rel[f[x]][f[y]] for x in range(n) for y in range(n) if rel[x][y])]


def chain_rel(n):
    return tuple(tuple(i <= j for j in range(n)) for i in range(n))


def table_cosets(mul):
    n = len(mul)
    return [frozenset(mul[a][x] for x in range(n)) for a in range(n)]


def table_associative(mul):
    n = len(mul)
    return all(mul[mul[a][b]][c] == mul[a][mul[b][c]] for a in range(n) for b in range(n) for c in range(n))


def brute_subspace(blocks, act, identity, depth):
    """Union of acted blocks over every choice 'absent or m' per block.

    ``blocks`` is a list of dicts coord -> point and ``act[m][x]`` the action
    (one table for every coordinate).  A choice is kept when between 1 and
    depth + 1 blocks are present and some present block uses ``identity``.
    """
    out = set()
    size = len(act)
    for choice in itertools.product([None] + list(range(size)), repeat=len(blocks)):
        present = [(b, m) for b, m in zip(blocks, choice) if m is not None]
        if not 1 <= len(present) <= depth + 1:
            continue
        if not any(m == identity for _, m in present):
            continue
        f = {}
        for b, m in present:
            for k, v in b.items():
                f[k] = act[m][v]
        out.add(tuple(sorted(f.items())))
    return out


def orbit_action(maps, basepoint):
    """Restrict the natural action of ``maps`` on points to the orbit of ``basepoint``.

    Returns ``(table, new_basepoint)`` with orbit points renumbered in increasing order.
    """
    orbit = sorted({m[basepoint] for m in maps})
    pos = {x: i for i, x in enumerate(orbit)}
    return [[pos[m[x]] for x in orbit] for m in maps], pos[basepoint]


def small_transformation_monoids(max_size=4, max_points=3):
    """Distinct composition-closed sets of maps from one or two generators, each of size <= max_size."""
    seen = set()
    out = []
    for d in range(1, max_points + 1):
        maps = list(itertools.product(range(d), repeat=d))
        for k in (1, 2):
            for gens in itertools.combinations(maps, k):
                elems = closure(gens, d)
                key = (d, frozenset(elems))
                if len(elems) <= max_size and key not in seen:
                    seen.add(key)
                    out.append((d, sorted(elems)))
    return out
