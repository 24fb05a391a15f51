"""Pure-Python reference implementations of the hot kernels.

Every function here has a compiled twin in ``_ckernels.pyx`` with the same
signature and the same results; ``kernels`` picks one at import time.
"""
from __future__ import annotations

import numpy as np

from .errors import BudgetExceeded

MAX_CANONICAL_N = 8


def canonical_poset(n, up, cls):
    """Minimal relation code of a poset over class-respecting relabelings.

    ``up[v]`` is the bitmask of elements strictly above ``v``; ``cls[v]`` is an
    isomorphism-invariant rank, and position ``p`` may only hold a vertex
    whose rank equals the ``p``-th smallest rank.  The code is built position by
    position: placing vertex ``v`` at position ``p`` appends, for each earlier
    position ``i``, the bits ``[order[i] < v]`` and ``[v < order[i]]``.  This
    makes every partial assignment a code prefix, so branches whose prefix
    already exceeds the best one are cut.

    Returns ``(code, order)`` with ``order[p]`` the original vertex at ``p``.
    """
    if n > MAX_CANONICAL_N:
        raise ValueError(f"canonical form supports n <= {MAX_CANONICAL_N}")
    if n == 0:
        return 0, ()
    slots = sorted(cls)
    total = n * (n - 1)
    best = None
    best_order = None
    order = [0] * n

    def search(p, code, used):
        nonlocal best, best_order
        if p == n:
            if best is None or code < best:
                best = code
                best_order = tuple(order)
            return
        nbits = p * (p + 1)
        want = slots[p]
        for v in range(n):
            if (used >> v) & 1 or cls[v] != want:
                continue
            c = code
            upv = up[v]
            for i in range(p):
                u = order[i]
                c = (c << 2) | (((up[u] >> v) & 1) << 1) | ((upv >> u) & 1)
            if best is not None and c > (best >> (total - nbits)):
                continue
            order[p] = v
            search(p + 1, c, used | (1 << v))

    search(0, 0, 0)
    return best, best_order


def closure_bfs(domain_size, gens, right_action, budget):
    """Breadth-first closure of a set of maps under composition.

    Starts from the identity; the product of an element ``e`` with generator
    ``g`` is ``e ∘ g`` (left action) or ``g ∘ e`` (right action).  Returns
    ``(elements, table, parent, last)`` where ``table[i, j]`` is the index of
    ``element_i * gen_j`` and element ``i > 0`` equals
    ``element_parent[i] * gen_last[i]``.
    """
    d = int(domain_size)
    gen_rows = [tuple(int(v) for v in row) for row in np.asarray(gens, dtype=np.int64).reshape(-1, d)]
    k = len(gen_rows)
    ident = tuple(range(d))
    elements = [ident]
    index = {ident: 0}
    parent = [-1]
    last = [-1]
    table = []
    i = 0
    while i < len(elements):
        e = elements[i]
        row = []
        for j, g in enumerate(gen_rows):
            if right_action:
                prod = tuple(g[v] for v in e)
            else:
                prod = tuple(e[v] for v in g)
            t = index.get(prod)
            if t is None:
                t = len(elements)
                if t >= budget:
                    raise BudgetExceeded("monoid closure", budget, t)
                index[prod] = t
                elements.append(prod)
                parent.append(i)
                last.append(j)
            row.append(t)
        table.append(row)
        i += 1
    return (np.array(elements, dtype=np.int32).reshape(len(elements), d),
            np.array(table, dtype=np.int32).reshape(len(elements), k),
            np.array(parent, dtype=np.int64), np.array(last, dtype=np.int64))


def cayley_from_right(table, parent, last, identity):
    """Fill a Cayley table from right multiplication by generators.

    Column ``b`` follows from ``a * b = (a * parent[b]) * gen_last[b]``; this
    needs ``parent[b]`` to be filled first, which BFS order guarantees.
    """
    table = np.asarray(table, dtype=np.int32)
    size = table.shape[0]
    mul = np.empty((size, size), dtype=np.int32)
    mul[:, identity] = np.arange(size, dtype=np.int32)
    for b in range(size):
        if b == identity:
            continue
        mul[:, b] = table[mul[:, parent[b]], last[b]]
    return mul


def _encode(rows, d):
    if d <= 15:
        weights = np.array([d ** x for x in range(d)], dtype=np.int64)
        return rows.astype(np.int64) @ weights
    return None


def cayley_from_elements(elements, right_action):
    """Cayley table of a composition-closed list of maps.

    Raises ``ValueError`` naming the first pair whose product leaves the list.
    """
    E = np.asarray(elements, dtype=np.int32)
    size, d = E.shape
    mul = np.empty((size, size), dtype=np.int32)
    codes = _encode(E, d)
    if codes is None:
        index = {tuple(r): i for i, r in enumerate(E.tolist())}
        for a in range(size):
            for b in range(size):
                prod = E[b][E[a]] if right_action else E[a][E[b]]
                t = index.get(tuple(prod.tolist()))
                if t is None:
                    raise ValueError(f"elements {a} and {b} multiply outside the set")
                mul[a, b] = t
        return mul
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    if size > 1 and np.any(sorted_codes[1:] == sorted_codes[:-1]):
        raise ValueError("duplicate maps in element list")
    for a in range(size):
        if right_action:
            prods = np.take(E, E[a], axis=1)  # row b: x -> E[b][E[a][x]]
        else:
            prods = E[a][E]  # row b: x -> E[a][E[b][x]]
        pc = _encode(prods, d)
        pos = np.searchsorted(sorted_codes, pc)
        pos = np.minimum(pos, size - 1)
        hit = sorted_codes[pos] == pc
        if not hit.all():
            b = int(np.flatnonzero(~hit)[0])
            raise ValueError(f"elements {a} and {b} multiply outside the set")
        mul[a, :] = order[pos]
    return mul


def coset_order(mul):
    """Distinct rows of a Cayley table as sets, and their inclusion order.

    Returns ``(coset_of, leq)``: ``coset_of[m]`` numbers the coset ``mM``
    (numbering by first owner), ``leq[i, j]`` is ``coset_i ⊆ coset_j``.
    """
    mul = np.asarray(mul)
    size = mul.shape[0]
    member = np.zeros((size, size), dtype=bool)
    member[np.arange(size)[:, None], mul] = True
    seen = {}
    coset_of = np.empty(size, dtype=np.int64)
    reps = []
    for m in range(size):
        key = member[m].tobytes()
        c = seen.get(key)
        if c is None:
            c = len(reps)
            seen[key] = c
            reps.append(m)
        coset_of[m] = c
    B = member[reps].astype(np.float32)
    outside = B @ (1.0 - B).T
    return coset_of, outside == 0
