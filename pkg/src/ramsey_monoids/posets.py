"""Finite posets and lattices on ``{0, ..., n-1}``.

Chains are measured by their number of elements, so a minimal element has
level 1 and a single covering pair is a chain of length 2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from . import kernels
from .transform import Transformation

Chain = tuple[int, ...]

DEFAULT_ENUMERATION_BOUND = 7


class FinitePoset:
    """An immutable partial order on ``range(n)``.

    Stored as strict up/down bitmasks; ``leq`` gives the boolean matrix view.
    """

    def __init__(self, leq: Sequence[Sequence[bool]]):
        n = len(leq)
        rows = [[bool(v) for v in row] for row in leq]
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("relation matrix must be square")
            if not row[i]:
                raise ValueError(f"relation is not reflexive at {i}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] and rows[j][i]:
                    raise ValueError(f"relation is not antisymmetric: {i} <= {j} <= {i}")
        for i in range(n):
            for j in range(n):
                if rows[i][j]:
                    for k in range(n):
                        if rows[j][k] and not rows[i][k]:
                            raise ValueError(
                                f"relation is not transitive: {i} <= {j} <= {k} but not {i} <= {k}")
        self.n = n
        self.leq = tuple(tuple(row) for row in rows)
        self.above = tuple(sum(1 << j for j in range(n) if j != i and rows[i][j]) for i in range(n))
        self.below = tuple(sum(1 << j for j in range(n) if j != i and rows[j][i]) for i in range(n))

    def __eq__(self, other):
        return isinstance(other, FinitePoset) and self.leq == other.leq

    def __hash__(self):
        return hash(self.leq)

    def __repr__(self):
        return f"FinitePoset(n={self.n}, covers={self.covers})"

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq[i][j]

    def comparable(self, i: int, j: int) -> bool:
        return self.leq[i][j] or self.leq[j][i]

    def down_set(self, x: int) -> list[int]:
        """Elements ``<= x`` in increasing index order."""
        return [y for y in range(self.n) if self.leq[y][x]]

    def up_set(self, x: int) -> list[int]:
        return [y for y in range(self.n) if self.leq[x][y]]

    @cached_property
    def minimal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if not self.below[x])

    @cached_property
    def maximal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if not self.above[x])

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Covering pairs ``(lo, hi)``, sorted."""
        out = []
        for lo in range(self.n):
            for hi in range(self.n):
                if lo != hi and self.leq[lo][hi]:
                    between = self.above[lo] & self.below[hi]
                    if not between:
                        out.append((lo, hi))
        return tuple(out)

    @cached_property
    def levels(self) -> tuple[int, ...]:
        lv = [0] * self.n
        for x in sorted(range(self.n), key=lambda v: bin(self.below[v]).count("1")):
            lv[x] = 1 + max((lv[y] for y in range(self.n) if (self.below[x] >> y) & 1), default=0)
        return tuple(lv)

    @property
    def height(self) -> int:
        return max(self.levels, default=0)

    def relabel(self, order: Sequence[int]) -> FinitePoset:
        """The isomorphic poset whose element ``p`` is this poset's ``order[p]``."""
        return FinitePoset([[self.leq[order[p]][order[q]] for q in range(self.n)] for p in range(self.n)])

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, data) -> FinitePoset:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["n"])
            covers = [(int(a), int(b)) for a, b in data.get("covers", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad poset JSON: {exc}") from None
        return poset_from_covers(n, covers)


@dataclass(frozen=True)
class FiniteLattice:
    base: FinitePoset
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def bottom(self) -> int:
        return self.base.minimal_elements[0]

    @property
    def top(self) -> int:
        return self.base.maximal_elements[0]


def poset_from_covers(n: int, covers) -> FinitePoset:
    """Reflexive-transitive closure of a cover digraph.

    Raises ``ValueError`` on out-of-range indices or on a directed cycle (the
    message lists the cycle).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    succ = [[] for _ in range(n)]
    for lo, hi in covers:
        if not (0 <= lo < n and 0 <= hi < n):
            raise ValueError(f"cover ({lo}, {hi}) has an index outside 0..{n - 1}")
        if lo == hi:
            raise ValueError(f"cycle detected: [{lo}, {lo}]")
        succ[lo].append(hi)
    state = [0] * n  # 0 new, 1 on stack, 2 done
    stack_path: list[int] = []

    def visit(v):
        state[v] = 1
        stack_path.append(v)
        for w in succ[v]:
            if state[w] == 1:
                cycle = stack_path[stack_path.index(w):] + [w]
                raise ValueError(f"cycle detected: {cycle}")
            if state[w] == 0:
                visit(w)
        stack_path.pop()
        state[v] = 2

    for v in range(n):
        if state[v] == 0:
            visit(v)
    reach = [[i == j for j in range(n)] for i in range(n)]
    for s in range(n):
        todo = [s]
        while todo:
            v = todo.pop()
            for w in succ[v]:
                if not reach[s][w]:
                    reach[s][w] = True
                    todo.append(w)
    return FinitePoset(reach)


def chain_poset(n: int) -> FinitePoset:
    return FinitePoset([[i <= j for j in range(n)] for i in range(n)])


def antichain_poset(n: int) -> FinitePoset:
    return FinitePoset([[i == j for j in range(n)] for i in range(n)])


def _bounds(P: FinitePoset, mask: int, up: bool):
    """The extremal element of a set of common bounds, or ``None``."""
    elems = [v for v in range(P.n) if (mask >> v) & 1]
    for v in elems:
        # v is least upper bound iff every other bound lies above it
        others = mask & ~(1 << v)
        if others & ~(P.above[v] if up else P.below[v]) == 0:
            return v
    return None


def lattice_obstruction(P: FinitePoset) -> tuple[int, int] | None:
    """First pair (in index order) lacking a meet or a join."""
    for a in range(P.n):
        for b in range(a, P.n):
            ub = (P.above[a] | 1 << a) & (P.above[b] | 1 << b)
            lb = (P.below[a] | 1 << a) & (P.below[b] | 1 << b)
            if _bounds(P, ub, True) is None or _bounds(P, lb, False) is None:
                return (a, b)
    return None


def is_lattice(P: FinitePoset) -> FiniteLattice | None:
    """The lattice refinement of ``P``, or ``None`` if some pair lacks a bound.

    ``lattice_obstruction`` gives the offending pair.
    """
    if P.n == 0:
        return None
    meet = [[0] * P.n for _ in range(P.n)]
    join = [[0] * P.n for _ in range(P.n)]
    for a in range(P.n):
        for b in range(a, P.n):
            ub = (P.above[a] | 1 << a) & (P.above[b] | 1 << b)
            lb = (P.below[a] | 1 << a) & (P.below[b] | 1 << b)
            j = _bounds(P, ub, True)
            m = _bounds(P, lb, False)
            if j is None or m is None:
                return None
            join[a][b] = join[b][a] = j
            meet[a][b] = meet[b][a] = m
    return FiniteLattice(P, tuple(map(tuple, meet)), tuple(map(tuple, join)))


def level(P: FinitePoset, x: int) -> int:
    """Number of elements in a longest chain whose maximum is ``x``."""
    return P.levels[x]


def maximal_chains(P: FinitePoset) -> list[Chain]:
    """All inclusion-maximal chains, i.e. Hasse paths from a minimal to a maximal element."""
    up_covers = [[] for _ in range(P.n)]
    for lo, hi in P.covers:
        up_covers[lo].append(hi)
    out: list[Chain] = []

    def walk(path):
        nxt = up_covers[path[-1]]
        if not nxt:
            out.append(tuple(path))
            return
        for w in nxt:
            path.append(w)
            walk(path)
            path.pop()

    for m in P.minimal_elements:
        walk([m])
    return out


def incomparable_pair(P: FinitePoset) -> tuple[int, int] | None:
    for i in range(P.n):
        for j in range(i + 1, P.n):
            if not P.comparable(i, j):
                return (i, j)
    return None


def is_linear_order(P: FinitePoset) -> bool:
    return incomparable_pair(P) is None


def _longest_chain_to(P: FinitePoset, z: int) -> list[int]:
    """A chain ``x_1 < ... < x_k = z`` with ``k = level(z)``; ``x_i`` has level ``i``."""
    chain = [z]
    lv = P.levels
    while lv[chain[-1]] > 1:
        v = chain[-1]
        chain.append(next(y for y in range(P.n) if (P.below[v] >> y) & 1 and lv[y] == lv[v] - 1))
    return chain[::-1]


def level_lemma_witness(P: FinitePoset, x: int, y: int, z: int) -> tuple[int, int]:
    """Incomparable ``y' <= y`` and ``z' <= z`` on the same level.

    Requires ``y, z <= x`` incomparable.  The pair is taken from a longest
    chain below the higher of ``y`` and ``z``; it is checked, and a full
    search over the down-sets is the fallback.
    """
    if not (P.le(y, x) and P.le(z, x)):
        raise ValueError(f"need y <= x and z <= x (x={x}, y={y}, z={z})")
    if P.comparable(y, z):
        raise ValueError(f"y={y} and z={z} are comparable")
    lv = P.levels
    swap = lv[y] > lv[z]
    lo, hi = (z, y) if swap else (y, z)
    partner = _longest_chain_to(P, hi)[lv[lo] - 1]
    if lv[partner] == lv[lo] and not P.comparable(lo, partner):
        return (partner, lo) if swap else (lo, partner)
    for a in P.down_set(y):
        for b in P.down_set(z):
            if lv[a] == lv[b] and not P.comparable(a, b):
                return (a, b)
    raise AssertionError("no equal-level incomparable pair below y and z")


def phi_chain(L: FiniteLattice, C: Sequence[int]) -> Transformation:
    """The retraction ``x -> max{c in C : c <= x}`` onto a maximal chain."""
    P = L.base
    C = tuple(sorted(C, key=lambda v: P.levels[v]))
    if C not in set(maximal_chains(P)):
        raise ValueError(f"{list(C)} is not a maximal chain")
    images = []
    for x in range(P.n):
        below = [c for c in C if P.le(c, x)]
        images.append(below[-1])
    return Transformation(tuple(images))


def _invariant_classes(P: FinitePoset) -> list[int]:
    keys = [(P.levels[v], bin(P.below[v]).count("1"), bin(P.above[v]).count("1")) for v in range(P.n)]
    rank = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [rank[k] for k in keys]


def canonical_form(P: FinitePoset) -> tuple[int, FinitePoset]:
    """``(code, representative)``; isomorphic posets get identical results."""
    code, order = kernels.canonical_poset(P.n, P.above, _invariant_classes(P))
    return code, P.relabel(order)


def _ideals(P: FinitePoset) -> Iterator[int]:
    for mask in range(1 << P.n):
        ok = True
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            if P.below[v] & ~mask:
                ok = False
                break
            m &= m - 1
        if ok:
            yield mask


@lru_cache(maxsize=None)
def _posets_of_size(n: int) -> tuple[FinitePoset, ...]:
    if n == 0:
        return (FinitePoset([]),)
    found = {}
    for Q in _posets_of_size(n - 1):
        m = n - 1
        for ideal in _ideals(Q):
            rows = [list(Q.leq[i]) + [bool((ideal >> i) & 1)] for i in range(m)]
            rows.append([False] * m + [True])
            code, rep = canonical_form(FinitePoset(rows))
            found.setdefault(code, rep)
    return tuple(found[c] for c in sorted(found))


def enumerate_posets(n: int, lattices_only: bool = False,
                     bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[FinitePoset]:
    """One poset per isomorphism class on ``n`` points, in canonical-code order.

    Every ``n``-element poset arises from an ``(n-1)``-element one by adding a
    new maximal element above an order ideal; candidates are deduplicated by
    canonical form.
    """
    if n > bound or n > kernels.MAX_CANONICAL_N:
        raise ValueError(
            f"n={n} is over the enumeration bound {min(bound, kernels.MAX_CANONICAL_N)}; "
            "unlabeled poset counts grow super-exponentially (2045 at n=7)")
    for P in _posets_of_size(n):
        if lattices_only and is_lattice(P) is None:
            continue
        yield P


def hasse_dot(P: FinitePoset, names: Sequence[str] | None = None, graph_name: str = "P") -> str:
    names = [str(i) for i in range(P.n)] if names is None else list(names)
    lines = [f"digraph {graph_name} {{", "  rankdir=BT;"]
    for v in range(P.n):
        lines.append(f'  n{v} [label="{names[v]}"];')
    for lo, hi in P.covers:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
