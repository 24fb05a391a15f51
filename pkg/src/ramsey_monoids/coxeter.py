"""Finite Coxeter groups from permutation realizations, and their 0-Hecke monoids.

``H_0(W)`` is realized by its action on ``W``: generator ``pi_i`` sends ``w``
to ``s_i w`` when that is longer and fixes ``w`` otherwise.  Composing these
maps in the ordinary way, the word ``a b`` acts as ``pi_a o pi_b`` and sends
the identity of ``W`` to ``s_a s_b``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded
from .monoid import (DEFAULT_BUDGET, LEFT, FiniteMonoid, closure_from_transformations,
                     default_gen_names, is_j_trivial, is_r_trivial,
                     shortest_words)
from .transform import Transformation


def _perm_order(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    order = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        order = lcm(order, length)
    return order


def _compose(p, q):
    """``p o q``."""
    return tuple(p[v] for v in q)


@dataclass(frozen=True)
class CoxeterMatrix:
    m: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(v) for v in row) for row in self.m)
        object.__setattr__(self, "m", m)
        n = len(m)
        for i in range(n):
            if len(m[i]) != n:
                raise ValueError("Coxeter matrix must be square")
            if m[i][i] != 1:
                raise ValueError(f"diagonal entry m[{i}][{i}] must be 1")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise ValueError(f"Coxeter matrix not symmetric at ({i}, {j})")
                if i != j and m[i][j] < 2:
                    raise ValueError(f"m[{i}][{j}] = {m[i][j]}; off-diagonal entries must be >= 2 (finite)")

    @property
    def n(self) -> int:
        return len(self.m)

    @classmethod
    def of_type(cls, kind: str, n: int) -> "CoxeterMatrix":
        if kind == "A":
            k = n
            return cls(tuple(tuple(1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(k))
                             for i in range(k)))
        if kind == "B":
            def entry(i, j):
                if i == j:
                    return 1
                if {i, j} == {0, 1}:
                    return 4
                return 3 if abs(i - j) == 1 else 2
            return cls(tuple(tuple(entry(i, j) for j in range(n)) for i in range(n)))
        if kind == "I2":
            return cls(((1, n), (n, 1)))
        raise ValueError(f"unsupported Coxeter type {kind!r}")


@dataclass(frozen=True)
class CoxeterRealization:
    degree: int
    gens: tuple[tuple[int, ...], ...]
    matrix: CoxeterMatrix
    name: str = ""

    def __post_init__(self):
        gens = tuple(tuple(int(v) for v in g) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        if len(gens) != self.matrix.n:
            raise ValueError(f"{len(gens)} generators for a {self.matrix.n}x{self.matrix.n} matrix")
        ident = tuple(range(self.degree))
        for i, g in enumerate(gens):
            if sorted(g) != list(ident):
                raise ValueError(f"generator {i} is not a permutation of {self.degree} points")
            if g == ident or _compose(g, g) != ident:
                raise ValueError(f"generator {i} is not an involution")
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                got = _perm_order(_compose(gens[i], gens[j]))
                if got != self.matrix.m[i][j]:
                    raise ValueError(f"order of s{i}s{j} is {got}, matrix says {self.matrix.m[i][j]}")


def _transposition(degree, pairs):
    p = list(range(degree))
    for a, b in pairs:
        p[a], p[b] = b, a
    return tuple(p)


def realization(kind: str, n: int) -> CoxeterRealization:
    """Bundled realizations: ``A`` (n >= 1), ``B`` (n >= 2), ``I2`` (m >= 3)."""
    if kind == "A":
        if n < 1:
            raise ValueError("type A needs n >= 1")
        gens = [_transposition(n + 1, [(i, i + 1)]) for i in range(n)]
        return CoxeterRealization(n + 1, tuple(gens), CoxeterMatrix.of_type("A", n), f"A{n}")
    if kind == "B":
        if n < 2:
            raise ValueError("type B needs n >= 2")
        # point i is +e_i, point n + i is -e_i
        gens = [_transposition(2 * n, [(0, n)])]
        gens += [_transposition(2 * n, [(i - 1, i), (n + i - 1, n + i)]) for i in range(1, n)]
        return CoxeterRealization(2 * n, tuple(gens), CoxeterMatrix.of_type("B", n), f"B{n}")
    if kind == "I2":
        if n < 3:
            raise ValueError("type I2 needs m >= 3")
        s0 = tuple((-k) % n for k in range(n))
        s1 = tuple((1 - k) % n for k in range(n))
        return CoxeterRealization(n, (s0, s1), CoxeterMatrix.of_type("I2", n), f"I2({n})")
    raise ValueError(f"unsupported Coxeter type {kind!r}; use A, B, I2 or custom_gens")


def coxeter_from_json(data) -> CoxeterRealization:
    """``{"type": "A"|"B"|"I2", "n": int}`` or ``{"custom_gens": [...], "matrix": [...]}``."""
    if isinstance(data, str):
        data = json.loads(data)
    if "custom_gens" in data:
        gens = data["custom_gens"]
        if "matrix" not in data:
            raise ValueError("custom_gens needs a 'matrix' field")
        degree = len(gens[0]) if gens else 0
        return CoxeterRealization(degree, tuple(map(tuple, gens)), CoxeterMatrix(tuple(map(tuple, data["matrix"]))),
                                  data.get("name", "custom"))
    if "type" not in data or "n" not in data:
        raise ValueError("Coxeter spec needs 'type' and 'n' (or 'custom_gens' and 'matrix')")
    return realization(str(data["type"]), int(data["n"]))


def coxeter_to_json(R: CoxeterRealization) -> dict:
    return {"custom_gens": [list(g) for g in R.gens], "matrix": [list(r) for r in R.matrix.m], "name": R.name}


@dataclass(frozen=True, eq=False)
class CoxeterGroupTable:
    """Elements of ``W`` in breadth-first order with word lengths.

    ``lmul[i, w]`` is the index of ``s_i w``; element 0 is the identity.
    """

    realization: CoxeterRealization
    elements: tuple[tuple[int, ...], ...]
    length: tuple[int, ...]
    lmul: np.ndarray
    index: dict = field(repr=False)

    def __len__(self):
        return len(self.elements)

    def element_of_word(self, word: Sequence[int]) -> int:
        """Index of ``s_{w1} s_{w2} ... s_{wk}``."""
        w = 0
        for i in reversed(word):
            w = int(self.lmul[i, w])
        return w

    def inverse(self, w: int) -> int:
        p = self.elements[w]
        inv = [0] * len(p)
        for x, y in enumerate(p):
            inv[y] = x
        return self.index[tuple(inv)]

    def product(self, u: int, v: int) -> int:
        return self.index[_compose(self.elements[u], self.elements[v])]


def build_coxeter_group(R: CoxeterRealization, budget: int = DEFAULT_BUDGET) -> CoxeterGroupTable:
    ident = tuple(range(R.degree))
    elements = [ident]
    index = {ident: 0}
    length = [0]
    rows: list[list[int]] = [[] for _ in R.gens]
    i = 0
    while i < len(elements):
        w = elements[i]
        for j, s in enumerate(R.gens):
            sw = _compose(s, w)
            t = index.get(sw)
            if t is None:
                t = len(elements)
                if t >= budget:
                    raise BudgetExceeded("Coxeter group", budget, t)
                index[sw] = t
                elements.append(sw)
                length.append(length[i] + 1)
            rows[j].append(t)
        i += 1
    lmul = np.array(rows, dtype=np.int64).reshape(len(R.gens), len(elements))
    for j in range(len(R.gens)):
        if np.any(np.abs(np.array(length)[lmul[j]] - np.array(length)) != 1):
            raise AssertionError(f"generator {j} does not change length by exactly one")
    return CoxeterGroupTable(R, tuple(elements), tuple(length), lmul, index)


def hecke_generators(W: CoxeterGroupTable) -> list[Transformation]:
    L = np.array(W.length)
    out = []
    for j in range(W.lmul.shape[0]):
        sw = W.lmul[j]
        images = np.where(L[sw] > L, sw, np.arange(len(W)))
        out.append(Transformation(tuple(int(v) for v in images)))
    return out


def _alternating(maps, i, j, m):
    """``pi_i pi_j pi_i ...`` with ``m`` factors, as ordinary composition."""
    word = [i if t % 2 == 0 else j for t in range(m)]
    out = maps[word[-1]]
    for g in reversed(word[:-1]):
        out = maps[g].after(out)
    return out


def hecke_monoid(W: CoxeterGroupTable, budget: int = DEFAULT_BUDGET,
                 gen_names: Sequence[str] | None = None) -> FiniteMonoid:
    pis = hecke_generators(W)
    for j, p in enumerate(pis):
        if p.after(p) != p:
            raise AssertionError(f"pi_{j} is not idempotent")
    m = W.realization.matrix.m
    for i in range(len(pis)):
        for j in range(i + 1, len(pis)):
            if _alternating(pis, i, j, m[i][j]) != _alternating(pis, j, i, m[i][j]):
                raise AssertionError(f"braid relation fails for generators {i}, {j}")
    names = tuple(gen_names) if gen_names is not None else default_gen_names(len(pis))
    H = closure_from_transformations(len(W), pis, action=LEFT, budget=budget,
                                     gen_names=names, symbol="π")
    if H.size != len(W):
        raise AssertionError(f"|H_0(W)| = {H.size} but |W| = {len(W)}")
    if not is_r_trivial(H) or not is_j_trivial(H):
        raise AssertionError("0-Hecke monoid is not R- and J-trivial")
    return H


def hecke_to_group(H: FiniteMonoid) -> list[int]:
    """For each element ``pi_x`` of ``H``, the index of ``x`` in ``W`` (its image of the identity)."""
    return [t(0) for t in H.elements]


def reduced_words(W: CoxeterGroupTable, max_len: int) -> dict[int, list[tuple[int, ...]]]:
    """All reduced words of length ``<= max_len``, grouped by the element they represent."""
    out: dict[int, list[tuple[int, ...]]] = {0: [()]}
    layer = [((), 0)]
    k = W.lmul.shape[0]
    for n in range(1, max_len + 1):
        nxt = []
        for word, _ in layer:
            for j in range(k):
                w2 = word + (j,)
                x = W.element_of_word(w2)
                if W.length[x] == n:
                    nxt.append((w2, x))
                    out.setdefault(x, []).append(w2)
        layer = nxt
    return out


@dataclass
class InitialSubwordReport:
    pairs_checked: int
    words_checked: int
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_initial_subword(H: FiniteMonoid, W: CoxeterGroupTable, max_len: int) -> InitialSubwordReport:
    """Compare coset inclusion in ``H`` with prefixes of reduced words in ``W``.

    For all ``x, y`` of length ``<= max_len``: ``pi_x M ⊆ pi_y M`` must hold
    exactly when some reduced word of ``x`` begins with a reduced word of
    ``y``.  The length identity ``l(y^-1 x) = l(x) - l(y)`` is checked too.
    """
    words = reduced_words(W, max_len)
    to_group = hecke_to_group(H)
    of_group = {w: h for h, w in enumerate(to_group)}
    prefixes = {x: {W.element_of_word(wd[:t]) for wd in ws for t in range(len(wd) + 1)}
                for x, ws in words.items()}
    leq, cos = H.coset_leq, H.coset_of
    report = InitialSubwordReport(0, sum(len(v) for v in words.values()))
    for x in sorted(words):
        hx = of_group[x]
        if H.evaluate(words[x][0]) != hx:
            report.counterexamples.append(("word", x, words[x][0]))
        for y in sorted(words):
            hy = of_group[y]
            included = bool(leq[cos[hx], cos[hy]])
            prefix = y in prefixes[x]
            by_length = W.length[W.product(W.inverse(y), x)] == W.length[x] - W.length[y]
            report.pairs_checked += 1
            if not included == prefix == by_length:
                report.counterexamples.append((H.name(hx), H.name(hy), included, prefix, by_length))
    return report

