"""Finite monoids as Cayley tables, their left cosets and Green-type predicates.

A transformation monoid records its ``action``:

* ``"left"``: ordinary composition, ``(m * x)(p) = m(x(p))``;
* ``"right"``: ``m`` acts first, ``(m * x)(p) = x(m(p))``.

The two give anti-isomorphic monoids, so left cosets, R-classes and the
linearity of ``X(M)`` depend on the choice.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels
from .errors import NotAssociative
from .posets import FinitePoset, hasse_dot
from .transform import Transformation

LEFT = "left"
RIGHT = "right"
ACTIONS = (LEFT, RIGHT)
DEFAULT_BUDGET = 200_000
FULL_ASSOCIATIVITY_LIMIT = 300


def default_gen_names(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple(chr(ord("a") + i) for i in range(k))
    return tuple(f"g{i}" for i in range(k))


def _check_action(action):
    if action not in ACTIONS:
        raise ValueError(f"action must be one of {ACTIONS}, got {action!r}")
    return action == RIGHT


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    """A monoid on ``range(size)`` given by its multiplication table.

    ``labels[i]`` is the shortlex-least word (positions into ``gens``) whose
    product is element ``i``.  ``elements`` is set for transformation monoids.
    """

    mul: np.ndarray
    identity: int
    gens: tuple[int, ...]
    labels: tuple[tuple[int, ...], ...]
    gen_names: tuple[str, ...]
    elements: tuple[Transformation, ...] | None = None
    action: str | None = None
    symbol: str = ""
    element_names: tuple[str, ...] | None = None

    def __post_init__(self):
        self.mul.setflags(write=False)

    @property
    def size(self) -> int:
        return self.mul.shape[0]

    def __len__(self):
        return self.size

    def __repr__(self):
        extra = f", action={self.action!r}" if self.action else ""
        return f"FiniteMonoid(size={self.size}, gens={list(self.gen_names)}{extra})"

    def product(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def evaluate(self, word: Sequence[int]) -> int:
        """Element obtained by multiplying the generators at the given positions."""
        m = self.identity
        for j in word:
            m = int(self.mul[m, self.gens[j]])
        return m

    def word(self, i: int) -> str:
        names = [self.gen_names[j] for j in self.labels[i]]
        sep = "" if all(len(s) == 1 for s in self.gen_names) else "."
        return sep.join(names)

    def name(self, i: int) -> str:
        if self.element_names is not None:
            return self.element_names[i]
        if i == self.identity:
            return "id"
        w = self.word(i)
        return f"{self.symbol}_{w}" if self.symbol else w

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        if self.elements is None:
            raise TypeError("not a transformation monoid")
        return {t.images: i for i, t in enumerate(self.elements)}

    def index(self, t: Transformation | Sequence[int]) -> int:
        images = t.images if isinstance(t, Transformation) else tuple(t)
        try:
            return self._index[images]
        except KeyError:
            raise KeyError(f"{list(images)} is not an element") from None

    @cached_property
    def _coset_data(self):
        return kernels.coset_order(self.mul)

    @property
    def coset_of(self) -> np.ndarray:
        return self._coset_data[0]

    @property
    def coset_leq(self) -> np.ndarray:
        return self._coset_data[1]


def _shortlex_labels(mul, identity, gens):
    size = mul.shape[0]
    labels: list[tuple[int, ...] | None] = [None] * size
    labels[identity] = ()
    queue = [identity]
    for m in queue:
        for j, g in enumerate(gens):
            t = int(mul[m, g])
            if labels[t] is None:
                labels[t] = labels[m] + (j,)
                queue.append(t)
    missing = [i for i, lab in enumerate(labels) if lab is None]
    if missing:
        raise ValueError(f"generators do not reach elements {missing[:5]}")
    return tuple(labels)


def _generated(mul, identity, gens):
    reached = np.zeros(mul.shape[0], dtype=bool)
    reached[identity] = True
    frontier = np.array([identity])
    gens = np.asarray(gens, dtype=np.int64)
    while frontier.size and gens.size:
        nxt = np.unique(mul[np.ix_(frontier, gens)])
        nxt = nxt[~reached[nxt]]
        reached[nxt] = True
        frontier = nxt
    return reached


def choose_generators(mul, identity) -> tuple[int, ...]:
    """A generating set picked greedily, largest left coset first.

    Elements nearer the identity (larger ``mM``) are tried first, which tends
    to select atoms; an element is added only if it is not yet generated.
    """
    size = mul.shape[0]
    srt = np.sort(np.asarray(mul), axis=1)
    coset_sizes = 1 + np.count_nonzero(np.diff(srt, axis=1), axis=1) if size else np.zeros(0)
    order = sorted(range(size), key=lambda m: (-int(coset_sizes[m]), m))
    gens: list[int] = []
    reached = np.zeros(size, dtype=bool)
    reached[identity] = True
    for m in order:
        if reached[m]:
            continue
        gens.append(m)
        reached = _generated(mul, identity, gens)
        if reached.all():
            break
    return tuple(gens)


def closure_from_transformations(domain_size: int, gens: Sequence[Transformation | Sequence[int]],
                                 action: str = LEFT, budget: int = DEFAULT_BUDGET,
                                 gen_names: Sequence[str] | None = None,
                                 symbol: str = "") -> FiniteMonoid:
    """The monoid generated by ``gens`` under composition, found breadth-first.

    Element 0 is the identity map; elements appear in shortlex order of their
    labels.  Raises ``BudgetExceeded`` past ``budget`` elements.
    """
    right = _check_action(action)
    rows = []
    for g in gens:
        images = g.images if isinstance(g, Transformation) else tuple(g)
        Transformation(images)
        if len(images) != domain_size:
            raise ValueError(f"generator {list(images)} does not act on {domain_size} points")
        rows.append(images)
    gen_arr = np.array(rows, dtype=np.int32).reshape(len(rows), domain_size)
    elements, table, parent, last = kernels.closure_bfs(domain_size, gen_arr, right, budget)
    mul = kernels.cayley_from_right(table, parent, last, 0)
    labels: list[tuple[int, ...]] = [()]
    for i in range(1, elements.shape[0]):
        labels.append(labels[parent[i]] + (int(last[i]),))
    names = tuple(gen_names) if gen_names is not None else default_gen_names(len(rows))
    if len(names) != len(rows):
        raise ValueError("need one name per generator")
    return FiniteMonoid(
        mul=mul,
        identity=0,
        gens=tuple(int(table[0, j]) for j in range(len(rows))),
        labels=tuple(labels),
        gen_names=names,
        elements=tuple(Transformation(tuple(int(v) for v in row)) for row in elements),
        action=action,
        symbol=symbol,
    )


def monoid_of_functions(fns: Sequence[Transformation], action: str = LEFT,
                        budget: int = DEFAULT_BUDGET, symbol: str = "") -> FiniteMonoid:
    """The monoid whose elements are exactly ``fns`` (which must be closed).

    A generating set is chosen greedily and the monoid is rebuilt from it, so
    elements come back in shortlex order; the element set is checked equal.
    """
    right = _check_action(action)
    fns = list(dict.fromkeys(f if isinstance(f, Transformation) else Transformation(tuple(f)) for f in fns))
    if not fns:
        raise ValueError("empty function list")
    d = fns[0].domain_size
    ident = tuple(range(d))
    if ident not in {f.images for f in fns}:
        fns = [Transformation(ident)] + fns
    E = np.array([f.images for f in fns], dtype=np.int32).reshape(len(fns), d)
    mul0 = kernels.cayley_from_elements(E, right)
    identity = next(i for i, f in enumerate(fns) if f.images == ident)
    gens = choose_generators(mul0, identity)
    M = closure_from_transformations(d, [fns[g] for g in gens], action=action,
                                     budget=budget, symbol=symbol)
    if M.size != len(fns) or {t.images for t in M.elements} != {f.images for f in fns}:
        raise AssertionError("rebuilt monoid differs from the input set")
    return M


def find_associativity_violation(mul, gens=None):
    """A triple ``(a, b, c)`` with ``(ab)c != a(bc)``, or ``None``.

    With ``gens`` given, only ``b`` in ``gens`` is tested (Light's test), which
    suffices when ``gens`` generates the table.
    """
    mul = np.asarray(mul)
    size = mul.shape[0]
    middles = range(size) if gens is None else gens
    for b in middles:
        left = mul[mul[:, b], :]          # (a b) c  indexed [a, c]
        right = mul[:, mul[b, :]]         # a (b c)
        bad = np.argwhere(left != right)
        if bad.size:
            a, c = bad[0]
            return int(a), int(b), int(c)
    return None


def monoid_from_cayley(mul, identity: int, gens: Sequence[int] | None = None,
                       gen_names: Sequence[str] | None = None) -> FiniteMonoid:
    """Validate a Cayley table and wrap it.

    Associativity is checked on all triples up to 300 elements and by Light's
    test over the generators above that.
    """
    mul = np.array(mul, dtype=np.int32)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
        raise ValueError("Cayley table must be square")
    size = mul.shape[0]
    if size == 0:
        raise ValueError("a monoid has at least one element")
    if mul.min() < 0 or mul.max() >= size:
        raise ValueError("table entries must be element indices")
    if not 0 <= identity < size:
        raise ValueError(f"identity {identity} out of range")
    ar = np.arange(size)
    if not (np.array_equal(mul[identity], ar) and np.array_equal(mul[:, identity], ar)):
        bad = int(np.flatnonzero((mul[identity] != ar) | (mul[:, identity] != ar))[0])
        raise ValueError(f"{identity} is not an identity: fails at element {bad}")
    if gens is None:
        gens = choose_generators(mul, identity)
    gens = tuple(int(g) for g in gens)
    triple = find_associativity_violation(mul, None if size <= FULL_ASSOCIATIVITY_LIMIT else gens)
    if triple is not None:
        raise NotAssociative(triple)
    labels = _shortlex_labels(mul, identity, gens)
    names = tuple(gen_names) if gen_names is not None else default_gen_names(len(gens))
    return FiniteMonoid(mul=mul, identity=identity, gens=gens, labels=labels, gen_names=names)


def left_coset(M: FiniteMonoid, m: int) -> frozenset[int]:
    """``mM = {m x : x in M}``."""
    return frozenset(int(v) for v in M.mul[m])


@dataclass(frozen=True)
class CosetPoset:
    """``X(M)``: the distinct left cosets ordered by inclusion.

    Cosets are numbered by their first owner; ``owners[i]`` lists every ``m``
    with ``mM`` equal to coset ``i``.
    """

    monoid: FiniteMonoid
    cosets: tuple[frozenset[int], ...]
    leq: tuple[tuple[bool, ...], ...]
    owners: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.cosets)

    def as_poset(self) -> FinitePoset:
        return FinitePoset(self.leq)

    def label(self, i: int) -> str:
        M = self.monoid
        best = min(self.owners[i], key=lambda m: (len(M.labels[m]), M.labels[m]))
        return M.name(best)


def coset_poset(M: FiniteMonoid) -> CosetPoset:
    coset_of, leq = M.coset_of, M.coset_leq
    k = leq.shape[0]
    owners: list[list[int]] = [[] for _ in range(k)]
    for m, c in enumerate(coset_of):
        owners[int(c)].append(m)
    cosets = tuple(left_coset(M, own[0]) for own in owners)
    return CosetPoset(
        monoid=M,
        cosets=cosets,
        leq=tuple(tuple(bool(v) for v in row) for row in leq),
        owners=tuple(tuple(o) for o in owners),
    )


def xm_witness(M: FiniteMonoid) -> tuple[int, int] | None:
    """Owners ``(m, n)`` of the first pair of incomparable left cosets."""
    leq = M.coset_leq
    comparable = leq | leq.T
    bad = np.argwhere(~comparable)
    if not bad.size:
        return None
    i, j = bad[0]
    first = {}
    for m, c in enumerate(M.coset_of):
        first.setdefault(int(c), m)
    return first[int(i)], first[int(j)]


def is_xm_linear(M: FiniteMonoid) -> bool:
    return xm_witness(M) is None


def r_classes(M: FiniteMonoid) -> list[tuple[int, ...]]:
    classes: dict[int, list[int]] = {}
    for m, c in enumerate(M.coset_of):
        classes.setdefault(int(c), []).append(m)
    return [tuple(v) for _, v in sorted(classes.items())]


def is_r_trivial(M: FiniteMonoid) -> bool:
    return M.coset_leq.shape[0] == M.size


def is_almost_r_trivial(M: FiniteMonoid) -> bool:
    """Every element in a non-singleton R-class is fixed by left multiplication."""
    for cls in r_classes(M):
        if len(cls) > 1:
            for m in cls:
                if np.any(M.mul[:, m] != m):
                    return False
    return True


def is_l_trivial(M: FiniteMonoid) -> bool:
    cols = {frozenset(M.mul[:, m].tolist()) for m in range(M.size)}
    return len(cols) == M.size


def two_sided_ideals(M: FiniteMonoid) -> np.ndarray:
    """Boolean matrix whose row ``x`` is the membership vector of ``MxM``."""
    size = M.size
    member = np.zeros((size, size), dtype=np.float32)
    member[np.arange(size)[:, None], M.mul] = 1.0      # row m: mM
    left = np.zeros((size, size), dtype=np.float32)
    left[np.arange(size)[:, None], M.mul.T] = 1.0       # row x: Mx
    return (left @ member) > 0


def is_j_trivial(M: FiniteMonoid) -> bool:
    ideals = two_sided_ideals(M)
    return len({row.tobytes() for row in ideals}) == M.size


def left_regular_regressive_representation(M: FiniteMonoid):
    """Faithful representation of an R-trivial monoid by regressive maps.

    The poset is ``x <= y`` iff ``xM ⊆ yM`` on the elements of ``M``; element
    ``m`` becomes right multiplication ``x -> x m``, which is regressive
    because ``xmM ⊆ xM``.  The maps compose in the ``"right"`` convention:
    the map of ``a b`` is "first ``a``'s map, then ``b``'s".  Faithful since
    the identity is sent to ``m``.
    """
    if not is_r_trivial(M):
        raise ValueError("monoid is not R-trivial; the coset order is not antisymmetric")
    c = M.coset_of
    leq = M.coset_leq
    P = FinitePoset([[bool(leq[c[x], c[y]]) for y in range(M.size)] for x in range(M.size)])
    maps = [Transformation(tuple(int(v) for v in M.mul[:, m])) for m in range(M.size)]
    for m, t in enumerate(maps):
        if t(M.identity) != m:
            raise AssertionError("representation is not faithful")
        if any(not P.le(t(x), x) for x in range(M.size)):
            raise AssertionError(f"map of element {m} is not regressive")
    return P, maps


def shortest_words(M: FiniteMonoid, i: int, limit: int = 8) -> list[tuple[int, ...]]:
    """Shortlex-sorted words of minimal length that evaluate to ``i`` (at most ``limit``)."""
    target = len(M.labels[i])
    layer = [((), M.identity)]
    for t in range(1, target + 1):
        layer = [(w + (j,), int(M.mul[m, g])) for w, m in layer for j, g in enumerate(M.gens)]
        layer = [(w, m) for w, m in layer if len(M.labels[m]) == t]
    return [w for w, m in layer if m == i][:limit]


def _word_name(M: FiniteMonoid, word) -> str:
    if not word:
        return "id"
    sep = "" if all(len(s) == 1 for s in M.gen_names) else "."
    w = sep.join(M.gen_names[j] for j in word)
    return f"{M.symbol}_{w}" if M.symbol else w


def coset_table(M: FiniteMonoid, aliases: bool = True) -> list[tuple[str, list[str]]]:
    """Rows ``(m, mM)`` for one owner per coset, members in element order.

    With ``aliases`` the row label lists every shortest word of the owner,
    joined by `` = ``.
    """
    X = coset_poset(M)
    rows = []
    for i in range(len(X)):
        owner = min(X.owners[i], key=lambda m: (len(M.labels[m]), M.labels[m]))
        if aliases:
            label = " = ".join(_word_name(M, w) for w in shortest_words(M, owner))
        else:
            label = M.name(owner)
        rows.append((label, [M.name(m) for m in sorted(X.cosets[i])]))
    return rows


def export_hasse_dot(X) -> str:
    """Hasse diagram in DOT; edges run from smaller to larger."""
    if isinstance(X, CosetPoset):
        return hasse_dot(X.as_poset(), [X.label(i) for i in range(len(X))], graph_name="XM")
    if isinstance(X, FiniteMonoid):
        return export_hasse_dot(coset_poset(X))
    if isinstance(X, FinitePoset):
        return hasse_dot(X)
    raise TypeError(f"cannot draw {type(X).__name__}")


def monoid_to_json(M: FiniteMonoid) -> dict:
    out = {
        "size": M.size,
        "identity": M.identity,
        "gens": list(M.gens),
        "gen_names": list(M.gen_names),
        "mul": M.mul.tolist(),
        "labels": [list(w) for w in M.labels],
    }
    if M.action is not None:
        out["action"] = M.action
    if M.elements is not None:
        out["elements"] = [list(t.images) for t in M.elements]
    return out


def monoid_from_json(data) -> FiniteMonoid:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        mul = data["mul"]
        identity = int(data.get("identity", 0))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad monoid JSON: missing {exc}") from None
    gens = data.get("gens")
    names = data.get("gen_names")
    if gens is not None and names is not None and len(names) != len(gens):
        names = None
    M = monoid_from_cayley(mul, identity, gens=gens, gen_names=names)
    if "size" in data and int(data["size"]) != M.size:
        raise ValueError(f"size field {data['size']} disagrees with table size {M.size}")
    return M
