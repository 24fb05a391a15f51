"""Monoids of regressive maps on finite posets.

Maps are ``Transformation`` objects on the poset's index set.  Enumerations
come out in lexicographic order of image tuples.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import prod

from .errors import BudgetExceeded
from .monoid import DEFAULT_BUDGET, LEFT, FiniteMonoid, closure_from_transformations, monoid_of_functions
from .posets import FinitePoset, chain_poset
from .transform import Transformation, constant_map, identity_map

FUNCTION_BUDGET = 100_000


def _down_lists(P: FinitePoset):
    return [[y for y in range(P.n) if P.le(y, x)] for x in range(P.n)]


def regressive_count(P: FinitePoset) -> int:
    return prod(len(d) for d in _down_lists(P))


def _check_budget(P, budget):
    count = regressive_count(P)
    if count > budget:
        raise BudgetExceeded("regressive maps", budget, count)


def all_regressive(P: FinitePoset, budget: int = FUNCTION_BUDGET) -> list[Transformation]:
    """Every ``f`` with ``f(x) <= x``; there are ``prod |down(x)|`` of them."""
    _check_budget(P, budget)
    return [Transformation(images) for images in itertools.product(*_down_lists(P))]


def all_op_regressive(P: FinitePoset, budget: int = FUNCTION_BUDGET) -> list[Transformation]:
    """Order-preserving regressive maps, by backtracking in index order."""
    _check_budget(P, budget)
    n = P.n
    downs = _down_lists(P)
    images = [0] * n
    out: list[Transformation] = []

    def extend(x):
        if x == n:
            out.append(Transformation(tuple(images)))
            return
        for v in downs[x]:
            ok = True
            for y in range(x):
                if P.le(y, x) and not P.le(images[y], v):
                    ok = False
                    break
                if P.le(x, y) and not P.le(v, images[y]):
                    ok = False
                    break
            if ok:
                images[x] = v
                extend(x + 1)

    extend(0)
    return out


def is_regressive(f: Transformation, P: FinitePoset) -> bool:
    return all(P.le(f(x), x) for x in range(P.n))


def is_order_preserving(f: Transformation, P: FinitePoset) -> bool:
    return all(P.le(f(x), f(y)) for x in range(P.n) for y in range(P.n) if P.le(x, y))


def level_pairs(P: FinitePoset) -> list[tuple[int, int]]:
    """Pairs ``(y, x)`` with ``y < x`` and ``level(x) = level(y) + 1``."""
    lv = P.levels
    return [(y, x) for x in range(P.n) for y in range(P.n)
            if P.lt(y, x) and lv[x] == lv[y] + 1]


def k_level_lipschitz_filter(P: FinitePoset, fns, k: int) -> list[Transformation]:
    """Keep maps whose image levels move by at most ``k`` across each level step."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    lv = P.levels
    pairs = level_pairs(P)
    return [f for f in fns if all(abs(lv[f(x)] - lv[f(y)]) <= k for y, x in pairs)]


def is_chain_1_lipschitz(f: Transformation) -> bool:
    """``f(0) = 0`` and consecutive values differ by 0 or 1.

    This is the metric 1-Lipschitz condition on ``[n]`` for order-preserving
    regressive maps, and the one under which tetris maps are closed.
    """
    images = f.images
    if images and images[0] != 0:
        return False
    return all(images[i] - images[i - 1] in (0, 1) for i in range(1, len(images)))


def is_literal_band(f: Transformation) -> bool:
    """``i - 1 <= f(i) <= i`` for every ``i``; kept for comparison only."""
    return all(max(i - 1, 0) <= v <= i for i, v in enumerate(f.images))


def tetris_map(n: int) -> Transformation:
    return Transformation(tuple(max(k - 1, 0) for k in range(n)))


def catalan_generators(n: int) -> list[Transformation]:
    """Idempotents ``e_i`` sending ``i`` to ``i - 1`` and fixing everything else."""
    return [Transformation(tuple(i - 1 if x == i else x for x in range(n))) for i in range(1, n)]


def tetris_functions(n: int) -> list[Transformation]:
    """The ``2^(n-1)`` maps with ``f(0) = 0`` and steps in ``{0, 1}``, in lexicographic order."""
    if n < 1:
        return []
    return [Transformation((0,) + tuple(itertools.accumulate(steps)))
            for steps in itertools.product((0, 1), repeat=n - 1)]


def catalan_monoid(n: int, action: str = LEFT, budget: int = DEFAULT_BUDGET) -> FiniteMonoid:
    """All order-preserving regressive maps of the chain ``[n]``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    M = closure_from_transformations(n, catalan_generators(n), action=action, budget=budget)
    expected = {f.images for f in all_op_regressive(chain_poset(n), budget=10**9)}
    if {t.images for t in M.elements} != expected:
        raise AssertionError("Catalan generators do not produce every order-preserving regressive map")
    return M


def tetris_monoid(n: int, action: str = LEFT, budget: int = DEFAULT_BUDGET) -> FiniteMonoid:
    """The 1-Lipschitz maps of ``C_n``; closure under composition is checked."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if 2 ** (n - 1) > budget:
        raise BudgetExceeded("tetris monoid", budget, 2 ** (n - 1))
    return monoid_of_functions(tetris_functions(n), action=action, budget=budget)


@dataclass(frozen=True)
class FunctionClassSpec:
    poset: FinitePoset
    require_order_preserving: bool = False
    level_lipschitz_k: int | None = None
    chain_1_lipschitz: bool = False

    def __post_init__(self):
        if self.chain_1_lipschitz:
            if any(not self.poset.le(i, i + 1) for i in range(self.poset.n - 1)):
                raise ValueError("chain_1_lipschitz needs the chain 0 < 1 < ... < n-1")
        if self.level_lipschitz_k is not None and self.level_lipschitz_k < 1:
            raise ValueError("k_level_lipschitz must be a positive integer")

    def functions(self, budget: int = FUNCTION_BUDGET) -> list[Transformation]:
        P = self.poset
        fns = all_op_regressive(P, budget) if self.require_order_preserving else all_regressive(P, budget)
        if self.level_lipschitz_k is not None:
            fns = k_level_lipschitz_filter(P, fns, self.level_lipschitz_k)
        if self.chain_1_lipschitz:
            fns = [f for f in fns if is_chain_1_lipschitz(f)]
        return fns

    def monoid(self, action: str = LEFT, budget: int = DEFAULT_BUDGET) -> FiniteMonoid:
        return monoid_of_functions(self.functions(), action=action, budget=budget)

    def to_json(self) -> dict:
        return {
            "poset": self.poset.to_json(),
            "order_preserving": self.require_order_preserving,
            "k_level_lipschitz": self.level_lipschitz_k,
            "chain_1_lipschitz": self.chain_1_lipschitz,
        }

    @classmethod
    def from_json(cls, data) -> "FunctionClassSpec":
        if isinstance(data, str):
            data = json.loads(data)
        if "poset" not in data:
            raise ValueError("function class needs a 'poset' field")
        k = data.get("k_level_lipschitz")
        return cls(
            poset=FinitePoset.from_json(data["poset"]),
            require_order_preserving=bool(data.get("order_preserving", False)),
            level_lipschitz_k=None if k is None else int(k),
            chain_1_lipschitz=bool(data.get("chain_1_lipschitz", False)),
        )


def comparability_witness(fns, P: FinitePoset):
    """First ``(f, g, x, y)`` in lexicographic order with ``f(x) !<= g(x)`` and ``f(y) !>= g(y)``.

    For maps composed in the ordinary way such a quadruple shows ``fM`` and
    ``gM`` are incomparable.  ``None`` does not prove linearity.
    """
    fns = list(fns)
    for f in fns:
        if f.domain_size != P.n:
            raise ValueError(f"{f!r} does not act on the poset")
        if not is_regressive(f, P):
            raise ValueError(f"{f!r} is not regressive")
        if not is_order_preserving(f, P):
            raise ValueError(f"{f!r} is not order-preserving")
    pts = range(P.n)
    for f in fns:
        for g in fns:
            xs = [x for x in pts if not P.le(f(x), g(x))]
            if not xs:
                continue
            ys = [y for y in pts if not P.le(g(y), f(y))]
            if ys:
                return f, g, xs[0], ys[0]
    return None


def minimal_constants(P: FinitePoset) -> list[Transformation]:
    return [constant_map(P.n, v) for v in P.minimal_elements]


def augment_with_constants(fns, P: FinitePoset, action: str = LEFT,
                           budget: int = DEFAULT_BUDGET) -> FiniteMonoid:
    """Closure of ``fns`` together with one constant per minimal element."""
    from .monoid import is_almost_r_trivial

    fns = list(fns)
    for f in fns:
        if not is_regressive(f, P):
            raise ValueError(f"{f!r} is not regressive")
    gens = [f for f in fns if f.images != tuple(range(P.n))] + minimal_constants(P)
    gens = list(dict.fromkeys(gens))
    M = closure_from_transformations(P.n, gens, action=action, budget=budget)
    if action != LEFT and not is_almost_r_trivial(M):
        raise AssertionError("constant-augmented regressive monoid is not almost R-trivial")
    return M


def regressive_monoid(P: FinitePoset, order_preserving: bool = False, action: str = LEFT,
                      budget: int = DEFAULT_BUDGET) -> FiniteMonoid:
    fns = all_op_regressive(P) if order_preserving else all_regressive(P)
    return monoid_of_functions(fns, action=action, budget=budget)


__all__ = [
    "FUNCTION_BUDGET", "FunctionClassSpec", "all_op_regressive", "all_regressive",
    "augment_with_constants", "catalan_generators", "catalan_monoid", "comparability_witness",
    "identity_map", "is_chain_1_lipschitz", "is_literal_band", "is_order_preserving",
    "is_regressive", "k_level_lipschitz_filter", "level_pairs", "minimal_constants",
    "regressive_count", "regressive_monoid", "tetris_functions", "tetris_map", "tetris_monoid",
]
