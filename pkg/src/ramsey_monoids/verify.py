"""Exhaustive checks of the classification theorems, plus finite pointed M-sets.

Each family fixes the composition convention under which it is checked:
order-preserving families compose in the ordinary way (``"left"``), the
families of all regressive maps let the argument act first (``"right"``).
The other convention is available through ``action=`` for comparison.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import BudgetExceeded
from .functions import (FUNCTION_BUDGET, all_op_regressive, all_regressive, augment_with_constants,
                        k_level_lipschitz_filter, tetris_monoid)
from .monoid import (DEFAULT_BUDGET, LEFT, RIGHT, FiniteMonoid, closure_from_transformations,
                     is_almost_r_trivial, is_r_trivial, is_xm_linear, monoid_of_functions, xm_witness)
from .posets import FiniteLattice, FinitePoset, enumerate_posets, is_lattice, is_linear_order

FAMILY_ACTION = {
    "all_regressive": RIGHT,
    "constants": RIGHT,
    "op_lattice": LEFT,
    "k_lip": LEFT,
    "tetris": LEFT,
}
FAMILY_NMAX = {"all_regressive": 5, "constants": 4, "op_lattice": 6, "k_lip": 6}


def _poset(P) -> FinitePoset:
    return P.base if isinstance(P, FiniteLattice) else P


def predict_all_regressive(P: FinitePoset) -> bool:
    """Linear iff there is at most one strictly comparable pair."""
    pairs = sum(1 for x in range(P.n) for y in range(P.n) if P.lt(x, y))
    return pairs <= 1


def _is_short_chain(P: FinitePoset, max_len: int) -> bool:
    return is_linear_order(P) and P.n <= max_len


def predict_op_lattice(L) -> bool:
    """Linear iff the lattice is a chain of one or two elements."""
    return _is_short_chain(_poset(L), 2)


def predict_k_lip(L, k: int) -> bool:
    """``k >= 2``: chain of at most two elements; ``k = 1``: at most three."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return _is_short_chain(_poset(L), 3 if k == 1 else 2)


@dataclass
class InstanceRecord:
    id: str
    predicted: bool | None
    observed: bool | None
    witness: list | None = None
    size: int | None = None
    extra: dict = field(default_factory=dict)
    skipped: str | None = None

    @property
    def agrees(self) -> bool:
        return self.skipped is None and self.predicted == self.observed

    def to_json(self) -> dict:
        out = {"id": self.id, "predicted": self.predicted, "observed": self.observed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.size is not None:
            out["size"] = self.size
        out.update(self.extra)
        if self.skipped is not None:
            out["skipped"] = self.skipped
        return out


@dataclass
class ClassificationReport:
    family: str
    action: str
    records: list[InstanceRecord] = field(default_factory=list)

    @property
    def disagreements(self) -> list[InstanceRecord]:
        return [r for r in self.records if r.skipped is None and r.predicted != r.observed]

    @property
    def skipped(self) -> list[InstanceRecord]:
        return [r for r in self.records if r.skipped is not None]

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.skipped

    def summary(self) -> dict:
        return {
            "summary": self.family,
            "action": self.action,
            "instances": len(self.records),
            "disagreements": len(self.disagreements),
            "skipped": len(self.skipped),
        }

    def json_lines(self) -> list[str]:
        lines = [json.dumps(r.to_json(), sort_keys=True, ensure_ascii=False) for r in self.records]
        lines.append(json.dumps(self.summary(), sort_keys=True))
        return lines


def _witness_names(M: FiniteMonoid):
    w = xm_witness(M)
    return None if w is None else [M.name(w[0]), M.name(w[1])]


def _instances(family: str, n_max: int) -> Iterable[tuple[str, FinitePoset]]:
    lattices = family in ("op_lattice", "k_lip")
    for n in range(1, n_max + 1):
        for i, P in enumerate(enumerate_posets(n, lattices_only=lattices)):
            yield f"n{n}-{i}", P


def _closure(P: FinitePoset, fns, action, budget):
    gens = [f for f in fns if f.images != tuple(range(P.n))]
    return closure_from_transformations(P.n, gens, action=action, budget=budget)


def _classify_one(family, P, k, action, budget, fn_budget) -> InstanceRecord:
    extra = {"covers": [list(c) for c in P.covers]}
    if family == "all_regressive":
        M = monoid_of_functions(all_regressive(P, fn_budget), action=action, budget=budget)
        predicted = predict_all_regressive(P)
        extra["r_trivial"] = is_r_trivial(M)
    elif family == "constants":
        fns = all_regressive(P, fn_budget)
        base = monoid_of_functions(fns, action=action, budget=budget)
        M = augment_with_constants(fns, P, action=action, budget=budget)
        predicted = is_xm_linear(base)
        extra["almost_r_trivial"] = is_almost_r_trivial(M)
    elif family == "op_lattice":
        M = monoid_of_functions(all_op_regressive(P, fn_budget), action=action, budget=budget)
        predicted = predict_op_lattice(P)
    elif family == "k_lip":
        fns = k_level_lipschitz_filter(P, all_op_regressive(P, fn_budget), k)
        M = _closure(P, fns, action, budget)
        predicted = predict_k_lip(P, k)
        extra["closed"] = M.size == len(fns)
    else:
        raise ValueError(f"unknown family {family!r}")
    observed = is_xm_linear(M)
    rec = InstanceRecord("", predicted, observed, size=M.size, extra=extra)
    if predicted != observed and not observed:
        rec.witness = _witness_names(M)
    return rec


def run_classification(family: str, n_max: int | None = None, k: int | None = None,
                       action: str | None = None, budget: int = DEFAULT_BUDGET,
                       fn_budget: int = FUNCTION_BUDGET) -> ClassificationReport:
    """Compare predicted and computed linearity of ``X(M)`` on every instance.

    Families: ``all_regressive`` (posets), ``constants`` (posets; prediction
    is the linearity without constants), ``op_lattice`` and ``k_lip``
    (lattices).  Budget overruns are recorded per instance.
    """
    if family not in FAMILY_ACTION or family == "tetris":
        raise ValueError(f"unknown family {family!r}")
    if family == "k_lip" and (k is None or k < 1):
        raise ValueError("k_lip needs a positive k")
    n_max = FAMILY_NMAX[family] if n_max is None else n_max
    action = FAMILY_ACTION[family] if action is None else action
    name = f"k_lip({k})" if family == "k_lip" else family
    report = ClassificationReport(name, action)
    for ident, P in _instances(family, n_max):
        try:
            rec = _classify_one(family, P, k, action, budget, fn_budget)
        except BudgetExceeded as exc:
            rec = InstanceRecord(ident, None, None, skipped=str(exc))
        rec.id = ident
        report.records.append(rec)
    return report


def tetris_linearity_table(n_max: int, action: str = LEFT) -> list[tuple[int, bool]]:
    if n_max > 8:
        raise ValueError("n_max is limited to 8")
    return [(n, is_xm_linear(tetris_monoid(n, action))) for n in range(1, n_max + 1)]


def tetris_report(n_max: int = 6, action: str = LEFT) -> ClassificationReport:
    report = ClassificationReport("tetris", action)
    for n, linear in tetris_linearity_table(n_max, action):
        report.records.append(InstanceRecord(f"I{n}", n < 4, linear, size=2 ** (n - 1)))
    return report


def generator_incomparability(M: FiniteMonoid) -> tuple[int, int] | None:
    """First pair of distinct generators whose left cosets are incomparable."""
    gens = list(dict.fromkeys(g for g in M.gens if g != M.identity))
    leq, c = M.coset_leq, M.coset_of
    for a, b in itertools.combinations(gens, 2):
        if not leq[c[a], c[b]] and not leq[c[b], c[a]]:
            return a, b
    return None


# -- pointed M-sets and block sequences ------------------------------------


@dataclass(frozen=True, eq=False)
class PointedMSet:
    """``act[m][x]`` is ``m . x``; the orbit of ``basepoint`` must be everything."""

    monoid: FiniteMonoid
    act: np.ndarray
    basepoint: int

    def __post_init__(self):
        act = np.array(self.act, dtype=np.int64)
        object.__setattr__(self, "act", act)
        M = self.monoid
        if act.ndim != 2 or act.shape[0] != M.size:
            raise ValueError("action table needs one row per monoid element")
        size = act.shape[1]
        if size == 0 or act.min() < 0 or act.max() >= size:
            raise ValueError("action values must be points of the carrier")
        if not 0 <= self.basepoint < size:
            raise ValueError("basepoint out of range")
        if not np.array_equal(act[M.identity], np.arange(size)):
            raise ValueError("identity does not act trivially")
        for a in range(M.size):
            for b in range(M.size):
                if not np.array_equal(act[M.mul[a, b]], act[a][act[b]]):
                    raise ValueError(f"not an action: ({a}{b}).x != {a}.({b}.x)")
        orbit = set(act[:, self.basepoint].tolist())
        if len(orbit) != size:
            missing = sorted(set(range(size)) - orbit)
            raise ValueError(f"M.x is not the whole carrier; missing {missing}")

    @property
    def size(self) -> int:
        return self.act.shape[1]

    def apply(self, m: int, x: int) -> int:
        return int(self.act[m, x])


PartialFunction = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class BlockSequence:
    """Finite partial functions ``coordinate -> point`` with ``max dom f_i < min dom f_{i+1}``."""

    blocks: tuple[PartialFunction, ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted((int(k), int(v)) for k, v in dict(b).items())) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        for i, b in enumerate(blocks):
            if not b:
                raise ValueError(f"block {i} has empty domain")
        for i in range(len(blocks) - 1):
            if blocks[i][-1][0] >= blocks[i + 1][0][0]:
                raise ValueError(f"blocks {i} and {i + 1} are not increasing")

    def __len__(self):
        return len(self.blocks)


def _mset_for(msets, coord) -> PointedMSet:
    return msets if isinstance(msets, PointedMSet) else msets[coord]


def act_on_block(m: int, block: PartialFunction, msets) -> PartialFunction:
    return tuple((k, _mset_for(msets, k).apply(m, v)) for k, v in block)


def subspace_of_blocks(B: BlockSequence, msets: PointedMSet | Mapping[int, PointedMSet],
                       depth: int) -> frozenset[PartialFunction]:
    """Depth-bounded fragment of the subspace generated by ``B``.

    Unions ``m_0 f_{i_0} ... m_k f_{i_k}`` with ``i_0 < ... < i_k``,
    ``k <= depth`` and at least one ``m_j`` the identity.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if isinstance(msets, PointedMSet):
        M = msets.monoid
    else:
        monoids = {id(s.monoid) for s in msets.values()}
        if len(monoids) != 1:
            raise ValueError("all coordinates must carry actions of the same monoid")
        M = next(iter(msets.values())).monoid
    for b in B.blocks:
        for k, v in b:
            X = _mset_for(msets, k)
            if not 0 <= v < X.size:
                raise ValueError(f"value {v} at coordinate {k} is not a point")
    acted = [[act_on_block(m, b, msets) for m in range(M.size)] for b in B.blocks]
    out: set[PartialFunction] = set()
    for r in range(1, min(depth + 1, len(B)) + 1):
        for idx in itertools.combinations(range(len(B)), r):
            for ms in itertools.product(range(M.size), repeat=r):
                if M.identity not in ms:
                    continue
                out.add(tuple(itertools.chain.from_iterable(acted[i][m] for i, m in zip(idx, ms))))
    return frozenset(out)


def poset_instances(n_max: int, lattices_only: bool = False) -> list[tuple[str, FinitePoset]]:
    return list(_instances("op_lattice" if lattices_only else "all_regressive", n_max))


__all__ = [
    "BlockSequence", "ClassificationReport", "FAMILY_ACTION", "InstanceRecord", "PointedMSet",
    "act_on_block", "generator_incomparability", "is_lattice", "poset_instances",
    "predict_all_regressive", "predict_k_lip", "predict_op_lattice", "run_classification",
    "subspace_of_blocks", "tetris_linearity_table", "tetris_report",
]
