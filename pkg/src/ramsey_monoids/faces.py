"""Central hyperplane arrangements over the rationals and their face monoids.

A face is a sign vector over the normals, written as a string over ``-0+``,
that is realized by some point.  Realizability is decided exactly: equality
constraints are removed by passing to a nullspace basis, and the remaining
homogeneous strict inequalities go through Fourier-Motzkin elimination, with
a witness point recovered by back-substitution.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded
from .monoid import FiniteMonoid, is_r_trivial, is_xm_linear, monoid_from_cayley

SIGNS = "-0+"
MAX_HYPERPLANES = 12

Vec = tuple[Fraction, ...]


def parse_rational(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise ValueError(f"not a rational: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational: {v!r}") from None
    raise ValueError(f"rationals must be integers or 'p/q' strings, got {v!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _sign(q) -> int:
    return (q > 0) - (q < 0)


def _rref(rows: list[list[Fraction]], ncols: int):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [v / p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(_rref([list(r) for r in rows], ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vec]:
    """A basis of ``{x : r . x = 0 for every row r}``."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = _rref([list(r) for r in rows], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def _normalize(c: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    lead = next((abs(v) for v in c if v != 0), None)
    return c if lead is None else tuple(v / lead for v in c)


def strict_feasible(constraints: Sequence[Sequence[Fraction]], nvars: int) -> Vec | None:
    """A point ``y`` with ``c . y > 0`` for every constraint, or ``None``.

    Fourier-Motzkin: eliminating variable ``k`` pairs each constraint with a
    positive ``k``-coefficient with each negative one; the positive
    combination cancelling ``k`` is again strict.  A constraint whose
    coefficients all vanish reads ``0 > 0`` and certifies infeasibility.
    """
    current = list(dict.fromkeys(_normalize(tuple(c)) for c in constraints))
    stages = []
    for k in range(nvars):
        if any(all(v == 0 for v in c) for c in current):
            return None
        pos = [c for c in current if c[k] > 0]
        neg = [c for c in current if c[k] < 0]
        zero = [c for c in current if c[k] == 0]
        stages.append((pos, neg))
        combos = [tuple(-n[k] * a + p[k] * b for a, b in zip(p, n)) for p in pos for n in neg]
        current = list(dict.fromkeys(_normalize(c) for c in zero + combos))
    if current:
        return None
    y = [Fraction(0)] * nvars
    for k in reversed(range(nvars)):
        pos, neg = stages[k]

        def bound(c):
            rest = sum((c[j] * y[j] for j in range(nvars) if j != k), Fraction(0))
            return -rest / c[k]

        lo = max((bound(c) for c in pos), default=None)
        hi = min((bound(c) for c in neg), default=None)
        if lo is not None and hi is not None:
            y[k] = (lo + hi) / 2
        elif lo is not None:
            y[k] = lo + 1
        elif hi is not None:
            y[k] = hi - 1
        else:
            y[k] = Fraction(0)
    return tuple(y)


@dataclass(frozen=True)
class Arrangement:
    dim: int
    normals: tuple[Vec, ...]

    def __len__(self):
        return len(self.normals)

    def sign_of(self, x: Sequence[Fraction]) -> str:
        return "".join(SIGNS[_sign(dot(a, x)) + 1] for a in self.normals)

    def to_json(self) -> dict:
        return {"dim": self.dim, "normals": [[format_rational(v) for v in a] for a in self.normals]}

    @classmethod
    def from_json(cls, data) -> "Arrangement":
        if isinstance(data, str):
            data = json.loads(data)
        if "dim" not in data or "normals" not in data:
            raise ValueError("arrangement needs 'dim' and 'normals'")
        return arrangement_from_normals(int(data["dim"]), data["normals"])


def arrangement_from_normals(d: int, normals) -> Arrangement:
    if d < 1:
        raise ValueError("dimension must be positive")
    if not normals:
        raise ValueError("an arrangement needs at least one hyperplane")
    vecs = []
    for i, a in enumerate(normals):
        v = tuple(parse_rational(x) for x in a)
        if len(v) != d:
            raise ValueError(f"normal {i} has {len(v)} coordinates, expected {d}")
        if all(x == 0 for x in v):
            raise ValueError(f"normal {i} is zero")
        vecs.append(v)
    r = rank(vecs, d)
    if r < d:
        raise ValueError(f"normals have rank {r} < {d}; the hyperplanes must meet only at the origin "
                         "(quotient by their common intersection first)")
    return Arrangement(d, tuple(vecs))


@dataclass(frozen=True)
class Face:
    sign: str
    witness: Vec

    def to_json(self) -> dict:
        return {"sign": self.sign, "witness": [format_rational(v) for v in self.witness]}


def _clear_denominators(x: Sequence[Fraction]) -> Vec:
    m = lcm(*(v.denominator for v in x)) if x else 1
    return tuple(v * m for v in x)


def sign_vector_witness(A: Arrangement, sign: str) -> Vec | None:
    """An exact point with the given signs, or ``None`` if the face is empty."""
    if len(sign) != len(A):
        raise ValueError(f"sign vector has length {len(sign)}, arrangement has {len(A)} hyperplanes")
    eqs = [a for a, s in zip(A.normals, sign) if s == "0"]
    basis = nullspace(eqs, A.dim)
    strict = []
    for a, s in zip(A.normals, sign):
        if s == "0":
            continue
        e = 1 if s == "+" else -1
        strict.append(tuple(e * dot(a, b) for b in basis))
    if not basis:
        return tuple(Fraction(0) for _ in range(A.dim)) if not strict else None
    y = strict_feasible(strict, len(basis))
    if y is None:
        return None
    x = [sum((yi * b[j] for yi, b in zip(y, basis)), Fraction(0)) for j in range(A.dim)]
    x = _clear_denominators(x)
    if A.sign_of(x) != sign:
        raise AssertionError(f"witness {x} does not realize {sign}")
    return x


def realizable_sign_vectors(A: Arrangement, max_hyperplanes: int = MAX_HYPERPLANES) -> list[Face]:
    """Every face with a witness; the origin comes first.

    Signs are assigned hyperplane by hyperplane in the order ``0 + -`` and a
    prefix is extended only if it is feasible on its own.
    """
    if len(A) > max_hyperplanes:
        raise BudgetExceeded("sign vectors", 3 ** max_hyperplanes, 3 ** len(A))
    faces: list[Face] = []

    def extend(prefix):
        k = len(prefix)
        partial = Arrangement(A.dim, A.normals[:k])
        w = sign_vector_witness(partial, prefix) if k else tuple(Fraction(0) for _ in range(A.dim))
        if w is None:
            return
        if k == len(A):
            faces.append(Face(prefix, w))
            return
        for s in "0+-":
            extend(prefix + s)

    extend("")
    return faces


def face_product(a: str, b: str) -> str:
    if len(a) != len(b):
        raise ValueError("sign vectors of different lengths")
    return "".join(x if x != "0" else y for x, y in zip(a, b))


def face_order(a: str, b: str) -> bool:
    if len(a) != len(b):
        raise ValueError("sign vectors of different lengths")
    return all(x == "0" or x == y for x, y in zip(a, b))


def is_chamber(a: str) -> bool:
    return "0" not in a


def face_monoid_from_signs(signs: Sequence[str]) -> FiniteMonoid:
    """Monoid on a product-closed set of sign vectors containing the zero vector."""
    signs = list(signs)
    index = {s: i for i, s in enumerate(signs)}
    if len(index) != len(signs):
        raise ValueError("duplicate sign vectors")
    n = len(signs)
    zero = "0" * len(signs[0]) if signs else ""
    if zero not in index:
        raise ValueError("the zero sign vector (origin) must be present")
    mul = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(signs):
        for j, b in enumerate(signs):
            p = face_product(a, b)
            if p not in index:
                raise ValueError(f"{a}.{b} = {p} is not in the face set")
            mul[i, j] = index[p]
    M = monoid_from_cayley(mul, index[zero])
    return replace(M, element_names=tuple(signs))


def face_monoid(A: Arrangement, faces: Sequence[Face] | None = None) -> tuple[FiniteMonoid, list[str]]:
    """The face monoid with its sign vectors (element ``i`` is ``signs[i]``)."""
    if faces is None:
        faces = realizable_sign_vectors(A)
    signs = [f.sign for f in faces]
    M = face_monoid_from_signs(signs)
    for i, a in enumerate(signs):
        if M.mul[i, i] != i:
            raise AssertionError(f"{a}^2 != {a}")
        for j, b in enumerate(signs):
            ab = M.mul[i, j]
            if M.mul[ab, i] != ab:
                raise AssertionError(f"ABA != AB for {a}, {b}")
            if (ab == j) != face_order(a, b):
                raise AssertionError(f"AB = B disagrees with the face order for {a}, {b}")
    if not is_r_trivial(M):
        raise AssertionError("face monoid is not R-trivial")
    if sum(map(is_chamber, signs)) >= 2 and is_xm_linear(M):
        raise AssertionError("face monoid with two chambers has linear X(M)")
    return M, signs


def faces_to_json(faces: Sequence[Face]) -> list[dict]:
    return [f.to_json() for f in faces]


THREE_LINES = (("1", "0"), ("0", "1"), ("1", "-1"))
