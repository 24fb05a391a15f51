import os
import subprocess
import sys

import numpy as np
import pytest

from oracles import closure, table_cosets
from ramsey_monoids import kernels
from ramsey_monoids.errors import BudgetExceeded
from ramsey_monoids.posets import _invariant_classes, enumerate_posets

py = kernels.python_backend
cy = kernels.compiled_backend

needs_compiled = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def random_gens(rng, d, k):
    return rng.integers(0, d, size=(k, d)).astype(np.int64)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    assert (kernels.BACKEND == "cython") == (cy is not None)


@pytest.mark.parametrize("right", [False, True])
def test_python_closure_matches_oracle(right):
    rng = np.random.default_rng(3)
    for _ in range(30):
        d = int(rng.integers(1, 5))
        gens = random_gens(rng, d, int(rng.integers(1, 3)))
        E, table, parent, last = py.closure_bfs(d, gens, right, 10_000)
        assert {tuple(r) for r in E.tolist()} == closure([tuple(g) for g in gens.tolist()], d, right)
        assert E[0].tolist() == list(range(d))
        for i in range(1, len(E)):
            g = gens[last[i]]
            p = E[parent[i]]
            expected = g[p] if right else p[g]
            assert E[i].tolist() == expected.tolist()


def test_python_budget():
    gens = np.array([[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]])
    with pytest.raises(BudgetExceeded):
        py.closure_bfs(5, gens, False, 10)


@needs_compiled
@pytest.mark.parametrize("right", [False, True])
def test_closure_and_cayley_agree(right):
    rng = np.random.default_rng(5)
    for _ in range(40):
        d = int(rng.integers(1, 6))
        gens = random_gens(rng, d, int(rng.integers(0, 4)))
        a = py.closure_bfs(d, gens, right, 50_000)
        b = cy.closure_bfs(d, gens, right, 50_000)
        for x, y in zip(a, b):
            assert np.array_equal(np.asarray(x), np.asarray(y))
        E, table, parent, last = a
        m1 = py.cayley_from_right(table, parent, last, 0)
        m2 = cy.cayley_from_right(table, parent, last, 0)
        assert np.array_equal(np.asarray(m1), np.asarray(m2))
        m3 = py.cayley_from_elements(E, right)
        m4 = cy.cayley_from_elements(E, right)
        assert np.array_equal(m1, np.asarray(m3)) and np.array_equal(m1, np.asarray(m4))


@needs_compiled
def test_compiled_budget():
    gens = np.array([[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]])
    with pytest.raises(BudgetExceeded):
        cy.closure_bfs(5, gens, False, 10)


@needs_compiled
def test_cayley_from_elements_rejects_unclosed():
    E = np.array([[0, 1, 2], [0, 0, 1]], dtype=np.int32)
    for backend in (py, cy):
        with pytest.raises(ValueError, match="outside"):
            backend.cayley_from_elements(E, False)


@needs_compiled
def test_coset_order_agree():
    rng = np.random.default_rng(9)
    for _ in range(30):
        d = int(rng.integers(1, 5))
        E, table, parent, last = py.closure_bfs(d, random_gens(rng, d, 2), bool(rng.integers(2)), 50_000)
        mul = py.cayley_from_right(table, parent, last, 0)
        c1, l1 = py.coset_order(mul)
        c2, l2 = cy.coset_order(mul)
        assert np.array_equal(np.asarray(c1), np.asarray(c2))
        assert np.array_equal(np.asarray(l1, dtype=bool), np.asarray(l2, dtype=bool))
        brute = table_cosets(mul.tolist())
        for a in range(len(mul)):
            for b in range(len(mul)):
                assert bool(l1[c1[a], c1[b]]) == (brute[a] <= brute[b])


@needs_compiled
@pytest.mark.parametrize("n", range(1, 7))
def test_canonical_poset_agree(n):
    for P in enumerate_posets(n):
        cls = _invariant_classes(P)
        assert py.canonical_poset(n, P.above, cls) == tuple(cy.canonical_poset(n, P.above, cls))


def test_environment_forces_fallback():
    env = dict(os.environ, RAMSEY_MONOIDS_PURE="1")
    res = subprocess.run([sys.executable, "-c", "import ramsey_monoids; print(ramsey_monoids.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert res.stdout.strip() == "python"
