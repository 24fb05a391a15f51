"""The thirteen acceptance criteria, each at its stated time limit.

Each test records one ``criterion N: PASS/FAIL`` line, shown at the end of
the pytest run.
"""
import time
from contextlib import contextmanager

import numpy as np

from conftest import ACCEPTANCE_LINES
from oracles import (UNLABELED_LATTICES, UNLABELED_POSETS, brute_subspace, catalan, orbit_action,
                     small_transformation_monoids, table_cosets)
from ramsey_monoids.coxeter import build_coxeter_group, hecke_monoid, realization
from ramsey_monoids.faces import (THREE_LINES, arrangement_from_normals, face_monoid, face_order, face_product,
                                  is_chamber, realizable_sign_vectors)
from ramsey_monoids.functions import (all_op_regressive, all_regressive, augment_with_constants, catalan_monoid,
                                      comparability_witness, k_level_lipschitz_filter, tetris_functions,
                                      tetris_monoid)
from ramsey_monoids.monoid import (closure_from_transformations, coset_table, is_almost_r_trivial, is_j_trivial,
                                   is_r_trivial, is_xm_linear, left_coset, left_regular_regressive_representation, monoid_of_functions,
                                   xm_witness)
from ramsey_monoids.posets import chain_poset, enumerate_posets
from ramsey_monoids.transform import Transformation
from ramsey_monoids.verify import (BlockSequence, PointedMSet, predict_all_regressive, run_classification,
                                   subspace_of_blocks)

A2_TABLE = [
    ("id", ["id", "π_a", "π_b", "π_ab", "π_ba", "π_aba"]),
    ("π_a", ["π_a", "π_ab", "π_aba"]),
    ("π_b", ["π_b", "π_ba", "π_aba"]),
    ("π_ab", ["π_ab", "π_aba"]),
    ("π_ba", ["π_ba", "π_aba"]),
    ("π_aba = π_bab", ["π_aba"]),
]
HECKE_SIZES = [("A", 1, 2), ("A", 2, 6), ("A", 3, 24), ("B", 2, 8), ("B", 3, 48),
               ("I2", 3, 6), ("I2", 4, 8), ("I2", 5, 10), ("I2", 6, 12)]


@contextmanager
def criterion(number, title, limit=None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = limit is None or elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        bound = "" if limit is None else f" (limit {limit:g}s)"
        line = f"criterion {number}: {status}  {title}  [{elapsed:.2f}s{bound}]"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert within, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


def test_01_catalan_sizes():
    with criterion(1, "Catalan sizes 1, 2, 5, 14, 42, 132, 429, 1430", 10):
        sizes = []
        for n in range(1, 9):
            M = catalan_monoid(n)
            sizes.append(M.size)
        assert sizes == [catalan(n) for n in range(1, 9)] == [1, 2, 5, 14, 42, 132, 429, 1430]


def test_02_tetris_threshold():
    with criterion(2, "X(I_n) linear exactly for n < 4, n = 1..6", 10):
        linear = []
        for n in range(1, 7):
            M = tetris_monoid(n)
            cosets = set(table_cosets(M.mul.tolist()))
            direct = all(a <= b or b <= a for a in cosets for b in cosets)
            assert direct == is_xm_linear(M)
            linear.append(direct)
        assert linear == [n < 4 for n in range(1, 7)]


def test_03_i4_witness():
    with criterion(3, "I_4 witness f = [0,1,1,1], g = [0,0,1,2]"):
        f, g = Transformation((0, 1, 1, 1)), Transformation((0, 0, 1, 2))
        fns = tetris_functions(4)
        found = comparability_witness(fns, chain_poset(4))
        assert {found[0], found[1]} == {f, g}
        assert f(3) == 1 < 2 == g(3) and f(1) == 1 > 0 == g(1)
        M = tetris_monoid(4)
        E = [t.images for t in M.elements]
        fM, gM = left_coset(M, E.index(f.images)), left_coset(M, E.index(g.images))
        assert not fM <= gM and not gM <= fM


def test_04_all_regressive_posets():
    with criterion(4, "87 posets of size <= 5, full regressive monoid", 120):
        report = run_classification("all_regressive", 5)
        assert len(report.records) == sum(UNLABELED_POSETS[1:6]) == 87
        assert not report.disagreements and not report.skipped
        posets = [P for n in range(1, 6) for P in enumerate_posets(n)]
        for record, P in zip(report.records, posets):
            assert record.predicted == predict_all_regressive(P)


def test_05_op_lattices():
    with criterion(5, "lattices of size <= 6, OP-regressive monoid", 120):
        report = run_classification("op_lattice", 6)
        assert len(report.records) == sum(UNLABELED_LATTICES[1:7])
        assert not report.disagreements and not report.skipped


def test_06_k_lipschitz():
    with criterion(6, "lattices of size <= 6, k = 1 and k = 2 level-Lipschitz filters", 120):
        for k in (1, 2):
            report = run_classification("k_lip", 6, k=k)
            assert len(report.records) == sum(UNLABELED_LATTICES[1:7])
            assert not report.disagreements and not report.skipped


def test_07_constants():
    with criterion(7, "posets of size <= 4, X(M + constants) linear iff X(M) linear"):
        report = run_classification("constants", 4)
        assert len(report.records) == sum(UNLABELED_POSETS[1:5])
        assert not report.disagreements and not report.skipped


def test_08_a2_conformance():
    with criterion(8, "H_0(A_2): 6 elements, coset table, witness (pi_a M, pi_b M)"):
        H = hecke_monoid(build_coxeter_group(realization("A", 2)))
        assert H.size == 6
        assert coset_table(H) == A2_TABLE
        w = xm_witness(H)
        assert w is not None and {H.name(w[0]), H.name(w[1])} == {"π_a", "π_b"}


def test_09_hecke_sizes():
    with criterion(9, "|H_0(W)| = |W| for A1-A3, B2, B3, I2(3..6); R- and J-trivial"):
        for kind, n, order in HECKE_SIZES:
            W = build_coxeter_group(realization(kind, n))
            H = hecke_monoid(W)
            assert len(W) == H.size == order
            assert is_r_trivial(H) and is_j_trivial(H)
            assert is_xm_linear(H) == (len(H.gens) < 2)


def test_10_faces():
    with criterion(10, "3-line arrangement: 13 faces, face-monoid identities", 5):
        A = arrangement_from_normals(2, THREE_LINES)
        faces = realizable_sign_vectors(A)
        signs = [f.sign for f in faces]
        assert len(faces) == 13
        assert sum(map(is_chamber, signs)) == 6
        assert sum(s.count("0") == 1 for s in signs) == 6
        assert signs.count("000") == 1
        M, _ = face_monoid(A, faces)
        idx = {s: i for i, s in enumerate(signs)}
        pairs = 0
        for a in signs:
            assert face_product(a, a) == a
            for b in signs:
                ab = face_product(a, b)
                assert int(M.mul[idx[a], idx[b]]) == idx[ab]
                assert face_product(ab, a) == ab
                assert (ab == b) == face_order(a, b)
                pairs += 1
        assert pairs == 169
        assert is_r_trivial(M) and not is_xm_linear(M)


def criteria_monoids():
    """Every monoid constructed by criteria 1-10, rebuilt here."""
    yield from (catalan_monoid(n) for n in range(1, 9))
    yield from (tetris_monoid(n) for n in range(1, 7))
    for n in range(1, 6):
        for P in enumerate_posets(n):
            fns = all_regressive(P)
            yield monoid_of_functions(fns, action="right")
            if n <= 4:
                yield augment_with_constants(fns, P, action="right")
    for n in range(1, 7):
        for P in enumerate_posets(n, lattices_only=True):
            op = all_op_regressive(P)
            yield monoid_of_functions(op)
            for k in (1, 2):
                gens = [f.images for f in k_level_lipschitz_filter(P, op, k) if f.images != tuple(range(n))]
                yield closure_from_transformations(n, gens)
    for kind, n, _ in HECKE_SIZES:
        yield hecke_monoid(build_coxeter_group(realization(kind, n)))
    yield face_monoid(arrangement_from_normals(2, THREE_LINES))[0]


def test_11_representation():
    with criterion(11, "left-regular representation of every R-trivial monoid from 1-10 with <= 200 elements"):
        checked = 0
        for M in criteria_monoids():
            if M.size > 200 or not is_r_trivial(M):
                continue
            P, maps = left_regular_regressive_representation(M)
            mul = M.mul.astype(np.int64)
            cos = table_cosets(mul.tolist())
            size = M.size
            for x in range(size):
                for y in range(size):
                    assert P.le(x, y) == (cos[x] <= cos[y])
            R = np.array([t.images for t in maps], dtype=np.int64)
            assert np.array_equal(R, mul.T)
            # regressive: x m M is inside x M
            assert all(P.le(int(R[m, x]), x) for m in range(size) for x in range(size))
            # homomorphism: map(ab) = map(a) followed by map(b), i.e. R[ab][x] = R[b][R[a][x]]
            for a in range(size):
                assert np.array_equal(R[mul[a]], R[:, R[a]])
            # faithful
            assert len({tuple(r) for r in R.tolist()}) == size
            checked += 1
        assert checked > 150


def test_12_reverse_directions():
    with criterion(12, "posets of size <= 5: regressive monoids R-trivial, with constants almost R-trivial"):
        count = 0
        for n in range(1, 6):
            for P in enumerate_posets(n):
                fns = all_regressive(P)
                M = monoid_of_functions(fns, action="right")
                assert is_r_trivial(M)
                C = augment_with_constants(fns, P, action="right")
                assert is_almost_r_trivial(C)
                count += 1
        assert count == 87


def test_13_pointed_sets():
    with criterion(13, "subspace_of_blocks against brute force, <= 3 blocks, |M| <= 4, depth <= 2"):
        shapes = [[(0,)], [(0,), (1,)], [(0, 1), (2,)], [(0,), (1,), (2,)], [(0,), (1, 2), (3,)]]
        checked = 0
        for d, elems in small_transformation_monoids(4):
            M = monoid_of_functions([Transformation(e) for e in elems])
            maps = [t.images for t in M.elements]
            actions = [([list(map(int, row)) for row in M.mul], M.identity)]
            actions += [orbit_action(maps, x) for x in range(d)]
            for table, base in actions:
                X = PointedMSet(M, table, base)
                for shape in shapes:
                    coords = [k for blk in shape for k in blk]
                    for vals in np.ndindex(*([X.size] * len(coords))):
                        it = iter(vals)
                        blocks = [{k: int(next(it)) for k in blk} for blk in shape]
                        B = BlockSequence(tuple(blocks))
                        for depth in range(3):
                            got = subspace_of_blocks(B, X, depth)
                            assert got == brute_subspace(blocks, table, M.identity, depth)
                            checked += 1
        assert checked > 10000
