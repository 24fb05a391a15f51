import itertools
import json
from math import factorial

import pytest

from oracles import closure, compose, table_cosets
from ramsey_monoids.coxeter import (CoxeterMatrix, CoxeterRealization, build_coxeter_group, coxeter_from_json,
                                    coxeter_to_json, hecke_generators, hecke_monoid, hecke_to_group, realization,
                                    reduced_words, verify_initial_subword)
from ramsey_monoids.errors import BudgetExceeded
from ramsey_monoids.monoid import coset_table, is_j_trivial, is_r_trivial, is_xm_linear, xm_witness
from ramsey_monoids.verify import generator_incomparability

A2_TABLE = [
    ("id", ["id", "π_a", "π_b", "π_ab", "π_ba", "π_aba"]),
    ("π_a", ["π_a", "π_ab", "π_aba"]),
    ("π_b", ["π_b", "π_ba", "π_aba"]),
    ("π_ab", ["π_ab", "π_aba"]),
    ("π_ba", ["π_ba", "π_aba"]),
    ("π_aba = π_bab", ["π_aba"]),
]

GROUP_ORDERS = [
    ("A", 1, 2), ("A", 2, 6), ("A", 3, 24), ("A", 4, 120),
    ("B", 2, 8), ("B", 3, 48),
    ("I2", 3, 6), ("I2", 4, 8), ("I2", 5, 10), ("I2", 6, 12),
]


def hecke(kind, n):
    W = build_coxeter_group(realization(kind, n))
    return W, hecke_monoid(W)


@pytest.mark.parametrize("kind,n,order", GROUP_ORDERS)
def test_group_order_matches_oracle(kind, n, order):
    R = realization(kind, n)
    assert len(closure(R.gens, R.degree)) == order
    assert len(build_coxeter_group(R)) == order
    if kind == "A":
        assert order == factorial(n + 1)


@pytest.mark.parametrize("kind,n,order", GROUP_ORDERS)
def test_hecke_size_and_triviality(kind, n, order):
    W, H = hecke(kind, n)
    assert H.size == order
    assert is_r_trivial(H) and is_j_trivial(H)
    assert is_xm_linear(H) == (len(H.gens) < 2)
    # independent closure of the pi maps as plain tuples
    pis = [g.images for g in hecke_generators(W)]
    assert len(closure(pis, len(W))) == order


def test_hecke_relations_brute_force():
    W = build_coxeter_group(realization("B", 3))
    pis = [g.images for g in hecke_generators(W)]
    m = W.realization.matrix.m
    for p in pis:
        assert compose(p, p) == p
    for i, j in itertools.combinations(range(len(pis)), 2):
        def alt(a, b):
            out = tuple(range(len(W)))
            for t in range(m[i][j]):
                out = compose(out, pis[a] if t % 2 == 0 else pis[b])
            return out
        assert alt(i, j) == alt(j, i)


def test_a2_coset_table():
    W, H = hecke("A", 2)
    assert coset_table(H) == A2_TABLE
    assert [label for label, _ in coset_table(H, aliases=False)][-1] == "π_aba"
    w = xm_witness(H)
    assert {H.name(w[0]), H.name(w[1])} == {"π_a", "π_b"}
    assert [H.name(i) for i in generator_incomparability(H)] == ["π_a", "π_b"]


def test_a2_cosets_against_brute_force():
    W, H = hecke("A", 2)
    brute = table_cosets(H.mul.tolist())
    for label, members in coset_table(H, aliases=False):
        m = [H.name(i) for i in range(H.size)].index(label)
        assert {H.name(x) for x in brute[m]} == set(members)


def test_a1_is_linear():
    W, H = hecke("A", 1)
    assert H.size == 2 and is_xm_linear(H)
    assert generator_incomparability(H) is None


def test_word_action_sends_identity_to_product():
    W, H = hecke("A", 3)
    to_group = hecke_to_group(H)
    for h, word in enumerate(H.labels):
        assert to_group[h] == W.element_of_word(word)
        assert W.length[to_group[h]] == len(word)


@pytest.mark.parametrize("kind,n,max_len", [("A", 2, 3), ("A", 3, 6), ("B", 2, 4), ("B", 3, 9), ("I2", 5, 5)])
def test_initial_subword_property(kind, n, max_len):
    W, H = hecke(kind, n)
    report = verify_initial_subword(H, W, max_len)
    assert report.ok, report.counterexamples[:3]
    assert report.pairs_checked == len(W) ** 2


def test_reduced_words_a2():
    W = build_coxeter_group(realization("A", 2))
    words = reduced_words(W, 3)
    longest = max(words, key=lambda x: W.length[x])
    assert sorted(words[longest]) == [(0, 1, 0), (1, 0, 1)]
    assert sum(len(v) for v in words.values()) == 7


def test_matrix_validation():
    with pytest.raises(ValueError, match="symmetric"):
        CoxeterMatrix(((1, 3), (2, 1)))
    with pytest.raises(ValueError, match="diagonal"):
        CoxeterMatrix(((2, 3), (3, 1)))
    with pytest.raises(ValueError):
        CoxeterMatrix(((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        CoxeterMatrix.of_type("E", 6)


def test_realization_validation():
    M = CoxeterMatrix.of_type("A", 2)
    with pytest.raises(ValueError, match="involution"):
        CoxeterRealization(3, ((1, 2, 0), (0, 2, 1)), M)
    with pytest.raises(ValueError, match="order"):
        CoxeterRealization(4, ((1, 0, 2, 3), (0, 1, 3, 2)), M)
    for kind, n in [("A", 0), ("B", 1), ("I2", 2), ("D", 4)]:
        with pytest.raises(ValueError):
            realization(kind, n)


def test_json_round_trip():
    R = realization("B", 3)
    R2 = coxeter_from_json(json.dumps(coxeter_to_json(R)))
    assert R2.gens == R.gens and R2.matrix == R.matrix
    assert coxeter_from_json({"type": "I2", "n": 5}).matrix.m == ((1, 5), (5, 1))
    with pytest.raises(ValueError):
        coxeter_from_json({"type": "A"})
    with pytest.raises(ValueError):
        coxeter_from_json({"custom_gens": [[1, 0]]})


def test_group_budget():
    with pytest.raises(BudgetExceeded):
        build_coxeter_group(realization("A", 5), budget=100)


def test_custom_generator_names():
    W = build_coxeter_group(realization("A", 2))
    H = hecke_monoid(W, gen_names=("s", "t"))
    assert H.name(3) == "π_st"
