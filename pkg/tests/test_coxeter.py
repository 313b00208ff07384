import itertools
import json

import pytest
from hypothesis import given, strategies as st

from soacc.coxeter import (
    D0, D1, U0, U1, CoxeterMatrix, CoxeterSystem, ResourceLimit, all_subexpressions, bruhat_leq, builtin_system,
    canonicalize, dihedral, enumerate_elements, subexpressions, type_A,
)


def perm(word, n):
    p = list(range(n))
    for s in word:
        p[s], p[s + 1] = p[s + 1], p[s]
    return tuple(p)


def inversions(p):
    return sum(p[i] > p[j] for i in range(len(p)) for j in range(i + 1, len(p)))


def test_canonical_forms(systems):
    A2 = systems["A2"]
    assert canonicalize(A2, [1, 0, 1]).word == (0, 1, 0)
    assert canonicalize(A2, [0, 1, 0, 1]).word == (1, 0)
    assert canonicalize(A2, [0, 0]).is_identity()
    assert A2.element([0, 1, 0]).name() == "sts"
    assert A2.identity.name() == "e"


@pytest.mark.parametrize("name,order", [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("I2(5)", 10)])
def test_group_orders(systems, name, order):
    assert len(enumerate_elements(systems[name], 30)) == order


def test_infinite_dihedral_growth(systems):
    W = systems["I2(inf)"]
    assert [sum(1 for w in enumerate_elements(W, n) if w.length == n) for n in range(6)] == [1, 2, 2, 2, 2, 2]


def test_type_a_matches_permutations(systems):
    W = systems["A3"]
    seen = {}
    for w in enumerate_elements(W, 6):
        p = perm(w.word, 4)
        assert inversions(p) == w.length
        assert p not in seen
        seen[p] = w
        assert {perm(r, 4) for r in W.reduced_words(w)} == {p}
    assert len(seen) == 24


words = st.lists(st.integers(0, 2), max_size=9)


@given(words, words)
def test_multiplication_matches_permutations(a, b):
    W = CoxeterSystem(type_A(3))
    x, y = W.element(a), W.element(b)
    assert perm((x * y).word, 4) == perm(a + b, 4)
    assert perm(x.inverse().word, 4) == perm(list(reversed(a)), 4)


def test_bruhat_matches_subword_oracle(systems):
    W = systems["A3"]
    elems = enumerate_elements(W, 6)
    for y in elems:
        below = {perm(sub, 4) for bits in itertools.product((0, 1), repeat=y.length)
                 for sub in [[s for s, b in zip(y.word, bits) if b]]}
        for x in elems:
            assert bruhat_leq(x, y) == (perm(x.word, 4) in below)


def test_descents(systems):
    A2 = systems["A2"]
    w0 = A2.element([0, 1, 0])
    assert w0.right_descents() == {0, 1} and w0.left_descents() == {0, 1}
    assert A2.element([0, 1]).right_descents() == {1}
    assert A2.is_reduced([0, 1, 0]) and not A2.is_reduced([0, 1, 0, 1])


def test_subexpression_decorations(systems):
    W = systems["A1"]
    s = W.generator(0)
    at_e = {e.bits: (e.decorations, e.defect) for e in subexpressions(W, [0, 0], W.identity)}
    assert at_e == {(0, 0): ((U0, U0), 2), (1, 1): ((U1, D1), 0)}
    at_s = {e.bits: (e.decorations, e.defect) for e in subexpressions(W, [0, 0], s)}
    assert at_s == {(0, 1): ((U0, U1), 1), (1, 0): ((U1, D0), -1)}


@given(st.lists(st.integers(0, 1), max_size=10))
def test_subexpression_count(word):
    W = CoxeterSystem(builtin_system("I2(5)"))
    total = sum(len(subexpressions(W, word, x)) for x in enumerate_elements(W, 10))
    assert total == 2 ** len(word)
    assert len(all_subexpressions(W, word)) == 2 ** len(word)


def test_matrix_validation_and_json():
    with pytest.raises(ValueError):
        CoxeterMatrix(((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        CoxeterMatrix(((1, 3), (2, 1)))
    m = dihedral(float("inf"))
    data = json.loads(json.dumps(m.to_json()))
    assert data["coxeter_matrix"][0][1] is None
    assert CoxeterMatrix.from_json(data) == m
    assert CoxeterMatrix.from_json({"coxeter_matrix": [[1, "inf"], ["inf", 1]]}) == m


def test_resource_limit():
    W = CoxeterSystem(type_A(4), max_reduced_words=5)
    with pytest.raises(ResourceLimit):
        W.element([0, 1, 0, 2, 1, 0, 3, 2, 1, 0])
    with pytest.raises(ResourceLimit):
        all_subexpressions(CoxeterSystem(type_A(1)), [0] * 25)


def test_cache_roundtrip(tmp_path, systems):
    W = CoxeterSystem(builtin_system("A3"))
    longest = W.element([0, 1, 0, 2, 1, 0])
    path = tmp_path / "a3.json"
    W.save_cache(path)
    fresh = CoxeterSystem(builtin_system("A3"))
    assert fresh.load_cache(path)
    assert fresh.reduced_words(fresh.element(longest.word)) == W.reduced_words(longest)
    other = CoxeterSystem(builtin_system("B2"))
    assert not other.load_cache(path)


def test_system_json_roundtrip(systems):
    for W in systems.values():
        assert CoxeterSystem.from_json(W.to_json()).matrix == W.matrix
