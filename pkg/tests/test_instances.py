import itertools
import random

import pytest
import sympy
from hypothesis import given, strategies as st

from soacc.cellular import BasisKey, cellular_pairing, compose, involution
from soacc.coeffs import LaurentPoly
from soacc.instances import (
    STAR_OBJECT, BoundaryMismatch, MatPolyMorphism, PlanarMatching, TemperleyLieb, ToyArrow, ToyCellularAlgebra,
    all_diagrams, cap_diagram, catalan, cup_diagram, e_generator, identity_diagram, matpoly_instance,
    tl_cell_factorization, tl_compose, toy_instance,
)
from soacc.instances.matpoly import OBJECT, x_poly
from soacc.instances.tl import _stack
from soacc.trace import pi

q = LaurentPoly.gen("q")
delta = -(q + q ** -1)
x = sympy.Symbol("x")


# Temperley-Lieb


def test_catalan_counts():
    assert [catalan(n) for n in range(9)] == [1, 1, 2, 5, 14, 42, 132, 429, 1430]
    assert [len(all_diagrams(n, n)) for n in range(9)] == [catalan(n) for n in range(9)]
    assert len(all_diagrams(2, 4)) == catalan(3)


def test_compose_examples():
    d = e_generator(4, 1)
    assert tl_compose(identity_diagram(4), d) == (d, 1)
    assert tl_compose(cap_diagram(0, 0), cup_diagram(0, 0)) == (identity_diagram(0), delta)
    for n in range(2, 6):
        for i in range(n - 1):
            e = e_generator(n, i)
            assert tl_compose(e, e) == (e, delta)


def test_tl_relations():
    n = 5
    e = [e_generator(n, i) for i in range(n - 1)]
    for i in range(n - 1):
        for j in range(n - 1):
            if abs(i - j) == 1:
                d1, c1 = tl_compose(e[i], tl_compose(e[j], e[i])[0])
                assert (d1, c1) == (e[i], 1)
            elif abs(i - j) > 1:
                assert tl_compose(e[i], e[j]) == tl_compose(e[j], e[i])


def test_delta_sign_knob():
    tl = TemperleyLieb(delta_sign=1)
    assert tl.delta == q + q ** -1
    with pytest.raises(ValueError):
        TemperleyLieb(delta_sign=2)


def test_boundary_mismatch():
    with pytest.raises(BoundaryMismatch):
        tl_compose(identity_diagram(3), identity_diagram(2))


def test_crossing_rejected():
    with pytest.raises(ValueError):
        PlanarMatching.from_pairs(2, 2, [(0, 3), (1, 2)])
    with pytest.raises(ValueError):
        PlanarMatching.from_pairs(2, 0, [(0, 0)])
    with pytest.raises(ValueError):
        PlanarMatching.from_pairs(3, 0, [(0, 1)])


def test_factorization_examples():
    n = 4
    assert tl_cell_factorization(identity_diagram(n)) == (n, identity_diagram(n), identity_diagram(n))
    t, S, T = tl_cell_factorization(e_generator(n, 1))
    assert t == n - 2 and S == cup_diagram(n - 2, 1) and T == cap_diagram(n - 2, 1)
    cup = cup_diagram(0, 0)
    assert tl_cell_factorization(cup) == (0, cup, identity_diagram(0))


@pytest.mark.parametrize("m,n", [(m, n) for m in range(7) for n in range(7) if (m + n) % 2 == 0])
def test_factorization_bijection(m, n):
    seen = set()
    for d in all_diagrams(m, n):
        t, S, T = tl_cell_factorization(d)
        assert S.through == t == T.through and S.source == t == T.target
        assert _stack(S, T) == (d, 0)
        seen.add((t, S, T))
    assert len(seen) == len(all_diagrams(m, n))


def test_flip_is_involution_and_contravariant():
    rng = random.Random(3)
    for _ in range(200):
        a, b, c = rng.randint(0, 5), rng.randint(0, 5), rng.randint(0, 5)
        b += (a + b) % 2
        c += (b + c) % 2
        g, f = rng.choice(all_diagrams(a, b)), rng.choice(all_diagrams(b, c))
        assert g.flip().flip() == g
        d, k = _stack(f, g)
        assert _stack(g.flip(), f.flip()) == (d.flip(), k)


def test_tl_json_roundtrip():
    tl = TemperleyLieb()
    f = tl.diagram(e_generator(3, 0), q * 2) + tl.diagram(identity_diagram(3))
    assert tl.morphism_from_json(tl.morphism_to_json(f)) == f
    with pytest.raises(ValueError):
        tl.morphism_from_json({"source": 2, "target": 2, "pairs": [[0, 3], [1, 2]]})


def test_tl_pairing_and_involution():
    tl = TemperleyLieb()
    phi = cellular_pairing(tl, 0, cap_diagram(0, 0), cup_diagram(0, 0), 2)
    assert phi.terms == {1: delta}
    cup = tl.diagram(cup_diagram(1, 0))
    assert involution(cup) == tl.diagram(cap_diagram(1, 0))


# toy enlargement


def test_toy_examples():
    inst = toy_instance(["a", "b", "c"])
    for i, j in itertools.product(inst.index_set, repeat=2):
        assert compose(inst.x(i), inst.x(j)).is_zero()
        assert compose(inst.c(j), inst.cbar(i)).is_zero()
    assert compose(inst.cbar("a"), inst.c("a")) == inst.x("a")
    for i in inst.index_set:
        assert cellular_pairing(inst, i, ToyArrow("c", i), ToyArrow("cbar", i), STAR_OBJECT).is_zero()
        assert cellular_pairing(inst, i, "*", "*", i).terms == {1: 1}
    assert inst.key_degree(inst.x("a").terms.popitem()[0]) == 2
    with pytest.raises(ValueError):
        toy_instance(["star"])


def test_toy_end_star_basis():
    inst = toy_instance([0, 1])
    basis = inst.hom_basis(STAR_OBJECT, STAR_OBJECT)
    assert len(basis) == 3
    assert {k.cell for k in basis} == {STAR_OBJECT, 0, 1}
    control = ToyCellularAlgebra([0, 1])
    assert len(control.basis) == len(basis)


def test_toy_json_roundtrip():
    inst = toy_instance([0, 1])
    f = inst.identity(STAR_OBJECT).scale(3) + inst.x(1)
    assert inst.morphism_from_json(inst.morphism_to_json(f)) == f
    g = inst.c(0)
    assert inst.morphism_from_json(inst.morphism_to_json(g)) == g


# MatPoly


def test_matpoly_examples():
    inst = matpoly_instance()
    E = {(i, j): inst.morphism(OBJECT, OBJECT, {BasisKey("lam", i, 0, j): 1}) for i in (1, 2) for j in (1, 2)}
    for (i, j), (k, l) in itertools.product(E, repeat=2):
        prod = compose(E[(i, j)], E[(k, l)])
        assert prod == (E[(i, l)] if j == k else inst.zero_morphism(OBJECT, OBJECT))
    assert inst.identity(OBJECT) == E[(1, 1)] + E[(2, 2)]


def random_matrix(rng, deg=6):
    return MatPolyMorphism([[x_poly([rng.randint(-3, 3) for _ in range(rng.randint(0, deg + 1))])
                             for _ in range(2)] for _ in range(2)])


def to_sympy(m: MatPolyMorphism):
    return sympy.Matrix(2, 2, lambda i, j: sum(
        sympy.Rational(c.numerator, c.denominator) * x ** mono[0] for mono, c in m.rows[i][j].terms.items()))


def test_matpoly_pi_is_sympy_trace():
    inst = matpoly_instance()
    rng = random.Random(11)
    for _ in range(200):
        m = random_matrix(rng)
        t = pi(inst.from_matrix(m))
        got = sum(c * x ** a for (_, a), c in t.terms.items())
        assert sympy.expand(got - to_sympy(m).trace()) == 0


def test_matpoly_composition_is_matrix_product():
    inst = matpoly_instance()
    rng = random.Random(5)
    for _ in range(50):
        a, b = random_matrix(rng, 3), random_matrix(rng, 3)
        prod = inst.to_matrix(compose(inst.from_matrix(a), inst.from_matrix(b)))
        assert sympy.expand(to_sympy(prod) - to_sympy(a) * to_sympy(b)) == sympy.zeros(2, 2)


def test_matpoly_json_roundtrip():
    inst = matpoly_instance()
    m = random_matrix(random.Random(2))
    assert MatPolyMorphism.from_json(m.to_json()) == m
    f = inst.from_matrix(m)
    assert inst.morphism_from_json(inst.morphism_to_json(f)) == f
    assert inst.morphism_from_json({"matrix": m.to_json()}) == f
