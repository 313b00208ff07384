"""Trace engine tests.

The oracle for ``pi`` being constant on trace classes is the zeroth Hochschild homology of the finite
category algebra: ``End(X) / span{f g - g f}`` computed by linear algebra
(sympy ranks over Q), with TL scalars evaluated at ``q = 2``.
"""

import itertools
import random
from fractions import Fraction

import pytest
import sympy

from soacc.cellular import ObjectMismatch, compose, random_morphism
from soacc.coeffs import LaurentPoly
from soacc.instances import (
    STAR_OBJECT, PlanarMatching, TemperleyLieb, ToyCellularAlgebra, all_diagrams, e_generator, identity_diagram, matpoly_instance,
    tl_compose, toy_instance,
)
from soacc.trace import (
    BrokenInvariant, TraceClass, check_trace_relation, chern, identity_span_report, involution_compatible, p_step, pi,
)

q = LaurentPoly.gen("q")
delta = -(q + q ** -1)
Q_AT = Fraction(2)


@pytest.fixture(scope="module")
def tl():
    return TemperleyLieb()


def test_p_step_examples(tl):
    settled, rest = p_step(tl.identity(3).scale(q))
    assert settled.terms == {(3, 1): q} and rest == []
    settled, rest = p_step(tl.diagram(e_generator(4, 1)))
    assert settled.terms == {(2, 1): delta} and rest == []
    toy = toy_instance([0, 1])
    settled, rest = p_step(toy.x(0))
    assert settled.is_zero() and rest == []


def test_pi_examples(tl):
    assert pi(tl.diagram(e_generator(3, 0))).terms == {(1, 1): delta}
    assert pi(tl.identity(4)).terms == {(4, 1): 1}
    toy = toy_instance(range(3))
    for i in range(3):
        assert pi(toy.x(i)).is_zero()
    with pytest.raises(ObjectMismatch):
        pi(tl.zero_morphism(2, 4))


def test_chern(tl):
    assert chern(tl, 2).terms == {(2, 1): 1}
    toy = toy_instance([0, 1])
    assert chern(toy, STAR_OBJECT).terms == {(STAR_OBJECT, 1): 1}
    assert chern(toy, 0).terms == {(0, 1): 1}
    mat = matpoly_instance()
    assert chern(mat, "X").terms == {("lam", 0): 2}
    assert chern(mat, "lam").terms == {("lam", 0): 1}


def test_pi_is_identity_on_K(tl):
    for lam in range(5):
        f = tl.identity(lam).scale(q ** 2 - 3)
        assert pi(f) == TraceClass(tl, {(lam, 1): q ** 2 - 3})
    mat = matpoly_instance()
    f = mat.fibre_morphism("lam", 3)
    assert pi(f).terms == {("lam", 3): 1}


def test_pi_linear_and_iota_compatible(tl):
    rng = random.Random(4)
    for _ in range(100):
        X = rng.randint(0, 6)
        f, g = random_morphism(tl, X, X, rng), random_morphism(tl, X, X, rng)
        assert pi(f + g) == pi(f) + pi(g)
        assert involution_compatible(f)


def test_trace_relation_examples(tl):
    assert check_trace_relation(tl.identity(3), tl.identity(3))
    rng = random.Random(9)
    for _ in range(100):
        X, Y = rng.randint(0, 8), rng.randint(0, 8)
        Y += (X + Y) % 2
        assert check_trace_relation(random_morphism(tl, X, Y, rng), random_morphism(tl, Y, X, rng))
    with pytest.raises(ObjectMismatch):
        check_trace_relation(tl.identity(2), tl.identity(4))


def test_identity_span_report(tl):
    rep = identity_span_report(tl, range(7))
    assert rep["basis_endomorphisms"] == sum(len(all_diagrams(n, n)) for n in range(7))
    assert rep["all_single_cell"] and rep["zero_classes"] == 0
    toy = toy_instance([0, 1])
    rep = identity_span_report(toy, toy.objects())
    assert rep["zero_classes"] == 2


class LoopingTL(TemperleyLieb):
    """Claims cells are incomparable, so rotation leaves the poset."""

    def cell_leq(self, lam, mu):
        return lam == mu


def test_broken_order_raises():
    with pytest.raises(BrokenInvariant):
        # cap at (0, 1) then cup at (2, 3): rotating leaves a cap in End(2), at cell 0
        d = PlanarMatching.from_pairs(4, 4, [(0, 1), (2, 4), (3, 5), (6, 7)])
        pi(LoopingTL().diagram(d))


# HH0 oracle


def _rank(rows, ncols):
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()


def _tl_hh0(max_n):
    d_at = delta.evaluate(Q_AT)
    cols = [(X, d) for X in range(max_n + 1) for d in all_diagrams(X, X)]
    index = {c: k for k, c in enumerate(cols)}

    def vec(pairs):
        row = [Fraction(0)] * len(cols)
        for (X, d), c in pairs:
            row[index[(X, d)]] += c
        return row

    rows = []
    for X, Y in itertools.product(range(max_n + 1), repeat=2):
        if (X + Y) % 2:
            continue
        for f in all_diagrams(Y, X):
            for g in all_diagrams(X, Y):
                fg, a = tl_compose(f, g)
                gf, b = tl_compose(g, f)
                rows.append(vec([((X, fg), a.evaluate(Q_AT)), ((Y, gf), -b.evaluate(Q_AT))]))
    return cols, vec, rows


def test_tl_pi_agrees_with_hh0_oracle(tl):
    max_n = 4
    cols, vec, rows = _tl_hh0(max_n)
    base = _rank(rows, len(cols))
    # identity classes are independent: dim HH0 = number of objects
    assert len(cols) - base == max_n + 1
    for X, d in cols:
        cls = pi(tl.diagram(d))
        target = [((lam, identity_diagram(lam)), -c.evaluate(Q_AT)) for (lam, _), c in cls.terms.items()]
        diff = vec([((X, d), Fraction(1))] + target)
        assert _rank(rows + [diff], len(cols)) == base, (X, d, cls)


def _toy_algebra(I):
    """Path algebra of the enlarged toy category, written out by hand."""
    objs = [STAR_OBJECT, *I]
    arrows = {("1", o): (o, o) for o in objs}
    for i in I:
        arrows[("x", i)] = (STAR_OBJECT, STAR_OBJECT)
        arrows[("c", i)] = (STAR_OBJECT, i)
        arrows[("cbar", i)] = (i, STAR_OBJECT)

    def mul(f, g):  # f o g
        if arrows[g][1] != arrows[f][0]:
            return None
        if f[0] == "1":
            return g
        if g[0] == "1":
            return f
        if f[0] == "cbar" and g[0] == "c" and f[1] == g[1]:
            return ("x", f[1])
        return 0

    return arrows, mul


def test_toy_pi_agrees_with_hh0_oracle():
    I = [0, 1, 2]
    arrows, mul = _toy_algebra(I)
    endos = [a for a, (s, t) in arrows.items() if s == t]
    index = {a: k for k, a in enumerate(endos)}
    rows = []
    for f, g in itertools.product(arrows, repeat=2):
        fg, gf = mul(f, g), mul(g, f)
        if fg is None or gf is None:
            continue
        row = [0] * len(endos)
        if fg:
            row[index[fg]] += 1
        if gf:
            row[index[gf]] -= 1
        rows.append(row)
    base = _rank(rows, len(endos))
    assert len(endos) - base == len(I) + 1
    inst = toy_instance(I)
    for i in I:
        x_row = [0] * len(endos)
        x_row[index[("x", i)]] = 1
        assert _rank(rows + [x_row], len(endos)) == base
        assert pi(inst.x(i)).is_zero()


def test_toy_control_keeps_x_nonzero():
    control = ToyCellularAlgebra([0, 1, 2])
    for i in range(3):
        assert control.trace_class({("x", i): 1}) == {("x", i): 1}
    assert control.trace_class({"1": 2}) == {"1": 2}
