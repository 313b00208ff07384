"""The algebra k[I]/J_2 and its minimal SOACC enlargement.

``A = k[x_i : i in I] / (all degree-2 elements)`` is a graded cellular
algebra on one object ``star`` with cells ``I ⊔ {star}``, ``star > i``. It is
not an SOACC, so the enlargement adds one object per ``i`` and factors
``x_i = cbar_i o c_i`` through it, with ``c_i: star -> i`` and
``cbar_i: i -> star`` of degree 1 and ``c_i o cbar_i = 0``.

In the enlarged category every nonzero morphism is a path of length at most
two through ``star``; any path ``i -> star -> j`` vanishes because
``Hom(i, j) = 0`` for ``i != j`` and ``End(i) = k 1_i``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from ..cellular import BaseRingFibre, BasisKey, FibreAlgebra, Morphism, SoaccInstance
from ..coeffs import fraction_to_json, to_fraction

__all__ = ["STAR_OBJECT", "ToyArrow", "ToySoacc", "ToyCellularAlgebra", "toy_instance", "commutator_quotient_rank"]

STAR_OBJECT = "star"


class ToyArrow(tuple):
    """``("c", i)`` is ``c_i: star -> i``; ``("cbar", i)`` is ``cbar_i: i -> star``."""

    def __new__(cls, kind: str, i: Hashable):
        if kind not in ("c", "cbar"):
            raise ValueError(f"unknown toy arrow kind {kind!r}")
        return super().__new__(cls, (kind, i))

    @property
    def kind(self) -> str:
        return self[0]

    @property
    def index(self):
        return self[1]

    def source(self):
        return STAR_OBJECT if self.kind == "c" else self.index

    def target(self):
        return self.index if self.kind == "c" else STAR_OBJECT


class ToySoacc(SoaccInstance):
    """The enlarged SOACC with objects ``{star} ∪ I``."""

    name = "toy"
    graded = True

    def __init__(self, index_set: Sequence[Hashable]):
        self.index_set = tuple(index_set)
        if STAR_OBJECT in self.index_set:
            raise ValueError(f"{STAR_OBJECT!r} is reserved for the original object")
        if len(set(self.index_set)) != len(self.index_set):
            raise ValueError("index set has repeated entries")
        self.one = Fraction(1)
        self.zero = Fraction(0)
        self._fibre = BaseRingFibre(self.one)

    def cell_leq(self, lam, mu) -> bool:
        return lam == mu or mu == STAR_OBJECT

    def objects(self, bound: int = 0) -> list:
        return [STAR_OBJECT, *self.index_set]

    def is_cell(self, X) -> bool:
        return X == STAR_OBJECT or X in self.index_set

    def cells_of(self, X) -> list:
        if X == STAR_OBJECT:
            return [STAR_OBJECT, *self.index_set]
        return [X]

    def m_set(self, lam, X) -> list:
        if lam == X:
            return ["*"]
        if X == STAR_OBJECT and lam in self.index_set:
            return [ToyArrow("cbar", lam)]
        return []

    def e_set(self, X, lam) -> list:
        if lam == X:
            return ["*"]
        if X == STAR_OBJECT and lam in self.index_set:
            return [ToyArrow("c", lam)]
        return []

    def iota_tag(self, tag):
        if tag == "*":
            return tag
        return ToyArrow("cbar" if tag.kind == "c" else "c", tag.index)

    def tag_degree(self, tag) -> int:
        return 0 if tag == "*" else 1

    def fibre(self, lam) -> FibreAlgebra:
        return self._fibre

    @staticmethod
    def _path(key: BasisKey) -> tuple[ToyArrow, ...]:
        # arrows in order of application: T first, then S
        return tuple(x for x in (key.T, key.S) if x != "*")

    def _key_of_path(self, path: tuple[ToyArrow, ...], source, target) -> BasisKey | None:
        if not path:
            return BasisKey(source, "*", 1, "*")
        if len(path) == 1:
            (arrow,) = path
            if arrow.kind == "c":
                return BasisKey(arrow.index, "*", 1, arrow)
            return BasisKey(arrow.index, arrow, 1, "*")
        first, second = path
        if first.kind == "c" and second.kind == "cbar" and first.index == second.index:
            return BasisKey(first.index, second, 1, first)
        return None

    def compose_basis(self, f: BasisKey, g: BasisKey, source, middle, target) -> Morphism:
        path = self._path(g) + self._path(f)
        # any i -> star -> j segment is zero
        for a, b in zip(path, path[1:]):
            if a.kind == "cbar" and b.kind == "c":
                return Morphism(self, source, target)
        key = self._key_of_path(path, source, target)
        if key is None:
            return Morphism(self, source, target)
        return Morphism(self, source, target, {key: self.one})

    def identity(self, X) -> Morphism:
        return self.basis_morphism(X, X, BasisKey(X, "*", 1, "*"))

    # named morphisms

    def c(self, i) -> Morphism:
        return self.c_e(STAR_OBJECT, ToyArrow("c", i), i)

    def cbar(self, i) -> Morphism:
        return self.c_m(i, ToyArrow("cbar", i), STAR_OBJECT)

    def x(self, i) -> Morphism:
        """``x_i = cbar_i o c_i`` in ``End(star)``."""
        return self.basis_morphism(STAR_OBJECT, STAR_OBJECT, BasisKey(i, ToyArrow("cbar", i), 1, ToyArrow("c", i)))

    # serialization

    def cell_to_json(self, lam):
        return lam

    def fibre_to_json(self, lam, element):
        return fraction_to_json(element.terms.get(1, self.zero))

    def morphism_to_json(self, f: Morphism) -> dict:
        terms = []
        for k, c in f.terms.items():
            if k.cell == f.source == f.target and k.S == "*":
                name = "id"
                idx = None
            elif k.S != "*" and k.T != "*":
                name, idx = "x", k.cell
            elif k.T != "*":
                name, idx = "c", k.cell
            else:
                name, idx = "cbar", k.cell
            terms.append({"basis": name, "index": idx, "coeff": fraction_to_json(c)})
        return {"source": f.source, "target": f.target, "terms": terms}

    def morphism_from_json(self, data: Mapping) -> Morphism:
        source = data.get("source", data.get("object", STAR_OBJECT))
        target = data.get("target", source)
        total = Morphism(self, source, target)
        for t in data.get("terms", []):
            name, idx, coeff = t["basis"], t.get("index"), to_fraction(t.get("coeff", 1))
            if name == "id":
                piece = self.identity(source)
            elif name == "x":
                piece = self.x(_match_index(self.index_set, idx))
            elif name == "c":
                piece = self.c(_match_index(self.index_set, idx))
            elif name == "cbar":
                piece = self.cbar(_match_index(self.index_set, idx))
            else:
                raise ValueError(f"unknown toy basis element {name!r}")
            total = total + piece.scale(coeff)
        return total


def _match_index(index_set: Sequence, idx):
    if idx in index_set:
        return idx
    for i in index_set:
        if str(i) == str(idx):
            return i
    raise ValueError(f"index {idx!r} not in {list(index_set)}")


def toy_instance(index_set: Iterable[Hashable]) -> ToySoacc:
    return ToySoacc(list(index_set))


class ToyCellularAlgebra:
    """The one-object algebra ``k[I]/J_2`` with basis ``{1} ∪ {x_i}``.

    Used as the control: its trace is computed directly as ``A / [A, A]``.
    """

    def __init__(self, index_set: Sequence[Hashable]):
        self.index_set = tuple(index_set)
        self.basis = ["1", *[("x", i) for i in self.index_set]]

    def mul_basis(self, a, b) -> dict:
        if a == "1":
            return {b: Fraction(1)}
        if b == "1":
            return {a: Fraction(1)}
        return {}

    def cell_of(self, a):
        return STAR_OBJECT if a == "1" else a[1]

    def pairing(self, cell) -> Fraction:
        # phi^star = 1, phi^i = 0
        return Fraction(1) if cell == STAR_OBJECT else Fraction(0)

    def trace_class(self, element: Mapping) -> dict:
        """Reduce ``element`` modulo the span of commutators."""
        return reduce_mod_commutators(self.basis, self.mul_basis, element)


def _commutator_span(basis: Sequence, mul) -> list[dict]:
    rows = []
    for a in basis:
        for b in basis:
            row: dict = {}
            for k, c in mul(a, b).items():
                row[k] = row.get(k, 0) + c
            for k, c in mul(b, a).items():
                row[k] = row.get(k, 0) - c
            row = {k: Fraction(c) for k, c in row.items() if c}
            if row:
                rows.append(row)
    return rows


def _echelon(rows: list[dict], order: Sequence) -> list[tuple[Hashable, dict]]:
    pivots: list[tuple[Hashable, dict]] = []
    for row in rows:
        row = dict(row)
        for p, prow in pivots:
            if row.get(p):
                c = row[p]
                for k, v in prow.items():
                    row[k] = row.get(k, 0) - c * v
                row = {k: v for k, v in row.items() if v}
        if not row:
            continue
        p = min(row, key=order.index)
        c = row[p]
        row = {k: v / c for k, v in row.items()}
        new_pivots = []
        for q, qrow in pivots:
            if qrow.get(p):
                d = qrow[p]
                for k, v in row.items():
                    qrow[k] = qrow.get(k, 0) - d * v
                qrow = {k: v for k, v in qrow.items() if v}
            new_pivots.append((q, qrow))
        pivots = new_pivots + [(p, row)]
    return pivots


def reduce_mod_commutators(basis: Sequence, mul, element: Mapping) -> dict:
    pivots = _echelon(_commutator_span(basis, mul), list(basis))
    vec = {k: Fraction(v) for k, v in element.items() if v}
    for p, prow in pivots:
        if vec.get(p):
            c = vec[p]
            for k, v in prow.items():
                vec[k] = vec.get(k, 0) - c * v
            vec = {k: v for k, v in vec.items() if v}
    return vec


def commutator_quotient_rank(basis: Sequence, mul) -> int:
    """``dim A - dim [A, A]`` for a finite-dimensional algebra."""
    return len(basis) - len(_echelon(_commutator_span(basis, mul), list(basis)))
