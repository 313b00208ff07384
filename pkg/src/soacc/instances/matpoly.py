"""A fibred SOACC of 2x2 matrices over k[x].

There is one cell ``lam`` with ``A_lam = k[x]`` (``deg x = 2``) and one more
object ``X`` with ``E(X, lam) = M(lam, X) = {1, 2}``. The basis element
``c_i x^a c_j`` of ``End(X)`` is the elementary matrix ``x^a E_ij``, so
composition is matrix multiplication and the pairing is ``phi(i, j) = δ_ij``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from ..cellular import STAR, BasisKey, FibreAlgebra, Morphism, PolynomialFibre, SoaccInstance
from ..coeffs import MultiPoly, fraction_to_json, to_fraction

__all__ = ["CELL", "OBJECT", "MatPolySoacc", "MatPolyMorphism", "matpoly_instance", "x_poly"]

CELL = "lam"
OBJECT = "X"
_INDICES = (1, 2)


def x_poly(coeffs: Mapping[int, object] | Sequence) -> MultiPoly:
    """``sum c_a x^a`` from ``{a: c_a}`` or a coefficient list."""
    items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
    return MultiPoly(1, {(int(a),): to_fraction(c) for a, c in items})


class MatPolySoacc(SoaccInstance):
    name = "matpoly"
    graded = True

    def __init__(self):
        self.one = Fraction(1)
        self.zero = Fraction(0)
        self._fibre = PolynomialFibre(self.one, x_degree=2)

    def cell_leq(self, lam, mu) -> bool:
        return lam == mu == CELL

    def objects(self, bound: int = 0) -> list:
        return [CELL, OBJECT]

    def is_cell(self, X) -> bool:
        return X == CELL

    def cells_of(self, X) -> list:
        return [CELL] if X in (CELL, OBJECT) else []

    def m_set(self, lam, X) -> list:
        if lam != CELL:
            return []
        return [STAR] if X == CELL else list(_INDICES) if X == OBJECT else []

    def e_set(self, X, lam) -> list:
        return self.m_set(lam, X)

    def iota_tag(self, tag):
        return tag

    def fibre(self, lam) -> FibreAlgebra:
        return self._fibre

    def compose_basis(self, f: BasisKey, g: BasisKey, source, middle, target) -> Morphism:
        # c_S a c_T o c_U b c_V = δ_TU c_S (a b) c_V
        if f.T != g.S:
            return Morphism(self, source, target)
        return Morphism(self, source, target, {BasisKey(CELL, f.S, f.a + g.a, g.T): self.one})

    def identity(self, X) -> Morphism:
        if X == OBJECT:
            return Morphism(self, X, X, {BasisKey(CELL, i, 0, i): self.one for i in _INDICES})
        return super().identity(X)

    def fibre_to_json(self, lam, element):
        return x_poly(element.terms).to_json()

    # matrices

    def from_matrix(self, m: MatPolyMorphism) -> Morphism:
        terms = {}
        for i in _INDICES:
            for j in _INDICES:
                for mono, c in m.entry(i, j).terms.items():
                    terms[BasisKey(CELL, i, mono[0], j)] = c
        return Morphism(self, OBJECT, OBJECT, terms)

    def to_matrix(self, f: Morphism) -> MatPolyMorphism:
        if f.source != OBJECT or f.target != OBJECT:
            raise ValueError("only endomorphisms of X are matrices")
        entries: dict[tuple[int, int], dict] = {}
        for k, c in f.terms.items():
            entries.setdefault((k.S, k.T), {})[k.a] = c
        return MatPolyMorphism([[x_poly(entries.get((i, j), {})) for j in _INDICES] for i in _INDICES])

    def morphism_to_json(self, f: Morphism) -> dict:
        terms = [{"cell": k.cell, "S": k.S, "a": k.a, "T": k.T, "coeff": fraction_to_json(c)}
                 for k, c in sorted(f.terms.items(), key=lambda t: repr(t[0]))]
        return {"source": f.source, "target": f.target, "terms": terms}

    def morphism_from_json(self, data) -> Morphism:
        if isinstance(data, Mapping) and "matrix" in data:
            return self.from_matrix(MatPolyMorphism.from_json(data["matrix"]))
        source, target = data["source"], data["target"]
        terms = {}
        for t in data.get("terms", []):
            key = BasisKey(CELL, t["S"], int(t["a"]), t["T"])
            if not self.is_valid_key(key, source, target):
                raise ValueError(f"invalid basis key {key} for {source}->{target}")
            terms[key] = terms.get(key, 0) + to_fraction(t.get("coeff", 1))
        return Morphism(self, source, target, terms)


def matpoly_instance() -> MatPolySoacc:
    return MatPolySoacc()


class MatPolyMorphism:
    """A 2x2 matrix with entries in ``k[x]`` (as one-variable MultiPoly)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[MultiPoly]]):
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("MatPolyMorphism is 2x2")
        self.rows = tuple(tuple(e if isinstance(e, MultiPoly) else MultiPoly.const(1, e) for e in r) for r in rows)

    def entry(self, i: int, j: int) -> MultiPoly:
        return self.rows[i - 1][j - 1]

    def __matmul__(self, other: MatPolyMorphism) -> MatPolyMorphism:
        return MatPolyMorphism([[self.rows[i][0] * other.rows[0][j] + self.rows[i][1] * other.rows[1][j]
                                 for j in range(2)] for i in range(2)])

    def trace(self) -> MultiPoly:
        return self.rows[0][0] + self.rows[1][1]

    def __eq__(self, other) -> bool:
        return isinstance(other, MatPolyMorphism) and self.rows == other.rows

    __hash__ = None

    def to_json(self) -> list:
        return [[{str(m[0]): fraction_to_json(c) for m, c in e.terms.items()} for e in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> MatPolyMorphism:
        return cls([[x_poly({int(a): c for a, c in e.items()}) if isinstance(e, Mapping) else x_poly(e)
                     for e in r] for r in data])

    def __repr__(self) -> str:
        return "[" + "; ".join(", ".join(e.format(["x"]) for e in r) for r in self.rows) + "]"
