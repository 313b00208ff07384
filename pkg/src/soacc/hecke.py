"""The Hecke algebra of a Coxeter system over Z[v, v^-1].

Conventions (``q = v^-2``)::

    T_s^2 = (v^-2 - 1) T_s + v^-2
    H_w   = v^len(w) T_w,        H_s^2 = 1 + (v^-1 - v) H_s
    b_s   = v (1 + T_s) = H_s + v,   b_s^2 = (v + v^-1) b_s

Elements carry their basis tag (``"T"`` or ``"H"``); arithmetic refuses to
mix tags, conversion is explicit via :meth:`HeckeElement.to_basis`.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping, Sequence

from .coeffs import LaurentPoly
from .coxeter import CoxeterSystem, GroupElement

__all__ = [
    "HeckeElement", "GroupAlgebraElement",
    "hecke_mul", "kl_generator", "bott_samelson_product", "deodhar_expansion",
    "double_leaf_rank", "specialize_group_algebra", "sign_character",
]

V = LaurentPoly.gen("v")
ONE = LaurentPoly.const(1, "v")
VINV = V ** -1
# T_s^2 = (v^-2 - 1) T_s + v^-2
QUAD_LINEAR = VINV * VINV - 1
QUAD_CONST = VINV * VINV
# H_s^2 = 1 + (v^-1 - v) H_s
H_QUAD_LINEAR = VINV - V

BASES = ("T", "H")


class HeckeElement:
    """A finite sum ``sum_w c_w X_w`` with ``X`` the T- or H-basis."""

    __slots__ = ("system", "basis", "_terms")

    def __init__(self, system: CoxeterSystem, terms: Mapping[GroupElement, LaurentPoly] | None = None,
                 basis: str = "T"):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.system = system
        self.basis = basis
        clean: dict[GroupElement, LaurentPoly] = {}
        for w, c in (terms or {}).items():
            if w.system is not system:
                raise ValueError("group element from another Coxeter system")
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(int(c))
            if c:
                clean[w] = clean[w] + c if w in clean else c
        self._terms = {w: c for w, c in sorted(clean.items()) if c}

    @classmethod
    def _raw(cls, system: CoxeterSystem, terms: dict[GroupElement, LaurentPoly], basis: str) -> HeckeElement:
        out = cls.__new__(cls)
        out.system = system
        out.basis = basis
        out._terms = {w: terms[w] for w in sorted(terms) if terms[w]}
        return out

    @classmethod
    def unit(cls, system: CoxeterSystem, basis: str = "T") -> HeckeElement:
        return cls(system, {system.identity: ONE}, basis)

    @classmethod
    def basis_element(cls, w: GroupElement, basis: str = "T") -> HeckeElement:
        return cls(w.system, {w: ONE}, basis)

    @property
    def terms(self) -> dict[GroupElement, LaurentPoly]:
        return dict(self._terms)

    def coeff(self, w: GroupElement) -> LaurentPoly:
        return self._terms.get(w, LaurentPoly({}, "v"))

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: HeckeElement) -> None:
        if other.system is not self.system:
            raise ValueError("Hecke elements over different Coxeter systems")
        if other.basis != self.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}; convert with to_basis()")

    def __add__(self, other: HeckeElement) -> HeckeElement:
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement._raw(self.system, out, self.basis)

    def __neg__(self) -> HeckeElement:
        return HeckeElement(self.system, {w: -c for w, c in self._terms.items()}, self.basis)

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + (-other)

    def scale(self, c) -> HeckeElement:
        return HeckeElement._raw(self.system, {w: c * x for w, x in self._terms.items()}, self.basis)

    def __rmul__(self, c) -> HeckeElement:
        if isinstance(c, (int, LaurentPoly)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other) -> HeckeElement:
        if isinstance(other, HeckeElement):
            return hecke_mul(self, other)
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if other.system is not self.system:
            return False
        if other.basis != self.basis:
            other = other.to_basis(self.basis)
        return self._terms == other._terms

    __hash__ = None

    def to_basis(self, basis: str) -> HeckeElement:
        if basis == self.basis:
            return self
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        # H_w = v^l T_w, so the T-coefficient is v^l times the H-coefficient
        sign = 1 if basis == "T" else -1
        return HeckeElement(
            self.system,
            {w: c * LaurentPoly.monomial(sign * w.length) for w, c in self._terms.items()},
            basis,
        )

    def right_mul_generator(self, s: int) -> HeckeElement:
        """Multiply on the right by ``T_s`` (or ``H_s``, matching the basis)."""
        out: dict[GroupElement, LaurentPoly] = defaultdict(lambda: LaurentPoly({}, "v"))
        system = self.system
        for w, c in self._terms.items():
            ws = system.right_mul(w, s)
            if ws.length > w.length:
                out[ws] += c
            elif self.basis == "T":
                out[w] += c * QUAD_LINEAR
                out[ws] += c * QUAD_CONST
            else:
                out[ws] += c
                out[w] += c * H_QUAD_LINEAR
        return HeckeElement._raw(system, dict(out), self.basis)

    def specialize(self) -> GroupAlgebraElement:
        return specialize_group_algebra(self)

    def bar_inverse_subscripts(self) -> HeckeElement:
        """The anti-involution ``T_w -> T_{w^-1}`` (coefficients untouched)."""
        return HeckeElement(self.system, {w.inverse(): c for w, c in self._terms.items()}, self.basis)

    def to_json(self) -> dict:
        return {
            "system": self.system.to_json(),
            "basis": self.basis,
            "terms": [{"word": list(w.word), "coeff": c.to_json()} for w, c in self._terms.items()],
        }

    @classmethod
    def from_json(cls, data: dict, system: CoxeterSystem | None = None) -> HeckeElement:
        if system is None:
            system = CoxeterSystem.from_json(data["system"])
        terms: dict[GroupElement, LaurentPoly] = {}
        for item in data.get("terms", []):
            w = system.element(item["word"])
            c = LaurentPoly.from_json(item["coeff"])
            terms[w] = terms[w] + c if w in terms else c
        return cls(system, terms, data.get("basis", "T"))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = [f"({c})*{self.basis}_{w.name()}" for w, c in self._terms.items()]
        return " + ".join(parts)


def hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Exact product, expanding ``b`` one generator at a time along reduced words."""
    a._check(b)
    result = HeckeElement(a.system, {}, a.basis)
    for w, c in b._terms.items():
        partial = a
        for s in w.word:
            partial = partial.right_mul_generator(s)
        result = result + partial.scale(c)
    return result


def kl_generator(system: CoxeterSystem, s: int, basis: str = "T") -> HeckeElement:
    """``b_s = v (1 + T_s)``."""
    elt = HeckeElement(system, {system.identity: V, system.generator(s): V}, "T")
    return elt.to_basis(basis)


def bott_samelson_product(system: CoxeterSystem, word: Sequence[int], basis: str = "T") -> HeckeElement:
    """``b_{s_1} ... b_{s_d}`` computed by repeated multiplication in the T-basis."""
    result = HeckeElement.unit(system, "T")
    for s in word:
        # x b_s = v x + v x T_s
        result = (result + result.right_mul_generator(s)).scale(V)
    return result.to_basis(basis)


def deodhar_expansion(system: CoxeterSystem, word: Sequence[int], basis: str = "H") -> HeckeElement:
    """``sum_{e in word} v^defect(e) H_{terminus(e)}`` over all subexpressions."""
    return HeckeElement(system, defect_polynomials(system, word), "H").to_basis(basis)


def defect_polynomials(system: CoxeterSystem, word: Sequence[int]) -> dict[GroupElement, LaurentPoly]:
    """``x -> sum_{e : terminus(e) = x} v^defect(e)``."""
    counts: dict[GroupElement, dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for e in system.all_subexpressions(word):
        counts[e.terminus][e.defect] += 1
    return {x: LaurentPoly(dict(c), "v") for x, c in counts.items()}


def double_leaf_rank(system: CoxeterSystem, w: Sequence[int], y: Sequence[int]
                     ) -> tuple[dict[GroupElement, LaurentPoly], LaurentPoly]:
    """Graded rank of the double-leaves basis of ``Hom(w, y)``, split by cell.

    Returns the per-cell products and their total.
    """
    dw = defect_polynomials(system, w)
    dy = defect_polynomials(system, y)
    per_cell = {x: dw[x] * dy[x] for x in sorted(dw.keys() & dy.keys())}
    total = LaurentPoly({}, "v")
    for c in per_cell.values():
        total = total + c
    return per_cell, total


class GroupAlgebraElement:
    """An element of Z[W] in the basis ``{T_w}``."""

    __slots__ = ("system", "_terms")

    def __init__(self, system: CoxeterSystem, terms: Mapping[GroupElement, int] | None = None):
        self.system = system
        clean: dict[GroupElement, int] = defaultdict(int)
        for w, c in (terms or {}).items():
            clean[w] += int(c)
        self._terms = {w: c for w, c in sorted(clean.items()) if c}

    @classmethod
    def unit(cls, system: CoxeterSystem) -> GroupAlgebraElement:
        return cls(system, {system.identity: 1})

    @property
    def terms(self) -> dict[GroupElement, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        out = defaultdict(int, self._terms)
        for w, c in other._terms.items():
            out[w] += c
        return GroupAlgebraElement(self.system, out)

    def __neg__(self) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.system, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        return self + (-other)

    def __mul__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        out: dict[GroupElement, int] = defaultdict(int)
        for x, a in self._terms.items():
            for y, b in other._terms.items():
                out[self.system.multiply(x, y)] += a * b
        return GroupAlgebraElement(self.system, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.system is other.system and self._terms == other._terms

    __hash__ = None

    def to_json(self) -> dict:
        return {"terms": [{"word": list(w.word), "coeff": c} for w, c in self._terms.items()]}

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*T_{w.name()}" for w, c in self._terms.items())


def specialize_group_algebra(a: HeckeElement) -> GroupAlgebraElement:
    """Evaluate T-basis coefficients at ``v = 1``."""
    if a.basis != "T":
        raise ValueError("specialization is defined on the T-basis")
    return GroupAlgebraElement(a.system, {w: int(c.evaluate(1)) for w, c in a.terms.items()})


def sign_character(a: GroupAlgebraElement) -> int:
    """The ring map ``Z[W] -> Z`` with ``T_w -> (-1)^len(w)``."""
    return sum(c * (-1) ** w.length for w, c in a.terms.items())


def hecke_from_words(system: CoxeterSystem, items: Iterable[tuple[Sequence[int], LaurentPoly]],
                     basis: str = "T") -> HeckeElement:
    terms: dict[GroupElement, LaurentPoly] = {}
    for word, c in items:
        w = system.element(word)
        terms[w] = terms[w] + c if w in terms else c
    return HeckeElement(system, terms, basis)
