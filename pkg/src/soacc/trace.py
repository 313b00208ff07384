"""Trace decategorification of a fibred SOACC.

Every endomorphism is pushed into ``K = ⊕_lam A_lam 1_lam`` by rotating its
basis terms: ``c_S o a o c_T`` (an endomorphism of ``X``) has the same trace
class as ``a o c_T o c_S`` (an endomorphism of the cell ``lam``). The part of
the rotated term lying in ``A_lam 1_lam`` is final; the rest lives on cells
strictly below ``lam`` and is rotated again. The descending chain condition
on cells makes this terminate.
"""

from __future__ import annotations

from collections import deque
from typing import Any, Hashable, Iterable, Mapping

from .cellular import (
    BasisKey, FibreElement, Morphism, ObjectMismatch, SoaccInstance, compose, involution,
)

__all__ = [
    "TraceClass", "BrokenInvariant", "p_step", "pi", "chern", "check_trace_relation",
    "identity_span_report", "DEFAULT_ITERATION_CAP",
]

DEFAULT_ITERATION_CAP = 1_000_000


class BrokenInvariant(AssertionError):
    """The rotation did not terminate: the instance violates the chain condition."""


class TraceClass:
    """An element of ``⊕_lam A_lam``, stored as ``{(cell, fibre basis index): coeff}``."""

    __slots__ = ("instance", "_terms")

    def __init__(self, instance: SoaccInstance, terms: Mapping[tuple[Hashable, Hashable], Any] | None = None):
        self.instance = instance
        clean: dict = {}
        for k, c in (terms or {}).items():
            clean[k] = clean[k] + c if k in clean else c
        self._terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def from_cells(cls, instance: SoaccInstance, classes: Mapping[Hashable, FibreElement]) -> TraceClass:
        return cls(instance, {(lam, a): c for lam, fe in classes.items() for a, c in fe.terms.items()})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def cells(self) -> list:
        return list(dict.fromkeys(lam for lam, _ in self._terms))

    def at(self, lam) -> FibreElement:
        fib = self.instance.fibre(lam)
        return FibreElement(fib, {a: c for (cell, a), c in self._terms.items() if cell == lam})

    def by_cell(self) -> dict[Hashable, FibreElement]:
        return {lam: self.at(lam) for lam in self.cells()}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: TraceClass) -> TraceClass:
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return TraceClass(self.instance, out)

    def __neg__(self) -> TraceClass:
        return TraceClass(self.instance, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: TraceClass) -> TraceClass:
        return self + (-other)

    def scale(self, c) -> TraceClass:
        return TraceClass(self.instance, {k: c * x for k, x in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TraceClass):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def iota(self) -> TraceClass:
        out: dict = {}
        for (lam, a), c in self._terms.items():
            k = (lam, self.instance.fibre(lam).iota(a))
            out[k] = out[k] + c if k in out else c
        return TraceClass(self.instance, out)

    def as_morphisms(self) -> dict[Hashable, Morphism]:
        """Each cell's component as an endomorphism ``a 1_lam``."""
        inst = self.instance
        out = {}
        for lam, fe in self.by_cell().items():
            star = inst.star(lam)
            out[lam] = Morphism(inst, lam, lam, {BasisKey(lam, star, a, star): c for a, c in fe.terms.items()})
        return out

    def to_json(self) -> dict:
        inst = self.instance
        classes = []
        for lam, fe in sorted(self.by_cell().items(), key=lambda t: repr(t[0])):
            classes.append({"cell": inst.cell_to_json(lam), "fibre": inst.fibre_to_json(lam, fe)})
        return {"classes": classes}

    def __repr__(self) -> str:
        if not self._terms:
            return "TraceClass(0)"
        return "TraceClass(" + ", ".join(f"{lam}: {fe}" for lam, fe in self.by_cell().items()) + ")"


def _check_endo(f: Morphism) -> None:
    if f.source != f.target:
        raise ObjectMismatch(f"trace is defined on endomorphisms, got {f.source}->{f.target}")


def _rotate_term(inst: SoaccInstance, X, key: BasisKey, coeff) -> tuple[dict, Morphism | None]:
    """Rotate one term ``coeff * c_S a c_T`` in ``End(X)``.

    Returns the ``A_lam 1_lam`` contribution and the lower-cell residual.
    """
    lam = key.cell
    star = inst.star(lam)
    if X == lam and key.S == star and key.T == star:
        return {(lam, key.a): coeff}, None
    unit = inst.fibre(lam).unit
    a_after_T = inst.basis_morphism(X, lam, BasisKey(lam, star, key.a, key.T), coeff)
    c_S = inst.basis_morphism(lam, X, BasisKey(lam, key.S, unit, star))
    rotated = compose(a_after_T, c_S)
    k_part: dict = {}
    rest: dict = {}
    for k, c in rotated.terms.items():
        if k.cell == lam:
            if k.S != star or k.T != star:
                raise BrokenInvariant(f"End({lam}) term at cell {lam} is not c_*: {k}")
            k_part[(lam, k.a)] = k_part[(lam, k.a)] + c if (lam, k.a) in k_part else c
        elif inst.cell_lt(k.cell, lam):
            rest[k] = c
        else:
            raise BrokenInvariant(f"rotating a cell-{lam} term produced cell {k.cell}, not below {lam}")
    residual = Morphism(inst, lam, lam, rest) if rest else None
    return k_part, residual


def p_step(f: Morphism) -> tuple[TraceClass, list[Morphism]]:
    """One rotation of every term of ``f``.

    Returns the part already in ``K`` and the residual endomorphisms, each
    supported on cells strictly below the term that produced it.
    """
    _check_endo(f)
    inst = f.instance
    settled = TraceClass(inst)
    residuals: dict[Hashable, Morphism] = {}
    for key, coeff in f.terms.items():
        k_part, residual = _rotate_term(inst, f.source, key, coeff)
        settled = settled + TraceClass(inst, k_part)
        if residual is not None:
            prev = residuals.get(residual.source)
            residuals[residual.source] = residual if prev is None else prev + residual
    return settled, [r for r in residuals.values() if r]


def pi(f: Morphism, iteration_cap: int = DEFAULT_ITERATION_CAP) -> TraceClass:
    """The projection ``End -> K``; equal to ``f`` on ``K`` and constant on trace classes."""
    _check_endo(f)
    inst = f.instance
    acc: dict = {}
    queue: deque[tuple[Hashable, BasisKey, Any]] = deque((f.source, k, c) for k, c in f.terms.items())
    processed = 0
    while queue:
        X, key, coeff = queue.popleft()
        processed += 1
        if processed > iteration_cap:
            raise BrokenInvariant(f"trace projection exceeded {iteration_cap} term rotations")
        k_part, residual = _rotate_term(inst, X, key, coeff)
        for k, c in k_part.items():
            acc[k] = acc[k] + c if k in acc else c
        if residual is not None:
            queue.extend((residual.source, k, c) for k, c in residual.terms.items())
    return TraceClass(inst, acc)


def chern(instance: SoaccInstance, X) -> TraceClass:
    """Trace class of ``1_X``."""
    return pi(instance.identity(X))


def check_trace_relation(g: Morphism, h: Morphism) -> bool:
    """``pi(g o h) == pi(h o g)`` for ``g: X -> Y`` and ``h: Y -> X``."""
    if g.source != h.target or g.target != h.source:
        raise ObjectMismatch(f"need g: X->Y and h: Y->X, got {g.source}->{g.target} and {h.source}->{h.target}")
    return pi(compose(g, h)) == pi(compose(h, g))


def identity_span_report(instance: SoaccInstance, objects: Iterable, fibre_degree: int = 0) -> dict:
    """Run ``pi`` on every basis endomorphism of the given objects.

    Reports, per cell, which fibre basis elements are hit, and whether every
    class is a multiple of a single cell's fibre element.
    """
    hits: dict[Hashable, set] = {}
    classes = 0
    single_cell = True
    zero_classes = 0
    for X in objects:
        for k in instance.hom_basis(X, X, fibre_degree):
            t = pi(instance.basis_morphism(X, X, k))
            classes += 1
            if t.is_zero():
                zero_classes += 1
                continue
            cells = t.cells()
            if len(cells) != 1:
                single_cell = False
            for lam in cells:
                hits.setdefault(lam, set()).update(t.at(lam).terms)
    return {
        "basis_endomorphisms": classes,
        "zero_classes": zero_classes,
        "all_single_cell": single_cell,
        "cells_hit": {repr(instance.cell_to_json(lam)): sorted(map(repr, idx))
                      for lam, idx in sorted(hits.items(), key=lambda t: repr(t[0]))},
        "lands_in_K": True,
    }


def involution_compatible(f: Morphism) -> bool:
    """``pi(iota f) == iota(pi f)``."""
    return pi(involution(f)) == pi(f).iota()
