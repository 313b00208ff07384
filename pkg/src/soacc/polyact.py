"""Polynomial realizations, divided differences and the ring Z[W] ⋉ R.

``R`` is the polynomial ring in the simple roots ``alpha_s``; ``W`` acts by
algebra automorphisms with ``s(alpha_t) = alpha_t - a[s][t] alpha_s``.

Elements of the semidirect product are sums ``sum_w f_w T_w`` with the
polynomial on the left, multiplied by ``(f T_x)(g T_y) = f (x.g) T_{xy}``.

The induced sign module ``(Z[W] ⋉ R) ⊗_{Z[W]} sgn`` is identified with ``R``
through ``f T_w ⊗ 1 = (-1)^len(w) f``. Under this identification ``g in R``
acts by multiplication and ``T_s`` acts by ``m -> -(s.m)``, since
``T_s (m ⊗ 1) = (s.m) T_s ⊗ 1 = -(s.m) ⊗ 1``.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from fractions import Fraction
from typing import Mapping, Sequence

from .coeffs import MultiPoly, NotDivisible, to_fraction
from .coxeter import INF, CoxeterSystem, GroupElement

__all__ = [
    "Realization", "SemidirectElement", "BrokenInvariant",
    "w_act", "divided_difference", "semidirect_mul", "check_annulus_relation", "sign_module_act",
    "cartan_A", "cartan_B", "cartan_I2_6", "default_realization",
]

log = logging.getLogger(__name__)

# a_st * a_ts for crystallographic bonds
_CRYSTALLOGRAPHIC = {2: {0}, 3: {1}, 4: {2}, 6: {3}}


class BrokenInvariant(AssertionError):
    """An internal invariant that must always hold was violated."""


class Realization:
    """A Coxeter system with a rational Cartan matrix acting on ``k[alpha_s]``."""

    def __init__(self, system: CoxeterSystem, cartan: Sequence[Sequence], allow_approximate: bool = False):
        self.system = system
        n = system.rank
        self.cartan = tuple(tuple(to_fraction(x) for x in row) for row in cartan)
        if len(self.cartan) != n or any(len(row) != n for row in self.cartan):
            raise ValueError("Cartan matrix must be square of the Coxeter rank")
        for s in range(n):
            if self.cartan[s][s] != 2:
                raise ValueError(f"Cartan diagonal entry a[{s}][{s}] must be 2")
        for s in range(n):
            for t in range(s + 1, n):
                self._check_bond(s, t, allow_approximate)
        self.nvars = n
        self._images: dict[int, list[MultiPoly]] = {}
        self._action_cache: dict[tuple[tuple[int, ...], MultiPoly], MultiPoly] = {}

    def _check_bond(self, s: int, t: int, allow_approximate: bool) -> None:
        m = self.system.matrix.order(s, t)
        a, b = self.cartan[s][t], self.cartan[t][s]
        prod = a * b
        if m == INF:
            if prod < 4:
                raise ValueError(f"bond ({s},{t}) has m=inf but a_st*a_ts={prod} < 4")
            return
        m = int(m)
        if m == 2:
            if a != 0 or b != 0:
                raise ValueError(f"commuting generators ({s},{t}) need a_st = a_ts = 0")
            return
        if m in _CRYSTALLOGRAPHIC and prod in _CRYSTALLOGRAPHIC[m]:
            return
        expected = 4 * math.cos(math.pi / m) ** 2
        if not allow_approximate:
            raise ValueError(
                f"bond ({s},{t}) with m={m} needs a_st*a_ts = {expected:.6f}; "
                "exact irrational entries are unsupported (pass allow_approximate to accept a rational stand-in)"
            )
        log.warning("bond (%d,%d): a_st*a_ts=%s approximates %.6f; the W-action is not exact", s, t, prod, expected)

    def to_json(self) -> dict:
        return {
            "system": self.system.to_json(),
            "cartan": [[_frac_json(x) for x in row] for row in self.cartan],
        }

    @classmethod
    def from_json(cls, data: dict, system: CoxeterSystem | None = None, **kw) -> Realization:
        if system is None:
            system = CoxeterSystem.from_json(data["system"])
        return cls(system, data["cartan"], **kw)

    # polynomials

    def root(self, s: int) -> MultiPoly:
        return MultiPoly.var(self.nvars, s)

    def zero(self) -> MultiPoly:
        return MultiPoly.zero(self.nvars)

    def one(self) -> MultiPoly:
        return MultiPoly.one(self.nvars)

    def poly(self, terms: Mapping) -> MultiPoly:
        return MultiPoly(self.nvars, terms)

    def _generator_images(self, s: int) -> list[MultiPoly]:
        imgs = self._images.get(s)
        if imgs is None:
            a_s = self.root(s)
            imgs = [self.root(t) - a_s * self.cartan[s][t] for t in range(self.nvars)]
            self._images[s] = imgs
        return imgs

    def act_generator(self, s: int, f: MultiPoly) -> MultiPoly:
        return f.substitute(self._generator_images(s))

    def act_word(self, word: Sequence[int], f: MultiPoly) -> MultiPoly:
        """Apply ``s_1 s_2 ... s_k`` to ``f`` (rightmost letter acts first)."""
        for s in reversed(tuple(word)):
            f = self.act_generator(s, f)
        return f

    def act(self, w: GroupElement, f: MultiPoly) -> MultiPoly:
        key = (w.word, f)
        hit = self._action_cache.get(key)
        if hit is None:
            hit = self.act_word(w.word, f)
            if len(self._action_cache) < 200_000:
                self._action_cache[key] = hit
        return hit

    def divided_difference(self, s: int, f: MultiPoly) -> MultiPoly:
        num = f - self.act_generator(s, f)
        try:
            return num.divide_exact(self.root(s))
        except NotDivisible as exc:
            raise BrokenInvariant(f"f - s.f not divisible by alpha_{s} for f = {f}") from exc

    def format(self, f: MultiPoly) -> str:
        return f.format([f"a_{g}" for g in self.system.generators])


def _frac_json(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def w_act(realization: Realization, w: GroupElement, f: MultiPoly) -> MultiPoly:
    return realization.act(w, f)


def divided_difference(realization: Realization, s: int, f: MultiPoly) -> MultiPoly:
    return realization.divided_difference(s, f)


class SemidirectElement:
    """``sum_w f_w T_w`` in ``Z[W] ⋉ R`` with polynomial coefficients on the left."""

    __slots__ = ("realization", "_terms")

    def __init__(self, realization: Realization, terms: Mapping[GroupElement, MultiPoly] | None = None):
        self.realization = realization
        clean: dict[GroupElement, MultiPoly] = {}
        for w, f in (terms or {}).items():
            if not isinstance(f, MultiPoly):
                f = MultiPoly.const(realization.nvars, f)
            clean[w] = clean[w] + f if w in clean else f
        self._terms = {w: f for w, f in sorted(clean.items()) if f}

    @classmethod
    def unit(cls, realization: Realization) -> SemidirectElement:
        return cls(realization, {realization.system.identity: realization.one()})

    @classmethod
    def poly(cls, realization: Realization, f: MultiPoly) -> SemidirectElement:
        return cls(realization, {realization.system.identity: f})

    @classmethod
    def group(cls, realization: Realization, w: GroupElement) -> SemidirectElement:
        return cls(realization, {w: realization.one()})

    @property
    def terms(self) -> dict[GroupElement, MultiPoly]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: SemidirectElement) -> SemidirectElement:
        out = dict(self._terms)
        for w, f in other._terms.items():
            out[w] = out[w] + f if w in out else f
        return SemidirectElement(self.realization, out)

    def __neg__(self) -> SemidirectElement:
        return SemidirectElement(self.realization, {w: -f for w, f in self._terms.items()})

    def __sub__(self, other: SemidirectElement) -> SemidirectElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SemidirectElement):
            return semidirect_mul(self, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, SemidirectElement):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def to_json(self) -> list[dict]:
        return [{"word": list(w.word), "multipoly": f.to_json()} for w, f in self._terms.items()]

    @classmethod
    def from_json(cls, realization: Realization, data: list[dict]) -> SemidirectElement:
        system = realization.system
        terms: dict[GroupElement, MultiPoly] = {}
        for item in data:
            w = system.element(item["word"])
            f = MultiPoly.from_json(realization.nvars, item["multipoly"])
            terms[w] = terms[w] + f if w in terms else f
        return cls(realization, terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({self.realization.format(f)})*T_{w.name()}" for w, f in self._terms.items())


def semidirect_mul(a: SemidirectElement, b: SemidirectElement) -> SemidirectElement:
    """``(f T_x)(g T_y) = f (x.g) T_{xy}``, extended bilinearly."""
    real = a.realization
    system = real.system
    out: dict[GroupElement, MultiPoly] = defaultdict(real.zero)
    for x, f in a._terms.items():
        for y, g in b._terms.items():
            out[system.multiply(x, y)] += f * real.act(x, g)
    return SemidirectElement(real, out)


def check_annulus_relation(realization: Realization, f: MultiPoly, s: int) -> bool:
    """Check ``f (1 + T_s) = (1 + T_s)(s.f) + (f - s.f)`` in ``Z[W] ⋉ R``."""
    e = realization.system.identity
    ts = realization.system.generator(s)
    one = realization.one()
    bs = SemidirectElement(realization, {e: one, ts: one})
    sf = realization.act_generator(s, f)
    lhs = semidirect_mul(SemidirectElement.poly(realization, f), bs)
    rhs = semidirect_mul(bs, SemidirectElement.poly(realization, sf)) + SemidirectElement.poly(realization, f - sf)
    return lhs == rhs


def sign_module_act(h: SemidirectElement, m: MultiPoly, word_choice: Mapping[GroupElement, Sequence[int]] | None = None
                    ) -> MultiPoly:
    """Action of ``Z[W] ⋉ R`` on the induced sign module (identified with ``R``).

    ``T_w`` acts letter by letter along a reduced word (by default the
    canonical one; ``word_choice`` may override it per element).
    """
    real = h.realization
    result = real.zero()
    for w, f in h._terms.items():
        word = tuple(word_choice[w]) if word_choice and w in word_choice else w.word
        acted = m
        for s in reversed(word):
            acted = -real.act_generator(s, acted)
        result = result + f * acted
    return result


def cartan_A(n: int) -> list[list[int]]:
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def cartan_B(n: int) -> list[list[int]]:
    a = cartan_A(n)
    if n >= 2:
        a[n - 2][n - 1] = -2
    return a


def cartan_I2_6() -> list[list[int]]:
    return [[2, -1], [-3, 2]]


def default_realization(system: CoxeterSystem) -> Realization:
    """Pick an integral Cartan matrix matching the Coxeter matrix bond by bond."""
    n = system.rank
    a = [[Fraction(2) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for s in range(n):
        for t in range(s + 1, n):
            m = system.matrix.order(s, t)
            if m == 2:
                continue
            if m == 3:
                a[s][t] = a[t][s] = Fraction(-1)
            elif m == 4:
                a[s][t], a[t][s] = Fraction(-1), Fraction(-2)
            elif m == 6:
                a[s][t], a[t][s] = Fraction(-1), Fraction(-3)
            elif m == INF:
                a[s][t] = a[t][s] = Fraction(-2)
            else:
                raise ValueError(f"no integral Cartan entry for m={m}; supply a Cartan matrix explicitly")
    return Realization(system, a)
