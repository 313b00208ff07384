"""The Temperley-Lieb category as an SOACC over Z[q, q^-1].

A diagram ``m -> n`` is a perfect matching of ``m + n`` boundary points:
bottom points ``0 .. m-1`` and top points ``m .. m+n-1``, both read left to
right. Walking once around the boundary (bottom left to right, then top right
to left) the matching must be a balanced bracket word; that is planarity.

Cells are objects ``t`` with the usual order on N. ``M(t, n)`` is the set of
cup diagrams ``t -> n`` (every bottom point goes through) and ``E(n, t)`` the
set of cap diagrams; a diagram with ``t`` through strands factors uniquely as
``cup o cap`` through ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from ..cellular import BaseRingFibre, BasisKey, FibreAlgebra, Morphism, SoaccInstance
from ..coeffs import LaurentPoly

__all__ = [
    "PlanarMatching", "BoundaryMismatch", "TemperleyLieb",
    "tl_compose", "tl_cell_factorization", "identity_diagram", "cup_diagram", "cap_diagram",
    "e_generator", "all_diagrams", "catalan",
]

Q = LaurentPoly.gen("q")


class BoundaryMismatch(ValueError):
    """Stacked diagrams disagree on the number of middle points."""


@dataclass(frozen=True)
class PlanarMatching:
    """A non-crossing perfect matching ``source -> target``.

    ``partner[i]`` is the point matched with boundary point ``i``.
    """

    source: int
    target: int
    partner: tuple[int, ...]

    def __post_init__(self):
        n = self.source + self.target
        p = tuple(self.partner)
        object.__setattr__(self, "partner", p)
        if n % 2 or len(p) != n:
            raise ValueError(f"a diagram {self.source}->{self.target} needs an even number of points")
        if not all(0 <= p[i] < n and p[i] != i and p[p[i]] == i for i in range(n)):
            raise ValueError("partner is not a fixed-point-free involution")
        if not _non_crossing(self.source, self.target, p):
            raise ValueError("matching is not planar")

    @classmethod
    def from_pairs(cls, source: int, target: int, pairs: Sequence[Sequence[int]]) -> PlanarMatching:
        n = source + target
        partner = [-1] * n
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n) or partner[a] != -1 or partner[b] != -1 or a == b:
                raise ValueError(f"bad pair ({a}, {b})")
            partner[a], partner[b] = b, a
        if -1 in partner:
            raise ValueError("matching is not perfect")
        return cls(source, target, tuple(partner))

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.partner) if i < j]

    def is_bottom(self, i: int) -> bool:
        return i < self.source

    @property
    def through(self) -> int:
        return sum(1 for i in range(self.source) if self.partner[i] >= self.source)

    def flip(self) -> PlanarMatching:
        """Upside-down reflection ``target -> source``."""
        m, n = self.source, self.target
        old_to_new = [n + i for i in range(m)] + [j for j in range(n)]
        partner = [0] * (m + n)
        for i, j in enumerate(self.partner):
            partner[old_to_new[i]] = old_to_new[j]
        return PlanarMatching(n, m, tuple(partner))

    def to_json(self) -> dict:
        return {"source": self.source, "target": self.target, "pairs": [list(p) for p in self.pairs()]}

    def __repr__(self) -> str:
        return f"TL({self.source}->{self.target}: {self.pairs()})"


def _non_crossing(m: int, n: int, partner: Sequence[int]) -> bool:
    order = list(range(m)) + list(range(m + n - 1, m - 1, -1))
    pos = {p: k for k, p in enumerate(order)}
    stack = []
    for p in order:
        q = partner[p]
        if pos[q] > pos[p]:
            stack.append(p)
        else:
            if not stack or stack.pop() != q:
                return False
    return True


def identity_diagram(n: int) -> PlanarMatching:
    return PlanarMatching.from_pairs(n, n, [(i, n + i) for i in range(n)])


def cup_diagram(n: int, i: int) -> PlanarMatching:
    """``n -> n + 2`` with a cup joining top points ``i, i+1``."""
    pairs = []
    for k in range(n):
        top = k if k < i else k + 2
        pairs.append((k, n + top))
    pairs.append((n + i, n + i + 1))
    return PlanarMatching.from_pairs(n, n + 2, pairs)


def cap_diagram(n: int, i: int) -> PlanarMatching:
    """``n + 2 -> n`` with a cap joining bottom points ``i, i+1``."""
    return cup_diagram(n, i).flip()


def e_generator(n: int, i: int) -> PlanarMatching:
    """The Temperley-Lieb generator ``e_i`` in ``End(n)``, ``0 <= i < n - 1``."""
    if not 0 <= i < n - 1:
        raise ValueError(f"e_{i} is not defined on {n} strands")
    pairs = [(i, i + 1), (n + i, n + i + 1)]
    pairs += [(k, n + k) for k in range(n) if k not in (i, i + 1)]
    return PlanarMatching.from_pairs(n, n, pairs)


def _matchings(points: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Non-crossing perfect matchings of ``0 .. points-1`` placed on a line."""
    if points == 0:
        yield ()
        return
    for j in range(1, points, 2):
        for inner in _matchings(j - 1):
            for outer in _matchings(points - j - 1):
                yield ((0, j),) + tuple((a + 1, b + 1) for a, b in inner) + \
                    tuple((a + j + 1, b + j + 1) for a, b in outer)


@lru_cache(maxsize=None)
def all_diagrams(m: int, n: int) -> tuple[PlanarMatching, ...]:
    """Every diagram ``m -> n``, in a fixed order."""
    if (m + n) % 2:
        return ()
    order = list(range(m)) + list(range(m + n - 1, m - 1, -1))
    out = []
    for match in _matchings(m + n):
        out.append(PlanarMatching.from_pairs(m, n, [(order[a], order[b]) for a, b in match]))
    return tuple(out)


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


@lru_cache(maxsize=200_000)
def _stack(upper: PlanarMatching, lower: PlanarMatching) -> tuple[PlanarMatching, int]:
    """Stack ``upper`` on ``lower``; returns the diagram and the closed-loop count."""
    if lower.target != upper.source:
        raise BoundaryMismatch(f"cannot stack {upper.source}-point bottom on {lower.target}-point top")
    a, b, c = lower.source, lower.target, upper.target
    # node ids: lower bottom 0..a-1, middle a..a+b-1, upper top a+b..a+b+c-1
    def lower_node(i):
        return i if i < a else a + (i - a)

    def upper_node(i):
        return a + i if i < b else a + b + (i - b)

    lower_adj = {}
    for i, j in enumerate(lower.partner):
        lower_adj[lower_node(i)] = lower_node(j)
    upper_adj = {}
    for i, j in enumerate(upper.partner):
        upper_adj[upper_node(i)] = upper_node(j)

    def is_middle(x):
        return a <= x < a + b

    partner = {}
    visited_middle = set()
    for start in list(range(a)) + list(range(a + b, a + b + c)):
        if start in partner:
            continue
        x = start
        adj = lower_adj if start < a else upper_adj
        while True:
            y = adj[x]
            if not is_middle(y):
                break
            visited_middle.add(y)
            adj = upper_adj if adj is lower_adj else lower_adj
            x = y
        partner[start] = y
        partner[y] = start
        if is_middle(x):
            visited_middle.add(x)

    loops = 0
    for x in range(a, a + b):
        if x in visited_middle:
            continue
        loops += 1
        y = x
        adj = lower_adj
        while True:
            visited_middle.add(y)
            y = adj[y]
            adj = upper_adj if adj is lower_adj else lower_adj
            if y == x:
                break
    out = [0] * (a + c)

    def renum(x):
        return x if x < a else a + (x - a - b)

    for x, y in partner.items():
        if not is_middle(x):
            out[renum(x)] = renum(y)
    return PlanarMatching(a, c, tuple(out)), loops


def tl_compose(d1: PlanarMatching, d2: PlanarMatching, delta: LaurentPoly | None = None
               ) -> tuple[PlanarMatching, LaurentPoly]:
    """``d1 o d2`` (``d2`` first) as ``(diagram, delta^loops)``."""
    if delta is None:
        delta = -(Q + Q ** -1)
    d, loops = _stack(d1, d2)
    return d, delta ** loops


@lru_cache(maxsize=100_000)
def tl_cell_factorization(d: PlanarMatching) -> tuple[int, PlanarMatching, PlanarMatching]:
    """Split ``d: m -> n`` as ``cup o cap`` through its through-strand count ``t``.

    Returns ``(t, S, T)`` with ``T: m -> t`` a cap diagram and ``S: t -> n`` a
    cup diagram.
    """
    m, n = d.source, d.target
    bottom_through = [i for i in range(m) if d.partner[i] >= m]
    top_through = sorted(d.partner[i] for i in bottom_through)
    t = len(bottom_through)
    # cap part: bottom caps of d, through strands to 0..t-1 on top
    cap_pairs = [(i, d.partner[i]) for i in range(m) if i < d.partner[i] < m]
    cap_pairs += [(i, m + k) for k, i in enumerate(bottom_through)]
    T = PlanarMatching.from_pairs(m, t, cap_pairs)
    # cup part: bottom 0..t-1 to through tops, top cups of d
    cup_pairs = [(k, t + (j - m)) for k, j in enumerate(top_through)]
    cup_pairs += [(t + (i - m), t + (d.partner[i] - m)) for i in range(m, m + n) if i < d.partner[i]]
    S = PlanarMatching.from_pairs(t, n, cup_pairs)
    return t, S, T


class TemperleyLieb(SoaccInstance):
    """The Temperley-Lieb category with loop value ``delta_sign * (q + q^-1)``."""

    name = "tl"
    graded = False

    def __init__(self, delta_sign: int = -1):
        if delta_sign not in (1, -1):
            raise ValueError("delta_sign must be +1 or -1")
        self.delta_sign = delta_sign
        self.delta = (Q + Q ** -1) * delta_sign
        self.one = LaurentPoly.const(1, "q")
        self.zero = LaurentPoly({}, "q")
        self._fibre = BaseRingFibre(self.one)

    def cell_leq(self, lam, mu) -> bool:
        return lam <= mu

    def objects(self, bound: int) -> list[int]:
        return list(range(bound + 1))

    def is_cell(self, X) -> bool:
        return isinstance(X, int) and X >= 0

    def cells_of(self, X) -> list[int]:
        return list(range(X % 2, X + 1, 2))

    def m_set(self, lam, X) -> list[PlanarMatching]:
        if lam > X or (X - lam) % 2:
            return []
        return [d for d in all_diagrams(lam, X) if d.through == lam]

    def e_set(self, X, lam) -> list[PlanarMatching]:
        if lam > X or (X - lam) % 2:
            return []
        return [d for d in all_diagrams(X, lam) if d.through == lam]

    def iota_tag(self, tag: PlanarMatching) -> PlanarMatching:
        return tag.flip()

    def star(self, lam) -> PlanarMatching:
        return identity_diagram(lam)

    def fibre(self, lam) -> FibreAlgebra:
        return self._fibre

    def diagram_of(self, key: BasisKey) -> PlanarMatching:
        return _stack(key.S, key.T)[0]

    def key_of(self, d: PlanarMatching) -> BasisKey:
        t, S, T = tl_cell_factorization(d)
        return BasisKey(t, S, 1, T)

    def compose_basis(self, f: BasisKey, g: BasisKey, source, middle, target) -> Morphism:
        d, coeff = tl_compose(self.diagram_of(f), self.diagram_of(g), self.delta)
        return Morphism(self, source, target, {self.key_of(d): coeff})

    # diagram-level helpers

    def diagram(self, d: PlanarMatching, coeff=None) -> Morphism:
        return Morphism(self, d.source, d.target, {self.key_of(d): self.one if coeff is None else coeff})

    def to_diagrams(self, f: Morphism) -> list[tuple[PlanarMatching, LaurentPoly]]:
        return [(self.diagram_of(k), c) for k, c in f.terms.items()]

    def morphism_to_json(self, f: Morphism) -> list[dict]:
        return [dict(d.to_json(), coeff=c.to_json()) for d, c in self.to_diagrams(f)]

    def morphism_from_json(self, data) -> Morphism:
        items = data if isinstance(data, list) else [data]
        if not items:
            raise ValueError("empty diagram list")
        total = None
        for item in items:
            d = PlanarMatching.from_pairs(int(item["source"]), int(item["target"]), item["pairs"])
            coeff = LaurentPoly.from_json(item.get("coeff", {"0": 1}), "q")
            m = self.diagram(d, coeff)
            total = m if total is None else total + m
        return total

    def fibre_to_json(self, lam, element):
        return element.terms.get(1, self.zero).to_json()
