"""Coxeter systems given by a Coxeter matrix.

The word problem is solved with Tits' theorem: two reduced words represent
the same element iff they are connected by braid moves, and a word is reduced
iff no word in its braid-move class contains a repeated letter ``ss``.
Right multiplication by a generator therefore only needs the set of reduced
words of the current element, which is memoized per element.

Elements are stored by their ShortLex-minimal reduced word (lexicographic
order on generator indices).
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass, field
from functools import total_ordering
from pathlib import Path
from typing import Iterable, Iterator, Sequence

__all__ = [
    "ResourceLimit", "CoxeterMatrix", "CoxeterSystem", "GroupElement", "Subexpression",
    "U0", "U1", "D0", "D1",
    "canonicalize", "multiply", "bruhat_leq", "enumerate_elements", "subexpressions",
    "all_subexpressions", "type_A", "type_B", "dihedral", "builtin_system",
]

INF = math.inf

U0, U1, D0, D1 = "U0", "U1", "D0", "D1"

Word = tuple[int, ...]


class ResourceLimit(RuntimeError):
    """A computation outgrew the configured desk-scale bound."""


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of orders ``m_st``; ``math.inf`` encodes no relation."""

    m: tuple[tuple[float, ...], ...]
    generators: tuple[str, ...] = ()

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.m)
        object.__setattr__(self, "m", m)
        n = len(m)
        if not self.generators:
            object.__setattr__(self, "generators", tuple(_default_names(n)))
        if len(self.generators) != n or len(set(self.generators)) != n:
            raise ValueError("need one distinct generator name per row")
        for i, row in enumerate(m):
            if len(row) != n:
                raise ValueError("Coxeter matrix must be square")
            for j, e in enumerate(row):
                if e != m[j][i]:
                    raise ValueError(f"Coxeter matrix not symmetric at ({i},{j})")
                if i == j and e != 1:
                    raise ValueError(f"diagonal entry m[{i}][{i}] must be 1")
                if i != j and not (e == INF or (int(e) == e and e >= 2)):
                    raise ValueError(f"off-diagonal entry m[{i}][{j}]={e} must be an integer >= 2 or inf")

    @property
    def rank(self) -> int:
        return len(self.m)

    def order(self, s: int, t: int) -> float:
        return self.m[s][t]

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "coxeter_matrix": [[None if e == INF else int(e) for e in row] for row in self.m],
        }

    @classmethod
    def from_json(cls, data: dict) -> CoxeterMatrix:
        rows = data["coxeter_matrix"]
        m = tuple(tuple(_parse_order(e) for e in row) for row in rows)
        gens = tuple(data.get("generators") or _default_names(len(m)))
        return cls(m, gens)


def _parse_order(e) -> float:
    if e is None or e == 0 or (isinstance(e, str) and e.lower() in ("inf", "infinity", "oo")):
        return INF
    if isinstance(e, float) and math.isinf(e):
        return INF
    return int(e)


def _default_names(n: int) -> list[str]:
    base = "stuvwxyz"
    if n <= len(base):
        return list(base[:n])
    return [f"s{i}" for i in range(n)]


@total_ordering
@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element of W, stored as its ShortLex-minimal reduced word."""

    system: CoxeterSystem = field(repr=False)
    word: Word

    @property
    def length(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.system is other.system and self.word == other.word

    def __hash__(self) -> int:
        return hash(self.word)

    def __lt__(self, other: GroupElement) -> bool:
        return (len(self.word), self.word) < (len(other.word), other.word)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return self.system.multiply(self, other)

    def is_identity(self) -> bool:
        return not self.word

    def inverse(self) -> GroupElement:
        return self.system.element(tuple(reversed(self.word)))

    def right_descents(self) -> frozenset[int]:
        return self.system.right_descents(self)

    def left_descents(self) -> frozenset[int]:
        return self.system.right_descents(self.inverse())

    def reduced_words(self) -> frozenset[Word]:
        return self.system.reduced_words(self)

    def name(self) -> str:
        if not self.word:
            return "e"
        return "".join(self.system.matrix.generators[i] for i in self.word)

    def __repr__(self) -> str:
        return f"GroupElement({self.name()})"


class CoxeterSystem:
    """A Coxeter system with a memoized solution of the word problem."""

    def __init__(self, matrix: CoxeterMatrix, max_reduced_words: int = 200_000):
        self.matrix = matrix
        self.rank = matrix.rank
        self.max_reduced_words = max_reduced_words
        self._lock = threading.Lock()
        # canonical word -> frozenset of all reduced words
        self._closures: dict[Word, frozenset[Word]] = {(): frozenset({()})}
        # (canonical word, generator) -> canonical word of the product
        self._right: dict[tuple[Word, int], Word] = {}
        self._bruhat: dict[tuple[Word, Word], bool] = {}
        self.identity = GroupElement(self, ())

    @classmethod
    def from_json(cls, data: dict, **kw) -> CoxeterSystem:
        return cls(CoxeterMatrix.from_json(data), **kw)

    def to_json(self) -> dict:
        return self.matrix.to_json()

    @property
    def generators(self) -> tuple[str, ...]:
        return self.matrix.generators

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.matrix.to_json()})"

    # word problem

    def _braid_neighbours(self, word: Word) -> Iterator[Word]:
        n = len(word)
        for i in range(n - 1):
            s, t = word[i], word[i + 1]
            if s == t:
                continue
            m = self.matrix.order(s, t)
            if m == INF or i + m > n:
                continue
            m = int(m)
            if all(word[i + k] == (s if k % 2 == 0 else t) for k in range(m)):
                swapped = tuple(t if k % 2 == 0 else s for k in range(m))
                yield word[:i] + swapped + word[i + m:]

    def _closure_from(self, seeds: Iterable[Word]) -> frozenset[Word]:
        seen = set(seeds)
        stack = list(seen)
        while stack:
            w = stack.pop()
            for nb in self._braid_neighbours(w):
                if nb not in seen:
                    seen.add(nb)
                    if len(seen) > self.max_reduced_words:
                        raise ResourceLimit(
                            f"more than {self.max_reduced_words} reduced words for a length-{len(w)} element"
                        )
                    stack.append(nb)
        return frozenset(seen)

    def _right_mul_gen(self, canon: Word, s: int) -> Word:
        key = (canon, s)
        hit = self._right.get(key)
        if hit is not None:
            return hit
        closure = self._closures[canon]
        shorter = [w[:-1] for w in closure if w and w[-1] == s]
        if shorter:
            # every reduced word of the shorter element extends by s to one of ours
            result = min(shorter)
            with self._lock:
                self._closures.setdefault(result, frozenset(shorter))
        else:
            new_closure = self._closure_from(w + (s,) for w in closure)
            result = min(new_closure)
            with self._lock:
                self._closures.setdefault(result, new_closure)
        with self._lock:
            self._right[key] = result
        return result

    def element(self, word: Sequence[int]) -> GroupElement:
        """Canonical form of the element represented by ``word``."""
        canon: Word = ()
        for s in word:
            if not 0 <= s < self.rank:
                raise ValueError(f"generator index {s} out of range for rank {self.rank}")
            canon = self._right_mul_gen(canon, int(s))
        return GroupElement(self, canon)

    def generator(self, s: int) -> GroupElement:
        return self.element((s,))

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        canon = a.word
        for s in b.word:
            canon = self._right_mul_gen(canon, s)
        return GroupElement(self, canon)

    def right_mul(self, a: GroupElement, s: int) -> GroupElement:
        return GroupElement(self, self._right_mul_gen(a.word, s))

    def left_mul(self, s: int, a: GroupElement) -> GroupElement:
        return self.multiply(self.generator(s), a)

    def reduced_words(self, x: GroupElement) -> frozenset[Word]:
        return self._closures[x.word]

    def right_descents(self, x: GroupElement) -> frozenset[int]:
        return frozenset(w[-1] for w in self._closures[x.word] if w)

    def is_reduced(self, word: Sequence[int]) -> bool:
        return len(self.element(word)) == len(word)

    # Bruhat order

    def bruhat_leq(self, x: GroupElement, y: GroupElement) -> bool:
        """Bruhat comparison via the lifting property.

        For a right descent ``s`` of ``y``: if ``s`` is also a right descent of
        ``x`` then ``x <= y`` iff ``xs <= ys``; otherwise ``x <= y`` iff
        ``x <= ys``.
        """
        if x.system is not y.system:
            raise ValueError("elements of different Coxeter systems")
        return self._bruhat_leq(x.word, y.word)

    def _bruhat_leq(self, x: Word, y: Word) -> bool:
        if len(x) > len(y):
            return False
        if not x:
            return True
        if len(x) == len(y):
            return x == y
        key = (x, y)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        s = y[-1]
        ys = y[:-1]
        if any(w and w[-1] == s for w in self._closures[x]):
            result = self._bruhat_leq(self._right_mul_gen(x, s), ys)
        else:
            result = self._bruhat_leq(x, ys)
        with self._lock:
            self._bruhat[key] = result
        return result

    # enumeration

    def enumerate_elements(self, max_len: int) -> list[GroupElement]:
        if max_len < 0:
            raise ValueError("max_len must be non-negative")
        layer = [()]
        found: list[Word] = [()]
        seen = {()}
        for _ in range(max_len):
            nxt = []
            for w in layer:
                for s in range(self.rank):
                    u = self._right_mul_gen(w, s)
                    if len(u) > len(w) and u not in seen:
                        seen.add(u)
                        nxt.append(u)
            if not nxt:
                break
            nxt.sort()
            found.extend(nxt)
            layer = nxt
        return [GroupElement(self, w) for w in found]

    # subexpressions

    def all_subexpressions(self, word: Sequence[int], max_length: int = 20) -> Iterator[Subexpression]:
        word = tuple(word)
        if len(word) > max_length:
            raise ResourceLimit(f"2^{len(word)} subexpressions exceeds the bound 2^{max_length}")
        for s in word:
            if not 0 <= s < self.rank:
                raise ValueError(f"generator index {s} out of range for rank {self.rank}")
        yield from self._walk(word, 0, (), (), (), 0)

    def _walk(self, word: Word, k: int, current: Word, bits: tuple[int, ...],
              decorations: tuple[str, ...], defect: int) -> Iterator[Subexpression]:
        # depth-first over bit choices; yields in lexicographic order of bits
        if k == len(word):
            yield Subexpression(word, bits, GroupElement(self, current), decorations, defect)
            return
        s = word[k]
        nxt = self._right_mul_gen(current, s)
        up = len(nxt) > len(current)
        yield from self._walk(word, k + 1, current, bits + (0,), decorations + ((U0 if up else D0),),
                              defect + (1 if up else -1))
        yield from self._walk(word, k + 1, nxt, bits + (1,), decorations + ((U1 if up else D1),), defect)

    def subexpressions(self, word: Sequence[int], x: GroupElement, max_length: int = 20) -> list[Subexpression]:
        return [e for e in self.all_subexpressions(word, max_length) if e.terminus == x]

    # cache persistence

    def save_cache(self, path: str | Path) -> None:
        data = {
            "system": self.to_json(),
            "closures": [sorted(list(w) for w in ws) for ws in self._closures.values()],
        }
        Path(path).write_text(json.dumps(data))

    def load_cache(self, path: str | Path) -> bool:
        p = Path(path)
        if not p.exists():
            return False
        data = json.loads(p.read_text())
        if data.get("system") != self.to_json():
            return False
        with self._lock:
            for words in data["closures"]:
                ws = frozenset(tuple(w) for w in words)
                self._closures.setdefault(min(ws), ws)
        return True


@dataclass(frozen=True)
class Subexpression:
    """A 01-sequence ``bits`` inside ``word`` with its decorated path."""

    word: Word
    bits: tuple[int, ...]
    terminus: GroupElement
    decorations: tuple[str, ...]
    defect: int

    def reverse(self) -> tuple[Word, tuple[int, ...]]:
        return tuple(reversed(self.word)), tuple(reversed(self.bits))


# module-level API mirroring the operation names


def canonicalize(system: CoxeterSystem, word: Sequence[int]) -> GroupElement:
    return system.element(word)


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.system is not b.system:
        raise ValueError("elements of different Coxeter systems")
    return a.system.multiply(a, b)


def bruhat_leq(x: GroupElement, y: GroupElement) -> bool:
    return x.system.bruhat_leq(x, y)


def enumerate_elements(system: CoxeterSystem, max_len: int) -> list[GroupElement]:
    return system.enumerate_elements(max_len)


def subexpressions(system: CoxeterSystem, word: Sequence[int], x: GroupElement) -> list[Subexpression]:
    return system.subexpressions(word, x)


def all_subexpressions(system: CoxeterSystem, word: Sequence[int]) -> list[Subexpression]:
    return list(system.all_subexpressions(word))


# built-in Coxeter matrices


def type_A(n: int) -> CoxeterMatrix:
    m = [[1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(n)] for i in range(n)]
    return CoxeterMatrix(tuple(map(tuple, m)))


def type_B(n: int) -> CoxeterMatrix:
    """Type B_n with the order-4 bond between the last two generators."""
    m = [[1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(n)] for i in range(n)]
    if n >= 2:
        m[n - 2][n - 1] = m[n - 1][n - 2] = 4
    return CoxeterMatrix(tuple(map(tuple, m)))


def dihedral(m: int | float) -> CoxeterMatrix:
    return CoxeterMatrix(((1, m), (m, 1)))


def builtin_system(name: str) -> CoxeterMatrix:
    """Parse names such as ``A3``, ``B2``, ``I2(5)``, ``I2(inf)``."""
    name = name.strip()
    if name.upper().startswith("I2(") and name.endswith(")"):
        return dihedral(_parse_order(name[3:-1]))
    kind, rank = name[0].upper(), name[1:]
    if not rank.isdigit() or int(rank) < 1:
        raise ValueError(f"unknown Coxeter type {name!r}")
    if kind == "A":
        return type_A(int(rank))
    if kind == "B":
        return type_B(int(rank))
    raise ValueError(f"unknown Coxeter type {name!r}")
