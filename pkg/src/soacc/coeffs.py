"""Exact coefficient arithmetic.

Three coefficient types are used throughout the package:

* ``Fraction`` (from the standard library) for the base field of rationals,
* :class:`LaurentPoly` for integer Laurent polynomials in a single variable
  (``v`` for the Hecke algebra, ``q`` for Temperley-Lieb scalars),
* :class:`MultiPoly` for rational polynomials in the simple roots of a
  realization, graded so that every variable has degree 2.

All three are immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "Scalar", "LaurentPoly", "MultiPoly", "NotDivisible",
    "laurent_mul", "laurent_specialize_q1", "poly_divide_exact",
    "to_fraction", "fraction_to_json",
]

Scalar = Fraction


class NotDivisible(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fraction_to_json(x: Fraction) -> str:
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class LaurentPoly:
    """An integer Laurent polynomial ``sum c_k var^k``.

    ``terms`` maps exponents to nonzero integer coefficients. The variable name
    only matters for printing and for refusing to mix, say, ``v`` with ``q``.

    >>> v = LaurentPoly.gen()
    >>> (v + v**-1) * (v + v**-1)
    v^2 + 2 + v^-2
    """

    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "v"):
        clean = {}
        for k, c in (terms or {}).items():
            if not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                else:
                    raise TypeError(f"LaurentPoly coefficients must be integers, got {c!r}")
            if c:
                clean[int(k)] = clean.get(int(k), 0) + c
        self._terms = {k: c for k, c in sorted(clean.items()) if c}
        self.var = var
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int], var: str) -> LaurentPoly:
        out = cls.__new__(cls)
        out._terms = {k: terms[k] for k in sorted(terms) if terms[k]}
        out.var = var
        out._hash = None
        return out

    @classmethod
    def gen(cls, var: str = "v") -> LaurentPoly:
        return cls({1: 1}, var)

    @classmethod
    def const(cls, c: int, var: str = "v") -> LaurentPoly:
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = "v") -> LaurentPoly:
        return cls({exp: coeff}, var)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def _coerce(self, other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            if other.var == self.var:
                return other
            if other.var != self.var and other._terms and self._terms:
                # constants are variable-free
                if not (other.is_constant() or self.is_constant()):
                    raise ValueError(f"cannot mix Laurent variables {self.var!r} and {other.var!r}")
            return other
        if isinstance(other, int) or (isinstance(other, Fraction) and other.denominator == 1):
            return LaurentPoly({0: int(other)}, self.var)
        return None

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly._raw(out, self._pick_var(o))

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in o._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly._raw(out, self._pick_var(o))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted in a Laurent ring")
            (k, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials can be inverted over the integers")
            return LaurentPoly({k * n: c ** (-n)}, self.var)
        out = LaurentPoly({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _pick_var(self, other: LaurentPoly) -> str:
        if other.var == self.var:
            return self.var
        if self.is_constant() and not other.is_constant():
            return other.var
        return self.var

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except ValueError:
            return False
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self._terms.get(0, 0))
            else:
                self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def evaluate(self, value):
        """Evaluate at a nonzero number (int or Fraction)."""
        total = Fraction(0)
        value = Fraction(value)
        for k, c in self._terms.items():
            total += c * value ** k
        return total

    def bar(self) -> LaurentPoly:
        """The involution ``var -> var^-1``."""
        return LaurentPoly({-k: c for k, c in self._terms.items()}, self.var)

    def substitute_power(self, power: int, var: str) -> LaurentPoly:
        """Rewrite in a new variable ``w`` with ``var = w^power``."""
        return LaurentPoly({k * power: c for k, c in self._terms.items()}, var)

    def min_degree(self) -> int | None:
        return min(self._terms) if self._terms else None

    def max_degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    def to_json(self) -> dict[str, int]:
        return {str(k): c for k, c in self._terms.items()}

    @classmethod
    def from_json(cls, data, var: str = "v") -> LaurentPoly:
        if isinstance(data, int):
            return cls({0: data}, var)
        return cls({int(k): int(c) for k, c in data.items()}, var)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items(), reverse=True):
            if k == 0:
                mono = ""
            elif k == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{k}"
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def laurent_specialize_q1(a: LaurentPoly) -> int:
    """Evaluate at ``v = 1`` (hence ``q = v^-2 = 1``): the sum of coefficients."""
    return sum(a.terms.values())


Monomial = tuple[int, ...]
_Coeff = Union[int, Fraction]


class MultiPoly:
    """A polynomial with rational coefficients in ``nvars`` variables.

    Terms are keyed by exponent vectors. Every variable has degree 2, so the
    graded degree of a monomial is twice its total exponent.
    """

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, _Coeff] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for {nvars} variables")
            c = to_fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
        self._terms = {m: c for m, c in sorted(clean.items()) if c}
        self._hash = None

    # construction

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def const(cls, nvars: int, c: _Coeff) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> MultiPoly:
        mono = [0] * nvars
        mono[i] = 1
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> MultiPoly:
        out = cls.__new__(cls)
        out.nvars = nvars
        out._terms = {m: c for m, c in sorted(terms.items()) if c}
        out._hash = None
        return out

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.nvars, other)
        return None

    # arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = MultiPoly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if isinstance(other, (MultiPoly, int, Fraction)) else None
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self._terms.items())))
        return self._hash

    # structure

    def total_degree(self) -> int:
        """Largest exponent sum over all terms; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree(self) -> int:
        """Graded degree (each variable has degree 2); -1 for zero."""
        d = self.total_degree()
        return -1 if d < 0 else 2 * d

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def leading(self) -> tuple[Monomial, Fraction]:
        # lex order on exponent vectors
        mono = max(self._terms)
        return mono, self._terms[mono]

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def substitute(self, images: list[MultiPoly]) -> MultiPoly:
        """Algebra map sending variable ``i`` to ``images[i]``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target_n = images[0].nvars if images else self.nvars
        powers: list[list[MultiPoly]] = [[MultiPoly.one(target_n)] for _ in images]
        result = MultiPoly.zero(target_n)
        for mono, c in self._terms.items():
            term = MultiPoly.const(target_n, c)
            for i, e in enumerate(mono):
                while len(powers[i]) <= e:
                    powers[i].append(powers[i][-1] * images[i])
                if e:
                    term = term * powers[i][e]
            result = result + term
        return result

    def divide_exact(self, g: MultiPoly) -> MultiPoly:
        """Return ``h`` with ``h * g == self`` or raise :class:`NotDivisible`."""
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        g_mono, g_coeff = g.leading()
        rem = self
        quotient: dict[Monomial, Fraction] = {}
        while rem:
            r_mono, r_coeff = rem.leading()
            diff = tuple(a - b for a, b in zip(r_mono, g_mono))
            if any(e < 0 for e in diff):
                raise NotDivisible(f"{self} is not divisible by {g}")
            c = r_coeff / g_coeff
            quotient[diff] = quotient.get(diff, Fraction(0)) + c
            rem = rem - MultiPoly._raw(self.nvars, {diff: c}) * g
        return MultiPoly._raw(self.nvars, quotient)

    # serialization

    def to_json(self) -> list[dict]:
        return [{"mono": list(m), "coeff": fraction_to_json(c)} for m, c in self._terms.items()]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable[Mapping]) -> MultiPoly:
        terms: dict[Monomial, Fraction] = {}
        for item in data:
            mono = tuple(item["mono"])
            terms[mono] = terms.get(mono, Fraction(0)) + to_fraction(item["coeff"])
        return cls(nvars, terms)

    def format(self, names: list[str] | None = None) -> str:
        names = names or [f"a{i}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        out = []
        for mono, c in sorted(self._terms.items(), key=lambda t: (-sum(t[0]), t[0]), reverse=False):
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono_s = "*".join(factors)
            if not mono_s:
                out.append(str(c))
            elif c == 1:
                out.append(mono_s)
            elif c == -1:
                out.append("-" + mono_s)
            else:
                out.append(f"{c}*{mono_s}")
        return " + ".join(out).replace("+ -", "- ")

    def __repr__(self) -> str:
        return self.format()


def poly_divide_exact(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    return f.divide_exact(g)
