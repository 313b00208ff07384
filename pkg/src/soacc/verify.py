"""The reproducible verification suite.

Each check returns a :class:`CheckResult`; suites group checks by the module
whose claims they exercise. All comparisons are exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .cellular import ValidationFailure, compose, random_morphism, validate_instance
from .coeffs import MultiPoly
from .coxeter import CoxeterSystem, builtin_system
from .hecke import bott_samelson_product, deodhar_expansion
from .instances import (
    CorruptedTL, MatPolyMorphism, TemperleyLieb, ToyCellularAlgebra, all_diagrams, catalan, e_generator,
    matpoly_instance, toy_instance,
)
from .instances.matpoly import CELL as MAT_CELL, OBJECT as MAT_X, x_poly
from .instances.tl import Q
from .polyact import (
    Realization, SemidirectElement, cartan_A, cartan_B, check_annulus_relation, semidirect_mul, sign_module_act,
)
from .trace import pi

__all__ = ["DEFAULT_BOUNDS", "CheckResult", "SUITES", "CHECKS", "run_suite", "run_check"]

DEFAULT_BOUNDS: dict[str, int] = {
    "deodhar_max_len": 8,
    "trace_pairs": 500,
    "tl_max_n": 8,
    "toy_max_i": 4,
    "matpoly_degree": 6,
    "tl_span_n": 6,
    "matrices": 200,
    "semidirect_triples": 500,
    "monomial_degree": 8,
    "dd_pairs": 500,
    "sign_triples": 300,
    "braid_len": 6,
    "catalan_n": 8,
    "subexpr_len": 8,
    "s5_len": 6,
    "validate_tl_n": 6,
}


@dataclass
class CheckResult:
    criterion: int
    name: str
    passed: bool = True
    counts: dict[str, int] = field(default_factory=dict)
    witness: Any = None

    def fail(self, witness: Any) -> CheckResult:
        if self.passed:
            self.passed = False
            self.witness = witness
        return self

    def count(self, key: str, n: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + n

    def to_json(self) -> dict:
        return {"criterion": self.criterion, "name": self.name, "passed": self.passed,
                "counts": dict(sorted(self.counts.items())), "witness": _jsonable(self.witness)}


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    to_json = getattr(x, "to_json", None)
    if callable(to_json):
        return _jsonable(to_json())
    return repr(x)


def _system(name: str) -> CoxeterSystem:
    return CoxeterSystem(builtin_system(name))


# 1: Deodhar identity


def check_deodhar(bounds: dict, seed: int) -> CheckResult:
    res = CheckResult(1, "Deodhar expansion equals the Bott-Samelson product")
    for name in ("A2", "A3", "B2", "I2(5)"):
        W = _system(name)
        for n in range(bounds["deodhar_max_len"] + 1):
            for word in itertools.product(range(W.rank), repeat=n):
                lhs = deodhar_expansion(W, word, basis="H")
                rhs = bott_samelson_product(W, word, basis="H")
                res.count(name)
                if lhs != rhs:
                    return res.fail({"system": name, "word": list(word), "deodhar": lhs, "product": rhs})
    return res


# 2: trace relation


def _rand_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5) or 1, rng.choice([1, 1, 2, 3]))


def _tl_pair(tl: TemperleyLieb, rng: random.Random, max_n: int):
    X = rng.randint(0, max_n)
    Y = rng.choice([n for n in range(X % 2, max_n + 1, 2)])

    def coeff(r):
        return tl.one * r.choice([-2, -1, 1, 2]) * Q ** r.randint(-2, 2)

    return (random_morphism(tl, X, Y, rng, 3, coeff=coeff), random_morphism(tl, Y, X, rng, 3, coeff=coeff))


def _toy_pair(rng: random.Random, max_i: int):
    inst = toy_instance(range(rng.randint(1, max_i)))
    objs = inst.objects()
    X, Y = rng.choice(objs), rng.choice(objs)
    return (random_morphism(inst, X, Y, rng, 4, coeff=_rand_fraction),
            random_morphism(inst, Y, X, rng, 4, coeff=_rand_fraction))


def _random_matrix(rng: random.Random, degree: int) -> MatPolyMorphism:
    def entry():
        return x_poly({a: _rand_fraction(rng) for a in range(degree + 1) if rng.random() < 0.5})
    return MatPolyMorphism([[entry(), entry()], [entry(), entry()]])


def _matpoly_pair(inst, rng: random.Random, degree: int):
    X, Y = rng.choice([(MAT_X, MAT_X), (MAT_X, MAT_CELL), (MAT_CELL, MAT_X), (MAT_CELL, MAT_CELL)])

    def rand(A, B):
        if A == B == MAT_X:
            return inst.from_matrix(_random_matrix(rng, degree))
        return random_morphism(inst, A, B, rng, 2 * (degree + 1), fibre_degree=2 * degree, coeff=_rand_fraction)

    return rand(X, Y), rand(Y, X)


def check_trace_relation_suite(bounds: dict, seed: int, delta_sign: int = -1) -> CheckResult:
    res = CheckResult(2, "pi(g o h) = pi(h o g) on random composable pairs")
    rng = random.Random(seed)
    tl = TemperleyLieb(delta_sign)
    mat = matpoly_instance()
    makers: dict[str, Callable] = {
        "tl": lambda: _tl_pair(tl, rng, bounds["tl_max_n"]),
        "toy": lambda: _toy_pair(rng, bounds["toy_max_i"]),
        "matpoly": lambda: _matpoly_pair(mat, rng, bounds["matpoly_degree"]),
    }
    for name, make in makers.items():
        for _ in range(bounds["trace_pairs"]):
            g, h = make()
            a, b = pi(compose(g, h)), pi(compose(h, g))
            res.count(name)
            if a != b:
                return res.fail({"instance": name, "g": repr(g), "h": repr(h), "pi_gh": a, "pi_hg": b})
    return res


# 3: identity span for TL


def check_identity_span(bounds: dict, seed: int, delta_sign: int = -1) -> CheckResult:
    res = CheckResult(3, "TL trace classes are multiples of cell identities; pi(e_i) = delta 1_{n-2}")
    tl = TemperleyLieb(delta_sign)
    for n in range(bounds["tl_span_n"] + 1):
        for d in all_diagrams(n, n):
            t = pi(tl.diagram(d))
            res.count("basis_endomorphisms")
            cells = t.cells()
            if len(cells) > 1 or any(set(t.at(c).terms) != {1} for c in cells):
                return res.fail({"diagram": d, "class": t})
        for i in range(n - 1):
            t = pi(tl.diagram(e_generator(n, i)))
            res.count("e_i")
            if t.terms != {(n - 2, 1): tl.delta}:
                return res.fail({"n": n, "i": i, "class": t})
    return res


# 4: toy contrast


def check_toy_contrast(bounds: dict, seed: int) -> CheckResult:
    res = CheckResult(4, "x_i vanishes in the enlarged trace but not in the control")
    for size in range(1, bounds["toy_max_i"] + 1):
        inst = toy_instance(range(size))
        control = ToyCellularAlgebra(range(size))
        for i in range(size):
            t = pi(inst.x(i))
            c = control.trace_class({("x", i): 1})
            res.count("indices")
            if not t.is_zero():
                return res.fail({"I": size, "i": i, "enlarged": t})
            if c != {("x", i): 1}:
                return res.fail({"I": size, "i": i, "control": repr(c)})
    return res


# 5: MatPoly


def check_matpoly(bounds: dict, seed: int) -> CheckResult:
    res = CheckResult(5, "pi equals the matrix trace on MatPoly")
    rng = random.Random(seed)
    inst = matpoly_instance()
    for _ in range(bounds["matrices"]):
        m = _random_matrix(rng, bounds["matpoly_degree"])
        t = pi(inst.from_matrix(m))
        expected = {(MAT_CELL, mono[0]): c for mono, c in m.trace().terms.items()}
        res.count("matrices")
        if t.terms != expected:
            return res.fail({"matrix": m, "pi": t})
    return res


# 6-8: polynomial realizations


def _realizations() -> dict[str, Realization]:
    return {
        "A2": Realization(_system("A2"), cartan_A(2)),
        "A3": Realization(_system("A3"), cartan_A(3)),
        "B2": Realization(_system("B2"), cartan_B(2)),
    }


def _random_poly(rng: random.Random, nvars: int, max_deg: int = 3, terms: int = 3) -> MultiPoly:
    out = {}
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(0, max_deg)
        mono = [0] * nvars
        for _ in range(d):
            mono[rng.randrange(nvars)] += 1
        out[tuple(mono)] = _rand_fraction(rng)
    return MultiPoly(nvars, out)


def _random_semidirect(rng: random.Random, real: Realization, max_len: int = 3) -> SemidirectElement:
    W = real.system
    terms = {}
    for _ in range(rng.randint(1, 3)):
        w = W.element([rng.randrange(W.rank) for _ in range(rng.randint(0, max_len))])
        terms[w] = _random_poly(rng, real.nvars, 2, 2)
    return SemidirectElement(real, terms)


def _monomials(nvars: int, max_deg: int):
    for d in range(max_deg + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            mono = [0] * nvars
            for v in combo:
                mono[v] += 1
            yield MultiPoly(nvars, {tuple(mono): 1})


def check_semidirect(bounds: dict, seed: int) -> CheckResult:
    res = CheckResult(6, "Z[W] x R is associative and satisfies the annulus relation")
    rng = random.Random(seed)
    reals = _realizations()
    for k in range(bounds["semidirect_triples"]):
        name = ("A2", "A3", "B2")[k % 3]
        real = reals[name]
        a, b, c = (_random_semidirect(rng, real) for _ in range(3))
        res.count("triples")
        if semidirect_mul(semidirect_mul(a, b), c) != semidirect_mul(a, semidirect_mul(b, c)):
            return res.fail({"realization": name, "a": a, "b": b, "c": c})
    for name in ("A2", "B2"):
        real = reals[name]
        for f in _monomials(real.nvars, bounds["monomial_degree"]):
            for s in range(real.system.rank):
                res.count(f"annulus_{name}")
                if not check_annulus_relation(real, f, s):
                    return res.fail({"realization": name, "f": f, "s": s})
    return res


def check_divided_differences(bounds: dict, seed: int) -> CheckResult:
    res = CheckResult(7, "divided differences: square zero, twisted Leibniz, and the defining identity")
    rng = random.Random(seed)
    reals = _realizations()
    for k in range(bounds["dd_pairs"]):
        name = ("A2", "A3", "B2")[k % 3]
        real = reals[name]
        f, g = _random_poly(rng, real.nvars, 4, 4), _random_poly(rng, real.nvars, 4, 4)
        res.count("pairs")
        for s in range(real.system.rank):
            d = real.divided_difference
            sf = real.act_generator(s, f)
            res.count("pairs_by_generator")
            if d(s, d(s, f)) != real.zero():
                return res.fail({"realization": name, "f": f, "s": s, "law": "square zero"})
            if d(s, f * g) != d(s, f) * g + sf * d(s, g):
                return res.fail({"realization": name, "f": f, "g": g, "s": s, "law": "twisted Leibniz"})
            if d(s, f) * real.root(s) != f - sf:
                return res.fail({"realization": name, "f": f, "s": s, "law": "defining identity"})
    return res


def check_sign_module(bounds: dict, seed: int) -> CheckResult:
    res = CheckResult(8, "induced sign module: b_s kills 1, module associativity, braid independence")
    rng = random.Random(seed)
    reals = _realizations()
    for name, real in reals.items():
        W = real.system
        one = real.one()
        for s in range(W.rank):
            bs = SemidirectElement(real, {W.identity: one, W.generator(s): one})
            res.count("b_s")
            if sign_module_act(bs, one) != real.zero():
                return res.fail({"realization": name, "s": s, "law": "b_s . 1 = 0"})
    for k in range(bounds["sign_triples"]):
        name = ("A2", "A3", "B2")[k % 3]
        real = reals[name]
        h, h2 = _random_semidirect(rng, real), _random_semidirect(rng, real)
        m = _random_poly(rng, real.nvars, 3, 3)
        res.count("triples")
        if sign_module_act(semidirect_mul(h, h2), m) != sign_module_act(h, sign_module_act(h2, m)):
            return res.fail({"realization": name, "h": h, "h2": h2, "m": m, "law": "associativity"})
    for name, real in reals.items():
        W = real.system
        m = _random_poly(rng, real.nvars, 3, 4)
        for w in W.enumerate_elements(bounds["braid_len"]):
            t = SemidirectElement.group(real, w)
            values = {sign_module_act(t, m, {w: word}) for word in W.reduced_words(w)}
            res.count("elements")
            if len(values) != 1:
                return res.fail({"realization": name, "w": list(w.word), "law": "braid independence"})
    return res


# 9: validators


def check_validators(bounds: dict, seed: int, delta_sign: int = -1) -> CheckResult:
    res = CheckResult(9, "validators pass on all instances and reject the corrupted oracle at axiom 3")
    cases = [
        ("tl", TemperleyLieb(delta_sign), bounds["validate_tl_n"], 2),
        ("toy", toy_instance(range(bounds["toy_max_i"])), 0, 2),
        ("matpoly", matpoly_instance(), 0, 2 * bounds["matpoly_degree"]),
    ]
    for name, inst, bound, fdeg in cases:
        try:
            report = validate_instance(inst, bound, fibre_degree=fdeg, seed=seed)
        except ValidationFailure as exc:
            return res.fail({"instance": name, "failure": exc.to_json()})
        res.count(name, sum(report.checks.values()))
    try:
        validate_instance(CorruptedTL(delta_sign), 4, seed=seed)
    except ValidationFailure as exc:
        res.count("corrupted_rejected")
        if exc.axiom != "axiom 3":
            return res.fail({"corrupted": exc.to_json(), "expected": "axiom 3"})
        res.witness = {"corrupted": exc.to_json()}
        return res
    return res.fail({"corrupted": "validation unexpectedly passed"})


# 10: combinatorics


def _perm_of_word(word, n: int) -> tuple[int, ...]:
    p = list(range(n))
    for s in word:
        p[s], p[s + 1] = p[s + 1], p[s]
    return tuple(p)


def _inversions(p) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def check_combinatorics(bounds: dict, seed: int) -> CheckResult:
    res = CheckResult(10, "Catalan counts, subexpression counts, and the S_5 permutation oracle")
    for n in range(bounds["catalan_n"] + 1):
        res.count("catalan")
        if len(all_diagrams(n, n)) != catalan(n):
            return res.fail({"n": n, "diagrams": len(all_diagrams(n, n)), "catalan": catalan(n)})
    rng = random.Random(seed)
    for name in ("A2", "A3", "B2", "I2(5)"):
        W = _system(name)
        for n in range(bounds["subexpr_len"] + 1):
            word = [rng.randrange(W.rank) for _ in range(n)]
            total = sum(len(W.subexpressions(word, x)) for x in W.enumerate_elements(n))
            res.count("subexpression_words")
            if total != 2 ** n:
                return res.fail({"system": name, "word": word, "total": total})
    W = _system("A4")
    elements = W.enumerate_elements(bounds["s5_len"])
    perms: dict[tuple, tuple] = {}
    for w in elements:
        p = _perm_of_word(w.word, 5)
        res.count("s5_elements")
        if p in perms or _inversions(p) != w.length:
            return res.fail({"word": list(w.word), "perm": p})
        perms[p] = w.word
        for word in W.reduced_words(w):
            if _perm_of_word(word, 5) != p:
                return res.fail({"word": list(w.word), "reduced_word": list(word)})
        for s in range(4):
            if _perm_of_word(W.right_mul(w, s).word, 5) != _perm_of_word(w.word + (s,), 5):
                return res.fail({"word": list(w.word), "s": s})
    expected = sum(1 for p in itertools.permutations(range(5)) if _inversions(p) <= bounds["s5_len"])
    if len(perms) != expected:
        return res.fail({"s5_elements": len(perms), "expected": expected})
    return res


CHECKS: dict[int, Callable[..., CheckResult]] = {
    1: check_deodhar,
    2: check_trace_relation_suite,
    3: check_identity_span,
    4: check_toy_contrast,
    5: check_matpoly,
    6: check_semidirect,
    7: check_divided_differences,
    8: check_sign_module,
    9: check_validators,
    10: check_combinatorics,
}

SUITES: dict[str, tuple[int, ...]] = {
    "coxeter": (10,),
    "hecke": (1,),
    "cellular": (9,),
    "trace": (2, 3, 4, 5),
    "polyact": (6, 7, 8),
}
SUITES["all"] = tuple(sorted(c for v in SUITES.values() for c in v))

_TAKES_DELTA = {2, 3, 9}


def run_check(criterion: int, bounds: dict | None = None, seed: int = 0, delta_sign: int = -1) -> CheckResult:
    b = {**DEFAULT_BOUNDS, **(bounds or {})}
    fn = CHECKS[criterion]
    if criterion in _TAKES_DELTA:
        return fn(b, seed, delta_sign)
    return fn(b, seed)


def run_suite(suite: str, bounds: dict | None = None, seed: int = 0, delta_sign: int = -1,
              corrupted: bool = False) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    results = [run_check(c, bounds, seed, delta_sign) for c in SUITES[suite]]
    if corrupted:
        results.append(check_corrupted_only(seed, delta_sign))
    return results


def check_corrupted_only(seed: int = 0, delta_sign: int = -1) -> CheckResult:
    """Validate the corrupted oracle as if it were a real instance (expected to fail)."""
    res = CheckResult(9, "validate the corrupted-oracle fixture")
    try:
        validate_instance(CorruptedTL(delta_sign), 4, seed=seed)
    except ValidationFailure as exc:
        return res.fail(exc.to_json())
    return res
