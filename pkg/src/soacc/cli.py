"""Command-line driver.

Every command prints one JSON document on stdout embedding the run
configuration, seed and version. Exit codes: 0 success, 1 input or usage
error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .cellular import ObjectMismatch, ValidationFailure
from .coxeter import CoxeterMatrix, CoxeterSystem, ResourceLimit, builtin_system
from .hecke import HeckeElement, bott_samelson_product, deodhar_expansion, hecke_mul
from .instances import TemperleyLieb, matpoly_instance, toy_instance
from .trace import BrokenInvariant, pi
from .verify import DEFAULT_BOUNDS, SUITES, run_suite

log = logging.getLogger("soacc")

CACHE_ENV = "SOACC_CACHE_DIR"
EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class InputError(ValueError):
    """Malformed command-line input."""


# input helpers


def _read_input(path: str | None) -> Any:
    if path is None:
        return None
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def parse_bounds(text: str | None) -> dict[str, int]:
    """``"k=v,k=v"`` into a dict of positive integers."""
    out: dict[str, int] = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise InputError(f"bound {item!r} is not of the form key=value")
        k, v = (x.strip() for x in item.split("=", 1))
        try:
            n = int(v)
        except ValueError as exc:
            raise InputError(f"bound {k} must be an integer, got {v!r}") from exc
        if n <= 0:
            raise InputError(f"bound {k} must be positive, got {n}")
        out[k] = n
    return out


def _coxeter_matrix(source: Any) -> CoxeterMatrix:
    if isinstance(source, str):
        return builtin_system(source)
    if isinstance(source, dict):
        return CoxeterMatrix.from_json(source)
    raise InputError("system must be a type name such as 'A2' or a Coxeter-matrix JSON object")


def _cache_dir(args) -> Path | None:
    d = args.cache_dir or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def _cache_file(system: CoxeterSystem, cache_dir: Path) -> Path:
    digest = hashlib.sha256(json.dumps(system.to_json(), sort_keys=True).encode()).hexdigest()[:16]
    return cache_dir / f"coxeter-{digest}.json"


def _open_system(source: Any, args) -> CoxeterSystem:
    system = CoxeterSystem(_coxeter_matrix(source))
    cache_dir = _cache_dir(args)
    if cache_dir is not None:
        path = _cache_file(system, cache_dir)
        try:
            if system.load_cache(path):
                log.info("loaded word-problem cache %s", path)
        except (OSError, ValueError, KeyError) as exc:
            log.warning("ignoring unreadable cache %s: %s", path, exc)
    return system


def _close_system(system: CoxeterSystem, args) -> None:
    cache_dir = _cache_dir(args)
    if cache_dir is None:
        return
    try:
        cache_dir.mkdir(parents=True, exist_ok=True)
        system.save_cache(_cache_file(system, cache_dir))
    except OSError as exc:
        log.warning("could not write cache: %s", exc)


def _parse_word(system: CoxeterSystem, word: Any) -> list[int]:
    if isinstance(word, str):
        word = [w for w in word.replace(",", " ").split() if w]
    if not isinstance(word, list):
        raise InputError("a word is a list of generator indices or names")
    out = []
    names = list(system.generators)
    for x in word:
        if isinstance(x, int) and 0 <= x < system.rank:
            out.append(x)
        elif isinstance(x, str) and x in names:
            out.append(names.index(x))
        elif isinstance(x, str) and x.isdigit() and int(x) < system.rank:
            out.append(int(x))
        else:
            raise InputError(f"unknown generator {x!r}; generators are {names}")
    return out


def _system_source(args, data: Any) -> Any:
    if args.system:
        return args.system
    if isinstance(data, dict) and "system" in data:
        return data["system"]
    if isinstance(data, dict) and "coxeter_matrix" in data:
        return data
    raise InputError("give --system or an --input file with a 'system' field")


def _config(args, bounds: dict | None = None) -> dict:
    cfg = {"command": args.command, "seed": args.seed, "delta_sign": args.delta_sign}
    for key in ("op", "instance", "suite", "system", "basis", "input"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if bounds is not None:
        cfg["bounds"] = dict(sorted(bounds.items()))
    return cfg


def _emit(args, result: Any, bounds: dict | None = None, passed: bool | None = None) -> None:
    doc = {"version": __version__, "config": _config(args, bounds), "seed": args.seed}
    if passed is not None:
        doc["passed"] = passed
    doc["result"] = result
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


# commands


def cmd_coxeter_enum(args) -> int:
    data = _read_input(args.input)
    bounds = {"max_len": 4, **parse_bounds(args.bounds)}
    system = _open_system(_system_source(args, data), args)
    elements = system.enumerate_elements(bounds["max_len"])
    rows = [{"word": list(w.word), "name": w.name(), "length": w.length} for w in elements]
    bruhat = [[x.name(), y.name()] for x in elements for y in elements
              if x != y and x.length < y.length and system.bruhat_leq(x, y)]
    _close_system(system, args)
    _emit(args, {"system": system.to_json(), "count": len(rows), "elements": rows, "bruhat_less": bruhat}, bounds)
    return EXIT_OK


def _hecke_operand(system: CoxeterSystem, data: Any, name: str) -> HeckeElement:
    if not isinstance(data, dict) or name not in data:
        raise InputError(f"mult needs operands '{name}' in the input")
    item = data[name]
    if not isinstance(item, dict):
        raise InputError(f"operand {name} must be a Hecke element object")
    basis = item.get("basis", "T")
    if basis not in ("T", "H"):
        raise InputError(f"basis must be 'T' or 'H', got {basis!r}")
    terms = []
    for t in item.get("terms", []):
        coeff = t.get("coeff", {"0": 1})
        terms.append({"word": _parse_word(system, t["word"]), "coeff": coeff})
    return HeckeElement.from_json({"basis": basis, "terms": terms}, system)


def cmd_hecke(args) -> int:
    data = _read_input(args.input)
    system = _open_system(_system_source(args, data), args)
    if args.op == "mult":
        a, b = _hecke_operand(system, data, "a"), _hecke_operand(system, data, "b")
        if b.basis != a.basis:
            b = b.to_basis(a.basis)
        result = hecke_mul(a, b)
        basis = args.basis or a.basis
    else:
        if args.word is not None:
            word = _parse_word(system, args.word)
        elif isinstance(data, dict) and "word" in data:
            word = _parse_word(system, data["word"])
        else:
            raise InputError(f"{args.op} needs --word or an input with a 'word' field")
        if args.op == "deodhar":
            basis = args.basis or "H"
            result = deodhar_expansion(system, word, basis="H")
        else:
            basis = args.basis or "T"
            result = bott_samelson_product(system, word, basis="T")
    result = result.to_basis(basis)
    _close_system(system, args)
    _emit(args, result.to_json())
    return EXIT_OK


def _trace_instance(args, data: Any):
    if args.instance == "tl":
        return TemperleyLieb(args.delta_sign), data
    if args.instance == "toy":
        if not isinstance(data, dict) or "index_set" not in data:
            raise InputError("toy input needs an 'index_set' list")
        return toy_instance(data["index_set"]), data.get("morphism", data)
    return matpoly_instance(), data.get("morphism", data) if isinstance(data, dict) else data


def cmd_trace(args) -> int:
    data = _read_input(args.input)
    if data is None:
        raise InputError("trace needs --input with an endomorphism")
    inst, payload = _trace_instance(args, data)
    try:
        f = inst.morphism_from_json(payload)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed {args.instance} morphism: {exc}") from exc
    cls = pi(f)
    _emit(args, {"instance": args.instance, "endomorphism": inst.morphism_to_json(f), **cls.to_json()})
    return EXIT_OK


def cmd_verify(args) -> int:
    bounds = parse_bounds(args.bounds)
    unknown = sorted(set(bounds) - set(DEFAULT_BOUNDS))
    if unknown:
        raise InputError(f"unknown bounds {unknown}; known: {sorted(DEFAULT_BOUNDS)}")
    results = run_suite(args.suite, bounds, args.seed, args.delta_sign, corrupted=args.corrupted)
    passed = all(r.passed for r in results)
    for r in results:
        print(f"[{'pass' if r.passed else 'FAIL'}] criterion {r.criterion}: {r.name}", file=sys.stderr)
    report = [r.to_json() for r in sorted(results, key=lambda r: (r.criterion, r.name))]
    _emit(args, report, {**DEFAULT_BOUNDS, **bounds}, passed=passed)
    return EXIT_OK if passed else EXIT_VERIFY


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON input file ('-' for stdin)")
    common.add_argument("--bounds", help="comma-separated key=value bounds")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--delta-sign", type=int, choices=(-1, 1), default=-1,
                        help="TL loop value is delta_sign * (q + q^-1)")
    common.add_argument("--cache-dir", help=f"word-problem cache directory (overrides ${CACHE_ENV})")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="soacc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"soacc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    cox = sub.add_parser("coxeter", help="Coxeter group utilities")
    cox_sub = cox.add_subparsers(dest="op", required=True)
    enum = cox_sub.add_parser("enum", parents=[common], help="list elements and Bruhat relations")
    enum.add_argument("--system", help="built-in type such as A2, B2, I2(5)")
    enum.set_defaults(func=cmd_coxeter_enum)

    hk = sub.add_parser("hecke", parents=[common], help="Hecke algebra computations")
    hk.add_argument("op", choices=("mult", "deodhar", "bs-product"))
    hk.add_argument("--system")
    hk.add_argument("--word", help="generator indices or names, comma separated")
    hk.add_argument("--basis", choices=("T", "H"))
    hk.set_defaults(func=cmd_hecke)

    tr = sub.add_parser("trace", parents=[common], help="trace class of an endomorphism")
    tr.add_argument("instance", choices=("tl", "toy", "matpoly"))
    tr.set_defaults(func=cmd_trace)

    vf = sub.add_parser("verify", parents=[common], help="run the verification suite")
    vf.add_argument("suite", choices=sorted(SUITES))
    vf.add_argument("--corrupted", action="store_true", help="also validate the corrupted-oracle fixture")
    vf.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, ObjectMismatch, ResourceLimit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BrokenInvariant, ValidationFailure) as exc:
        print(f"error: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
