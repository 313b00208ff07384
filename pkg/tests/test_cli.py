import json
import subprocess
import sys

import pytest

from soacc import __version__
from soacc.cli import main, parse_bounds, InputError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


@pytest.mark.parametrize("system,bound,count", [("A2", 3, 6), ("A1", 1, 2), ("B2", 4, 8)])
def test_coxeter_enum(capsys, system, bound, count):
    code, doc, _ = run(capsys, "coxeter", "enum", "--system", system, "--bounds", f"max_len={bound}")
    assert code == 0 and doc["result"]["count"] == count
    assert doc["version"] == __version__ and doc["seed"] == 0
    assert doc["config"]["bounds"] == {"max_len": bound}


def test_coxeter_enum_from_file(capsys, tmp_path):
    path = write(tmp_path, "sys.json", {"coxeter_matrix": [[1]], "generators": ["s"]})
    code, doc, _ = run(capsys, "coxeter", "enum", "--input", path, "--bounds", "max_len=1")
    assert code == 0
    assert [e["name"] for e in doc["result"]["elements"]] == ["e", "s"]
    assert doc["result"]["bruhat_less"] == [["e", "s"]]


def test_coxeter_enum_malformed(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(capsys, "coxeter", "enum", "--input", str(path))[0] == 1
    bad = write(tmp_path, "bad2.json", {"coxeter_matrix": [[1, 1], [1, 1]]})
    assert run(capsys, "coxeter", "enum", "--input", bad)[0] == 1
    assert run(capsys, "coxeter", "enum", "--system", "Z9")[0] == 1


def test_hecke_deodhar(capsys):
    code, doc, _ = run(capsys, "hecke", "deodhar", "--system", "A2", "--word", "s,s")
    assert code == 0
    assert doc["result"]["basis"] == "H"
    assert doc["result"]["terms"] == [{"word": [], "coeff": {"0": 1, "2": 1}},
                                      {"word": [0], "coeff": {"-1": 1, "1": 1}}]


def test_hecke_bs_product_empty_and_mult_units(capsys, tmp_path):
    code, doc, _ = run(capsys, "hecke", "bs-product", "--system", "B2", "--word", "")
    assert code == 0 and doc["result"]["terms"] == [{"word": [], "coeff": {"0": 1}}]
    unit = {"basis": "T", "terms": [{"word": [], "coeff": {"0": 1}}]}
    path = write(tmp_path, "m.json", {"system": "A2", "a": unit, "b": unit})
    code, doc, _ = run(capsys, "hecke", "mult", "--input", path)
    assert code == 0 and doc["result"]["terms"] == unit["terms"]


def test_hecke_mult_quadratic(capsys, tmp_path):
    ts = {"basis": "T", "terms": [{"word": ["s"], "coeff": {"0": 1}}]}
    path = write(tmp_path, "m.json", {"system": "A2", "a": ts, "b": ts})
    code, doc, _ = run(capsys, "hecke", "mult", "--input", path)
    assert doc["result"]["terms"] == [{"word": [], "coeff": {"-2": 1}}, {"word": [0], "coeff": {"-2": 1, "0": -1}}]


def test_hecke_errors(capsys):
    assert run(capsys, "hecke", "deodhar", "--system", "A2", "--word", "s,x")[0] == 1
    assert run(capsys, "hecke", "deodhar", "--system", "A2")[0] == 1
    assert run(capsys, "hecke", "nonsense")[0] == 1


def test_trace_commands(capsys, tmp_path):
    e1 = write(tmp_path, "e.json", {"source": 3, "target": 3, "pairs": [[0, 1], [3, 4], [2, 5]]})
    code, doc, _ = run(capsys, "trace", "tl", "--input", e1)
    assert code == 0 and doc["result"]["classes"] == [{"cell": 1, "fibre": {"-1": -1, "1": -1}}]
    code, doc, _ = run(capsys, "trace", "tl", "--input", e1, "--delta-sign", "1")
    assert doc["result"]["classes"] == [{"cell": 1, "fibre": {"-1": 1, "1": 1}}]
    ident = write(tmp_path, "i.json", {"source": 4, "target": 4, "pairs": [[0, 4], [1, 5], [2, 6], [3, 7]]})
    code, doc, _ = run(capsys, "trace", "tl", "--input", ident)
    assert doc["result"]["classes"] == [{"cell": 4, "fibre": {"0": 1}}]
    x0 = write(tmp_path, "x.json", {"index_set": [0, 1], "source": "star", "terms": [{"basis": "x", "index": 0}]})
    code, doc, _ = run(capsys, "trace", "toy", "--input", x0)
    assert code == 0 and doc["result"]["classes"] == []
    mat = write(tmp_path, "mat.json", {"matrix": [[{"0": 1, "2": 3}, {"1": 1}], [{}, {"2": "1/2"}]]})
    code, doc, _ = run(capsys, "trace", "matpoly", "--input", mat)
    assert doc["result"]["classes"][0]["fibre"] == [{"mono": [0], "coeff": "1"}, {"mono": [2], "coeff": "7/2"}]


def test_trace_rejects_crossing(capsys, tmp_path):
    bad = write(tmp_path, "c.json", {"source": 2, "target": 2, "pairs": [[0, 3], [1, 2]]})
    code, _, err = run(capsys, "trace", "tl", "--input", bad)
    assert code == 1 and "planar" in err
    assert run(capsys, "trace", "tl")[0] == 1


def test_verify_cellular_and_corrupted(capsys):
    code, doc, err = run(capsys, "verify", "cellular")
    assert code == 0 and doc["passed"] and "[pass] criterion 9" in err
    code, doc, _ = run(capsys, "verify", "cellular", "--corrupted")
    assert code == 2 and not doc["passed"]
    failed = [r for r in doc["result"] if not r["passed"]]
    assert failed[0]["witness"]["axiom"] == "axiom 3"


def test_verify_is_deterministic(capsys):
    a = run(capsys, "verify", "trace", "--seed", "7", "--bounds", "trace_pairs=50,matrices=20")
    b = run(capsys, "verify", "trace", "--seed", "7", "--bounds", "trace_pairs=50,matrices=20")
    assert a[0] == b[0] == 0 and a[1] == b[1]
    assert a[1]["config"]["bounds"]["trace_pairs"] == 50 and a[1]["seed"] == 7


def test_bounds_parsing():
    assert parse_bounds("a=1, b=2") == {"a": 1, "b": 2}
    for bad in ("a", "a=x", "a=0"):
        with pytest.raises(InputError):
            parse_bounds(bad)


def test_verify_bad_bounds(capsys):
    assert run(capsys, "verify", "all", "--bounds", "nope=3")[0] == 1


def test_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SOACC_CACHE_DIR", str(tmp_path / "cache"))
    run(capsys, "coxeter", "enum", "--system", "A3", "--bounds", "max_len=6")
    files = list((tmp_path / "cache").glob("coxeter-*.json"))
    assert len(files) == 1
    code, doc, _ = run(capsys, "coxeter", "enum", "--system", "A3", "--bounds", "max_len=6")
    assert code == 0 and doc["result"]["count"] == 24


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "soacc.cli", "hecke", "bs-product", "--system", "A1", "--word", "0"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["terms"] == [{"word": [], "coeff": {"1": 1}}, {"word": [0], "coeff": {"1": 1}}]
