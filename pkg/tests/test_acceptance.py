"""The ten acceptance criteria, run exactly at their stated bounds.

Each criterion prints one pass/fail line.
"""

import pytest

from soacc.verify import CHECKS, DEFAULT_BOUNDS, run_check

STATED_BOUNDS = {
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
    "s5_len": 6,
    "validate_tl_n": 6,
}


def test_bounds_are_the_stated_ones():
    for key, value in STATED_BOUNDS.items():
        assert DEFAULT_BOUNDS[key] == value, key


@pytest.mark.parametrize("criterion", sorted(CHECKS))
def test_criterion(criterion, capsys):
    result = run_check(criterion, STATED_BOUNDS, seed=0)
    with capsys.disabled():
        status = "PASS" if result.passed else "FAIL"
        print(f"\n[{status}] criterion {criterion}: {result.name} {result.counts}")
    assert result.passed, result.to_json()["witness"]
    if criterion == 9:
        assert result.witness["corrupted"]["axiom"] == "axiom 3"
