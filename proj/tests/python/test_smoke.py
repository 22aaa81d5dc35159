import json
import math

import pytest

import hml


def test_version():
    assert hml.__version__ == "0.1.0"


def test_canonical_spec_normalizes_whitespace():
    assert hml.canonical_spec(" powerweight : s = 0.5 ") == "powerweight:s=0.5"


def test_canonical_spec_rejects_unknown_family():
    with pytest.raises(Exception):
        hml.canonical_spec("gaussian")


def test_lebesgue_moments():
    m = hml.moments("lebesgue", 4)
    assert len(m) == 5
    for n, v in enumerate(m):
        assert abs(v - 1.0 / (n + 1)) < 1e-15


def test_counterexample_conjugate_moments_sit_on_lacunary_support():
    m = hml.moments("counterexample:K=3", 8)
    support = {0, 2, 4, 8}
    for n, v in enumerate(m):
        want = 1.0 if n in support else 0.0
        assert abs(v - want) < 1e-8


def test_condition2_sup_for_origin_atom_is_one():
    rep = hml.condition2_sup("atoms:[(0.0,1.0)]", grid_J=10, angles=32)
    assert abs(rep["value"] - 1.0) < 1e-12
    assert abs(rep["argmax"]) < 1e-12
    assert rep["samples"] > 0
    assert len(rep["profile"]) > 0


def test_opnorm_matches_two_by_two_closed_form():
    rep = hml.opnorm("lebesgue", 2)
    assert abs(rep["value"] - (4.0 + math.sqrt(13.0)) / 6.0) < 1e-10
    assert rep["space"] == "h2"
    assert rep["residual"] <= 1e-10


def test_hilbert_norm_smallest_section():
    assert abs(hml.hilbert_norm(1) - 1.0) < 1e-12


def test_run_cli_moments_roundtrip():
    code, out, err = hml.run_cli(["moments", "-m", "lebesgue", "-N", "2"])
    assert code == 0
    assert err == ""
    doc = json.loads(out)
    assert doc["schema"] == "hml-report/1"
    rows = doc["payload"]["table"]["rows"]
    assert abs(rows[2][1] - 1.0 / 3.0) < 1e-15


def test_run_cli_usage_error():
    code, out, err = hml.run_cli(["moments"])
    assert code == 2
    assert err != ""
