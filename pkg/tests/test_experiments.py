"""Experiment runners: determinism, verdicts, and report round-trips."""

import json
import os

import numpy as np
import pytest

from orlicz_lab import (
    Grid,
    YoungFunction,
    run_bound_suite,
    run_experiment,
    run_gaussian_limits,
    run_homogeneous_constraint,
    run_indicator_norm,
    run_rademacher_divergence,
)
from orlicz_lab.experiments import EXPERIMENTS


def test_indicator_norm_passes():
    rep = run_indicator_norm()
    assert rep.passed
    assert rep.summary["max_rel_err"] < 1e-7


def test_indicator_norm_custom_pair():
    rep = run_indicator_norm(pairs=[("power:p=2", 4.0)])
    assert rep.passed
    assert rep.trials[0]["formula"] == pytest.approx(2.0)


def test_rademacher_divergent_triple():
    rep = run_rademacher_divergence(
        YoungFunction.power(4.0), YoungFunction.power(4.0),
        YoungFunction.power(1.0), a=1.0, n_max=64, seed=0)
    assert rep.passed
    assert rep.summary["verdict_boundedness"] == "divergent"
    assert rep.summary["slope"] == pytest.approx(0.5, abs=1e-6)


def test_rademacher_bounded_triple():
    rep = run_rademacher_divergence(
        YoungFunction.power(2.0), YoungFunction.power(2.0),
        YoungFunction.power(1.0), a=1.0, n_max=64, seed=0)
    assert rep.passed
    assert rep.summary["verdict_boundedness"] == "bounded"


def test_gaussian_limits_pass():
    rep = run_gaussian_limits()
    assert rep.passed
    names = {c.name for c in rep.claims}
    assert "large_lambda_limit" in names
    assert "small_lambda_mass" in names


def test_homogeneous_compatible_and_incompatible():
    ok = run_homogeneous_constraint(
        YoungFunction.power(2.0), YoungFunction.power(2.0),
        YoungFunction.power(1.0))
    assert ok.summary["verdict_compatibility"] == "compatible-on-grid"
    bad = run_homogeneous_constraint(
        YoungFunction.power(2.0), YoungFunction.power(2.0),
        YoungFunction.power(4.0))
    assert bad.summary["verdict_compatibility"] == "index-incompatible"


@pytest.mark.parametrize("which", ["mt1", "mt2", "corollary_L1",
                                   "corollary_Linf"])
def test_bound_suites_no_violations(which):
    rep = run_bound_suite(which, trials=20, seed=11)
    assert rep.passed
    assert rep.summary["worst_ratio"] <= 1.0


@pytest.mark.parametrize("which", ["prop31", "prop32"])
def test_identity_suites(which):
    rep = run_bound_suite(which, trials=10, seed=11)
    assert rep.passed
    assert rep.summary["max_deviation"] < 1e-8


def test_prop_convo_suite():
    rep = run_bound_suite("prop_convo", trials=6, seed=11)
    assert rep.passed


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_bound_suite("nope", trials=1, seed=0)
    with pytest.raises(ValueError):
        run_experiment("nope", seed=0)


def test_report_write_round_trip(tmp_path):
    rep = run_bound_suite("mt1", trials=5, seed=2)
    rep.write(str(tmp_path))
    doc = json.loads((tmp_path / "mt1.json").read_text())
    assert doc["schema_version"] == 1
    assert doc["verdict"] == "pass"
    assert doc["config"]["seed"] == 2
    # artifacts land next to each other
    assert (tmp_path / "mt1_trials.csv").exists()
    assert (tmp_path / "mt1.png").exists()


def test_report_byte_determinism(tmp_path):
    texts = []
    for _ in range(2):
        rep = run_bound_suite("prop31", trials=4, seed=9)
        texts.append(rep.to_json_text())
    assert texts[0] == texts[1]


def test_thread_count_invariance(tmp_path, monkeypatch):
    monkeypatch.setenv("ORLICZ_LAB_THREADS", "1")
    one = run_bound_suite("mt1", trials=8, seed=4).to_json_text()
    monkeypatch.setenv("ORLICZ_LAB_THREADS", "4")
    four = run_bound_suite("mt1", trials=8, seed=4).to_json_text()
    assert one == four


def test_run_experiment_all_names():
    assert set(EXPERIMENTS) >= {"indicator_norm", "rademacher",
                                "gaussian_limits", "homogeneous", "mt1",
                                "mt2", "corollary_L1", "corollary_Linf",
                                "prop31", "prop32", "prop_convo"}
    reports = run_experiment("mt1", seed=1, trials=3)
    assert len(reports) == 1 and reports[0].name == "mt1"
