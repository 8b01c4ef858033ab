"""Brute-force oracle and the suite runner."""

import pytest

from supportring.oracle import (
    ConfigError, SuiteConfig, conj_invariance_spot_check, corrupt_table, gl2_rank1_counterexample,
    rank1_support_ring_check, run_full_suite, verify_theorem1,
)


@pytest.mark.parametrize("q", [5, 8, 9])
def test_theorem1(q):
    rep = verify_theorem1(q)
    assert rep.ok and rep.results["agree"] == 49


def test_theorem1_detects_corrupted_table():
    rep = verify_theorem1(5, corrupt_table())
    assert not rep.ok
    w = rep.failures[0].witness
    assert w["pair"] == ["B", "B"]
    assert w["brute_force"][0] == 4 and w["closed_form"][0] == 5


@pytest.mark.parametrize("n,q,classes", [(2, 2, 9), (2, 3, 9), (3, 2, 49)])
def test_rank1_support_ring(n, q, classes):
    rep = rank1_support_ring_check(n, q)
    assert rep.ok, [(c.name, c.witness) for c in rep.failures]
    assert any(f"= {classes} support classes" in c.name for c in rep.checks)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_counterexample(q):
    rep = gl2_rank1_counterexample(q)
    assert rep.ok
    assert rep.results["terms"] == (q - 1) ** 3
    assert rep.results["coefficients"] == [q - 1]


def test_spot_check_records_seed():
    rep = conj_invariance_spot_check(5, seed=7)
    assert rep.ok and rep.seed == 7


@pytest.mark.parametrize("qs", [(2,), (6,), (3, 11), ()])
def test_config_errors(qs):
    with pytest.raises(ConfigError):
        run_full_suite(SuiteConfig(qs=qs, max_q=9))


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("SC_MAX_Q", "4")
    with pytest.raises(ConfigError):
        SuiteConfig(qs=(5,)).validate()


def test_full_suite_small():
    rep = run_full_suite(SuiteConfig(qs=(3, 4, 5), seed=3))
    assert rep.ok, [(c.name, c.witness) for c in rep.failures][:5]
    assert rep.seed == 3
    assert rep.results["checks_run"] > 500


def test_full_suite_negative_controls():
    rep = run_full_suite(SuiteConfig(qs=(4,), table=corrupt_table(), corrupt_scheme=True,
                                     include_rank1=False))
    names = [c.name for c in rep.failures]
    assert any(n.startswith("theorem1 q=4: B*B") for n in names)
    assert any("scheme d5 q=4" in n and "partition" in n for n in names)
