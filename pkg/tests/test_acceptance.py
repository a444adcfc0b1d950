"""Acceptance gate: every release criterion at its stated scale and
tolerance, one pass/fail line printed per criterion.

Criteria 1-9 run through the shared suite implementations; criterion 10
re-runs the full `accept` command in two subprocesses and compares bytes.
"""

import subprocess
import sys

from coarse_bounds import acceptance as acc

_RESULTS = {}


def _check(result):
    _RESULTS[result.number] = result
    print(result.line())
    assert result.passed, result.line()


class TestAcceptance:
    def test_criterion_1_oracle_equivalence(self):
        _check(acc.criterion_oracle_equivalence(seed=0, n_instances=10_000))

    def test_criterion_2_structural_invariants(self):
        _check(acc.criterion_structural_invariants(seed=0, n_instances=2_000))

    def test_criterion_3_lattice_suite(self):
        _check(acc.criterion_lattice_suite(seed=0, n_instances=1_000))

    def test_criterion_4_perceived_distributions(self):
        _check(acc.criterion_perceived_distributions(seed=0, n_instances=1_000))

    def test_criterion_5_learning(self):
        _check(acc.criterion_learning(seed=0, n_fixtures=200, k=200, b=4_000))

    def test_criterion_6_insurance(self):
        _check(acc.criterion_insurance(seed=0))

    def test_criterion_7_portfolio(self):
        _check(acc.criterion_portfolio(seed=0))

    def test_criterion_8_contracting(self):
        _check(acc.criterion_contracting(seed=0, n_instances=100))

    def test_criterion_9_preferences(self):
        _check(acc.criterion_preferences(seed=0, n_checks=10_000))

    def test_criterion_10_deterministic_accept_run(self, tmp_path):
        # two full CLI invocations with the same seed must agree byte-wise
        reports = []
        for name in ("r1.txt", "r2.txt"):
            target = tmp_path / name
            res = subprocess.run(
                [sys.executable, "-m", "coarse_bounds", "accept",
                 "--suite", "all", "--seed", "0", "--out", str(target)],
                capture_output=True,
            )
            assert res.returncode == 0, res.stderr.decode()
            reports.append(target.read_bytes())
        assert reports[0] == reports[1]
        print("[PASS] criterion 10: determinism: full accept runs byte-identical")
