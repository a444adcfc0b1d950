"""Edge cases across modules: DP fill-path parity, degenerate masses,
larger partition grounds, and CLI error handling."""

import json

import numpy as np
import pytest

import coarse_bounds.engine as engine
from coarse_bounds.acts import Belief, DiscreteAct, ValueLadder, build_ladder
from coarse_bounds.cli import run
from coarse_bounds.engine import bound, pull_back, siminf, simsup
from coarse_bounds.errors import DegenerateBeliefError
from coarse_bounds.partitions import common_refinement, partition_path

from test_partitions import check_path, random_partition


class TestDpPathParity:
    """The pure-Python and vectorized DP fills share arithmetic exactly."""

    @pytest.mark.parametrize("length", [39, 40, 41, 64])
    def test_bitwise_identical_values_and_cuts(self, length, monkeypatch):
        rng = np.random.default_rng(length)
        levels = np.cumsum(rng.uniform(0.01, 1.0, size=length)).tolist()
        w = rng.uniform(0.1, 1.0, size=length)
        masses = (w / w.sum()).tolist()
        masses[int(np.argmax(masses))] += 1.0 - sum(masses)
        lad = ValueLadder(levels, masses)
        for n in (1, 3, 6):
            for kind in ("lower", "upper"):
                fast = bound(lad, n, kind)
                monkeypatch.setattr(engine, "_NUMPY_DP_THRESHOLD", 10_000)
                slow = bound(lad, n, kind)
                monkeypatch.undo()
                assert fast.value == slow.value
                assert fast.cutoffs.cuts == slow.cutoffs.cuts


class TestZeroMassLevels:
    def test_lexicographic_tie_break_across_lengths(self):
        # a zero-mass level can be merged for free: the canonical optimum is
        # the lexicographically smallest vector, preferring shorter prefixes
        lad = ValueLadder([0.0, 1.0, 2.0], [0.5, 0.0, 0.5])
        res = siminf(lad, 3)
        oracle = engine.brute_force_bound(lad, 3, "lower")
        assert res.value == oracle.bound.value == 1.0
        assert res.cutoffs.cuts == oracle.optima[0]

    def test_all_zero_mass_belief_rejected(self):
        with pytest.raises(DegenerateBeliefError):
            Belief([0.0, 0.0])

    def test_pull_back_upper_violation(self):
        act = DiscreteAct(list("abz"), [1.0, 2.0, 9.0])
        bel = Belief([0.5, 0.5, 0.0])
        res = simsup(build_ladder(act, bel), 1)
        pb = pull_back(res, act, bel)
        # the zero-mass state z lies above every bound value
        assert pb.violations == ("z",)
        assert pb.act.values[2] == 2.0


class TestPartitionPathLarger:
    def test_ground_ten_various_sizes(self):
        rng = np.random.default_rng(99)
        ground = list(range(10))
        for n in (2, 3, 5):
            for _ in range(60):
                tau = random_partition(rng, ground, n)
                tau_prime = random_partition(rng, ground, n)
                path = partition_path(tau, tau_prime)
                check_path(tau, tau_prime, path)
                pieces = common_refinement(tau, tau_prime)
                assert len(path) <= len(pieces) ** 2 + 1


class TestCliErrors:
    def test_compare_requires_shared_belief(self, tmp_path, capsys):
        a = {"states": [0, 1], "values": [1.0, 2.0], "masses": [0.5, 0.5]}
        b = {"states": [0, 1], "values": [2.0, 1.0], "masses": [0.4, 0.6]}
        pa, pb = tmp_path / "a.json", tmp_path / "b.json"
        pa.write_text(json.dumps(a))
        pb.write_text(json.dumps(b))
        assert run(["compare", "--in", str(pa), "--in2", str(pb), "--N", "2"]) == 1

    def test_malformed_record(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"states": [0, 1], "values": [1.0]}))
        assert run(["bounds", "--in", str(path), "--N", "2"]) == 1

    def test_thread_cap_env_validated(self, tmp_path, capsys, monkeypatch):
        act = {"states": [0, 1], "values": [1.0, 2.0], "masses": [0.5, 0.5]}
        path = tmp_path / "act.json"
        path.write_text(json.dumps(act))
        monkeypatch.setenv("COARSE_BOUNDS_THREADS", "zero")
        assert run(["bounds", "--in", str(path), "--N", "1"]) == 1
        monkeypatch.setenv("COARSE_BOUNDS_THREADS", "4")
        assert run(["bounds", "--in", str(path), "--N", "1"]) == 0
