import csv
import io
import json

import numpy as np
import pytest

from rankregret import (
    dual_problem,
    estimate_rank_regret,
    exact_rank_regret_2d,
    resolve_k,
    rrr_2d,
    run_algorithm,
    run_benchmark,
    sample_functions,
)
from rankregret.errors import EmptySubset, KOutOfRange
from rankregret.evaluate import (
    CSV_COLUMNS,
    evaluate_representative,
    reports_to_csv,
    reports_to_jsonl,
)

from conftest import random_dataset, tids
from oracles import rank_by_definition


class TestEstimate:
    def test_full_set_is_one(self, fig1):
        rng = np.random.default_rng(0)
        assert estimate_rank_regret(fig1, range(7), 100, rng) == 1

    def test_fig1_cover_output(self, fig1):
        rng = np.random.default_rng(1)
        assert estimate_rank_regret(fig1, tids("t3", "t1"), 10_000, rng) <= 2

    def test_empty_subset(self, fig1):
        with pytest.raises(EmptySubset):
            estimate_rank_regret(fig1, set(), 10, np.random.default_rng(0))

    def test_single_sample_matches_definition(self):
        # with one sampled function the estimate is exactly the best
        # member rank under that function
        rng = np.random.default_rng(2)
        for _ in range(20):
            n = int(rng.integers(4, 40))
            d = int(rng.integers(2, 5))
            ds = random_dataset(rng, n, d)
            subset = sorted(rng.choice(n, size=int(rng.integers(1, 4)),
                                       replace=False))
            seed = int(rng.integers(0, 2**31))
            w = sample_functions(np.random.default_rng(seed), d, 1)[0]
            want = min(rank_by_definition(ds.values, w, int(t)) for t in subset)
            got = estimate_rank_regret(ds, subset, 1, np.random.default_rng(seed))
            assert got == want

    def test_monotone_in_sample_count(self):
        rng = np.random.default_rng(3)
        ds = random_dataset(rng, 120, 3)
        subset = [4, 77]
        values = [estimate_rank_regret(ds, subset, m, np.random.default_rng(9))
                  for m in (10, 100, 1000, 5000)]
        assert values == sorted(values)

    def test_never_exceeds_exact_2d_and_usually_matches(self):
        equal = 0
        trials = 30
        for t in range(trials):
            g = np.random.default_rng(500 + t)
            n = int(g.integers(20, 120))
            k = int(g.integers(1, 5))
            ds = random_dataset(g, n, 2)
            members = rrr_2d(ds, k).members
            exact = exact_rank_regret_2d(ds, members)
            est = estimate_rank_regret(ds, members, 10_000, g)
            assert est <= exact
            equal += est == exact
        assert equal >= int(0.95 * trials)


class TestResolveK:
    def test_absolute(self):
        assert resolve_k(100, k=7) == 7

    def test_percentage_rounds_up(self):
        assert resolve_k(457, k_pct=1.0) == 5
        assert resolve_k(10_000, k_pct=1.0) == 100
        assert resolve_k(50, k_pct=0.1) == 1

    def test_exactly_one_of_k_and_pct(self):
        with pytest.raises(ValueError):
            resolve_k(10)
        with pytest.raises(ValueError):
            resolve_k(10, k=1, k_pct=1.0)

    def test_out_of_range(self):
        with pytest.raises(KOutOfRange):
            resolve_k(10, k=11)


class TestDualProblem:
    def test_budget_n_gives_k1(self, fig1):
        k, rep = dual_problem(fig1, 7, solver="2drrr")
        assert k == 1
        assert rep.size <= 7

    def test_matches_linear_scan(self, fig1):
        sizes = {k: rrr_2d(fig1, k).size for k in range(1, 8)}
        for budget in (1, 2, 3, 7):
            k, rep = dual_problem(fig1, budget, solver="2drrr")
            assert rep.size <= budget
            assert k == min(kk for kk in range(1, 8) if sizes[kk] <= budget)

    def test_k_non_increasing_in_budget(self, fig1):
        ks = [dual_problem(fig1, budget, solver="2drrr")[0]
              for budget in (1, 2, 3, 4, 5)]
        assert ks == sorted(ks, reverse=True)

    def test_budget_validation(self, fig1):
        with pytest.raises(ValueError):
            dual_problem(fig1, 0)


class TestRunAlgorithm:
    def test_dispatch_names(self, fig1):
        for name in ("2drrr", "mdrrr", "mdrc"):
            rep = run_algorithm(name, fig1, 2, seed=5)
            assert rep.algorithm == name
            assert exact_rank_regret_2d(fig1, rep.members) <= 4

    def test_unknown_name(self, fig1):
        with pytest.raises(ValueError):
            run_algorithm("newton", fig1, 2)

    def test_mdrrr_sources(self, fig1):
        for source in ("sweep2d", "graph", "random"):
            rep = run_algorithm("mdrrr", fig1, 2, seed=7, kset_source=source)
            assert rep.params["kset_source"] == source
            assert exact_rank_regret_2d(fig1, rep.members) <= 2

    def test_deterministic_under_seed(self):
        ds = random_dataset(np.random.default_rng(70), 40, 3)
        a = run_algorithm("mdrrr", ds, 4, seed=11)
        b = run_algorithm("mdrrr", ds, 4, seed=11)
        assert a.members == b.members


class TestBenchmark:
    def test_empty_algorithm_list(self, fig1):
        assert run_benchmark(fig1, [], [2], [0]) == []

    def test_reports_and_determinism(self, fig1):
        a = run_benchmark(fig1, ["2drrr", "mdrc"], [2], [3], samples=500)
        b = run_benchmark(fig1, ["2drrr", "mdrc"], [2], [3], samples=500)
        assert len(a) == 2
        for ra, rb in zip(a, b):
            assert ra.subset_size == rb.subset_size
            assert ra.rank_regret == rb.rank_regret
            assert ra.error is None
            assert ra.exact  # 2-D and small, so the sweep value is used
            assert 1 <= ra.rank_regret <= fig1.n

    def test_estimate_mode_records_samples(self, fig1):
        (report,) = run_benchmark(fig1, ["mdrc"], [2], [0], samples=300,
                                  eval_mode="estimate")
        assert not report.exact
        assert report.samples == 300

    def test_errors_recorded_not_raised(self):
        ds = random_dataset(np.random.default_rng(71), 20, 3)
        (report,) = run_benchmark(ds, ["2drrr"], [2], [0])
        assert report.error is not None
        assert "DimensionNot2D" in report.error
        assert report.subset_size is None

    def test_serialization(self, fig1):
        reports = run_benchmark(fig1, ["2drrr"], [2], [0], samples=200)
        lines = reports_to_jsonl(reports).strip().splitlines()
        parsed = json.loads(lines[0])
        assert parsed["algorithm"] == "2drrr"
        assert parsed["dataset_fingerprint"].startswith("n7-d2-")
        table = list(csv.reader(io.StringIO(reports_to_csv(reports))))
        assert table[0] == CSV_COLUMNS
        assert table[1][0] == "2drrr"


def test_evaluate_representative_modes(fig1):
    rep = rrr_2d(fig1, 2)
    exact = evaluate_representative(fig1, rep, mode="exact")
    assert exact.exact and exact.rank_regret == 2
    est = evaluate_representative(fig1, rep, mode="estimate", samples=2000,
                                  seed=1)
    assert not est.exact
    assert est.rank_regret <= exact.rank_regret
