"""
Measuring the solvers, and the size-budgeted dual problem
=========================================================

The benchmark harness runs a grid of (algorithm, k, seed) configurations,
times the solves, measures rank-regret (exactly in 2-D at moderate size,
by sampling otherwise), and serializes the reports as JSON lines and CSV.
The dual problem inverts the question: given a size budget, binary-search
the smallest k whose representative fits.
"""

import numpy as np

from rankregret import Dataset, dual_problem, run_benchmark
from rankregret.evaluate import reports_to_csv, reports_to_jsonl

rng = np.random.default_rng(33)
data = Dataset(rng.random((1000, 2)))

reports = run_benchmark(data, ["2drrr", "mdrrr", "mdrc"],
                        k_values=[10], seeds=[0], samples=5000)
print(reports_to_csv(reports))

print("JSON lines:")
for line in reports_to_jsonl(reports).strip().splitlines():
    print(" ", line[:100] + "...")

# dual problem: how small can k be if only 3 tuples may be shown?
budget = 3
k, rep = dual_problem(data, budget, solver="2drrr")
print(f"\nsize budget {budget}: smallest feasible k = {k}, "
      f"members {sorted(rep.members)}")

k1, rep1 = dual_problem(data, 10, solver="mdrc", seed=0)
print(f"size budget 10 with the partitioning solver: k = {k1}, "
      f"size {rep1.size}")
