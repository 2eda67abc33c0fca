"""Evaluation harness: rank-regret measurement, the dual problem, benchmarks.

Rank-regret of a subset is estimated by drawing ranking functions
uniformly from the first-orthant sphere and taking the worst best-rank of
any member; the estimate never exceeds the true maximum.  In 2-D (and at
moderate size) the sweep gives the exact value instead.
"""

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, replace
from typing import List, Optional, Sequence

import numpy as np

from .core import Dataset, Representative
from .errors import EmptySubset, KOutOfRange
from .hitting import mdrrr
from .kset import collect_ksets_random, enumerate_ksets_graph, sample_functions
from .mdrc import mdrc
from .sweep2d import enumerate_ksets_2d, exact_rank_regret_2d, rrr_2d

DEFAULT_SAMPLES = 10_000
DEFAULT_SAMPLER_C = 100

#: exact 2-D evaluation is used automatically up to this many tuples
EXACT_2D_LIMIT = 2000


@dataclass(frozen=True)
class EvaluationReport:
    """One measured solver run."""

    algorithm: str
    n: int
    d: int
    k: int
    subset_size: Optional[int]
    rank_regret: Optional[int]
    exact: bool
    samples: Optional[int]
    wall_time_seconds: float
    seed: Optional[int]
    params: dict
    dataset_fingerprint: str
    error: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def estimate_rank_regret(dataset: Dataset, subset, samples: int = DEFAULT_SAMPLES,
                         rng: Optional[np.random.Generator] = None) -> int:
    """Monte-Carlo rank-regret: worst best-member-rank over sampled functions.

    The maximum over a sample never exceeds the true maximum, so this is a
    lower bound that sharpens with the sample count.  Work is chunked so
    the n-by-chunk score matrix stays small.
    """
    members = np.array(sorted({int(t) for t in subset}))
    if members.size == 0:
        raise EmptySubset("subset must contain at least one tuple id")
    if members.min() < 0 or members.max() >= dataset.n:
        raise ValueError("subset contains unknown tuple ids")
    if samples < 1:
        raise ValueError("samples must be positive")
    if rng is None:
        rng = np.random.Generator(np.random.PCG64(0))
    values_t = dataset.values.T
    ids = np.arange(dataset.n)
    chunk = max(1, min(1024, (1 << 22) // max(dataset.n, 1)))
    worst = 0
    remaining = samples
    while remaining > 0:
        m = min(chunk, remaining)
        remaining -= m
        weights = sample_functions(rng, dataset.d, m)
        scores = weights @ values_t  # (m, n)
        member_scores = scores[:, members]
        best_col = np.argmax(member_scores, axis=1)  # first max = smallest id
        best_id = members[best_col]
        best_score = member_scores[np.arange(m), best_col]
        outranked = (scores > best_score[:, None]).sum(axis=1)
        tied_ahead = ((scores == best_score[:, None])
                      & (ids[None, :] < best_id[:, None])).sum(axis=1)
        worst = max(worst, int((1 + outranked + tied_ahead).max()))
    return worst


def resolve_k(n: int, k: Optional[int] = None, k_pct: Optional[float] = None) -> int:
    """Turn an absolute k or a percentage into an integer rank.

    Percentages round up, so "top 1%" always admits at least the stated
    fraction of ranks.
    """
    if (k is None) == (k_pct is None):
        raise ValueError("exactly one of k and k_pct must be given")
    if k_pct is not None:
        k = math.ceil(k_pct / 100.0 * n)
    if not 1 <= k <= n:
        raise KOutOfRange(f"k={k} not in [1, {n}]")
    return int(k)


def run_algorithm(name: str, dataset: Dataset, k: int, *,
                  seed: Optional[int] = None,
                  c: int = DEFAULT_SAMPLER_C,
                  depth_cap: Optional[int] = None,
                  kset_source: Optional[str] = None) -> Representative:
    """Dispatch a solver by name.

    The mdrrr pipeline takes its k-set collection from the exact 2-D sweep
    when d = 2 and from the randomized collector otherwise, unless a
    source ("sweep2d", "graph", "random") is forced.
    """
    if name == "2drrr":
        rep = rrr_2d(dataset, k)
        return replace(rep, seed=seed)
    if name == "mdrc":
        rep = mdrc(dataset, k, depth_cap=depth_cap)
        return replace(rep, seed=seed)
    if name == "mdrrr":
        source = kset_source or ("sweep2d" if dataset.d == 2 else "random")
        ss = np.random.SeedSequence(seed if seed is not None else 0)
        collector_rng, net_rng = (np.random.Generator(np.random.PCG64(s))
                                  for s in ss.spawn(2))
        if source == "sweep2d":
            collection = enumerate_ksets_2d(dataset, k)
        elif source == "graph":
            collection = enumerate_ksets_graph(dataset, k)
        elif source == "random":
            collection = collect_ksets_random(dataset, k, c, collector_rng)
        else:
            raise ValueError(f"unknown kset source {source!r}")
        members = mdrrr(collection, rng=net_rng)
        return Representative(
            members=members, algorithm="mdrrr",
            params={"k": k, "kset_source": source, "c": c,
                    "collection_size": len(collection),
                    "complete": collection.complete},
            seed=seed)
    raise ValueError(f"unknown algorithm {name!r}")


def dual_problem(dataset: Dataset, size_budget: int, solver: str = "mdrc",
                 **solver_params):
    """Smallest k whose representative fits the size budget, by binary search.

    Returns (k, representative).  Every solver returns a single tuple at
    k = n, so a feasible k always exists for budgets >= 1.
    """
    if not 1 <= size_budget <= dataset.n:
        raise ValueError(f"size budget {size_budget} not in [1, {dataset.n}]")
    lo, hi = 1, dataset.n
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        rep = run_algorithm(solver, dataset, mid, **solver_params)
        if rep.size <= size_budget:
            best = (mid, rep)
            hi = mid - 1
        else:
            lo = mid + 1
    if best is None:
        raise ValueError("no k admits the budget (solver output never fits)")
    return best


def evaluate_representative(dataset: Dataset, rep: Representative, *,
                            samples: int = DEFAULT_SAMPLES,
                            seed: Optional[int] = None,
                            mode: str = "auto",
                            wall_time_seconds: float = 0.0) -> EvaluationReport:
    """Attach a rank-regret measurement to a solver output."""
    k = rep.params.get("k", 0)
    exact = mode == "exact" or (
        mode == "auto" and dataset.d == 2 and dataset.n <= EXACT_2D_LIMIT)
    if exact:
        regret = exact_rank_regret_2d(dataset, rep.members)
        used_samples = None
    else:
        rng = np.random.Generator(np.random.PCG64(
            np.random.SeedSequence([0xE7A1, seed if seed is not None else 0])))
        regret = estimate_rank_regret(dataset, rep.members, samples, rng)
        used_samples = samples
    return EvaluationReport(
        algorithm=rep.algorithm, n=dataset.n, d=dataset.d, k=int(k),
        subset_size=rep.size, rank_regret=int(regret), exact=exact,
        samples=used_samples, wall_time_seconds=wall_time_seconds,
        seed=seed, params=dict(rep.params),
        dataset_fingerprint=dataset.fingerprint())


def run_benchmark(dataset: Dataset, algorithms: Sequence[str],
                  k_values: Sequence[int], seeds: Sequence[int], *,
                  samples: int = DEFAULT_SAMPLES,
                  c: int = DEFAULT_SAMPLER_C,
                  depth_cap: Optional[int] = None,
                  eval_mode: str = "auto") -> List[EvaluationReport]:
    """One report per (algorithm, k, seed); wall time covers the solve only.

    Failures become reports with the error recorded instead of raising, so
    a sweep over configurations always completes.
    """
    reports: List[EvaluationReport] = []
    for name in algorithms:
        for k in k_values:
            for seed in seeds:
                start = time.perf_counter()
                try:
                    rep = run_algorithm(name, dataset, int(k), seed=int(seed),
                                        c=c, depth_cap=depth_cap)
                    elapsed = time.perf_counter() - start
                    reports.append(evaluate_representative(
                        dataset, rep, samples=samples, seed=int(seed),
                        mode=eval_mode, wall_time_seconds=elapsed))
                except Exception as exc:  # recorded, not raised
                    elapsed = time.perf_counter() - start
                    reports.append(EvaluationReport(
                        algorithm=name, n=dataset.n, d=dataset.d, k=int(k),
                        subset_size=None, rank_regret=None, exact=False,
                        samples=None, wall_time_seconds=elapsed,
                        seed=int(seed), params={},
                        dataset_fingerprint=dataset.fingerprint(),
                        error=f"{type(exc).__name__}: {exc}"))
    return reports


def reports_to_jsonl(reports: Sequence[EvaluationReport]) -> str:
    return "\n".join(r.to_json() for r in reports) + "\n"


CSV_COLUMNS = ["algorithm", "n", "d", "k", "size", "rank_regret",
               "exact_flag", "seconds", "seed"]


def reports_to_csv(reports: Sequence[EvaluationReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow([
            r.algorithm, r.n, r.d, r.k,
            "" if r.subset_size is None else r.subset_size,
            "" if r.rank_regret is None else r.rank_regret,
            int(r.exact),
            f"{r.wall_time_seconds:.6f}",
            "" if r.seed is None else r.seed,
        ])
    return buf.getvalue()
