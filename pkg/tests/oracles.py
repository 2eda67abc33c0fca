"""Independent brute-force oracles the real algorithms are checked against.

Everything here is deliberately naive: dense angle grids, exhaustive
subset enumeration, and definition-level rank counting.  None of it
shares code with the implementations under test.
"""

import itertools

import numpy as np

HALF_PI = np.pi / 2


def rank_by_definition(values, weights, t):
    """1 + number of tuples outranking t (ties resolved by ascending id)."""
    scores = np.asarray(values) @ np.asarray(weights, dtype=float)
    s = scores[t]
    better = np.count_nonzero(scores > s)
    tied_ahead = np.count_nonzero((scores == s) & (np.arange(len(scores)) < t))
    return 1 + better + tied_ahead


def topk_by_definition(values, weights, k):
    scores = np.asarray(values) @ np.asarray(weights, dtype=float)
    order = np.lexsort((np.arange(len(scores)), -scores))
    return frozenset(int(t) for t in order[:k])


def dense_sweep_max_rank(values, subset, grid=100_001):
    """Max over a dense angle grid of the best member rank (a lower bound
    on the exact sweep value, equal on generic data with a fine grid)."""
    subset = sorted(subset)
    worst = 0
    for theta in np.linspace(0.0, HALF_PI, grid):
        w = (np.cos(theta), np.sin(theta))
        worst = max(worst, min(rank_by_definition(values, w, t) for t in subset))
    return worst


def dense_sweep_topk_membership(values, k, grid=10_001):
    """First and last grid angle at which each tuple is in the top k."""
    first, last = {}, {}
    for theta in np.linspace(0.0, HALF_PI, grid):
        members = topk_by_definition(values, (np.cos(theta), np.sin(theta)), k)
        for t in members:
            first.setdefault(t, theta)
            last[t] = theta
    return first, last


def dense_sweep_ksets(values, k, grid=10_001):
    """Distinct top-k sets seen along a dense grid."""
    seen = set()
    for theta in np.linspace(0.0, HALF_PI, grid):
        seen.add(topk_by_definition(values, (np.cos(theta), np.sin(theta)), k))
    return seen


def exhaustive_min_hitting_size(sets):
    """Minimum hitting-set size by subset enumeration over the ground set."""
    sets = [frozenset(s) for s in sets]
    ground = sorted(frozenset().union(*sets))
    for size in range(1, len(ground) + 1):
        for combo in itertools.combinations(ground, size):
            chosen = frozenset(combo)
            if all(chosen & s for s in sets):
                return size
    raise AssertionError("unhittable collection")


def exhaustive_lp_ksets(dataset, k, validator):
    """All C(n, k) subsets passing the supplied separability validator."""
    out = set()
    for combo in itertools.combinations(range(dataset.n), k):
        if validator(dataset, combo) is not None:
            out.add(frozenset(combo))
    return out
