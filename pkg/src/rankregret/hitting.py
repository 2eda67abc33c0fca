"""Hitting sets over k-set collections.

A subset hitting every k-set contains a top-k tuple of every linear
ranking function, so a small hitting set is a rank-regret representative.
``mdrrr`` runs the epsilon-net weight-doubling scheme for geometric
hitting set (VC dimension d for half-space ranges): guess the optimum c,
repeatedly draw a weighted net, and double the weights of one missed set
until the net hits everything.  ``greedy_hitting`` and ``exact_hitting``
are the comparison baseline and the small-instance oracle.
"""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .errors import EmptyCollection, GroundSetTooLarge
from .kset import KSetCollection

#: per-round allowance for the sampled net failing to be an epsilon-net
NET_FAILURE_BUDGET = 0.1

#: rescale weights when their total passes this, preserving proportions
WEIGHT_RESCALE_LIMIT = 2.0 ** 500


@dataclass
class MdrrrStats:
    """Diagnostics of a weight-doubling run (for tests and reports)."""

    final_guess: int
    rounds_at_final_guess: int
    total_rounds: int
    net_size: int
    raw_net_size: int
    doublings: List[int]
    weight_totals: List[float]


def mdrrr(collection: KSetCollection, opt_guess: Optional[int] = None,
          rng: Optional[np.random.Generator] = None,
          double_all_missed: bool = False,
          return_stats: bool = False):
    """Weight-doubling hitting set over the collection's ground set.

    For each guess c (doubling from ``opt_guess`` or 1) the net must hit
    every set of weight at least eps = 1/(2c) of the total; a miss doubles
    the weights of the first missed set (all missed sets when
    ``double_all_missed``) and the round repeats, up to the iteration
    budget for that guess.  The returned net is pruned of redundant
    members (lightest first) so the output is a minimal hitting set.
    """
    sets = collection.member_sets()
    if not sets:
        raise EmptyCollection("cannot hit an empty collection")
    if any(not s for s in sets):
        raise ValueError("collection contains an empty set")
    d = collection.d
    if d is None:
        raise ValueError("collection must carry the dataset dimensionality d")
    if rng is None:
        rng = np.random.Generator(np.random.PCG64(0))

    ground = np.array(sorted(frozenset().union(*sets)))
    n_prime = ground.size
    slot = {int(t): i for i, t in enumerate(ground)}
    member_slots = [np.array([slot[t] for t in sorted(s)]) for s in sets]
    weights = np.ones(n_prime)

    guess = int(opt_guess) if opt_guess else 1
    total_rounds = 0
    doublings: List[int] = []
    weight_totals: List[float] = [float(n_prime)]
    while True:
        eps = 1.0 / (2.0 * guess)
        budget = math.ceil(4 * guess * max(math.log2(n_prime / guess), 0.0)) + 8
        net_size = (math.ceil((8 * d / eps) * math.log(8 * d / eps))
                    + math.ceil((4 / eps) * math.log(1 / NET_FAILURE_BUDGET)))
        for round_at_guess in range(1, budget + 1):
            total_rounds += 1
            drawn = rng.choice(n_prime, size=net_size, replace=True,
                               p=weights / weights.sum())
            net = np.unique(drawn)
            net_mask = np.zeros(n_prime, dtype=bool)
            net_mask[net] = True
            missed = [j for j, slots in enumerate(member_slots)
                      if not net_mask[slots].any()]
            if not missed:
                members = _prune(ground, net, member_slots, weights)
                if return_stats:
                    stats = MdrrrStats(
                        final_guess=guess,
                        rounds_at_final_guess=round_at_guess,
                        total_rounds=total_rounds,
                        net_size=net_size,
                        raw_net_size=int(net.size),
                        doublings=doublings,
                        weight_totals=weight_totals,
                    )
                    return members, stats
                return members
            targets = missed if double_all_missed else missed[:1]
            for j in targets:
                weights[member_slots[j]] *= 2.0
                doublings.append(j)
            total = weights.sum()
            if total > WEIGHT_RESCALE_LIMIT:
                weights /= 2.0 ** 400  # proportions are all that matter
                total = weights.sum()
            weight_totals.append(float(total))
        guess *= 2
        if guess > 2 * n_prime:
            # the guess has overshot any possible optimum; the ground set
            # itself hits everything, so prune that instead of looping
            members = _prune(ground, np.arange(n_prime), member_slots, weights)
            if return_stats:
                stats = MdrrrStats(guess, 0, total_rounds, n_prime,
                                   n_prime, doublings, weight_totals)
                return members, stats
            return members


def _prune(ground, net, member_slots, weights) -> frozenset:
    """Drop redundant net members, lightest (then smallest id) first."""
    net = set(int(i) for i in net)
    hits = [len(net.intersection(slots.tolist())) for slots in member_slots]
    containing: dict = {i: [] for i in net}
    for j, slots in enumerate(member_slots):
        for i in slots.tolist():
            if i in containing:
                containing[i].append(j)
    for i in sorted(net, key=lambda i: (weights[i], ground[i])):
        if all(hits[j] >= 2 for j in containing[i]):
            net.discard(i)
            for j in containing[i]:
                hits[j] -= 1
    return frozenset(int(ground[i]) for i in net)


def greedy_hitting(collection: KSetCollection) -> frozenset:
    """Pick the id hitting the most unhit sets until everything is hit."""
    sets = collection.member_sets()
    if not sets:
        raise EmptyCollection("cannot hit an empty collection")
    unhit = list(sets)
    chosen = set()
    while unhit:
        counts: dict = {}
        for s in unhit:
            for t in s:
                counts[t] = counts.get(t, 0) + 1
        best = min(counts, key=lambda t: (-counts[t], t))
        chosen.add(best)
        unhit = [s for s in unhit if best not in s]
    return frozenset(chosen)


#: exact search is exponential; refuse ground sets beyond this size
EXACT_GROUND_LIMIT = 25


def exact_hitting(collection: KSetCollection) -> frozenset:
    """Minimum-cardinality hitting set by branch and bound (small inputs)."""
    sets = [frozenset(s) for s in collection.member_sets()]
    if not sets:
        raise EmptyCollection("cannot hit an empty collection")
    ground = frozenset().union(*sets)
    if len(ground) > EXACT_GROUND_LIMIT:
        raise GroundSetTooLarge(
            f"ground set has {len(ground)} ids (limit {EXACT_GROUND_LIMIT})")

    best = set(greedy_hitting(collection))

    def lower_bound(unhit) -> int:
        # pairwise-disjoint unhit sets each need their own element
        taken: set = set()
        count = 0
        for s in unhit:
            if not (s & taken):
                taken |= s
                count += 1
        return count

    def search(unhit, chosen):
        nonlocal best
        if not unhit:
            if len(chosen) < len(best):
                best = set(chosen)
            return
        if len(chosen) + lower_bound(unhit) >= len(best):
            return
        pivot = min(unhit, key=len)
        for t in sorted(pivot):
            search([s for s in unhit if t not in s], chosen | {t})

    search(sets, set())
    return frozenset(best)
