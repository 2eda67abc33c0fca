"""2-D algorithms: angular sweep, interval cover, exact rank-regret.

The function space in 2-D is the single angle theta in [0, pi/2] of the
ray (cos theta, sin theta).  Two tuples exchange ranking order at most
once along the sweep, so the full ranking evolution is an event queue of
adjacent transpositions.  ``find_ranges`` derives, for every tuple, the
first and last angle at which it is ranked in the top k; covering
[0, pi/2] with the fewest such ranges yields a representative that is
never larger than the optimal one and whose exact rank-regret is at most
2k (each range's interior rank is bounded by the sum of its endpoint
ranks).
"""

import heapq
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .core import (
    HALF_PI,
    Dataset,
    Representative,
    _select_top_k,
    angles_to_weights,
)
from .errors import (
    DimensionNot2D,
    EmptySubset,
    KOutOfRange,
    UncoverableSpace,
)
from .kset import KSet, KSetCollection

#: find_ranges switches from the event sweep to the vectorized
#: rank-trajectory path above this many tuples
SWEEP_CUTOFF = 600

#: coverage bookkeeping ignores gaps up to this width (endpoint claims
#: shrunk by one ulp around score ties leave sub-1e-15 residues)
COVER_SLACK = 1e-12


@dataclass(frozen=True)
class AngularRange:
    """The closed angle interval [begin, end] where a tuple is in the top k."""

    tuple_id: int
    begin: float
    end: float


class ExchangeSweep:
    """Event engine maintaining the full ranking order across the sweep.

    The order starts at the theta=0 ranking (descending first attribute,
    ties by ascending id) and is updated by adjacent transpositions popped
    from a min-heap in ascending angle; equal angles resolve by ascending
    (low id, high id).  Events carry the pair's ids, not positions: an
    event whose pair is no longer adjacent in the expected orientation is
    stale and skipped, which also absorbs duplicate pushes.
    """

    def __init__(self, values: np.ndarray):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 2 or values.shape[1] != 2:
            raise DimensionNot2D("the angular sweep requires d = 2")
        self.values = values
        n = values.shape[0]
        self.n = n
        ids = np.arange(n)
        self.order = [int(t) for t in np.lexsort((ids, -values[:, 0]))]
        self.position = np.empty(n, dtype=np.int64)
        self.position[self.order] = ids
        self.swap_count = 0
        self._heap: list = []
        for i in range(n - 1):
            self._push_if_crossing(self.order[i], self.order[i + 1])

    def _push_if_crossing(self, upper: int, lower: int) -> None:
        # an adjacent pair exchanges later in the sweep iff the lower tuple
        # wins on x2 while not losing on x1; equal x1 crosses at theta = 0
        du = self.values[upper, 0] - self.values[lower, 0]
        dv = self.values[upper, 1] - self.values[lower, 1]
        if dv < 0.0 and du >= 0.0:
            theta = float(np.arctan(du / -dv)) if du > 0.0 else 0.0
            lo, hi = (upper, lower) if upper < lower else (lower, upper)
            heapq.heappush(self._heap, (theta, lo, hi, upper))

    def batches(self):
        """Yield (theta, swaps) with all simultaneous events grouped.

        Each swap is (position, upper, lower): the pair that exchanged at
        that position (upper moved down).  The maintained order is already
        updated when a batch is yielded.
        """
        heap = self._heap
        position = self.position
        order = self.order
        while heap:
            theta = heap[0][0]
            swaps: List[Tuple[int, int, int]] = []
            while heap and heap[0][0] == theta:
                _, lo, hi, upper = heapq.heappop(heap)
                lower = hi if upper == lo else lo
                i = position[upper]
                if i + 1 >= self.n or order[i + 1] != lower:
                    continue  # stale: the pair separated or already swapped
                order[i], order[i + 1] = lower, upper
                position[upper] = i + 1
                position[lower] = i
                self.swap_count += 1
                swaps.append((i, upper, lower))
                if i > 0:
                    self._push_if_crossing(order[i - 1], lower)
                if i + 2 < self.n:
                    self._push_if_crossing(upper, order[i + 2])
            if swaps:
                yield theta, swaps


def find_ranges(dataset: Dataset, k: int, method: str = "auto") -> List[AngularRange]:
    """First and last sweep angle at which each tuple is ranked in the top k.

    Tuples in the initial top-k start their range at 0; tuples still in the
    top-k when the sweep ends close it at pi/2.  Tuples never reaching the
    top k are omitted.  ``method`` selects the event sweep ("sweep"), the
    vectorized per-tuple rank trajectory ("trajectory", same result in
    general position but far faster for large n), or a size-based choice
    ("auto").
    """
    _require_2d(dataset)
    if not 1 <= k <= dataset.n:
        raise KOutOfRange(f"k={k} not in [1, {dataset.n}]")
    if method == "auto":
        method = "sweep" if dataset.n <= SWEEP_CUTOFF else "trajectory"
    if method == "sweep":
        return _find_ranges_sweep(dataset.values, k)
    if method == "trajectory":
        return _find_ranges_trajectory(dataset.values, k)
    raise ValueError(f"unknown method {method!r}")


def _find_ranges_sweep(values: np.ndarray, k: int) -> List[AngularRange]:
    """Event sweep with endpoint claims checked against large tie groups.

    At an exchange angle the maintained order is the just-after limit; a
    tuple entering (or leaving) there may actually be pushed past rank k
    AT that angle by the id tie-break within a group of equal scores.  An
    endpoint claim is kept closed while the tuple's rank at the angle
    stays within 2k (the value the coverage guarantee needs there, and
    robust to the rounding noise of an ordinary two-line crossing); a
    larger jump shrinks the claim by one representable angle.
    """
    n = values.shape[0]
    sweep = ExchangeSweep(values)
    begin = {t: 0.0 for t in sweep.order[:k]}  # the tie-broken order at 0
    end: dict = {}
    prev = frozenset(sweep.order[:k])
    safe = min(2 * k, n)
    for theta, swaps in sweep.batches():
        if not any(i == k - 1 for i, _, _ in swaps):
            continue
        current = frozenset(sweep.order[:k])
        if current == prev:
            continue  # a within-batch blip; nobody truly held the rank
        at_theta = _topk_at(values, theta, safe)
        for t in current - prev:
            if t not in begin:
                begin[t] = theta if t in at_theta else np.nextafter(theta, np.inf)
        for t in prev - current:
            end[t] = theta if t in at_theta else np.nextafter(theta, -np.inf)
        prev = current
    at_end = _topk_at(values, HALF_PI, safe)
    for t in prev:
        end[t] = HALF_PI if t in at_end else np.nextafter(HALF_PI, -np.inf)
    for t in _topk_at(values, HALF_PI, k) - prev:
        begin.setdefault(t, HALF_PI)  # in the top k only at the very endpoint
        end[t] = HALF_PI
    return [AngularRange(t, begin[t], end[t])
            for t in sorted(begin) if t in end and begin[t] <= end[t]]


def _topk_at(values: np.ndarray, theta: float, k: int) -> frozenset:
    """Tie-broken top-k ids at one exact angle."""
    scores = values[:, 0] * np.cos(theta) + values[:, 1] * np.sin(theta)
    return frozenset(_select_top_k(scores, k).tolist())


def _min_member_rank_at(values: np.ndarray, theta: float,
                        members: np.ndarray) -> int:
    """Best tie-broken member rank at one exact angle."""
    scores = values[:, 0] * np.cos(theta) + values[:, 1] * np.sin(theta)
    member_scores = scores[members]
    best_col = int(np.argmax(member_scores))  # first max = smallest id
    best_id = int(members[best_col])
    best = member_scores[best_col]
    ids = np.arange(values.shape[0])
    return int(1 + np.count_nonzero(scores > best)
               + np.count_nonzero((scores == best) & (ids < best_id)))


def _find_ranges_trajectory(values: np.ndarray, k: int) -> List[AngularRange]:
    """Per-tuple rank trajectories, vectorized over the other tuples.

    A tuple's rank changes by +-1 at each of its pairwise crossing angles,
    so its trajectory is a prefix sum over the sorted crossings.  Tuples
    with at least k dominators can never reach the top k and are skipped;
    the dominator counts come from a single Fenwick-tree pass.
    """
    n = values.shape[0]
    x1, x2 = values[:, 0], values[:, 1]
    ids = np.arange(n)
    if k >= n:
        return [AngularRange(t, 0.0, HALF_PI) for t in range(n)]
    candidates = np.flatnonzero(_dominator_counts(values) < k)
    out: List[AngularRange] = []
    for t in candidates:
        du = x1 - x1[t]
        dv = x2 - x2[t]
        # limit rank just after 0 and tie-broken ranks at the exact endpoints
        rank0 = 1 + int(
            np.count_nonzero(du > 0)
            + np.count_nonzero((du == 0) & (dv > 0))
            + np.count_nonzero((du == 0) & (dv == 0) & (ids < t))
        )
        rank_at_0 = 1 + int(np.count_nonzero(du > 0)
                            + np.count_nonzero((du == 0) & (ids < t)))
        rank_at_end = 1 + int(np.count_nonzero(dv > 0)
                              + np.count_nonzero((dv == 0) & (ids < t)))
        crossing = ((du > 0) & (dv < 0)) | ((du < 0) & (dv > 0))
        angles = np.arctan(du[crossing] / -dv[crossing])
        deltas = np.where(dv[crossing] > 0, 1, -1)
        sorter = np.argsort(angles, kind="stable")
        angles = angles[sorter]
        ranksums = rank0 + np.cumsum(deltas[sorter])
        # take the state after all events at equal angles
        if angles.size:
            last = np.flatnonzero(np.diff(angles) > 0)
            last = np.concatenate([last, [angles.size - 1]])
            angles = angles[last]
            ranksums = ranksums[last]
        states = np.concatenate([[rank0], ranksums])
        inside = states <= k
        if not (inside.any() or rank_at_0 <= k or rank_at_end <= k):
            continue
        if rank_at_0 <= k:
            b = 0.0
        elif inside[0]:
            # keep the claim closed unless a tie group pushes the rank at
            # the exact endpoint beyond what the coverage guarantee allows
            b = 0.0 if rank_at_0 <= 2 * k else float(np.nextafter(0.0, np.inf))
        elif inside.any():
            b = float(angles[np.flatnonzero(inside)[0] - 1])
        else:
            b = HALF_PI  # in the top k only at the very endpoint
        if rank_at_end <= k:
            e = HALF_PI
        elif inside[-1]:
            e = HALF_PI if rank_at_end <= 2 * k \
                else float(np.nextafter(HALF_PI, -np.inf))
        elif inside.any():
            exits = np.flatnonzero(inside[:-1] & ~inside[1:])
            e = float(angles[exits[-1]])
        else:
            e = 0.0  # in the top k only at angle 0 exactly
        if b <= e:
            out.append(AngularRange(int(t), b, e))
    return out


def _dominator_counts(values: np.ndarray) -> np.ndarray:
    """For each tuple, how many others are >= on both attributes (one strictly)."""
    n = values.shape[0]
    x1, x2 = values[:, 0], values[:, 1]
    x2_rank = np.searchsorted(np.sort(np.unique(x2)), x2)
    size = x2_rank.max() + 2
    tree = np.zeros(size + 1, dtype=np.int64)

    def add(pos):
        pos += 1
        while pos <= size:
            tree[pos] += 1
            pos += pos & (-pos)

    def count_le(pos):  # processed entries with rank <= pos
        pos += 1
        total = 0
        while pos > 0:
            total += tree[pos]
            pos -= pos & (-pos)
        return total

    dom = np.zeros(n, dtype=np.int64)
    order = np.lexsort((x2, x1))[::-1]  # x1 desc, x2 desc within ties
    processed = 0
    i = 0
    while i < n:
        j = i
        while j < n and x1[order[j]] == x1[order[i]]:
            j += 1
        group = order[i:j]
        for t in group:
            dom[t] = processed - count_le(x2_rank[t] - 1)
        # within the equal-x1 group only strictly larger x2 dominates
        group_x2 = np.sort(x2[group])
        for t in group:
            dom[t] += group.size - np.searchsorted(group_x2, x2[t], side="right")
        for t in group:
            add(x2_rank[t])
        processed += group.size
        i = j
    return dom


class UncoveredIntervals:
    """The not-yet-covered part of an angle span, as disjoint closed intervals."""

    def __init__(self, lo: float, hi: float):
        self.intervals: List[List[float]] = [[lo, hi]]

    @property
    def total(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)

    def boundaries(self) -> List[Tuple[float, str]]:
        out = []
        for lo, hi in self.intervals:
            out.append((lo, "begin"))
            out.append((hi, "end"))
        return out

    def starts_ends(self) -> Tuple[np.ndarray, np.ndarray]:
        if not self.intervals:
            return np.empty(0), np.empty(0)
        arr = np.asarray(self.intervals)
        return arr[:, 0], arr[:, 1]

    def subtract(self, b: float, e: float) -> None:
        """Remove the closed interval [b, e]; tiny leftovers vanish.

        Leftovers up to COVER_SLACK wide are dropped: a zero-length
        leftover sits on a selected range's closed endpoint, and the
        one-ulp residues around score ties are handled by the tie-angle
        patching in the solver.
        """
        updated: List[List[float]] = []
        for lo, hi in self.intervals:
            if e < lo or b > hi:
                updated.append([lo, hi])
                continue
            if lo < b:
                updated.append([lo, b])
            if e < hi:
                updated.append([e, hi])
        self.intervals = [iv for iv in updated if iv[1] - iv[0] > COVER_SLACK]


def cover_2d(ranges: List[AngularRange], span: Tuple[float, float] = (0.0, HALF_PI)) -> frozenset:
    """Minimum-size cover of the span by the given closed ranges.

    The maximum-uncovered-coverage greedy (ties to the smaller tuple id)
    is tried first and kept when it achieves the minimum possible count;
    a long mid-span range can bait that order into two extra flank picks,
    in which case the classic furthest-reach sweep (always minimum) is
    returned instead.  Either way the result covers the span with the
    fewest ranges.
    """
    if span[1] <= span[0]:
        return frozenset()
    if not ranges:
        raise UncoverableSpace("no ranges supplied")
    greedy = _max_coverage_cover(ranges, span)
    sweep = _furthest_reach_cover(ranges, span)
    return greedy if len(greedy) <= len(sweep) else sweep


def _max_coverage_cover(ranges, span) -> frozenset:
    """Repeatedly take the range covering the most uncovered space.

    Candidate coverage is measured against the single uncovered interval
    the range meets, located by binary search; when ranges come from
    ``find_ranges`` a candidate never straddles two uncovered intervals,
    because the gap between them was covered by an earlier, longer pick.
    """
    ranges = sorted(ranges, key=lambda r: r.tuple_id)
    uncovered = UncoveredIntervals(*span)
    cand_b = np.array([r.begin for r in ranges])
    cand_e = np.array([r.end for r in ranges])
    cand_id = np.array([r.tuple_id for r in ranges])
    active = np.ones(len(ranges), dtype=bool)
    selected = set()
    while uncovered.intervals:
        if not active.any():
            raise UncoverableSpace("ranges exhausted with space uncovered")
        starts, ends = uncovered.starts_ends()
        idx = np.searchsorted(ends, cand_b, side="left")
        idx_c = np.minimum(idx, len(ends) - 1)
        overlap = np.minimum(cand_e, ends[idx_c]) - np.maximum(cand_b, starts[idx_c])
        coverage = np.where(active & (idx < len(ends)), np.maximum(overlap, 0.0), -1.0)
        best = int(np.argmax(coverage))
        if coverage[best] <= 0.0:
            raise UncoverableSpace("no candidate range covers the remaining space")
        uncovered.subtract(cand_b[best], cand_e[best])
        selected.add(int(cand_id[best]))
        active[best] = False
    return frozenset(selected)


def _furthest_reach_cover(ranges, span) -> frozenset:
    """Left-to-right optimal cover: always extend past the first uncovered
    point as far as possible (ties to the smaller tuple id)."""
    order = sorted(ranges, key=lambda r: (r.begin, -r.end, r.tuple_id))
    selected = set()
    current = span[0]
    i = 0
    n = len(order)
    while current < span[1] - COVER_SLACK:
        best_end = current
        best_id = None
        while i < n and order[i].begin <= current + COVER_SLACK:
            r = order[i]
            if r.end > best_end or (r.end == best_end and best_id is not None
                                    and r.tuple_id < best_id):
                best_end = r.end
                best_id = r.tuple_id
            i += 1
        if best_id is None or best_end <= current:
            raise UncoverableSpace(
                f"no range covers the space just after angle {current!r}")
        selected.add(best_id)
        current = best_end
    return frozenset(selected)


def rrr_2d(dataset: Dataset, k: int, method: str = "auto") -> Representative:
    """Top-k range computation followed by the minimum interval cover.

    The output is never larger than the optimal representative for
    rank-regret k, and its exact rank-regret is at most 2k.  The interior
    of every selected range is within 2k by the endpoint-anchor argument;
    the finitely many range endpoints (where score ties can reshuffle
    ranks by id) are verified directly and patched with a top-k holder
    when the data is degenerate enough to need it (never, in general
    position).
    """
    ranges = find_ranges(dataset, k, method=method)
    members = set(cover_2d(ranges))
    selected = [r for r in ranges if r.tuple_id in members]
    check_angles = {0.0, HALF_PI}
    check_angles.update(r.begin for r in selected)
    check_angles.update(r.end for r in selected)
    member_arr = np.array(sorted(members))
    for theta in sorted(check_angles):
        if _min_member_rank_at(dataset.values, theta, member_arr) > 2 * k:
            members.add(min(_topk_at(dataset.values, theta, k)))
            member_arr = np.array(sorted(members))
    return Representative(members=frozenset(members), algorithm="2drrr",
                          params={"k": k})


def enumerate_ksets_2d(dataset: Dataset, k: int) -> KSetCollection:
    """All distinct top-k outcomes along the sweep, in order of appearance.

    The top-k set changes exactly when an exchange crosses the rank-k
    boundary; each recorded set carries a witness function from the middle
    of the angle interval on which it is the top-k.
    """
    _require_2d(dataset)
    if not 1 <= k <= dataset.n:
        raise KOutOfRange(f"k={k} not in [1, {dataset.n}]")
    sweep = ExchangeSweep(dataset.values)
    segments: List[Tuple[frozenset, float]] = [(frozenset(sweep.order[:k]), 0.0)]
    for theta, swaps in sweep.batches():
        if any(i == k - 1 for i, _, _ in swaps):
            current = frozenset(sweep.order[:k])
            if current != segments[-1][0]:
                segments.append((current, theta))
    discovered: dict = {}
    for j, (members, start) in enumerate(segments):
        stop = segments[j + 1][1] if j + 1 < len(segments) else HALF_PI
        if stop <= start:
            continue  # zero-width segment from concurrent boundary events
        if members not in discovered:
            witness = angles_to_weights([(start + stop) / 2.0])
            discovered[members] = KSet(members, witness)
    return KSetCollection(sets=list(discovered.values()), k=k, complete=True,
                          d=2)


def exact_rank_regret_2d(dataset: Dataset, subset) -> int:
    """max over theta of (best rank among ``subset`` members), exactly.

    Member ranks only change at exchange events involving a member, so one
    sweep visits every distinct value: the state after each such event
    batch covers the open intervals, and the batch angle itself (where
    score ties resolve by id) plus the two endpoint angles are measured
    directly.
    """
    _require_2d(dataset)
    members = sorted({int(t) for t in subset})
    if not members:
        raise EmptySubset("subset must contain at least one tuple id")
    if not all(0 <= t < dataset.n for t in members):
        raise ValueError("subset contains unknown tuple ids")
    sweep = ExchangeSweep(dataset.values)
    member_arr = np.asarray(members)
    is_member = np.zeros(dataset.n, dtype=bool)
    is_member[member_arr] = True
    worst = int(sweep.position[member_arr].min()) + 1  # the rank at angle 0
    for theta, swaps in sweep.batches():
        if any(is_member[upper] or is_member[lower] for _, upper, lower in swaps):
            worst = max(worst,
                        _min_member_rank_at(dataset.values, theta, member_arr),
                        int(sweep.position[member_arr].min()) + 1)
    worst = max(worst, _min_member_rank_at(dataset.values, HALF_PI, member_arr))
    return worst


def _require_2d(dataset: Dataset) -> None:
    if dataset.d != 2:
        raise DimensionNot2D(f"operation requires d=2, got d={dataset.d}")
