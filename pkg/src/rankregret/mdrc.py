"""Recursive partitioning of the function space into angle boxes.

Ranking functions in d dimensions form the (d-1)-dimensional angle box
[0, pi/2]^(d-1).  A box whose corner functions share a common top-k tuple
assigns that tuple to every function inside it (its rank anywhere in the
box is at most d*k, by chaining the between-functions rank bound across
the box faces); otherwise the box is bisected at the midpoint of the
round-robin dimension.  Corner top-k sets are memoized: children share
corners with their parents, so this is where the time goes.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .core import Dataset, Representative, angles_to_weights, top_k
from .errors import KOutOfRange

log = logging.getLogger(__name__)

#: default recursion cap: 48 halvings per angle dimension
DEPTH_CAP_PER_DIM = 48


@dataclass(frozen=True)
class HyperRectangle:
    """A box of angles: d-1 closed intervals inside [0, pi/2]."""

    ranges: Tuple[Tuple[float, float], ...]
    level: int = 0

    @property
    def split_dim(self) -> int:
        return self.level % len(self.ranges)


def corners(rect: HyperRectangle) -> List[Tuple[float, ...]]:
    """All 2^(d-1) corner angle vectors, in lexicographic endpoint order."""
    return list(itertools.product(*rect.ranges))


@dataclass(frozen=True)
class LeafBox:
    """A leaf of the partition: the box, its tuple, and whether the d*k
    rank bound applies (False only for depth-cap fallback leaves)."""

    box: HyperRectangle
    assigned: int
    guaranteed: bool


def root_box(d: int) -> HyperRectangle:
    from .core import HALF_PI
    return HyperRectangle(tuple((0.0, HALF_PI) for _ in range(d - 1)))


def partition_function_space(dataset: Dataset, k: int,
                             depth_cap: Optional[int] = None):
    """Partition the angle box until every leaf has an assigned tuple.

    Returns (leaves, tree): the list of leaf boxes and a JSON-ready nested
    tree of the recursion (every internal node has exactly two children).
    At ``depth_cap`` a box is closed by assigning the top-1 tuple of its
    centroid function; such leaves are marked as not carrying the rank
    bound.
    """
    if dataset.d < 2:
        raise ValueError("partitioning requires d >= 2")
    if not 1 <= k <= dataset.n:
        raise KOutOfRange(f"k={k} not in [1, {dataset.n}]")
    if depth_cap is None:
        depth_cap = DEPTH_CAP_PER_DIM * (dataset.d - 1)

    memo: dict = {}

    def topk_at(angle: Tuple[float, ...]) -> frozenset:
        cached = memo.get(angle)
        if cached is None:
            cached = top_k(dataset, angles_to_weights(angle), k)
            memo[angle] = cached
        return cached

    leaves: List[LeafBox] = []

    def recurse(rect: HyperRectangle) -> dict:
        node = {"ranges": [list(r) for r in rect.ranges], "depth": rect.level}
        shared = frozenset.intersection(*(topk_at(c) for c in corners(rect)))
        if shared:
            assigned = min(shared)
            leaves.append(LeafBox(rect, assigned, True))
            node["assigned"] = assigned
            node["guaranteed"] = True
            return node
        if rect.level >= depth_cap:
            centroid = tuple((lo + hi) / 2.0 for lo, hi in rect.ranges)
            assigned = min(top_k(dataset, angles_to_weights(centroid), 1))
            log.warning("depth cap %d reached; assigning centroid top-1 %d "
                        "without the rank bound", depth_cap, assigned)
            leaves.append(LeafBox(rect, assigned, False))
            node["assigned"] = assigned
            node["guaranteed"] = False
            return node
        i = rect.split_dim
        lo, hi = rect.ranges[i]
        mid = (lo + hi) / 2.0
        left = HyperRectangle(
            rect.ranges[:i] + ((lo, mid),) + rect.ranges[i + 1:], rect.level + 1)
        right = HyperRectangle(
            rect.ranges[:i] + ((mid, hi),) + rect.ranges[i + 1:], rect.level + 1)
        node["children"] = [recurse(left), recurse(right)]
        return node

    tree = recurse(root_box(dataset.d))
    return leaves, tree


def mdrc(dataset: Dataset, k: int, depth_cap: Optional[int] = None) -> Representative:
    """Function-space partitioning representative.

    The deduplicated set of leaf assignments; its rank-regret is at most
    d*k when every leaf carries the bound (in practice usually around k).
    """
    leaves, _ = partition_function_space(dataset, k, depth_cap=depth_cap)
    members = frozenset(leaf.assigned for leaf in leaves)
    return Representative(
        members=members,
        algorithm="mdrc",
        params={"k": k, "depth_cap": depth_cap, "leaves": len(leaves)},
        bound_guaranteed=all(leaf.guaranteed for leaf in leaves),
    )
