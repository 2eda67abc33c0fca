"""Dataset model, linear ranking functions, scoring, and angle geometry.

Tuples are rows of a normalized value matrix; the tuple id is the row
index (0-based, dense).  A linear ranking function is a non-negative
weight vector, equivalently an origin-starting ray identified by d-1
angles in [0, pi/2].  Ranking is by descending score with ties broken by
ascending tuple id, uniformly across the whole package.
"""

import hashlib
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    AngleOutOfRange,
    ConstantAttribute,
    DimensionMismatch,
    DimensionNot2D,
    KOutOfRange,
    NonFiniteValue,
)

HALF_PI = float(np.pi / 2)

#: absolute tolerance for score and angle comparisons on normalized data
NUMERIC_TOL = 1e-9


class Dataset:
    """An immutable n x d matrix of tuples with values normalized to [0, 1].

    Tuple ids are the row indices.  The optional ``directions`` record the
    per-attribute preference used during ingestion; they play no role in
    any computation afterwards.
    """

    __slots__ = ("values", "directions")

    def __init__(self, values, directions: Optional[Sequence[str]] = None):
        arr = np.array(values, dtype=np.float64, copy=True)
        if arr.ndim != 2:
            raise ValueError("dataset values must be a 2-D array")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("dataset must have at least one row and one column")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteValue("dataset contains non-finite values")
        if arr.min() < -NUMERIC_TOL or arr.max() > 1 + NUMERIC_TOL:
            raise ValueError("dataset values must lie in [0, 1]; normalize first")
        arr.setflags(write=False)
        self.values = arr
        self.directions = tuple(directions) if directions is not None else None

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def fingerprint(self) -> str:
        """Short content hash used to tag evaluation reports."""
        digest = hashlib.sha256(self.values.tobytes()).hexdigest()
        return f"n{self.n}-d{self.d}-{digest[:12]}"

    def __repr__(self):
        return f"Dataset(n={self.n}, d={self.d})"


class LinearFunction:
    """A ranking function ``score(t) = sum_i w_i * t[i]`` with w >= 0.

    At least one weight must be positive.  Scores are scale invariant:
    ``c * w`` induces the same ranking for any c > 0.
    """

    __slots__ = ("weights",)

    def __init__(self, weights):
        w = np.array(weights, dtype=np.float64, copy=True)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("weights must be a 1-D vector")
        if not np.all(np.isfinite(w)):
            raise NonFiniteValue("weights contain non-finite values")
        if w.min() < 0:
            raise ValueError("weights must be non-negative")
        if not np.any(w > 0):
            raise ValueError("at least one weight must be positive")
        w.setflags(write=False)
        self.weights = w

    @property
    def d(self) -> int:
        return self.weights.size

    def score(self, values) -> np.ndarray | float:
        """Dot product against a single tuple (1-D) or a value matrix (2-D)."""
        arr = np.asarray(values, dtype=np.float64)
        if arr.shape[-1] != self.d:
            raise DimensionMismatch(
                f"function has d={self.d} but values have d={arr.shape[-1]}"
            )
        return arr @ self.weights

    def __repr__(self):
        return f"LinearFunction({np.array2string(self.weights, precision=6)})"


@dataclass(frozen=True)
class RankedList:
    """A full ordering of tuple ids, best first, under ``function``."""

    order: np.ndarray
    function: LinearFunction


@dataclass(frozen=True)
class Representative:
    """A solver output: member ids plus provenance.

    ``bound_guaranteed`` is False only when a partitioning run hit its depth
    cap and fell back to centroid assignment for some box.  Evaluation
    results are attached separately (see the evaluate module).
    """

    members: frozenset
    algorithm: str
    params: dict = field(default_factory=dict)
    seed: Optional[int] = None
    bound_guaranteed: bool = True
    evaluation: Optional[object] = None

    @property
    def size(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list:
        return sorted(self.members)


def normalize(raw, directions: Sequence[str]) -> Dataset:
    """Map raw attribute columns onto [0, 1] respecting preference direction.

    Higher-preferred columns map as (v - min) / (max - min); lower-preferred
    as (max - v) / (max - min), so larger normalized values are always
    better.  Constant columns are rejected: they carry no ranking
    information and the affine map is undefined.
    """
    arr = np.array(raw, dtype=np.float64, copy=True)
    if arr.ndim != 2 or arr.shape[0] < 1:
        raise ValueError("raw data must be a non-empty 2-D table")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue("raw data contains non-finite values")
    dirs = [_parse_direction(x) for x in directions]
    if len(dirs) != arr.shape[1]:
        raise DimensionMismatch(
            f"{len(dirs)} directions given for {arr.shape[1]} columns"
        )
    lo = arr.min(axis=0)
    hi = arr.max(axis=0)
    constant = np.flatnonzero(hi == lo)
    if constant.size:
        raise ConstantAttribute(f"column {constant[0]} is constant (max == min)")
    span = hi - lo
    out = (arr - lo) / span
    for j, direction in enumerate(dirs):
        if direction == "lower":
            out[:, j] = (hi[j] - arr[:, j]) / span[j]
    return Dataset(out, directions=dirs)


def _parse_direction(value: str) -> str:
    v = str(value).strip().lower()
    if v in ("higher", "high", "h", "+"):
        return "higher"
    if v in ("lower", "low", "l", "-"):
        return "lower"
    raise ValueError(f"unknown preference direction {value!r}")


def score(values, function: LinearFunction):
    """Score one tuple (or a matrix of tuples) under ``function``."""
    return function.score(values)


def rank_list(dataset: Dataset, function: LinearFunction) -> RankedList:
    """Full ordering of the dataset, best first, ties by ascending id."""
    scores = function.score(dataset.values)
    ids = np.arange(dataset.n)
    order = np.lexsort((ids, -scores))
    return RankedList(order=order, function=function)


def ranks(dataset: Dataset, function: LinearFunction, ids=None) -> np.ndarray:
    """Ranks (1-based) of the given tuple ids; all tuples when ids is None.

    rank(t) = 1 + #{u : score(u) > score(t)} + #{u : tie with t and u < t}.
    """
    scores = function.score(dataset.values)
    if ids is None:
        order = np.lexsort((np.arange(dataset.n), -scores))
        out = np.empty(dataset.n, dtype=np.int64)
        out[order] = np.arange(1, dataset.n + 1)
        return out
    ids = np.atleast_1d(np.asarray(ids, dtype=np.int64))
    all_ids = np.arange(dataset.n)
    out = np.empty(ids.size, dtype=np.int64)
    for j, t in enumerate(ids):
        s = scores[t]
        out[j] = 1 + np.count_nonzero(scores > s) + np.count_nonzero(
            (scores == s) & (all_ids < t)
        )
    return out


def top_k(dataset: Dataset, function: LinearFunction, k: int) -> frozenset:
    """The ids of the k best tuples under ``function`` (tie rule applied)."""
    if not 1 <= k <= dataset.n:
        raise KOutOfRange(f"k={k} not in [1, {dataset.n}]")
    scores = function.score(dataset.values)
    return frozenset(_select_top_k(scores, k).tolist())


def _select_top_k(scores: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest scores, ties resolved by ascending index.

    O(n) selection: strictly-above entries are always in; the remainder is
    filled from the boundary-score ties in ascending id order.
    """
    n = scores.size
    if k >= n:
        return np.arange(n)
    kth = np.partition(scores, n - k)[n - k]
    above = np.flatnonzero(scores > kth)
    need = k - above.size
    ties = np.flatnonzero(scores == kth)[:need]
    return np.concatenate([above, ties])


def angles_to_weights(angles) -> LinearFunction:
    """Spherical-coordinate map from d-1 angles in [0, pi/2] to unit weights.

    w1 = cos(a1), w2 = sin(a1) cos(a2), ..., wd = sin(a1) ... sin(a_{d-1}).
    Bijective on the open orthant and exact on axis rays at boundary angles.
    """
    a = np.atleast_1d(np.asarray(angles, dtype=np.float64))
    if a.ndim != 1 or a.size < 1:
        raise ValueError("angles must be a 1-D vector of length d-1 >= 1")
    if np.any(a < -NUMERIC_TOL) or np.any(a > HALF_PI + NUMERIC_TOL):
        raise AngleOutOfRange("angles must lie in [0, pi/2]")
    a = np.clip(a, 0.0, HALF_PI)
    sines = np.concatenate(([1.0], np.cumprod(np.sin(a))))
    cosines = np.concatenate((np.cos(a), [1.0]))
    return LinearFunction(sines * cosines)


def weights_to_angles(function: LinearFunction | np.ndarray) -> np.ndarray:
    """Inverse of :func:`angles_to_weights` for non-negative weight vectors.

    The input need not be unit norm (scale does not affect the ray).  A zero
    suffix maps to zero angles, matching the axis-ray convention.
    """
    w = function.weights if isinstance(function, LinearFunction) else np.asarray(function, float)
    w = w / np.linalg.norm(w)
    d = w.size
    angles = np.zeros(d - 1)
    for i in range(d - 1):
        tail = np.linalg.norm(w[i:])
        if tail <= 0.0:
            break  # remaining angles stay 0
        angles[i] = np.arccos(np.clip(w[i] / tail, -1.0, 1.0))
    return angles


def exchange_angle(ti, tj) -> Optional[float]:
    """Angle in (0, pi/2) where two 2-D tuples score equally, if any.

    The crossing exists exactly when one tuple is strictly better on the
    first attribute and the other strictly better on the second; under
    dominance (or boundary-only ties) there is no crossing in the open
    quadrant and None is returned.  Symmetric in its arguments.
    """
    a = np.asarray(ti, dtype=np.float64)
    b = np.asarray(tj, dtype=np.float64)
    if a.shape != (2,) or b.shape != (2,):
        raise DimensionNot2D("exchange_angle is defined for 2-D tuples only")
    num = a[0] - b[0]
    den = b[1] - a[1]
    if num == 0.0 or den == 0.0 or (num > 0) != (den > 0):
        return None
    return float(np.arctan(num / den))
