"""A small dense two-phase simplex solver.

Solves   maximize c.x   subject to   A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0
with all right-hand sides non-negative.  Pivoting uses Bland's rule
throughout, which makes the solver deterministic and immune to cycling on
the heavily degenerate separation problems it is used for (every
inequality row has b = 0).  Problem sizes here are tiny (d + a handful of
variables, n + 1 rows), so a dense tableau is the right tool.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-7


@dataclass
class SimplexResult:
    status: str  # "optimal" | "infeasible" | "unbounded" | "iteration_limit"
    x: Optional[np.ndarray]
    objective: float

    @property
    def ok(self) -> bool:
        return self.status == "optimal"


def simplex_max(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None,
                max_iter: Optional[int] = None) -> SimplexResult:
    c = np.asarray(c, dtype=np.float64)
    n = c.size
    A_ub = np.zeros((0, n)) if A_ub is None else np.asarray(A_ub, dtype=np.float64)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=np.float64)
    A_eq = np.zeros((0, n)) if A_eq is None else np.asarray(A_eq, dtype=np.float64)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=np.float64)
    if b_ub.min(initial=0.0) < 0 or b_eq.min(initial=0.0) < 0:
        raise ValueError("right-hand sides must be non-negative")

    m_ub, m_eq = A_ub.shape[0], A_eq.shape[0]
    m = m_ub + m_eq
    # columns: [x (n) | slack (m_ub) | artificial (m_eq) | rhs]
    n_slack = m_ub
    n_art = m_eq
    width = n + n_slack + n_art + 1
    T = np.zeros((m + 1, width))
    T[:m_ub, :n] = A_ub
    T[:m_ub, n:n + n_slack] = np.eye(m_ub)
    T[:m_ub, -1] = b_ub
    T[m_ub:m, :n] = A_eq
    T[m_ub:m, n + n_slack:n + n_slack + n_art] = np.eye(m_eq)
    T[m_ub:m, -1] = b_eq
    basis = np.concatenate([
        np.arange(n, n + n_slack),
        np.arange(n + n_slack, n + n_slack + n_art),
    ]).astype(np.int64)

    if max_iter is None:
        max_iter = 2000 + 50 * (m + n)

    if n_art:
        # phase 1: maximize -(sum of artificials)
        obj = np.zeros(width)
        obj[n + n_slack:n + n_slack + n_art] = -1.0
        T[-1, :] = obj
        for i in range(m):
            if obj[basis[i]] != 0.0:
                T[-1, :] -= obj[basis[i]] * T[i, :]
        status = _pivot_loop(T, basis, lambda j: j < width - 1, max_iter)
        if status != "optimal":
            return SimplexResult(status, None, np.nan)
        # the objective row's rhs is the negative of the phase-1 optimum
        if T[-1, -1] > FEAS_TOL:
            return SimplexResult("infeasible", None, np.nan)
        _evict_artificials(T, basis, n + n_slack)

    # phase 2 on the real objective, restricted to non-artificial columns
    obj = np.zeros(width)
    obj[:n] = c
    T[-1, :] = obj
    for i in range(m):
        if obj[basis[i]] != 0.0:
            T[-1, :] -= obj[basis[i]] * T[i, :]
    allowed = lambda j: j < n + n_slack
    status = _pivot_loop(T, basis, allowed, max_iter)
    if status != "optimal":
        return SimplexResult(status, None, np.nan)

    x = np.zeros(n)
    for i, b in enumerate(basis):
        if b < n:
            x[b] = T[i, -1]
    return SimplexResult("optimal", x, float(c @ x))


def _pivot_loop(T, basis, allowed, max_iter: int) -> str:
    """Run Bland-rule pivots until optimal, unbounded, or out of budget.

    The objective row holds reduced costs for maximization: optimal when
    none exceeds the tolerance.  ``allowed`` filters enterable columns.
    """
    m = T.shape[0] - 1
    for _ in range(max_iter):
        enter = -1
        for j in range(T.shape[1] - 1):
            if allowed(j) and T[-1, j] > PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            return "optimal"
        best_ratio = np.inf
        leave = -1
        for i in range(m):
            a = T[i, enter]
            if a > PIVOT_TOL:
                ratio = T[i, -1] / a
                if ratio < best_ratio - PIVOT_TOL or (
                    abs(ratio - best_ratio) <= PIVOT_TOL
                    and (leave < 0 or basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(T, basis, leave, enter)
    return "iteration_limit"


def _pivot(T, basis, row: int, col: int) -> None:
    T[row, :] /= T[row, col]
    for i in range(T.shape[0]):
        if i != row and T[i, col] != 0.0:
            T[i, :] -= T[i, col] * T[row, :]
    basis[row] = col


def _evict_artificials(T, basis, n_real: int) -> None:
    """Pivot zero-valued artificial basics onto real columns when possible.

    A row with no usable real column is linearly dependent; zeroing it out
    is safe because its basic artificial is 0.
    """
    m = T.shape[0] - 1
    for i in range(m):
        if basis[i] >= n_real:
            pivot_col = -1
            for j in range(n_real):
                if abs(T[i, j]) > PIVOT_TOL:
                    pivot_col = j
                    break
            if pivot_col >= 0:
                _pivot(T, basis, i, pivot_col)
            else:
                T[i, :] = 0.0
