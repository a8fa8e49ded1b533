"""Dense two-phase tableau simplex with Bland's anti-cycling rule.

Solves  maximize c.x  subject to  A.x <= b, x >= 0.  Rows with negative
right-hand sides get artificial variables and a phase-1 feasibility solve.
Pivot choice is Bland's rule throughout (lowest eligible index), so runs
are deterministic and cycling is impossible. Built for desk-scale games's
linear programs, not for sparse or large problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

PIVOT_TOL = 1e-9


class LpError(RuntimeError):
    """Base class for linear-program failures."""


class LpInfeasible(LpError):
    """The constraint polytope is empty."""


class LpUnbounded(LpError):
    """The objective is unbounded above on the feasible region."""


class LpIterationLimit(LpError):
    """Pivot count exceeded the iteration cap."""


@dataclass(frozen=True)
class LpSolution:
    value: float
    x: tuple[float, ...]
    iterations: int


def lp_solve(
    constraints: Sequence[Sequence[float]],
    rhs: Sequence[float],
    objective: Sequence[float],
    max_iters: int = 10000,
) -> LpSolution:
    """Optimal basic solution of  max c.x  s.t.  A.x <= b, x >= 0.

    Raises LpInfeasible, LpUnbounded, or LpIterationLimit.
    """
    m = len(constraints)
    n = len(objective)
    if len(rhs) != m:
        raise ValueError(f"rhs has {len(rhs)} entries, expected {m}")
    for i, row in enumerate(constraints):
        if len(row) != n:
            raise ValueError(f"constraint row {i} has {len(row)} entries, expected {n}")

    # Columns: n decision vars, m slack/surplus vars, then one artificial
    # per negative-rhs row. Rows with b < 0 are negated (slack becomes a
    # surplus with coefficient -1) and given a basic artificial.
    neg_rows = [i for i in range(m) if rhs[i] < 0.0]
    n_art = len(neg_rows)
    width = n + m + n_art
    tableau: list[list[float]] = []
    basis: list[int] = []
    art_col = {}
    for rank, i in enumerate(neg_rows):
        art_col[i] = n + m + rank
    for i in range(m):
        row = [0.0] * (width + 1)
        sign = -1.0 if i in art_col else 1.0
        for j in range(n):
            row[j] = sign * float(constraints[i][j])
        row[n + i] = sign
        row[width] = sign * float(rhs[i])
        if i in art_col:
            row[art_col[i]] = 1.0
            basis.append(art_col[i])
        else:
            basis.append(n + i)
        tableau.append(row)

    iterations = 0

    def objective_row(costs: list[float]) -> list[float]:
        # Reduced costs c_j - z_j, recomputed from scratch each pivot;
        # fine at this scale and immune to incremental drift.
        out = list(costs)
        for i in range(m):
            cb = costs[basis[i]]
            if cb == 0.0:
                continue
            row = tableau[i]
            for j in range(width):
                out[j] -= cb * row[j]
        return out

    def current_value(costs: list[float]) -> float:
        return sum(costs[basis[i]] * tableau[i][width] for i in range(m))

    def pivot(row_i: int, col_j: int) -> None:
        piv = tableau[row_i][col_j]
        row = tableau[row_i]
        inv = 1.0 / piv
        for j in range(width + 1):
            row[j] *= inv
        for i in range(m):
            if i == row_i:
                continue
            factor = tableau[i][col_j]
            if factor == 0.0:
                continue
            other = tableau[i]
            for j in range(width + 1):
                other[j] -= factor * row[j]
        basis[row_i] = col_j

    def run(costs: list[float], allowed: int) -> None:
        # allowed: columns [0, allowed) may enter the basis.
        nonlocal iterations
        while True:
            reduced = objective_row(costs)
            enter = -1
            for j in range(allowed):
                if j not in basis and reduced[j] > PIVOT_TOL:
                    enter = j
                    break
            if enter < 0:
                return
            leave = -1
            best_ratio = 0.0
            for i in range(m):
                a = tableau[i][enter]
                if a > PIVOT_TOL:
                    ratio = tableau[i][width] / a
                    if leave < 0 or ratio < best_ratio - PIVOT_TOL or (
                        abs(ratio - best_ratio) <= PIVOT_TOL
                        and basis[i] < basis[leave]
                    ):
                        leave = i
                        best_ratio = ratio
            if leave < 0:
                raise LpUnbounded("objective unbounded above")
            pivot(leave, enter)
            iterations += 1
            if iterations > max_iters:
                raise LpIterationLimit(f"exceeded {max_iters} simplex pivots")

    if n_art:
        phase1 = [0.0] * width
        for i in neg_rows:
            phase1[art_col[i]] = -1.0
        run(phase1, width)
        if current_value(phase1) < -PIVOT_TOL:
            raise LpInfeasible("constraints admit no feasible point")
        # Pivot surviving artificials out of the basis where possible;
        # a stuck artificial sits at level zero and stays out of phase 2.
        for i in range(m):
            if basis[i] >= n + m:
                swap = next(
                    (
                        j
                        for j in range(n + m)
                        if j not in basis and abs(tableau[i][j]) > PIVOT_TOL
                    ),
                    None,
                )
                if swap is not None:
                    pivot(i, swap)

    phase2 = [float(c) for c in objective] + [0.0] * (m + n_art)
    run(phase2, n + m)

    x = [0.0] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tableau[i][width]
    value = sum(float(c) * xi for c, xi in zip(objective, x))
    return LpSolution(value=value, x=tuple(x), iterations=iterations)


def solve_linear_system(
    matrix: Sequence[Sequence[float]], rhs: Sequence[float]
) -> list[float] | None:
    """Gaussian elimination with partial pivoting; handles non-square systems.

    Returns one solution with free variables pinned to zero, or None when
    the system is inconsistent. Rank decisions use a pivot threshold scaled
    by the largest input magnitude.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [[float(v) for v in row] + [float(r)] for row, r in zip(matrix, rhs)]
    scale = max((abs(v) for row in a for v in row), default=0.0)
    tol = max(scale, 1.0) * 1e-12
    pivot_cols = []
    r = 0
    for c in range(cols):
        best = max(range(r, rows), key=lambda i: abs(a[i][c]), default=None)
        if best is None or abs(a[best][c]) <= tol:
            continue
        a[r], a[best] = a[best], a[r]
        inv = 1.0 / a[r][c]
        for j in range(c, cols + 1):
            a[r][j] *= inv
        for i in range(rows):
            if i == r:
                continue
            factor = a[i][c]
            if factor == 0.0:
                continue
            for j in range(c, cols + 1):
                a[i][j] -= factor * a[r][j]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if abs(a[i][cols]) > tol:
            return None
    x = [0.0] * cols
    for i, c in enumerate(pivot_cols):
        x[c] = a[i][cols]
    return x
