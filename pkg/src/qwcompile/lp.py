"""Dense primal simplex for small LPs: maximize c.x s.t. Ax <= b, x >= 0.

The W1 dual always has b >= 0, so the all-slack basis is feasible and no
phase-1 is needed. Pivoting uses Dantzig's rule for speed and switches to
Bland's rule after a streak of degenerate pivots, which restores the
finite-termination guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-9

#: consecutive degenerate pivots tolerated before switching to Bland's rule
_DEGENERATE_STREAK = 12


class SimplexIterationError(RuntimeError):
    """Iteration cap 50*(V+R) exceeded."""


@dataclass
class LinearProgram:
    """Maximize c.x subject to A x <= b, x >= 0, with b >= 0."""

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        self.A = np.atleast_2d(np.asarray(self.A, dtype=float))
        self.b = np.asarray(self.b, dtype=float)
        rows, cols = self.A.shape
        if self.c.shape != (cols,) or self.b.shape != (rows,):
            raise ValueError(
                f"shape mismatch: c {self.c.shape}, A {self.A.shape}, b {self.b.shape}"
            )
        if not (np.isfinite(self.c).all() and np.isfinite(self.A).all() and np.isfinite(self.b).all()):
            raise ValueError("LP data must be finite")
        if (self.b < 0).any():
            raise ValueError("b must be componentwise >= 0")


@dataclass
class LpSolution:
    x: np.ndarray
    objective_value: float
    status: str  # "optimal" | "unbounded" | "infeasible"
    iterations: int


def solve_simplex(lp: LinearProgram, tol: float = PIVOT_TOL) -> LpSolution:
    """Solve by the standard-form primal simplex on a dense tableau.

    Returns a vertex solution when the LP is bounded; at a non-degenerate
    vertex x has at most R non-zero entries. An unbounded ray yields
    status="unbounded" (which signals a bug in W1 LP construction, since
    that LP is always bounded).
    """
    rows, cols = lp.A.shape
    total = cols + rows
    tableau = np.zeros((rows + 1, total + 1))
    tableau[:rows, :cols] = lp.A
    tableau[:rows, cols:total] = np.eye(rows)
    tableau[:rows, -1] = lp.b
    tableau[-1, :cols] = -lp.c
    basis = np.arange(cols, total)

    max_iter = 50 * (cols + rows)
    degenerate_streak = 0
    iterations = 0
    while True:
        reduced = tableau[-1, :total]
        if degenerate_streak < _DEGENERATE_STREAK:
            enter = int(np.argmin(reduced))
            if reduced[enter] >= -tol:
                break
        else:
            candidates = np.nonzero(reduced < -tol)[0]
            if candidates.size == 0:
                break
            enter = int(candidates[0])

        column = tableau[:rows, enter]
        positive = column > tol
        if not positive.any():
            x = _extract(tableau, basis, rows, cols)
            return LpSolution(x, float("inf"), "unbounded", iterations)

        rows_pos = np.nonzero(positive)[0]
        ratios = tableau[rows_pos, -1] / column[rows_pos]
        best = ratios.min()
        ties = rows_pos[ratios <= best + tol]
        leave = int(ties[np.argmin(basis[ties])])

        degenerate_streak = degenerate_streak + 1 if best <= tol else 0

        pivot = tableau[leave, enter]
        tableau[leave] /= pivot
        factors = tableau[:, enter].copy()
        factors[leave] = 0.0
        tableau -= np.outer(factors, tableau[leave])
        basis[leave] = enter
        iterations += 1
        if iterations > max_iter:
            raise SimplexIterationError(
                f"simplex exceeded {max_iter} iterations on a {rows}x{cols} LP"
            )

    x = _extract(tableau, basis, rows, cols)
    return LpSolution(x, float(tableau[-1, -1]), "optimal", iterations)


def _extract(tableau: np.ndarray, basis: np.ndarray, rows: int, cols: int) -> np.ndarray:
    x = np.zeros(cols)
    for i, var in enumerate(basis):
        if var < cols:
            x[var] = tableau[i, -1]
    return x
