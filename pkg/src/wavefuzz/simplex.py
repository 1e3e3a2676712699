"""Dense two-phase simplex solver for small linear programs.

Minimizes ``objective . x`` over mixed <=/>=/= rows where each variable is
either nonnegative or free. Free variables are split into differences of
nonnegative pairs so the core always works on the standard form, and both
pivot choices follow Bland's rule, which rules out cycling. The programs
this package generates are tiny (a handful of columns, at most a few
hundred rows), so the dense tableau favors robustness over speed.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LESS_EQUAL",
    "GREATER_EQUAL",
    "EQUAL",
    "LinearProgram",
    "InfeasibleError",
    "UnboundedError",
    "solve_lp",
]

LESS_EQUAL = "<="
GREATER_EQUAL = ">="
EQUAL = "="
_SENSES = (LESS_EQUAL, GREATER_EQUAL, EQUAL)

PIVOT_TOL = 1e-10
FEASIBILITY_TOL = 1e-9


class InfeasibleError(Exception):
    """No point satisfies every constraint."""


class UnboundedError(Exception):
    """The objective can be driven to -infinity inside the feasible set."""


@dataclass(frozen=True)
class LinearProgram:
    """min objective.x  s.t.  lhs[i].x (senses[i]) rhs[i], sign rules per column.

    ``free[j]`` marks column j as unrestricted; all other columns require
    x_j >= 0.
    """

    objective: np.ndarray
    lhs: np.ndarray
    senses: tuple[str, ...]
    rhs: np.ndarray
    free: tuple[bool, ...]

    def __post_init__(self) -> None:
        lhs = np.array(self.lhs, dtype=float)
        obj = np.array(self.objective, dtype=float)
        rhs = np.array(self.rhs, dtype=float)
        if lhs.ndim != 2:
            raise ValueError("constraint matrix must be two-dimensional")
        m, n = lhs.shape
        if obj.shape != (n,):
            raise ValueError(f"objective length {obj.size} does not match {n} columns")
        if rhs.shape != (m,):
            raise ValueError(f"rhs length {rhs.size} does not match {m} rows")
        if len(self.senses) != m:
            raise ValueError(f"got {len(self.senses)} senses for {m} rows")
        for s in self.senses:
            if s not in _SENSES:
                raise ValueError(f"unknown constraint sense {s!r}")
        if len(self.free) != n:
            raise ValueError(f"got {len(self.free)} sign rules for {n} columns")
        if not (np.all(np.isfinite(lhs)) and np.all(np.isfinite(obj)) and np.all(np.isfinite(rhs))):
            raise ValueError("linear program contains non-finite entries")
        for a in (lhs, obj, rhs):
            a.flags.writeable = False
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "senses", tuple(self.senses))
        object.__setattr__(self, "free", tuple(bool(f) for f in self.free))

    @property
    def n_rows(self) -> int:
        return self.lhs.shape[0]

    @property
    def n_cols(self) -> int:
        return self.lhs.shape[1]


def _pivot(tableau: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    basis[row] = col


def _run_simplex(tableau: np.ndarray, basis: list[int], allowed: np.ndarray, max_pivots: int) -> None:
    """Pivot to optimality in place; ``allowed`` masks enterable columns."""
    for _ in range(max_pivots):
        reduced = tableau[-1, :-1]
        candidates = np.flatnonzero((reduced < -PIVOT_TOL) & allowed)
        if candidates.size == 0:
            return
        col = int(candidates[0])  # Bland: lowest eligible index enters
        column = tableau[:-1, col]
        rows = np.flatnonzero(column > PIVOT_TOL)
        if rows.size == 0:
            raise UnboundedError("objective is unbounded below")
        ratios = tableau[:-1, -1][rows] / column[rows]
        best = ratios.min()
        tied = rows[ratios == best]
        leave = int(tied[np.argmin([basis[r] for r in tied])])  # Bland tie-break
        _pivot(tableau, basis, leave, col)
    raise RuntimeError(f"simplex did not converge within {max_pivots} pivots")


def solve_lp(lp: LinearProgram, max_pivots: int = 50_000) -> tuple[np.ndarray, float]:
    """Solve ``lp``, returning (optimal solution vector, objective value).

    The solution is an optimal basic feasible point of the standard-form
    program mapped back to the original variables. Raises InfeasibleError
    when phase 1 cannot zero the artificials and UnboundedError when phase 2
    finds an improving ray.
    """
    m, n = lp.n_rows, lp.n_cols

    # Split free columns into x+ - x-.
    split_cols: list[tuple[int, int | None]] = []
    blocks = []
    for j in range(n):
        a = lp.lhs[:, j]
        if lp.free[j]:
            split_cols.append((len(blocks), len(blocks) + 1))
            blocks.append(a)
            blocks.append(-a)
        else:
            split_cols.append((len(blocks), None))
            blocks.append(a)
    a_std = np.column_stack(blocks)
    n_struct = a_std.shape[1]

    c_std = np.zeros(n_struct)
    for j, (pos, neg) in enumerate(split_cols):
        c_std[pos] = lp.objective[j]
        if neg is not None:
            c_std[neg] = -lp.objective[j]

    # Normalize rhs >= 0, attach slack/surplus and artificial columns.
    b = lp.rhs.copy()
    senses = list(lp.senses)
    for i in range(m):
        if b[i] < 0.0:
            a_std[i] *= -1.0
            b[i] *= -1.0
            if senses[i] == LESS_EQUAL:
                senses[i] = GREATER_EQUAL
            elif senses[i] == GREATER_EQUAL:
                senses[i] = LESS_EQUAL

    n_slack = sum(1 for s in senses if s != EQUAL)
    n_art = sum(1 for s in senses if s != LESS_EQUAL)
    total = n_struct + n_slack + n_art
    tableau = np.zeros((m + 1, total + 1))
    tableau[:m, :n_struct] = a_std
    tableau[:m, -1] = b

    basis: list[int] = []
    slack_at = n_struct
    art_at = n_struct + n_slack
    art_cols: list[int] = []
    for i, s in enumerate(senses):
        if s == LESS_EQUAL:
            tableau[i, slack_at] = 1.0
            basis.append(slack_at)
            slack_at += 1
        elif s == GREATER_EQUAL:
            tableau[i, slack_at] = -1.0
            slack_at += 1
            tableau[i, art_at] = 1.0
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        else:
            tableau[i, art_at] = 1.0
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1

    # Phase 1: minimize the sum of artificials.
    tableau[-1, art_cols] = 1.0
    for i, bv in enumerate(basis):
        if bv in art_cols:
            tableau[-1] -= tableau[i]
    allowed = np.ones(total, dtype=bool)
    _run_simplex(tableau, basis, allowed, max_pivots)
    if -tableau[-1, -1] > FEASIBILITY_TOL:
        raise InfeasibleError(
            f"constraints are inconsistent (phase-1 residual {-tableau[-1, -1]:.3e})"
        )

    # Drive leftover artificials out of the basis; rows that offer no pivot
    # are redundant and dropped.
    art_set = set(art_cols)
    redundant = []
    for i in range(m):
        if basis[i] in art_set:
            row = tableau[i, :total]
            eligible = np.flatnonzero(np.abs(row) > PIVOT_TOL)
            eligible = [j for j in eligible if j not in art_set]
            if eligible:
                _pivot(tableau, basis, i, int(eligible[0]))
            else:
                redundant.append(i)
    if redundant:
        tableau = np.delete(tableau, redundant, axis=0)
        basis = [bv for i, bv in enumerate(basis) if i not in set(redundant)]
    tableau = np.delete(tableau, art_cols, axis=1)
    basis = [bv - bisect_left(art_cols, bv) for bv in basis]

    # Phase 2: restore the true objective.
    tableau[-1] = 0.0
    tableau[-1, :n_struct] = c_std
    for i, bv in enumerate(basis):
        coeff = tableau[-1, bv]
        if coeff != 0.0:
            tableau[-1] -= coeff * tableau[i]
    allowed = np.ones(tableau.shape[1] - 1, dtype=bool)
    _run_simplex(tableau, basis, allowed, max_pivots)

    x_std = np.zeros(tableau.shape[1] - 1)
    for i, bv in enumerate(basis):
        x_std[bv] = tableau[i, -1]
    x = np.empty(n)
    for j, (pos, neg) in enumerate(split_cols):
        x[j] = x_std[pos] if neg is None else x_std[pos] - x_std[neg]
    # Scrub the sign dust a degenerate basis can leave on nonnegative columns.
    for j in range(n):
        if not lp.free[j] and -FEASIBILITY_TOL < x[j] < 0.0:
            x[j] = 0.0

    residual = _max_violation(lp, x)
    if residual > FEASIBILITY_TOL * 10:
        raise RuntimeError(f"simplex produced an infeasible point (residual {residual:.3e})")
    return x, float(lp.objective @ x)


def _max_violation(lp: LinearProgram, x: np.ndarray) -> float:
    ax = lp.lhs @ x
    worst = 0.0
    for i, s in enumerate(lp.senses):
        if s == LESS_EQUAL:
            worst = max(worst, ax[i] - lp.rhs[i])
        elif s == GREATER_EQUAL:
            worst = max(worst, lp.rhs[i] - ax[i])
        else:
            worst = max(worst, abs(ax[i] - lp.rhs[i]))
    for j in range(lp.n_cols):
        if not lp.free[j]:
            worst = max(worst, -x[j])
    return worst
