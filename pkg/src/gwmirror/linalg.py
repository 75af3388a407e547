"""Exact linear solving over the rationals (Gaussian elimination)."""
from __future__ import annotations

from .scalars import ZERO


class InconsistentSystem(ValueError):
    pass


class UnderdeterminedSystem(ValueError):
    pass


def solve_exact(rows: list[list], rhs: list) -> list:
    """Solve A x = b exactly; A given as rows, any shape.

    Requires the solution to exist and be unique (full column rank and
    consistent); raises InconsistentSystem / UnderdeterminedSystem otherwise.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    pivots = []
    row = 0
    for col in range(n):
        p = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if p is None:
            continue
        aug[row], aug[p] = aug[p], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if aug[r][n] != 0:
            raise InconsistentSystem(f"inconsistent linear system (row {r})")
    if len(pivots) < n:
        raise UnderdeterminedSystem(
            f"rank {len(pivots)} < {n} unknowns: system underdetermined"
        )
    x = [ZERO] * n
    for r, col in enumerate(pivots):
        x[col] = aug[r][n]
    return x
