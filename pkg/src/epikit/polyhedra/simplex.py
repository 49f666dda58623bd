"""Two-phase tableau simplex over Fractions, with Bland's anticycling rule.

    minimize  c.x   subject to  A_ub x <= b_ub,  A_eq x = b_eq,
              x_j >= 0 unless j is listed in ``free``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


def _pivot(tab: list[list[Fraction]], obj: list[Fraction], r: int, c: int) -> None:
    row = tab[r]
    p = row[c]
    if p != 1:
        tab[r] = row = [v / p for v in row]
    for i, other in enumerate(tab):
        if i != r and other[c] != 0:
            f = other[c]
            tab[i] = [a - f * b for a, b in zip(other, row)]
    if obj[c] != 0:
        f = obj[c]
        obj[:] = [a - f * b for a, b in zip(obj, row)]


def _run(tab, obj, basis, allowed) -> bool:
    """Bland-rule simplex on a canonical tableau. Returns False when unbounded."""
    while True:
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return True
        best, leave = None, None
        for i, row in enumerate(tab):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        _pivot(tab, obj, leave, enter)
        basis[leave] = enter


def linprog(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
            A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
            free: Sequence[int] = ()) -> LPResult:
    n = len(c)
    free = set(free)
    # column layout: original vars (positive part), negative parts of free vars, slacks
    neg_col = {}
    for j in sorted(free):
        neg_col[j] = n + len(neg_col)
    n_struct = n + len(neg_col)
    n_slack = len(A_ub)
    width = n_struct + n_slack

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    slack_of_row: list[int | None] = []
    for k, (a, b) in enumerate(list(zip(A_ub, b_ub)) + list(zip(A_eq, b_eq))):
        row = [Fraction(0)] * width
        for j, v in enumerate(a):
            if v:
                row[j] = Fraction(v)
                if j in neg_col:
                    row[neg_col[j]] = -Fraction(v)
        slack = None
        if k < n_slack:
            slack = n_struct + k
            row[slack] = Fraction(1)
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
        rows.append(row)
        rhs.append(b)
        slack_of_row.append(slack if slack is not None and row[slack] == 1 else None)

    m = len(rows)
    # artificials only where no slack can start in the basis
    art_rows = [i for i in range(m) if slack_of_row[i] is None]
    n_art = len(art_rows)
    total = width + n_art
    tab = []
    basis = []
    for i in range(m):
        row = rows[i] + [Fraction(0)] * n_art + [rhs[i]]
        if slack_of_row[i] is None:
            col = width + art_rows.index(i)
            row[col] = Fraction(1)
            basis.append(col)
        else:
            basis.append(slack_of_row[i])
        tab.append(row)

    if n_art:
        obj = [Fraction(0)] * (total + 1)
        for i in art_rows:
            obj = [a - b for a, b in zip(obj, tab[i])]
        for i in art_rows:
            obj[width + art_rows.index(i)] = Fraction(0)
        _run(tab, obj, basis, range(total))
        if obj[-1] != 0:
            return LPResult(INFEASIBLE)
        # drive remaining artificials out of the basis
        keep = []
        for i in range(m):
            if basis[i] >= width:
                col = next((j for j in range(width) if tab[i][j] != 0), None)
                if col is None:
                    continue  # redundant equality
                _pivot(tab, obj, i, col)
                basis[i] = col
            keep.append(i)
        tab = [tab[i][:width] + [tab[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]

    obj = [Fraction(0)] * (width + 1)
    for j, v in enumerate(c):
        obj[j] = Fraction(v)
        if j in neg_col:
            obj[neg_col[j]] = -Fraction(v)
    for i, bcol in enumerate(basis):
        if obj[bcol] != 0:
            f = obj[bcol]
            obj = [a - f * b for a, b in zip(obj, tab[i])]
    if not _run(tab, obj, basis, range(width)):
        return LPResult(UNBOUNDED)

    vals = [Fraction(0)] * width
    for i, bcol in enumerate(basis):
        vals[bcol] = tab[i][-1]
    x = tuple(vals[j] - (vals[neg_col[j]] if j in neg_col else 0) for j in range(n))
    value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x, value)


def feasible_point(A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                   A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
                   free: Sequence[int] = (), nvars: int | None = None) -> tuple[Fraction, ...] | None:
    """Any point of the polyhedron, or None when it is empty."""
    if nvars is None:
        nvars = len((list(A_ub) + list(A_eq))[0])
    res = linprog([0] * nvars, A_ub, b_ub, A_eq, b_eq, free)
    return res.x if res.ok else None
