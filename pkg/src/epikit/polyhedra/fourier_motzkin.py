"""Fourier-Motzkin elimination with Chernikov pruning.

Rows are inequalities ``coeffs . x <= rhs`` where the right-hand side is kept
symbolically as a non-negative combination ``mult`` of the original right-hand
sides.  That lets one projection serve many right-hand sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from ..errors import NonCompact


@dataclass(frozen=True)
class Row:
    coeffs: tuple[Fraction, ...]
    mult: tuple[Fraction, ...]  # weights on the original rows

    def rhs(self, b: Sequence) -> Fraction:
        return sum((m * bi for m, bi in zip(self.mult, b) if m), Fraction(0))

    @property
    def history(self) -> int:
        return sum(1 for m in self.mult if m)


def _normalize(coeffs, mult) -> Row:
    lead = next((abs(v) for v in coeffs if v), None) or next(abs(v) for v in mult if v)
    return Row(tuple(v / lead for v in coeffs), tuple(v / lead for v in mult))


def initial_rows(A: Sequence[Sequence]) -> list[Row]:
    m = len(A)
    rows = []
    for i, a in enumerate(A):
        mult = tuple(Fraction(int(i == k)) for k in range(m))
        rows.append(Row(tuple(Fraction(v) for v in a), mult))
    return rows


def eliminate(rows: Sequence[Row], j: int, eliminated: int) -> list[Row]:
    """Project out variable ``j``; ``eliminated`` counts variables already removed.

    Chernikov's rule drops any combination built from more than
    ``eliminated + 2`` original rows, which is always redundant.
    """
    pos = [r for r in rows if r.coeffs[j] > 0]
    neg = [r for r in rows if r.coeffs[j] < 0]
    out: dict[Row, None] = {r: None for r in rows if r.coeffs[j] == 0}
    limit = eliminated + 2
    for p in pos:
        for n in neg:
            cp, cn = p.coeffs[j], -n.coeffs[j]
            mult = tuple(cn * a + cp * b for a, b in zip(p.mult, n.mult))
            if sum(1 for v in mult if v) > limit:
                continue
            coeffs = tuple(cn * a + cp * b for a, b in zip(p.coeffs, n.coeffs))
            out[_normalize(coeffs, mult)] = None
    return list(out)


def is_feasible(A: Sequence[Sequence], b: Sequence) -> bool:
    """Decide whether ``A x <= b`` has a rational solution."""
    if not A:
        return True
    rows = initial_rows(A)
    n = len(A[0])
    for k, j in enumerate(reversed(range(n))):
        rows = eliminate(rows, j, k)
        # rows that already lost every variable can be checked early
        for r in rows:
            if not any(r.coeffs) and r.rhs(b) < 0:
                return False
    return all(r.rhs(b) >= 0 for r in rows)


class LatticeEnumerator:
    """Integer points of ``{k : A k <= b}`` for a fixed ``A`` and varying ``b``.

    The projections onto the leading coordinates are computed once; each call
    to :meth:`points` then runs nested floor/ceil loops.  Raises NonCompact at
    construction when the recession cone ``A k <= 0`` is nonzero.
    """

    def __init__(self, A: Sequence[Sequence]):
        if not A:
            raise NonCompact("no inequalities")
        self.dim = len(A[0])
        levels: list[list[Row]] = [[] for _ in range(self.dim + 1)]
        rows = initial_rows(A)
        levels[self.dim] = rows
        for k, j in enumerate(reversed(range(self.dim))):
            rows = eliminate(rows, j, k)
            levels[j] = rows
        # at level d only rows touching coordinate d-1 matter; rows are scaled
        # to integers so the walk below never touches a Fraction
        self._bounds: list[tuple[list[tuple], list[tuple]]] = []
        for d in range(1, self.dim + 1):
            up = [_int_row(r) for r in levels[d] if r.coeffs[d - 1] > 0]
            lo = [_int_row(r) for r in levels[d] if r.coeffs[d - 1] < 0]
            if not up or not lo:
                raise NonCompact(f"coordinate {d - 1} is unbounded")
            self._bounds.append((up, lo))
        self._checks = [_int_row(r) for r in levels[0]]

    def points(self, b: Sequence) -> Iterator[tuple[int, ...]]:
        b = [Fraction(v) for v in b]
        den = 1
        for v in b:
            den = den * v.denominator // gcd(den, v.denominator)
        bi = [int(v * den) for v in b]

        def rhs(row):
            return sum(m * v for m, v in zip(row[1], bi) if m)

        if any(rhs(r) < 0 for r in self._checks):
            return
        table = []
        for up, lo in self._bounds:
            table.append(([(c, rhs((c, m)), den * c[len(table)]) for c, m in up],
                          [(c, rhs((c, m)), den * c[len(table)]) for c, m in lo]))
        yield from self._walk((), table, den)

    def _walk(self, prefix: tuple[int, ...], table, den: int) -> Iterator[tuple[int, ...]]:
        d = len(prefix)
        if d == self.dim:
            yield prefix
            return
        up, lo = table[d]
        hi = min((r - den * _idot(c, prefix)) // cd for c, r, cd in up)
        low = max(-((den * _idot(c, prefix) - r) // cd) for c, r, cd in lo)
        for k in range(low, hi + 1):
            yield from self._walk(prefix + (k,), table, den)


def _int_row(row: Row) -> tuple[tuple[int, ...], tuple[int, ...]]:
    den = 1
    for v in row.coeffs + row.mult:
        den = den * v.denominator // gcd(den, v.denominator)
    return tuple(int(v * den) for v in row.coeffs), tuple(int(v * den) for v in row.mult)


def _idot(coeffs, prefix) -> int:
    return sum(c * p for c, p in zip(coeffs, prefix))


def _primitive_int(v: list[int]) -> tuple[int, ...]:
    g = 0
    for c in v:
        g = gcd(g, c)
    return tuple(c // g for c in v) if g > 1 else tuple(v)


def _int_rows(A: Sequence[Sequence[int]]) -> dict[tuple[int, ...], set[int]]:
    rows: dict[tuple[int, ...], set[int]] = {}
    for i, a in enumerate(A):
        if any(a):
            _add_history(rows, _primitive_int([int(c) for c in a]), 1 << i)
    return rows


def _add_history(rows: dict, key: tuple[int, ...], h: int) -> None:
    """Record that ``key`` arises from the original rows in bitmask ``h``.

    Only inclusion-minimal histories are kept: a row reached from a larger
    set now may still lead to a smaller union later, so one history is not
    enough for Chernikov's rule to be sound.
    """
    hs = rows.setdefault(key, set())
    if any(g & h == g for g in hs):
        return
    hs.difference_update([g for g in hs if g & h == h])
    hs.add(h)


def _eliminate_int(rows: dict, j: int, eliminated: int) -> dict:
    """Integer Fourier-Motzkin step for the cone ``rows . x <= 0``, with Chernikov pruning."""
    pos = [(r, hs) for r, hs in rows.items() if r[j] > 0]
    neg = [(r, hs) for r, hs in rows.items() if r[j] < 0]
    nxt = {r: set(hs) for r, hs in rows.items() if r[j] == 0}
    limit = eliminated + 2
    for p, hps in pos:
        for q, hqs in neg:
            unions = [h for h in {hp | hq for hp in hps for hq in hqs} if h.bit_count() <= limit]
            if not unions:
                continue
            cp, cq = p[j], -q[j]
            comb = [cq * a + cp * b for a, b in zip(p, q)]
            if not any(comb):
                continue
            key = _primitive_int(comb)
            for h in unions:
                _add_history(nxt, key, h)
    return nxt


def _signs(rows: dict, j: int) -> tuple[int, int]:
    return sum(r[j] > 0 for r in rows), sum(r[j] < 0 for r in rows)


def project_cone(A: Sequence[Sequence[int]], keep: int) -> list[int]:
    """Project the cone ``A x <= 0`` onto coordinate ``keep``.

    Returns the surviving coefficients on ``keep``; the projection is {0}
    exactly when both signs occur.
    """
    rows = _int_rows(A)
    for k, j in enumerate(j for j in range(len(A[0])) if j != keep):
        rows = _eliminate_int(rows, j, k)
    return [r[keep] for r in rows]


def cone_is_zero(A: Sequence[Sequence[int]]) -> bool:
    """Is ``{x : A x <= 0}`` the origin alone?

    Eliminates one variable at a time, cheapest first.  Reading the chain of
    projections backwards, the cone is {0} exactly when every variable has
    rows of both signs at the moment it is eliminated (and the last one at
    the end); a missing sign exhibits a nonzero point, so we stop early.
    """
    rows = _int_rows(A)
    todo = list(range(len(A[0])))
    eliminated = 0
    while todo:
        counts = {c: _signs(rows, c) for c in todo}
        j = min(todo, key=lambda c: counts[c][0] * counts[c][1])
        if not all(counts[j]):
            return False
        todo.remove(j)
        if todo:
            rows = _eliminate_int(rows, j, eliminated)
            eliminated += 1
    return True
