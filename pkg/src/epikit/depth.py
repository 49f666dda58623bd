"""Depth as an exact min-max linear program.

For one support profile the depth bound is

    min over y of  max over psi in lower  psi(y),

solved as: minimise r subject to psi(y) <= r.  The witness y is the
lexicographically smallest optimal point.  The LP dual supplies weights
a_psi >= 0 with sum a_psi grad(psi) = 0 and sum a_psi = 1, whose constant
sum a_psi level(psi) equals the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .affine import AffineRoot, BuildingPoint, check_barycentre
from .errors import InvalidInput, Unstable
from .polyhedra import linprog
from .rootsys import RootSystem
from .stability import SupportProfile, is_cone_trivial


@dataclass(frozen=True)
class DepthResult:
    depth: Fraction
    witness: BuildingPoint
    profile: int  # index of the minimising profile
    dual: dict[AffineRoot, Fraction]

    def verify(self, family: Sequence[SupportProfile]) -> bool:
        """Primal feasibility of the witness and a matching dual certificate."""
        roots = family[self.profile].lower
        if any(r(self.witness) > self.depth for r in roots):
            return False
        if any(c < 0 for c in self.dual.values()) or sum(self.dual.values()) != 1:
            return False
        n = len(self.witness)
        grad = [sum(c * r.gradient[k] for r, c in self.dual.items()) for k in range(n)]
        const = sum(c * r.level for r, c in self.dual.items())
        return not any(grad) and const == self.depth and set(self.dual) <= roots


def _solve_profile(roots: Sequence[AffineRoot]) -> tuple[Fraction, tuple[Fraction, ...]]:
    n = len(roots[0].gradient)
    # variables (y_1..y_n, r), all free
    A = [list(r.gradient) + [-1] for r in roots]
    b = [-r.level for r in roots]
    free = range(n + 1)
    res = linprog([0] * n + [1], A, b, free=free)
    if not res.ok:
        raise Unstable("depth LP is unbounded; the profile is not cone-trivial")
    best = res.value
    fixed: list[list[int]] = [[0] * n + [1]]
    fixed_rhs = [best]
    y: list[Fraction] = []
    for k in range(n):
        c = [0] * (n + 1)
        c[k] = 1
        sub = linprog(c, A, b, A_eq=fixed, b_eq=fixed_rhs, free=free)
        if not sub.ok:  # pragma: no cover - the optimal face is compact
            raise AssertionError("lexicographic refinement failed")
        y.append(sub.value)
        row = [0] * (n + 1)
        row[k] = 1
        fixed.append(row)
        fixed_rhs.append(sub.value)
    return best, tuple(y)


def _dual(roots: Sequence[AffineRoot]) -> dict[AffineRoot, Fraction]:
    n = len(roots[0].gradient)
    A_eq = [[r.gradient[k] for r in roots] for k in range(n)] + [[1] * len(roots)]
    b_eq = [0] * n + [1]
    res = linprog([-r.level for r in roots], A_eq=A_eq, b_eq=b_eq)
    if not res.ok:  # pragma: no cover - guarded by the stability check
        raise Unstable("no positive relation among the profile gradients")
    return {r: a for r, a in zip(roots, res.x) if a}


def profile_depth(profile: SupportProfile, index: int = 0) -> DepthResult:
    roots = sorted(profile.lower)
    if not roots:
        raise InvalidInput("support profile with empty lower set")
    if not is_cone_trivial(r.gradient for r in roots)[0]:
        raise Unstable("profile lower set is not cone-trivial")
    depth, y = _solve_profile(roots)
    return DepthResult(depth, BuildingPoint(y), index, _dual(roots))


def depth_report(family: Sequence[SupportProfile]) -> DepthResult:
    """The minimising profile's result; ties go to the earliest profile."""
    family = list(family)
    if not family:
        raise InvalidInput("depth needs at least one support profile")
    best = None
    for i, prof in enumerate(family):
        res = profile_depth(prof, i)
        if best is None or res.depth < best.depth:
            best = res
    return best


def min_depth(family: Sequence[SupportProfile]) -> tuple[Fraction, BuildingPoint]:
    """Minimum over profiles of min_y max_{psi in lower} psi(y), with a witness y."""
    res = depth_report(family)
    return res.depth, res.witness


def rx(sys: RootSystem, x: Sequence) -> Fraction:
    """r(x): the first positive jump delta(x) at a facet barycentre."""
    return check_barycentre(sys, x)
