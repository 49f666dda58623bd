"""Candidate Iwahori-Weyl elements that could intertwine chi_lambda.

A necessary condition for w to intertwine is (w psi)(x) <= 1 for every psi in
the support; with y = w^{-1} x = v^{-1} x + l this becomes psi(y) <= 1, a
compact polytope when the support is cone-trivial.  Its lattice points are
enumerated for each finite Weyl element v, and two necessary-condition filters
prune the result: the image of a lower support set must land in an upper set,
and it must have no common zero on the closed facet of x.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Sequence

from .affine import (ADJOINT, AffineRoot, IwahoriWeylElement, act, lattice_basis,
                     simple_affine_roots)
from .errors import InvalidInput, NonCompact
from .polyhedra import LatticeEnumerator, linprog
from .rootsys import RootSystem, build_root_system, weyl_group
from .stability import SupportProfile, is_cone_trivial


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("EPIKIT_THREADS", "1")))
    except ValueError:
        return 1


def _enumerate_chunk(family: str, rank: int, x, support, lattice, lo: int, hi: int):
    sys = build_root_system(family, rank)
    basis = lattice_basis(sys, lattice)
    M = [[sum(a * b for a, b in zip(psi.gradient, vec)) for vec in basis] for psi in support]
    enum = LatticeEnumerator(M)
    out = []
    for v in weyl_group(sys)[lo:hi]:
        s = v.inverse().apply_coweight(x)
        rhs = [1 - psi.level - sum(a * c for a, c in zip(psi.gradient, s)) for psi in support]
        for k in enum.points(rhs):
            lam = [sum(k[j] * basis[j][i] for j in range(len(k))) for i in range(sys.rank)]
            mu = tuple(-c for c in v.apply_coweight(lam))
            out.append(IwahoriWeylElement(mu, v))
    return out


def enumerate_candidates(sys: RootSystem, x: Sequence, support: Iterable[AffineRoot],
                         lattice: str = ADJOINT) -> list[IwahoriWeylElement]:
    """All w = t_mu v in the chosen lattice with (w psi)(x) <= 1 for every psi in ``support``."""
    support = sorted(set(support))
    if not support:
        raise NonCompact("empty support")
    lattice_basis(sys, lattice)
    if not is_cone_trivial(r.gradient for r in support)[0]:
        raise NonCompact("support gradients are not cone-trivial; infinitely many candidates")
    x = tuple(Fraction(c) for c in x)
    size = len(weyl_group(sys))
    threads = min(_threads(), size)
    if threads == 1:
        found = _enumerate_chunk(sys.family, sys.rank, x, support, lattice, 0, size)
    else:
        step = -(-size // threads)
        with ProcessPoolExecutor(threads) as pool:
            jobs = [pool.submit(_enumerate_chunk, sys.family, sys.rank, x, support, lattice,
                                lo, min(lo + step, size)) for lo in range(0, size, step)]
            found = [w for j in jobs for w in j.result()]
    return sorted(set(found), key=IwahoriWeylElement.sort_key)


def _support_ok(w, lower, upper, x) -> bool:
    for psi in lower:
        img = act(w, psi)
        if img(x) > 0 and img not in upper:
            return False
    return True


def filter_support(w: IwahoriWeylElement, profiles: Sequence[SupportProfile], x: Sequence) -> bool:
    """Is there a pair (P_b, P_a) with w(P_b.lower) positive part inside P_a.upper?"""
    return any(_support_ok(w, pb.lower, pa.upper, x) for pb in profiles for pa in profiles)


def _has_common_zero(sys: RootSystem, thetas: Sequence[AffineRoot], x) -> bool:
    """Is there y in the closed facet of x where every theta vanishes?"""
    n = sys.rank
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for psi in simple_affine_roots(sys):
        if psi(x) == 0:
            A_eq.append(list(psi.gradient))
            b_eq.append(-psi.level)
        else:
            A_ub.append([-c for c in psi.gradient])
            b_ub.append(psi.level)
    for th in thetas:
        A_eq.append(list(th.gradient))
        b_eq.append(-th.level)
    return linprog([0] * n, A_ub, b_ub, A_eq, b_eq, free=range(n)).ok


def _zeros_ok(sys, w, lower, x) -> bool:
    images = [act(w, psi) for psi in lower]
    return not _has_common_zero(sys, [t for t in images if t(x) > 0], x)


def filter_zeros(sys: RootSystem, w: IwahoriWeylElement, profiles: Sequence[SupportProfile],
                 x: Sequence) -> bool:
    """Is there a P_b whose image, cut down to roots positive at x, has no common zero on the facet?"""
    return any(_zeros_ok(sys, w, pb.lower, x) for pb in profiles)


def survives(sys: RootSystem, w: IwahoriWeylElement, profiles: Sequence[SupportProfile],
             x: Sequence) -> bool:
    """Both filters, evaluated with the same P_b (one b per double coset)."""
    for pb in profiles:
        if any(_support_ok(w, pb.lower, pa.upper, x) for pa in profiles) and \
                _zeros_ok(sys, w, pb.lower, x):
            return True
    return False


def intertwiners(sys: RootSystem, x: Sequence, profiles: Sequence[SupportProfile],
                 lattice: str = ADJOINT) -> list[IwahoriWeylElement]:
    """Candidates that survive both necessary conditions, deduplicated and sorted."""
    profiles = list(profiles)
    if not profiles:
        raise InvalidInput("intertwining needs at least one support profile")
    x = tuple(Fraction(c) for c in x)
    for prof in profiles:
        prof.check_positive(x)
    cands: set[IwahoriWeylElement] = set()
    for pb in profiles:
        cands.update(enumerate_candidates(sys, x, pb.lower, lattice))
    out = [w for w in cands if survives(sys, w, profiles, x)]
    return sorted(out, key=IwahoriWeylElement.sort_key)
