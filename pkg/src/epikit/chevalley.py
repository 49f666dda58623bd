"""Chevalley structure constants and the affine commutator expansion.

Signs follow Carter's extraspecial-pair recipe: positive roots are ordered
lexicographically in simple-root coordinates, and N(a, b) = p + 1 on every
extraspecial pair (a, b).  Everything else is forced by the Chevalley-basis
identities.  Only magnitudes matter downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import comb, factorial
from typing import Sequence

from .affine import AffineRoot
from .errors import InvalidInput
from .rootsys import Root, RootSystem, root_string

ADMISSIBLE = ((1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (3, 2), (2, 3))


def _add(a: Root, b: Root, k: int = 1) -> Root:
    return tuple(x + k * y for x, y in zip(a, b))


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


class _Table:
    """Memoised structure constants for one root system."""

    def __init__(self, sys: RootSystem):
        self.sys = sys
        self.memo: dict[tuple[Root, Root], int] = {}
        self.extraspecial: dict[Root, tuple[Root, Root]] = {}
        pos = sorted(sys.positive_roots)  # lexicographic order, compatible with addition
        for xi in pos:
            for a in pos:
                b = tuple(x - y for x, y in zip(xi, a))
                if a < b and b in sys.all_roots:
                    self.extraspecial[xi] = (a, b)
                    break

    def sq(self, a: Root) -> int:
        return self.sys.form(a, a)

    def n(self, a: Root, b: Root) -> int:
        key = (a, b)
        if key not in self.memo:
            self.memo[key] = self._compute(a, b)
        return self.memo[key]

    def _compute(self, a: Root, b: Root) -> int:
        sys = self.sys
        c = _add(a, b)
        if c not in sys.all_roots:
            return 0
        pa, pb = sys.is_positive(a), sys.is_positive(b)
        if pa and pb:
            if a > b:
                return -self.n(b, a)
            ea, eb = self.extraspecial[c]
            if (a, b) == (ea, eb):
                p, _ = root_string(sys, a, b)
                return p + 1
            return self._four_term(a, b, ea, eb)
        if not pa and not pb:
            return -self.n(_neg(a), _neg(b))
        # a + b + z = 0; rotate to a pair of equal sign
        z = _neg(c)
        if sys.is_positive(z) == pb:
            val = Fraction(self.sq(z), self.sq(a)) * self.n(b, z)
        else:
            val = Fraction(self.sq(z), self.sq(b)) * self.n(z, a)
        assert val.denominator == 1
        return int(val)

    def _four_term(self, xi: Root, eta: Root, a: Root, b: Root) -> int:
        # Jacobi identity for (a, b, -xi, -eta), solved for N(xi, eta)
        sys = self.sys
        total = Fraction(0)
        mxi, meta = _neg(xi), _neg(eta)
        s1 = _add(b, mxi)
        if s1 in sys.all_roots:
            total += Fraction(self.n(b, mxi) * self.n(a, meta), self.sq(s1))
        s2 = _add(mxi, a)
        if s2 in sys.all_roots:
            total += Fraction(self.n(mxi, a) * self.n(b, meta), self.sq(s2))
        val = total * self.sq(_add(a, b)) / self.n(a, b)
        assert val.denominator == 1
        return int(val)


@cache
def _table(sys: RootSystem) -> _Table:
    return _Table(sys)


def _check_roots(sys: RootSystem, *roots: Root) -> None:
    for r in roots:
        if tuple(r) not in sys.all_roots:
            raise InvalidInput(f"{r} is not a root of {sys.name}")


def structure_constant(sys: RootSystem, a: Sequence[int], b: Sequence[int]) -> int:
    """N(a, b) with [e_a, e_b] = N(a, b) e_{a+b}; zero when a + b is not a root."""
    a, b = tuple(a), tuple(b)
    _check_roots(sys, a, b)
    return _table(sys).n(a, b)


def m_constant(sys: RootSystem, a: Sequence[int], b: Sequence[int], i: int) -> int:
    """M(a, b, i) = (1/i!) N(a, b) N(a, a+b) ... N(a, (i-1)a+b), of magnitude binom(p+i, i)."""
    a, b = tuple(a), tuple(b)
    _check_roots(sys, a, b)
    if a == b or a == _neg(b):
        raise InvalidInput("m_constant needs linearly independent roots")
    if i < 1 or _add(b, a, i) not in sys.all_roots:
        raise InvalidInput(f"{i}*a + b is not a root")
    prod = 1
    for k in range(i):
        prod *= structure_constant(sys, a, _add(b, a, k))
    val = Fraction(prod, factorial(i))
    assert val.denominator == 1
    p, _ = root_string(sys, a, b)
    assert abs(val) == comb(p + i, i)
    return int(val)


def c_constant(sys: RootSystem, a: Sequence[int], b: Sequence[int], i: int, j: int) -> int:
    """Constant C(a, b, i, j) of the commutator formula."""
    a, b = tuple(a), tuple(b)
    if (i, j) not in ADMISSIBLE:
        raise InvalidInput(f"(i, j) = ({i}, {j}) is not admissible")
    _check_roots(sys, a, b)
    if a == b or a == _neg(b):
        raise InvalidInput("c_constant needs linearly independent roots")
    target = tuple(i * x + j * y for x, y in zip(a, b))
    if target not in sys.all_roots:
        raise InvalidInput(f"{i}a + {j}b is not a root")
    if j == 1:
        return m_constant(sys, a, b, i)
    if i == 1:
        return (-1) ** j * m_constant(sys, b, a, j)
    ab = _add(a, b)
    if (i, j) == (3, 2):
        val = Fraction(m_constant(sys, ab, a, 2), 3)
    else:
        val = Fraction(-2 * m_constant(sys, ab, b, 2), 3)
    assert val.denominator == 1
    return int(val)


@dataclass(frozen=True)
class CommutatorTerm:
    """One factor u_{i psi + j phi}(C (-r)^i s^j) of the commutator."""

    i: int
    j: int
    root: AffineRoot
    coefficient: int

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "root": self.root.to_json(), "coefficient": self.coefficient}


def commutator_expansion(sys: RootSystem, psi: AffineRoot, phi: AffineRoot,
                         x: Sequence) -> list[CommutatorTerm]:
    """Terms of [u_psi(r), u_phi(s)] modulo the level-one subgroup at ``x``."""
    vp, vf = psi(x), phi(x)
    if not (0 < vp < 1 and 0 < vf < 1):
        raise InvalidInput("both affine roots must take values strictly between 0 and 1")
    if (psi + phi).is_constant:
        raise InvalidInput("psi + phi must be non-constant")
    _check_roots(sys, psi.gradient, phi.gradient)
    terms = []
    for i, j in sorted(ADMISSIBLE, key=lambda t: (t[0] + t[1], t)):
        target = i * psi + j * phi
        if target.gradient not in sys.all_roots:
            continue
        if not 0 < target(x) < 1:
            continue
        terms.append(CommutatorTerm(i, j, target, c_constant(sys, psi.gradient, phi.gradient, i, j)))
    return terms
