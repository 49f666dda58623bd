"""F_q-stability of functionals as triviality of a polyhedral cone.

A set S of gradients is *cone-trivial* when the only gamma with
<alpha, gamma> <= 0 for every alpha in S is gamma = 0.  Two independent
deciders are provided: Fourier-Motzkin elimination, and an exact LP looking
for a strictly positive linear relation among spanning gradients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from functools import reduce
from typing import Iterable, Sequence

from .affine import AffineRoot
from .errors import InvalidInput
from .linalg import independent_subset, nullspace, rank
from .polyhedra import cone_is_zero, linprog

Vector = tuple[int, ...]


@dataclass(frozen=True)
class SupportProfile:
    """Lower and upper bounds for supp(g . lambda) on one orbit representative."""

    lower: frozenset[AffineRoot]
    upper: frozenset[AffineRoot]

    def __init__(self, lower: Iterable[AffineRoot], upper: Iterable[AffineRoot] | None = None):
        lo = frozenset(lower)
        up = frozenset(upper) if upper is not None else lo
        if not lo <= up:
            raise InvalidInput("profile lower set must be contained in its upper set")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", up)

    def check_positive(self, x: Sequence) -> None:
        bad = [r for r in self.upper if r(x) <= 0]
        if bad:
            raise InvalidInput(f"profile roots not positive at x: {sorted(bad)}")

    def to_json(self) -> dict:
        return {"lower": [r.to_json() for r in sorted(self.lower)],
                "upper": [r.to_json() for r in sorted(self.upper)]}

    @classmethod
    def from_json(cls, data) -> SupportProfile:
        try:
            lower = [AffineRoot.from_json(r) for r in data["lower"]]
            upper = [AffineRoot.from_json(r) for r in data.get("upper", data["lower"])]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad support profile {data!r}") from exc
        return cls(lower, upper)


@dataclass(frozen=True)
class ConeCertificate:
    """Either a nonzero ray of the cone, or a positive relation over a spanning set."""

    gradients: tuple[Vector, ...]
    ray: tuple[Fraction, ...] | None = None
    coeffs: tuple[Fraction, ...] | None = None
    witness: tuple[int, ...] = ()

    @property
    def trivial(self) -> bool:
        return self.coeffs is not None

    def verify(self) -> bool:
        """Re-check the certificate by direct arithmetic."""
        dim = len(self.gradients[0])
        if self.ray is not None:
            if not any(self.ray):
                return False
            return all(_dot(a, self.ray) <= 0 for a in self.gradients)
        if self.coeffs is None or len(self.coeffs) != len(self.gradients):
            return False
        if any(c < 0 for c in self.coeffs) or not any(self.coeffs):
            return False
        total = [sum(c * a[k] for c, a in zip(self.coeffs, self.gradients)) for k in range(dim)]
        if any(total):
            return False
        # the witness must be a basis drawn from the positive part of the relation
        if any(self.coeffs[i] <= 0 for i in self.witness):
            return False
        return len(self.witness) == dim and rank([self.gradients[i] for i in self.witness]) == dim

    def to_json(self) -> dict:
        if self.trivial:
            return {"positive_combination": {
                "gradients": [list(g) for g in self.gradients],
                "coefficients": [str(c) for c in self.coeffs],
                "spanning_witness": list(self.witness)}}
        return {"ray": [str(c) for c in self.ray]}


def _dot(a, g) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, g)), Fraction(0))


def _prepare(gradients: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    gs = tuple(sorted({tuple(int(c) for c in g) for g in gradients}))
    if not gs:
        raise InvalidInput("need at least one gradient")
    if len({len(g) for g in gs}) != 1:
        raise InvalidInput("gradients of different ranks")
    return gs


def cone_trivial_fm(gradients: Iterable[Sequence[int]]) -> bool:
    """Fourier-Motzkin decider: the chain of projections of the cone stays {0}."""
    return cone_is_zero(_prepare(gradients))


def _positive_relation(gs: tuple[Vector, ...]) -> tuple[Fraction, ...] | None:
    """Minimal-weight relation sum a_i g_i = 0 with every a_i >= 1, if one exists."""
    m, n = len(gs), len(gs[0])
    # a_i = 1 + b_i with b_i >= 0
    A_eq = [[g[k] for g in gs] for k in range(n)]
    b_eq = [-sum(g[k] for g in gs) for k in range(n)]
    res = linprog([1] * m, A_eq=A_eq, b_eq=b_eq)
    if not res.ok:
        return None
    return tuple(1 + b for b in res.x)


def cone_trivial_lp(gradients: Iterable[Sequence[int]]) -> bool:
    """LP decider: a strictly positive relation exists and the gradients span."""
    gs = _prepare(gradients)
    return rank(gs) == len(gs[0]) and _positive_relation(gs) is not None


def _canonical_ray(gs: tuple[Vector, ...]) -> tuple[Fraction, ...]:
    n = len(gs[0])
    # gamma = sum_j t_j g_j, so the search stays inside the span of S
    M = [[_dot(gi, gj) for gj in gs] for gi in gs]  # pairing of g_i with gamma
    c = [sum(M[i][j] for i in range(len(gs))) for j in range(len(gs))]
    A_ub = M + [[-v for v in row] for row in M]
    b_ub = [0] * len(gs) + [1] * len(gs)
    res = linprog(c, A_ub, b_ub, free=range(len(gs)))
    if res.ok and res.value < 0:
        ray = tuple(sum(t * g[k] for t, g in zip(res.x, gs)) for k in range(n))
        return _primitive(ray)
    kernel = nullspace(gs, n)
    return _primitive(kernel[0])


def _primitive(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale to the primitive integral vector in the same direction."""
    den = reduce(lcm, (Fraction(c).denominator for c in v), 1)
    ints = [int(Fraction(c) * den) for c in v]
    g = reduce(gcd, (abs(c) for c in ints), 0) or 1
    return tuple(Fraction(c // g) for c in ints)


def is_cone_trivial(gradients: Iterable[Sequence[int]]) -> tuple[bool, ConeCertificate]:
    """Decide cone triviality and return a certificate either way."""
    gs = _prepare(gradients)
    verdict = cone_trivial_fm(gs)
    if verdict:
        coeffs = _positive_relation(gs)
        witness = tuple(independent_subset(gs))
        if coeffs is None or len(witness) != len(gs[0]):
            raise AssertionError(f"deciders disagree on {gs}")  # pragma: no cover
        cert = ConeCertificate(gs, coeffs=coeffs, witness=witness)
    else:
        cert = ConeCertificate(gs, ray=_canonical_ray(gs))
    return verdict, cert


def is_fq_stable(family: Sequence[SupportProfile]) -> bool:
    """True when every profile's lower set has cone-trivial gradients."""
    return all(v for v, _ in stability_report(family))


def stability_report(family: Sequence[SupportProfile]) -> list[tuple[bool, ConeCertificate]]:
    family = list(family)
    if not family:
        raise InvalidInput("stability needs at least one support profile")
    out = []
    for prof in family:
        if not prof.lower:
            raise InvalidInput("support profile with empty lower set")
        out.append(is_cone_trivial(r.gradient for r in prof.lower))
    return out


def positive_affine_relation(roots: Iterable[AffineRoot]) -> dict[AffineRoot, Fraction] | None:
    """Non-negative a_psi, not all zero, with sum a_psi psi constant; None if impossible.

    The support is pruned to a minimal one, dropping the largest roots first.
    The result is scaled so the constant is 1 when it is positive, and to
    coprime integers otherwise.
    """
    rs = sorted(set(roots))
    if not rs:
        raise InvalidInput("need at least one affine root")
    n = len(rs[0].gradient)

    def solve(active: list[int]):
        A_eq = [[rs[i].gradient[k] for i in active] for k in range(n)] + [[1] * len(active)]
        b_eq = [0] * n + [1]
        res = linprog([0] * len(active), A_eq=A_eq, b_eq=b_eq)
        return res.x if res.ok else None

    active = list(range(len(rs)))
    sol = solve(active)
    if sol is None:
        return None
    for i in reversed(range(len(rs))):
        trial = [j for j in active if j != i]
        if trial:
            t = solve(trial)
            if t is not None:
                active, sol = trial, t
    coeffs = {rs[i]: c for i, c in zip(active, sol) if c}
    const = sum(c * r.level for r, c in coeffs.items())
    if const > 0:
        return {r: c / const for r, c in coeffs.items()}
    prim = _primitive(list(coeffs.values()))
    return dict(zip(coeffs, prim))
