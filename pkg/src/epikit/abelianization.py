"""The index set S(x) of lines in the abelianised first Moy-Prasad quotient.

For p = 2 outside G2 this runs the rewrite procedure on affine roots:
seed with Delta(x) plus short sums, prune sums that are commutators, glue the
pairs (psi + theta, 2 psi + theta) that can only be seen together, then
collapse glued components into tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .affine import AffineRoot, delta2_x, delta_x, point_to_kac
from .errors import InvalidInput, Unsupported
from .rootsys import RootSystem, coroot_pairing


@dataclass(frozen=True, order=True)
class SxEntry:
    """A line of V(x): one affine root, or a tuple of identified affine roots."""

    roots: tuple[AffineRoot, ...]

    def __post_init__(self):
        rs = tuple(sorted(set(self.roots)))
        if len(rs) != len(self.roots) or not rs:
            raise InvalidInput("entry roots must be distinct and nonempty")
        object.__setattr__(self, "roots", rs)

    @classmethod
    def single(cls, psi: AffineRoot) -> SxEntry:
        return cls((psi,))

    @classmethod
    def tuple_of(cls, roots: Iterable[AffineRoot]) -> SxEntry:
        rs = tuple(roots)
        if len(rs) < 2:
            raise InvalidInput("a tuple entry needs at least two roots")
        return cls(rs)

    @property
    def is_tuple(self) -> bool:
        return len(self.roots) > 1

    @property
    def root(self) -> AffineRoot:
        if self.is_tuple:
            raise InvalidInput("tuple entry has no single root")
        return self.roots[0]

    def to_json(self) -> dict:
        if self.is_tuple:
            return {"tuple": [r.to_json() for r in self.roots]}
        return {"single": self.roots[0].to_json()}

    @classmethod
    def from_json(cls, data) -> SxEntry:
        if "single" in data:
            return cls.single(AffineRoot.from_json(data["single"]))
        if "tuple" in data:
            return cls.tuple_of(AffineRoot.from_json(r) for r in data["tuple"])
        raise InvalidInput(f"bad S(x) entry {data!r}")


@dataclass(frozen=True)
class VxSpace:
    """V(x) as an F_q-vector space with one line per entry."""

    x: tuple[Fraction, ...]
    p: int
    q: int
    entries: tuple[SxEntry, ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def singles(self) -> tuple[AffineRoot, ...]:
        return tuple(e.root for e in self.entries if not e.is_tuple)

    @property
    def tuples(self) -> tuple[SxEntry, ...]:
        return tuple(e for e in self.entries if e.is_tuple)

    def members(self) -> tuple[AffineRoot, ...]:
        """Every affine root appearing in some entry."""
        return tuple(sorted({r for e in self.entries for r in e.roots}))

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.entries], "dim": self.dim}


@dataclass(frozen=True)
class Functional:
    """A functional on V(x), given by its value on the generator of each line."""

    space: VxSpace
    values: Mapping[SxEntry, int] = field(default_factory=dict)

    def __post_init__(self):
        unknown = set(self.values) - set(self.space.entries)
        if unknown:
            raise InvalidInput(f"functional has values off V(x): {sorted(unknown)}")

    @classmethod
    def nonzero_on(cls, space: VxSpace, entries: Iterable[SxEntry]) -> Functional:
        return cls(space, {e: 1 for e in entries})


def support(lam: Functional) -> tuple[AffineRoot, ...]:
    """Affine roots on which the functional is nontrivial; tuples contribute every member."""
    out = set()
    for e, v in lam.values.items():
        if v:
            out.update(e.roots)
    return tuple(sorted(out))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def check_pq(p: int, q: int) -> None:
    if not _is_prime(p):
        raise InvalidInput(f"p = {p} is not prime")
    r = q
    while r > 1 and r % p == 0:
        r //= p
    if q < p or r != 1:
        raise InvalidInput(f"q = {q} is not a power of p = {p}")


def _g2_table(sys: RootSystem, x, p: int, q: int, delta) -> list[SxEntry]:
    kac = point_to_kac(sys, x).b
    s = SxEntry.single
    # Bourbaki order: alpha1 short, alpha2 long, theta = 3 alpha1 + 2 alpha2
    if kac == (1, 1, 1) and p == 2 and q == 2:
        return [s(AffineRoot((-3, -2), 1)), s(AffineRoot((1, 0), 0)), s(AffineRoot((0, 1), 0)),
                SxEntry.tuple_of([AffineRoot((1, 1), 0), AffineRoot((2, 1), 0)])]
    if kac == (1, 1, 0) and p == 3:
        base = [s(r) for r in delta]
        return base + [s(AffineRoot((3, 1), 0)), s(AffineRoot((3, 2), 0))]
    raise Unsupported(f"G2 with p = {p}, q = {q} at Kac point {kac} is not tabulated")


def _seed(sys: RootSystem, delta: Sequence[AffineRoot], x) -> set[AffineRoot]:
    seeds = set(delta)
    for a in delta:
        for b in delta:
            for k in (1, 2):
                s = k * a + b
                if s.gradient in sys.all_roots and 0 < s(x) < 1:
                    seeds.add(s)
    return seeds


def _rewrite(sys: RootSystem, x, delta: Sequence[AffineRoot], delta2: Sequence[AffineRoot],
             order: Sequence[tuple[AffineRoot, AffineRoot]] | None = None):
    singles = _seed(sys, delta, x)
    pairs: set[tuple[AffineRoot, AffineRoot]] = set()
    delta_set = set(delta)

    if order is None:
        order = [(a, b) for a in sorted(delta) for b in sorted(delta)]
    for psi, theta in order:
        gs, gt = psi.gradient, theta.gradient
        plus = tuple(a + b for a, b in zip(gs, gt))
        minus = tuple(a - b for a, b in zip(gs, gt))
        if plus not in sys.all_roots or minus in sys.all_roots or not any(minus):
            continue
        pt, tp = coroot_pairing(sys, gs, gt), coroot_pairing(sys, gt, gs)
        if pt == tp == -1:
            singles.discard(psi + theta)
        elif pt == -1 and tp == -2:
            pairs.add((psi + theta, 2 * psi + theta))

    for eps in sorted(delta):
        for eta in sorted(delta2):
            s = eps + eta
            if s in singles and (eta - eps) not in delta_set:
                singles.discard(s)

    # cascade to a fixed point; each pass removes at least one pair or stops
    for _ in range(len(pairs) + 1):
        broken = {pr for pr in pairs if pr[0] not in singles or pr[1] not in singles}
        if not broken:
            break
        for a, b in broken:
            singles.discard(a)
            singles.discard(b)
        pairs -= broken
    else:  # pragma: no cover
        raise AssertionError("cascade did not stabilise")
    return singles, pairs


def _components(singles: set[AffineRoot], pairs: set[tuple[AffineRoot, AffineRoot]]) -> list[SxEntry]:
    parent = {r: r for r in singles}

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for a, b in sorted(pairs):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[AffineRoot, list[AffineRoot]] = {}
    for r in sorted(singles):
        groups.setdefault(find(r), []).append(r)
    return [SxEntry(tuple(g)) for g in groups.values()]


def compute_sx(sys: RootSystem, p: int, q: int, x: Sequence) -> VxSpace:
    """Index set S(x) for the abelianisation at the facet barycentre ``x``."""
    check_pq(p, q)
    x = tuple(Fraction(c) for c in x)
    delta, d = delta_x(sys, x)
    delta = tuple(r for r in delta if r(x) < 1)  # the hyperspecial vertex has nothing below 1
    if not delta:
        entries: list[SxEntry] = []
    elif sys.family == "G" and p in (2, 3):
        entries = _g2_table(sys, x, p, q, delta)
    elif sys.simply_laced or p > 3 or (sys.family != "G" and p > 2):
        entries = [SxEntry.single(r) for r in delta]
    else:
        singles, pairs = _rewrite(sys, x, delta, delta2_x(sys, x))
        entries = _components(singles, pairs)
        if q > 2:
            entries = [e for e in entries if not e.is_tuple]
    return VxSpace(x, p, q, tuple(sorted(entries)))
