"""Affine roots, apartment points, Kac coordinates and the Iwahori-Weyl group.

An affine root ``alpha + n`` is stored as (gradient, level); a point of the
apartment is a tuple of Fractions in fundamental-coweight coordinates with the
hyperspecial vertex as origin.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import floor, ceil, gcd
from typing import Iterable, Sequence

from .errors import InvalidInput, NotABarycentre
from .rootsys import (RootSystem, WeylElement, _inverse_int, format_root,
                      identity_element, reduced_word, simple_reflection)

ADJOINT = "adjoint"
SIMPLY_CONNECTED = "simply-connected"
LATTICES = (ADJOINT, SIMPLY_CONNECTED)


@dataclass(frozen=True, order=True)
class AffineRoot:
    """The affine function ``x -> <gradient, x> + level``."""

    gradient: tuple[int, ...]
    level: int

    def __post_init__(self):
        object.__setattr__(self, "gradient", tuple(int(c) for c in self.gradient))
        object.__setattr__(self, "level", int(self.level))

    def __call__(self, x: Sequence) -> Fraction:
        return evaluate(self, x)

    def __add__(self, other: AffineRoot | int) -> AffineRoot:
        if isinstance(other, int):
            return AffineRoot(self.gradient, self.level + other)
        return AffineRoot(tuple(a + b for a, b in zip(self.gradient, other.gradient)),
                          self.level + other.level)

    __radd__ = __add__

    def __neg__(self) -> AffineRoot:
        return AffineRoot(tuple(-c for c in self.gradient), -self.level)

    def __sub__(self, other: AffineRoot | int) -> AffineRoot:
        return self + (-other)

    def __rmul__(self, k: int) -> AffineRoot:
        return AffineRoot(tuple(k * c for c in self.gradient), k * self.level)

    @property
    def is_constant(self) -> bool:
        return not any(self.gradient)

    def to_json(self) -> dict:
        return {"gradient": list(self.gradient), "level": self.level}

    @classmethod
    def from_json(cls, data) -> AffineRoot:
        try:
            return cls(tuple(data["gradient"]), data.get("level", 0))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidInput(f"bad affine root {data!r}") from exc


def root(*coeffs: int, level: int = 0) -> AffineRoot:
    """Shorthand: ``root(1, 1)`` is a1+a2, ``root(-3, -2, level=1)`` is 1-a0 in G2."""
    return AffineRoot(coeffs, level)


def format_affine(sys: RootSystem, psi: AffineRoot) -> str:
    """Readable form using a0 for the highest root, e.g. ``1-a0+a2``."""
    g = psi.gradient
    k = 0
    if sys.is_positive(g) or not any(g):
        rest = g
    else:
        # write the gradient as -k*a0 + (non-negative part)
        theta = sys.highest_root
        k = max(ceil(Fraction(-c, t)) for c, t in zip(g, theta) if c < 0)
        rest = tuple(c + k * t for c, t in zip(g, theta))
    parts = []
    if psi.level:
        parts.append(str(psi.level))
    if k:
        parts.append(("-" if k == 1 else f"-{k}") + "a0")
    if any(rest):
        parts.append(format_root(rest))
    if not parts:
        return "0"
    text = parts[0]
    for p in parts[1:]:
        text += p if p.startswith("-") else "+" + p
    return text


def evaluate(psi: AffineRoot, x: Sequence) -> Fraction:
    """Value of ``psi`` at the point ``x``."""
    if len(psi.gradient) != len(x):
        raise InvalidInput("rank mismatch between affine root and point")
    return Fraction(psi.level) + sum((a * Fraction(c) for a, c in zip(psi.gradient, x) if a),
                                     Fraction(0))


@dataclass(frozen=True)
class BuildingPoint:
    """A point of the standard apartment in fundamental-coweight coordinates."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


@dataclass(frozen=True)
class KacCoords:
    """Kac coordinates (b0, b1, ..., bn), affine node first, Bourbaki order."""

    b: tuple[int, ...]

    def __post_init__(self):
        b = tuple(int(v) for v in self.b)
        if any(v < 0 for v in b):
            raise InvalidInput("Kac coordinates must be non-negative")
        if not any(b):
            raise InvalidInput("Kac coordinates cannot all vanish")
        object.__setattr__(self, "b", b)

    def normalizer(self, sys: RootSystem) -> int:
        self._check(sys)
        return sum(m * v for m, v in zip(sys.marks, self.b))

    def normalized(self) -> KacCoords:
        g = reduce(gcd, self.b)
        return KacCoords(tuple(v // g for v in self.b))

    def _check(self, sys: RootSystem) -> None:
        if len(self.b) != sys.rank + 1:
            raise InvalidInput(f"{sys.name} needs {sys.rank + 1} Kac coordinates, got {len(self.b)}")


def simple_affine_roots(sys: RootSystem) -> tuple[AffineRoot, ...]:
    """psi_0 = 1 - theta, then the simple roots."""
    return tuple(AffineRoot(g, int(i == 0)) for i, g in enumerate(sys.affine_gradients()))


def kac_to_point(sys: RootSystem, kac: KacCoords | Sequence[int]) -> BuildingPoint:
    """The point where each simple affine root psi_i takes the value b_i / m."""
    if not isinstance(kac, KacCoords):
        kac = KacCoords(tuple(kac))
    m = kac.normalizer(sys)
    return BuildingPoint(tuple(Fraction(v, m) for v in kac.b[1:]))


def point_to_kac(sys: RootSystem, x: Sequence) -> KacCoords:
    """Inverse of :func:`kac_to_point` on the closed fundamental alcove."""
    values = [psi(x) for psi in simple_affine_roots(sys)]
    if any(v < 0 for v in values):
        raise InvalidInput("point lies outside the closed fundamental alcove")
    den = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in values), 1)
    ints = [int(v * den) for v in values]
    g = reduce(gcd, ints)
    return KacCoords(tuple(v // g for v in ints))


_DIAGRAM_ORDER = {("G", 2): (0, 2, 1)}


def parse_kac(text: str, sys: RootSystem, order: str = "diagram") -> KacCoords:
    """Parse ``"1,0,1"`` or compact arrow notation like ``"10⇛1"``.

    ``order="diagram"`` reads the entries along the affine Dynkin diagram as it
    is usually drawn (for G2: affine node, long root, short root);
    ``order="bourbaki"`` reads them as (b0, b1, ..., bn).  The two agree for
    every type except G2.
    """
    raw = text.strip()
    if "," in raw or " " in raw:
        parts = [p for p in re.split(r"[,\s]+", raw) if p]
    else:
        parts = [c for c in raw if c.isdigit()]
        if re.search(r"[^\d⇛⇒→<>=\-]", raw):
            raise InvalidInput(f"cannot parse Kac coordinates {text!r}")
    try:
        vals = [int(p) for p in parts]
    except ValueError as exc:
        raise InvalidInput(f"cannot parse Kac coordinates {text!r}") from exc
    if len(vals) != sys.rank + 1:
        raise InvalidInput(f"{sys.name} needs {sys.rank + 1} Kac coordinates, got {len(vals)}")
    if order == "diagram":
        perm = _DIAGRAM_ORDER.get((sys.family, sys.rank))
        if perm:
            vals = [vals[perm.index(i)] for i in range(len(vals))]
    elif order != "bourbaki":
        raise InvalidInput(f"unknown Kac order {order!r}")
    return KacCoords(tuple(vals))


def barycentre(sys: RootSystem, nonvanishing: Iterable[int]) -> BuildingPoint:
    """Barycentre of the facet on which exactly the listed simple affine roots are nonzero."""
    nodes = set(nonvanishing)
    if not nodes or not nodes <= set(range(sys.rank + 1)):
        raise InvalidInput("need a nonempty subset of the affine nodes 0..rank")
    return kac_to_point(sys, tuple(int(i in nodes) for i in range(sys.rank + 1)))


def facet_barycentres(sys: RootSystem) -> list[BuildingPoint]:
    """Barycentres of all facets of the closed fundamental alcove."""
    out = []
    for bits in product((0, 1), repeat=sys.rank + 1):
        if any(bits):
            out.append(kac_to_point(sys, bits))
    return out


def check_barycentre(sys: RootSystem, x: Sequence) -> Fraction:
    """Return delta(x), raising NotABarycentre if ``x`` is not a facet barycentre."""
    if len(x) != sys.rank:
        raise InvalidInput("rank mismatch")
    values = [psi(x) for psi in simple_affine_roots(sys)]
    positive = {v for v in values if v != 0}
    if any(v < 0 for v in values) or len(positive) != 1:
        raise NotABarycentre(f"point {tuple(str(c) for c in x)} is not a facet barycentre")
    return positive.pop()


def psi_x_band(sys: RootSystem, x: Sequence, lo, hi, lo_strict: bool = True,
               hi_strict: bool = True) -> tuple[AffineRoot, ...]:
    """All affine roots psi with lo < psi(x) < hi (inclusive ends when not strict)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi or (lo == hi and (lo_strict or hi_strict)):
        raise InvalidInput("empty band")
    out = []
    for a in sys.roots:
        v = sum((c * Fraction(xi) for c, xi in zip(a, x) if c), Fraction(0))
        n_lo = floor(lo - v) + 1 if lo_strict else ceil(lo - v)
        n_hi = ceil(hi - v) - 1 if hi_strict else floor(hi - v)
        for n in range(n_lo, n_hi + 1):
            out.append(AffineRoot(a, n))
    return tuple(sorted(out))


def delta_x(sys: RootSystem, x: Sequence) -> tuple[tuple[AffineRoot, ...], Fraction]:
    """Affine roots of minimal positive value at the barycentre ``x``, and that value."""
    d = check_barycentre(sys, x)
    return psi_x_band(sys, x, d, d, False, False), d


def delta2_x(sys: RootSystem, x: Sequence) -> tuple[AffineRoot, ...]:
    """Affine roots taking the value 2 delta(x) at ``x``."""
    d = check_barycentre(sys, x)
    return psi_x_band(sys, x, 2 * d, 2 * d, False, False)


def pi_x(sys: RootSystem, x: Sequence) -> tuple[AffineRoot, ...]:
    """Simple affine roots not vanishing at ``x``."""
    return tuple(p for p in simple_affine_roots(sys) if p(x) != 0)


def affine_reflect(sys: RootSystem, psi: AffineRoot, phi: AffineRoot) -> AffineRoot:
    """Reflection in the zero set of ``psi`` applied to ``phi``."""
    num = 2 * sys.form(phi.gradient, psi.gradient)
    den = sys.form(psi.gradient, psi.gradient)
    return phi - (num // den) * psi


def parahoric_orbit(sys: RootSystem, x: Sequence) -> tuple[AffineRoot, ...]:
    """Union of w(Pi(x)) over the reflection group generated by the vanishing simple affine roots.

    A diagnostic: it is always contained in Delta(x).
    """
    walls = [p for p in simple_affine_roots(sys) if p(x) == 0]
    seen = set(pi_x(sys, x))
    todo = list(seen)
    while todo:
        phi = todo.pop()
        for w in walls:
            img = affine_reflect(sys, w, phi)
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return tuple(sorted(seen))


def in_coroot_lattice(sys: RootSystem, mu: Sequence[int]) -> bool:
    """Whether a coweight-lattice vector lies in the span of the simple coroots."""
    # columns of the Cartan matrix are the simple coroots in coweight coordinates
    inv = _inverse_frac(sys.cartan)
    coeffs = [sum(inv[i][k] * mu[k] for k in range(sys.rank)) for i in range(sys.rank)]
    return all(c.denominator == 1 for c in coeffs)


def _inverse_frac(m):
    n = len(m)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def lattice_basis(sys: RootSystem, lattice: str) -> tuple[tuple[int, ...], ...]:
    """Rows are the coweight coordinates of each basis vector of the chosen lattice."""
    if lattice == ADJOINT:
        return tuple(tuple(int(i == j) for j in range(sys.rank)) for i in range(sys.rank))
    if lattice == SIMPLY_CONNECTED:
        return tuple(sys.simple_coroot(j) for j in range(1, sys.rank + 1))
    raise InvalidInput(f"unknown lattice {lattice!r}; use one of {LATTICES}")


@dataclass(frozen=True, eq=False)
class IwahoriWeylElement:
    """t_mu v: first apply the finite Weyl element v, then translate by mu."""

    translation: tuple[int, ...]
    finite: WeylElement

    def __post_init__(self):
        object.__setattr__(self, "translation", tuple(int(c) for c in self.translation))

    @property
    def key(self):
        return (self.translation, self.finite.matrix)

    def __eq__(self, other) -> bool:
        return isinstance(other, IwahoriWeylElement) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __mul__(self, other: IwahoriWeylElement) -> IwahoriWeylElement:
        mu = tuple(a + b for a, b in zip(self.translation, self.finite.apply_coweight(other.translation)))
        return IwahoriWeylElement(mu, self.finite * other.finite)

    def inverse(self) -> IwahoriWeylElement:
        vinv = self.finite.inverse()
        return IwahoriWeylElement(tuple(-c for c in vinv.apply_coweight(self.translation)), vinv)

    @property
    def is_identity(self) -> bool:
        return not any(self.translation) and self.finite.is_identity

    def sort_key(self):
        return (len(self.finite.word), self.finite.word, self.translation)

    def in_lattice(self, sys: RootSystem, lattice: str) -> bool:
        if lattice == ADJOINT:
            return True
        if lattice == SIMPLY_CONNECTED:
            return in_coroot_lattice(sys, self.translation)
        raise InvalidInput(f"unknown lattice {lattice!r}")

    def to_json(self) -> dict:
        return {"translation": list(self.translation), "word": list(self.finite.word)}


def translation(sys: RootSystem, mu: Sequence[int]) -> IwahoriWeylElement:
    return IwahoriWeylElement(tuple(mu), identity_element(sys))


def finite_element(sys: RootSystem, v: WeylElement) -> IwahoriWeylElement:
    return IwahoriWeylElement((0,) * sys.rank, v)


def identity(sys: RootSystem) -> IwahoriWeylElement:
    return finite_element(sys, identity_element(sys))


def act(w: IwahoriWeylElement, obj):
    """Action on an AffineRoot, or on a point (BuildingPoint or coordinate tuple)."""
    if isinstance(obj, AffineRoot):
        g = w.finite.apply_root(obj.gradient)
        shift = sum(a * m for a, m in zip(g, w.translation))
        return AffineRoot(g, obj.level - shift)
    coords = tuple(Fraction(c) for c in obj)
    moved = tuple(Fraction(c) + m for c, m in zip(w.finite.apply_coweight(coords), w.translation))
    return BuildingPoint(moved) if isinstance(obj, BuildingPoint) else moved


def reflection_matrix(sys: RootSystem, alpha: Sequence[int]):
    n = sys.rank
    cols = []
    for i in range(n):
        e = sys.simple_roots[i]
        c = 2 * sys.form(e, alpha) // sys.form(alpha, alpha)
        cols.append(tuple(e[k] - c * alpha[k] for k in range(n)))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def affine_reflection(sys: RootSystem, psi: AffineRoot) -> IwahoriWeylElement:
    """The reflection of the apartment in the zero set of ``psi`` = t_{-n a^vee} s_a."""
    a = psi.gradient
    if a not in sys.all_roots:
        raise InvalidInput("affine_reflection needs an affine root")
    v = reduced_word(sys, reflection_matrix(sys, a))
    cor = sys.coroot(a)
    return IwahoriWeylElement(tuple(int(-psi.level * c) for c in cor), v)


def _affine_cartan(sys: RootSystem):
    g = sys.affine_gradients()
    n = len(g)
    return [[2 * sys.form(g[i], g[k]) // sys.form(g[k], g[k]) for k in range(n)] for i in range(n)]


def _diagram_automorphisms(sys: RootSystem):
    a = _affine_cartan(sys)
    n = len(a)

    def extend(perm):
        i = len(perm)
        if i == n:
            yield tuple(perm)
            return
        for j in range(n):
            if j in perm:
                continue
            if a[i][i] != a[j][j]:
                continue
            if all(a[i][k] == a[j][perm[k]] and a[k][i] == a[perm[k]][j] for k in range(i)):
                yield from extend(perm + [j])

    yield from extend([])


def alcove_stabilizer(sys: RootSystem, lattice: str = ADJOINT) -> list[IwahoriWeylElement]:
    """Nonidentity elements of the extended affine Weyl group preserving the fundamental alcove."""
    lattice_basis(sys, lattice)  # validates the name
    psis = simple_affine_roots(sys)
    out = []
    for perm in _diagram_automorphisms(sys):
        if perm[0] == 0:
            continue
        # v(alpha_i) = gradient of psi_{perm(i)} for the simple roots
        cols = [psis[perm[i]].gradient for i in range(1, sys.rank + 1)]
        mat = tuple(tuple(cols[j][i] for j in range(sys.rank)) for i in range(sys.rank))
        try:
            _inverse_int(mat)
            v = reduced_word(sys, mat)
        except InvalidInput:
            continue
        # levels: psi_{perm(i)} has level -<v alpha_i, mu>, which pins down mu
        rows = [v.apply_root(sys.simple_roots[i]) for i in range(sys.rank)]
        rhs = [-psis[perm[i + 1]].level for i in range(sys.rank)]
        inv = _inverse_frac(rows)
        mu = [sum(inv[i][k] * rhs[k] for k in range(sys.rank)) for i in range(sys.rank)]
        if any(c.denominator != 1 for c in mu):
            continue
        w = IwahoriWeylElement(tuple(int(c) for c in mu), v)
        if not all(act(w, p) == psis[perm[i]] for i, p in enumerate(psis)):
            continue
        if w.in_lattice(sys, lattice):
            out.append(w)
    return sorted(set(out), key=IwahoriWeylElement.sort_key)


def word_element(sys: RootSystem, word: Iterable[int], mu: Sequence[int] | None = None) -> IwahoriWeylElement:
    v = identity_element(sys)
    for j in word:
        v = v * simple_reflection(sys, j)
    return IwahoriWeylElement(tuple(mu) if mu is not None else (0,) * sys.rank, v)


__all__ = [
    "ADJOINT", "SIMPLY_CONNECTED", "LATTICES", "AffineRoot", "BuildingPoint", "KacCoords",
    "IwahoriWeylElement", "act", "affine_reflect", "affine_reflection", "alcove_stabilizer",
    "barycentre", "check_barycentre", "delta2_x", "delta_x", "evaluate",
    "facet_barycentres", "finite_element", "format_affine", "identity", "in_coroot_lattice",
    "kac_to_point", "lattice_basis", "parahoric_orbit", "parse_kac", "pi_x", "point_to_kac",
    "psi_x_band", "root", "simple_affine_roots", "translation", "word_element",
]
