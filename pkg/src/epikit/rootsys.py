"""Finite root systems of types A-G in the simple-root basis.

Roots are integer tuples of simple-root coefficients (Bourbaki numbering).
Points of the apartment are rational tuples in the fundamental-coweight basis,
so the pairing between the two is a plain dot product.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from typing import Iterable, Sequence

from .errors import InvalidInput

Root = tuple[int, ...]
CoweightVector = tuple[Fraction, ...]
Matrix = tuple[tuple[int, ...], ...]

_LONG_SQUARE = {"B": 4, "C": 4, "F": 4, "G": 6}


def _edges(family: str, rank: int) -> list[tuple[int, int]]:
    # 1-based Bourbaki labels
    if family in "ABC":
        return [(i, i + 1) for i in range(1, rank)]
    if family == "D":
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    if family == "E":
        chain = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)]
        return [e for e in chain if e[1] <= rank] + [(2, 4)]
    if family == "F":
        return [(1, 2), (2, 3), (3, 4)]
    if family == "G":
        return [(1, 2)]
    raise InvalidInput(f"unknown family {family!r}")


def _square_lengths(family: str, rank: int) -> list[int]:
    long = _LONG_SQUARE.get(family, 2)
    if family == "B":
        return [long] * (rank - 1) + [2]
    if family == "C":
        return [2] * (rank - 1) + [long]
    if family == "F":
        return [long, long, 2, 2]
    if family == "G":
        return [2, long]
    return [2] * rank


def _check_type(family: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if not ok.get(family, False):
        raise InvalidInput(f"no simple root system of type {family}{rank}")


def parse_type(name: str) -> tuple[str, int]:
    """Split a type name such as ``"B5"`` into ``("B", 5)``."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", name)
    if not m:
        raise InvalidInput(f"cannot parse root system type {name!r}")
    family, rank = m.group(1).upper(), int(m.group(2))
    _check_type(family, rank)
    return family, rank


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b)
    cols = list(zip(*b))
    return tuple(tuple(sum(r[k] * c[k] for k in range(n)) for c in cols) for r in a)


def _mat_vec(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    gram: Matrix  # (alpha_i, alpha_j), short roots have square length 2
    cartan: Matrix  # cartan[i][j] = <alpha_i, alpha_j^vee>
    simple_roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    highest_root: Root
    marks: tuple[int, ...]  # marks[0] = 1 for the affine node
    all_roots: frozenset[Root] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def roots(self) -> tuple[Root, ...]:
        """All roots, sorted: negatives first, then positives, each lexicographically."""
        return tuple(sorted(self.all_roots))

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"

    def is_root(self, v: Iterable[int]) -> bool:
        return tuple(v) in self.all_roots

    def form(self, a: Sequence, b: Sequence) -> int | Fraction:
        """Invariant bilinear form, normalised so short roots have (a, a) = 2."""
        return sum(a[i] * self.gram[i][j] * b[j] for i in range(self.rank) for j in range(self.rank)
                   if a[i] and b[j])

    def height(self, root: Root) -> int:
        return sum(root)

    def is_positive(self, root: Root) -> bool:
        return any(c > 0 for c in root)

    def is_long(self, root: Root) -> bool:
        return self.form(root, root) == max(self.gram[i][i] for i in range(self.rank))

    def reflect(self, j: int, root: Sequence[int]) -> Root:
        """Simple reflection s_j (1-based) applied to a root-lattice vector."""
        k = j - 1
        c = sum(root[i] * self.cartan[i][k] for i in range(self.rank))
        out = list(root)
        out[k] -= c
        return tuple(out)

    def coroot(self, root: Root) -> CoweightVector:
        """Coroot of ``root`` in fundamental-coweight coordinates: <alpha_i, root^vee>."""
        norm = self.form(root, root)
        return tuple(Fraction(2 * self.form(self.simple_roots[i], root), norm)
                     for i in range(self.rank))

    def simple_coroot(self, j: int) -> tuple[int, ...]:
        """alpha_j^vee (1-based j) in fundamental-coweight coordinates."""
        return tuple(self.cartan[i][j - 1] for i in range(self.rank))

    def affine_gradients(self) -> tuple[Root, ...]:
        """Gradients of the simple affine roots, affine node (-theta) first."""
        return (tuple(-c for c in self.highest_root),) + self.simple_roots


@cache
def build_root_system(family: str, rank: int) -> RootSystem:
    """Build the root system of type ``family``+``rank`` (e.g. ``("G", 2)``).

    Roots are generated by closing the simple roots under simple reflections.
    """
    family = family.upper()
    _check_type(family, rank)
    lengths = _square_lengths(family, rank)
    gram = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = lengths[i]
    for a, b in _edges(family, rank):
        v = -max(lengths[a - 1], lengths[b - 1]) // 2
        gram[a - 1][b - 1] = gram[b - 1][a - 1] = v
    cartan = tuple(tuple(2 * gram[i][j] // gram[j][j] for j in range(rank)) for i in range(rank))
    simple = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))

    seen = set(simple)
    todo = deque(simple)
    while todo:
        r = todo.popleft()
        for j in range(rank):
            c = sum(r[i] * cartan[i][j] for i in range(rank))
            if c == 0:
                continue
            s = list(r)
            s[j] -= c
            s = tuple(s)
            if s not in seen:
                seen.add(s)
                todo.append(s)
    positive = tuple(sorted((r for r in seen if any(c > 0 for c in r)), key=lambda r: (sum(r), r)))
    highest = positive[-1]
    return RootSystem(
        family=family,
        rank=rank,
        gram=tuple(tuple(row) for row in gram),
        cartan=cartan,
        simple_roots=simple,
        positive_roots=positive,
        highest_root=highest,
        marks=(1,) + highest,
        all_roots=frozenset(seen),
    )


def root_system(name: str) -> RootSystem:
    """Root system from a name such as ``"G2"``."""
    return build_root_system(*parse_type(name))


def pairing(alpha: Sequence[int], gamma: Sequence) -> Fraction:
    """<alpha, gamma> for a root-lattice vector and a coweight-space vector."""
    if len(alpha) != len(gamma):
        raise InvalidInput(f"rank mismatch: {len(alpha)} vs {len(gamma)}")
    return Fraction(sum(a * g for a, g in zip(alpha, gamma)))


def root_string(sys: RootSystem, alpha: Root, beta: Root) -> tuple[int, int]:
    """(p, q) such that beta - p*alpha, ..., beta + q*alpha is the alpha-string through beta."""
    if alpha == beta or alpha == tuple(-c for c in beta):
        raise InvalidInput("root_string needs linearly independent roots")
    if alpha not in sys.all_roots or beta not in sys.all_roots:
        raise InvalidInput("root_string arguments must be roots")

    def walk(sign: int) -> int:
        k = 0
        while tuple(b + sign * (k + 1) * a for a, b in zip(alpha, beta)) in sys.all_roots:
            k += 1
        return k

    return walk(-1), walk(1)


def coroot_pairing(sys: RootSystem, alpha: Root, beta: Root) -> int:
    """<alpha, beta^vee> = 2 (alpha, beta) / (beta, beta)."""
    if alpha not in sys.all_roots or beta not in sys.all_roots:
        raise InvalidInput("coroot_pairing arguments must be roots")
    num = 2 * sys.form(alpha, beta)
    den = sys.form(beta, beta)
    if num % den:
        raise AssertionError("non-integral Cartan integer")  # pragma: no cover
    return num // den


@dataclass(frozen=True, eq=False)
class WeylElement:
    """Element of the finite Weyl group.

    ``word`` lists 1-based simple reflection labels, leftmost applied last;
    ``matrix`` acts on root coordinates (column vectors) and ``comatrix`` on
    fundamental-coweight coordinates, with <matrix a, comatrix g> = <a, g>.
    """

    word: tuple[int, ...]
    matrix: Matrix
    comatrix: Matrix

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __mul__(self, other: WeylElement) -> WeylElement:
        return WeylElement(self.word + other.word,
                           _mat_mul(self.matrix, other.matrix),
                           _mat_mul(self.comatrix, other.comatrix))

    def apply_root(self, root: Sequence[int]) -> Root:
        return _mat_vec(self.matrix, root)

    def apply_coweight(self, gamma: Sequence) -> tuple:
        return _mat_vec(self.comatrix, gamma)

    def inverse(self) -> WeylElement:
        # inverse of an orthogonal-type map: transpose of the dual action
        inv_m = tuple(zip(*self.comatrix))
        inv_c = tuple(zip(*self.matrix))
        return WeylElement(tuple(reversed(self.word)), inv_m, inv_c)

    @property
    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == int(i == j) for i in range(len(self.matrix))
                   for j in range(len(self.matrix)))


def simple_reflection(sys: RootSystem, j: int) -> WeylElement:
    n, k = sys.rank, j - 1
    if not 0 <= k < n:
        raise InvalidInput(f"no simple reflection {j} in {sys.name}")
    mat = tuple(tuple(int(r == i) - (r == k) * sys.cartan[i][k] for i in range(n)) for r in range(n))
    comat = tuple(tuple(int(i == l) - (l == k) * sys.cartan[i][k] for l in range(n)) for i in range(n))
    return WeylElement((j,), mat, comat)


def identity_element(sys: RootSystem) -> WeylElement:
    eye = _identity(sys.rank)
    return WeylElement((), eye, eye)


def weyl_from_word(sys: RootSystem, word: Iterable[int]) -> WeylElement:
    out = identity_element(sys)
    for j in word:
        out = out * simple_reflection(sys, j)
    return out


def reduced_word(sys: RootSystem, matrix: Matrix) -> WeylElement:
    """Rebuild a Weyl element with a reduced word from its root-coordinate matrix.

    Raises InvalidInput when the matrix permutes the roots but is not in W
    (a nontrivial diagram automorphism survives the descent loop).
    """
    cur = WeylElement((), matrix, tuple(zip(*_inverse_int(matrix))))
    tail: list[int] = []
    while True:
        for j in range(1, sys.rank + 1):
            image = cur.apply_root(sys.simple_roots[j - 1])
            if not sys.is_positive(image):
                cur = cur * simple_reflection(sys, j)
                tail.append(j)
                break
        else:
            break
    if not cur.is_identity:
        raise InvalidInput("matrix is not an element of the Weyl group")
    return weyl_from_word(sys, reversed(tail))


def _inverse_int(m: Matrix) -> Matrix:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for row in aug:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise InvalidInput("matrix is not unimodular")
        out.append(tuple(int(v) for v in vals))
    return tuple(out)


@cache
def weyl_group(sys: RootSystem) -> tuple[WeylElement, ...]:
    """All elements of W, breadth-first by length (so every word is reduced)."""
    start = identity_element(sys)
    gens = [simple_reflection(sys, j) for j in range(1, sys.rank + 1)]
    seen = {start.matrix: start}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for g in gens:
                v = u * g
                if v.matrix not in seen:
                    seen[v.matrix] = v
                    nxt.append(v)
        frontier = nxt
    return tuple(seen.values())


def format_root(root: Sequence[int], symbol: str = "a") -> str:
    """Human-readable root, e.g. ``(2, 1) -> "2a1+a2"``."""
    parts = []
    for i, c in enumerate(root, start=1):
        if c == 0:
            continue
        coef = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{coef}{symbol}{i}"))
    if not parts:
        return "0"
    text = "".join(s + t for s, t in parts)
    return text[1:] if text.startswith("+") else text
