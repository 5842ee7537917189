"""Permutations, finite group actions, orbits, blocks and orbitals.

Points are 0-based internally; all text I/O (cycle notation) is 1-based.
Groups are given by generator permutations; the full element list is only
materialized on demand (`closure`), with a cap, since every pipeline step
except stabilizers works from generators alone.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import CapExceeded, NotTransitive, OutOfRange, ParseError

__all__ = [
    "Permutation",
    "PermAction",
    "Orbital",
    "parse_permutation",
    "cycle_type",
    "char_poly_factored",
]


class Permutation:
    """A bijection on {0..N-1}, stored as the tuple of images.

    Products compose left-to-right: x*(p*q) means apply p, then q, matching
    the right-action convention used throughout.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ParseError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise OutOfRange("degree mismatch in product")
        return Permutation(other.images[i] for i in self.images)

    def inverse(self) -> "Permutation":
        out = [0] * self.degree
        for i, j in enumerate(self.images):
            out[j] = i
        return Permutation(out)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        k = 1
        cur = self
        while not cur.is_identity():
            cur = cur * self
            k += 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its least point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                seen.add(i)
                continue
            cyc = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            seen.add(i)
            out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cycs)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def parse_permutation(text, degree: int) -> Permutation:
    """Permutation from 1-based cycle notation or an image list.

    Accepts "(1,2,3)(4,5)", "()" (identity), and list-like inputs of 1-based
    images such as "[2,3,1]" or an actual sequence of 0-based images.
    """
    if isinstance(text, Permutation):
        if text.degree != degree:
            raise OutOfRange("degree mismatch")
        return text
    if not isinstance(text, str):
        return Permutation(text)
    s = text.strip().replace(" ", "")
    if s in ("()", "", "e", "id"):
        return Permutation.identity(degree)
    if s.startswith("["):
        try:
            images = [int(tok) for tok in s[1:-1].split(",") if tok]
        except ValueError as exc:
            raise ParseError(f"bad image list {text!r}") from exc
        if sorted(images) != list(range(1, degree + 1)):
            raise OutOfRange(f"image list is not 1..{degree}")
        return Permutation(i - 1 for i in images)
    if not re.fullmatch(r"(\(\d+(,\d+)*\))+", s):
        raise ParseError(f"bad cycle notation {text!r}")
    images = list(range(degree))
    for cyc in re.findall(r"\(([\d,]+)\)", s):
        pts = [int(tok) for tok in cyc.split(",")]
        if len(set(pts)) != len(pts):
            raise ParseError(f"repeated point in cycle ({cyc})")
        for p in pts:
            if not 1 <= p <= degree:
                raise OutOfRange(f"point {p} outside 1..{degree}")
        for i, p in enumerate(pts):
            images[p - 1] = pts[(i + 1) % len(pts)] - 1
    return Permutation(images)


def cycle_type(p: Permutation) -> dict[int, int]:
    """Map cycle length -> count, fixed points included."""
    counts: dict[int, int] = {}
    moved = 0
    for c in p.cycles():
        counts[len(c)] = counts.get(len(c), 0) + 1
        moved += len(c)
    fixed = p.degree - moved
    if fixed:
        counts[1] = counts.get(1, 0) + fixed
    return counts


def char_poly_factored(p: Permutation) -> list[tuple[int, int]]:
    """Characteristic polynomial of the permutation matrix, factored.

    Returns [(i, k_i), ...] meaning the product of (lambda^i - 1)^(k_i)
    over cycle lengths i, k_i cycles of each length (up to overall sign).
    """
    return sorted(cycle_type(p).items())


@dataclass(frozen=True)
class Orbital:
    """An orbit of the coordinate-wise action on ordered point pairs."""

    index: int
    degree: int
    pairs: frozenset[tuple[int, int]]

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        rows = [[0] * self.degree for _ in range(self.degree)]
        for i, j in self.pairs:
            rows[i][j] = 1
        return tuple(tuple(r) for r in rows)

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.pairs)

    def transpose_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((j, i) for i, j in self.pairs)


DEFAULT_CLOSURE_CAP = 10**6


class PermAction:
    """A degree-N group action given by generator permutations."""

    def __init__(self, degree: int, generators, name: str | None = None):
        gens = [parse_permutation(g, degree) for g in generators]
        if not gens:
            raise ParseError("need at least one generator")
        for g in gens:
            if g.degree != degree:
                raise OutOfRange("generator degree mismatch")
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self._closure: tuple[Permutation, ...] | None = None

    def __repr__(self) -> str:
        label = self.name or f"degree-{self.degree} action"
        return f"PermAction({label}, {len(self.generators)} generators)"

    # -- element enumeration -------------------------------------------------

    def closure(self, cap: int = DEFAULT_CLOSURE_CAP) -> tuple[Permutation, ...]:
        """All group elements by breadth-first products, identity first."""
        if self._closure is not None:
            return self._closure
        e = Permutation.identity(self.degree)
        seen = {e}
        order = [e]
        frontier = [e]
        while frontier:
            new = []
            for x in frontier:
                for g in self.generators:
                    y = x * g
                    if y not in seen:
                        if len(seen) >= cap:
                            raise CapExceeded(f"group order exceeds cap {cap}")
                        seen.add(y)
                        order.append(y)
                        new.append(y)
            frontier = new
        self._closure = tuple(order)
        return self._closure

    def order(self, cap: int = DEFAULT_CLOSURE_CAP) -> int:
        return len(self.closure(cap))

    def exponent(self, cap: int = DEFAULT_CLOSURE_CAP) -> int:
        """lcm of element orders."""
        from math import lcm

        out = 1
        for g in self.closure(cap):
            out = lcm(out, g.order())
        return out

    # -- orbits ---------------------------------------------------------------

    def orbits(self, seedset=None) -> list[list[int]]:
        """Orbit partition of {0..N-1} (or of the given seed points)."""
        points = range(self.degree) if seedset is None else sorted(seedset)
        seen: set[int] = set()
        out = []
        for p in points:
            if p in seen:
                continue
            orb = [p]
            seen.add(p)
            frontier = [p]
            while frontier:
                new = []
                for x in frontier:
                    for g in self.generators:
                        y = g(x)
                        if y not in seen:
                            seen.add(y)
                            orb.append(y)
                            new.append(y)
                frontier = new
            out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def orbit_of(self, point: int) -> list[int]:
        return next(o for o in self.orbits() if point in o)

    # -- blocks -----------------------------------------------------------------

    def blocks(self) -> list[list[int]] | None:
        """A minimal nontrivial block system, or None if primitive.

        Standard pair-seeded finest-block algorithm: for each seed pair
        {0, b} compute the finest invariant partition merging them; return
        the system with the smallest block size > 1, if any is nontrivial.
        """
        if not self.is_transitive():
            raise NotTransitive("blocks need a transitive action")
        n = self.degree
        best: list[list[int]] | None = None
        for b in range(1, n):
            parent = list(range(n))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            queue = [(0, b)]
            while queue:
                x, y = queue.pop()
                rx, ry = find(x), find(y)
                if rx == ry:
                    continue
                parent[ry] = rx
                for g in self.generators:
                    queue.append((g(x), g(y)))
            classes: dict[int, list[int]] = {}
            for x in range(n):
                classes.setdefault(find(x), []).append(x)
            system = sorted(classes.values())
            size = len(system[0])
            if 1 < size < n and (best is None or size < len(best[0])):
                best = system
        return best

    # -- orbitals -----------------------------------------------------------------

    def orbitals(self) -> list[Orbital]:
        """Orbits on ordered pairs, in first-seen lexicographic order.

        The scan starts at (0,0); for a transitive action the first orbital
        is therefore the diagonal.  The count equals the rank R.
        """
        n = self.degree
        assigned = [[-1] * n for _ in range(n)]
        out: list[Orbital] = []
        for i in range(n):
            for j in range(n):
                if assigned[i][j] >= 0:
                    continue
                index = len(out)
                pairs = [(i, j)]
                assigned[i][j] = index
                frontier = [(i, j)]
                while frontier:
                    new = []
                    for x, y in frontier:
                        for g in self.generators:
                            u, v = g(x), g(y)
                            if assigned[u][v] < 0:
                                assigned[u][v] = index
                                pairs.append((u, v))
                                new.append((u, v))
                    frontier = new
                out.append(Orbital(index, n, frozenset(pairs)))
        return out

    def rank(self) -> int:
        return len(self.orbitals())

    # -- stabilizers -----------------------------------------------------------------

    def stabilizer(self, point: int, cap: int = DEFAULT_CLOSURE_CAP) -> "PermAction":
        """Subgroup fixing a point, returned by its full element list."""
        elems = [g for g in self.closure(cap) if g(point) == point]
        label = f"Stab_{self.name or 'G'}({point + 1})"
        return PermAction(self.degree, elems, name=label)

    # -- serialization ------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [str(g) for g in self.generators],
            "name": self.name,
        }

    @staticmethod
    def from_json(obj: dict) -> "PermAction":
        return PermAction(int(obj["degree"]), obj["generators"], obj.get("name"))
