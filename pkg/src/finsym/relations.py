"""Calculus of finite discrete relations, applied to cellular automata.

A relation on points (x_1, ..., x_k) with q states per point is a subset of
the k-dimensional hypercube, stored as a bitset: tuple (s_1, ..., s_k) has
index s_1 + s_2*q + s_3*q^2 + ..., i.e. the FIRST listed point is the least
significant digit.  This matches the bit strings printed for the elementary
automata (rule 30 = 1001010101101010 on (p,q,r,s), etc.).

Supported analysis: extension, projection, base relations, proper
consequences, principal factors, canonical decomposition, reducibility and
primality, plus the polynomial (algebraic-normal-form) view over the
two-element field.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    LengthMismatch,
    NotConsequence,
    NotSuperset,
    UnsupportedQ,
)

__all__ = [
    "Relation",
    "relation_from_bits",
    "trivial_relation",
    "extend",
    "project",
    "base_relation",
    "proper_consequences",
    "principal_factor",
    "canonical_decomposition",
    "CanonicalDecomposition",
    "is_functional",
    "AnfPoly",
    "to_anf",
    "elementary_rule_relation",
    "kvalent_rule_relation",
    "life_relation",
    "classify_elementary",
    "simulate_elementary",
    "general_solution_check",
    "CARule",
]


@dataclass(frozen=True)
class Relation:
    """Finite relation over Sigma^points, Sigma = {0..q-1}, as a bitset."""

    points: tuple[str, ...]
    q: int
    bits: int

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("point labels must be distinct")
        if self.bits < 0 or self.bits >> self.size:
            raise LengthMismatch("bitset does not fit the hypercube")

    @property
    def arity(self) -> int:
        return len(self.points)

    @property
    def size(self) -> int:
        return self.q ** len(self.points)

    def count(self) -> int:
        return bin(self.bits).count("1")

    def is_trivial(self) -> bool:
        return self.bits == (1 << self.size) - 1

    def is_empty(self) -> bool:
        return self.bits == 0

    def contains(self, tup) -> bool:
        return bool(self.bits >> self.index_of(tup) & 1)

    def index_of(self, tup) -> int:
        idx = 0
        for s in reversed(tup):
            idx = idx * self.q + s
        return idx

    def tuple_of(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in self.points:
            out.append(idx % self.q)
            idx //= self.q
        return tuple(out)

    def tuples(self):
        for idx in range(self.size):
            if self.bits >> idx & 1:
                yield self.tuple_of(idx)

    def bitstring(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.size))

    def complement(self) -> "Relation":
        return Relation(self.points, self.q, self.bits ^ ((1 << self.size) - 1))

    def intersect(self, other: "Relation") -> "Relation":
        self._require_same_domain(other)
        return Relation(self.points, self.q, self.bits & other.bits)

    def union(self, other: "Relation") -> "Relation":
        self._require_same_domain(other)
        return Relation(self.points, self.q, self.bits | other.bits)

    def _require_same_domain(self, other: "Relation"):
        if self.q != other.q or self.points != other.points:
            raise LengthMismatch("relations live on different domains")

    def reorder(self, points: tuple[str, ...]) -> "Relation":
        """The same relation with its points listed in a different order."""
        if sorted(points) != sorted(self.points):
            raise LengthMismatch("reorder needs the same point set")
        pos = {p: i for i, p in enumerate(self.points)}
        bits = 0
        for tup in self.tuples():
            new = tuple(tup[pos[p]] for p in points)
            out = Relation(points, self.q, 0)
            bits |= 1 << out.index_of(new)
        return Relation(points, self.q, bits)

    def same_as(self, other: "Relation") -> bool:
        """Equality as a constraint, ignoring the point listing order."""
        if self.q != other.q or sorted(self.points) != sorted(other.points):
            return False
        return self.reorder(other.points).bits == other.bits

    def to_json(self) -> dict:
        return {"points": list(self.points), "q": self.q, "bits": self.bitstring()}

    @staticmethod
    def from_json(obj: dict) -> "Relation":
        return relation_from_bits(obj["points"], int(obj["q"]), obj["bits"])

    def __str__(self) -> str:
        return f"R^({','.join(self.points)}) q={self.q} bits={self.bitstring()}"


def relation_from_bits(points, q: int, bitstring: str) -> Relation:
    points = tuple(points)
    size = q ** len(points)
    if len(bitstring) != size:
        raise LengthMismatch(f"need {size} bits, got {len(bitstring)}")
    bits = 0
    for i, ch in enumerate(bitstring):
        if ch == "1":
            bits |= 1 << i
        elif ch != "0":
            raise LengthMismatch(f"invalid character {ch!r} in bit string")
    return Relation(points, q, bits)


def trivial_relation(points, q: int) -> Relation:
    points = tuple(points)
    return Relation(points, q, (1 << q ** len(points)) - 1)


def extend(rel: Relation, superset) -> Relation:
    """R x Sigma^(superset - points), on the superset's point order."""
    superset = tuple(superset)
    if not set(rel.points) <= set(superset):
        raise NotSuperset(f"{rel.points} is not contained in {superset}")
    out = Relation(superset, rel.q, 0)
    pos = [superset.index(p) for p in rel.points]
    bits = 0
    for idx in range(out.size):
        tup = out.tuple_of(idx)
        if rel.bits >> rel.index_of(tuple(tup[i] for i in pos)) & 1:
            bits |= 1 << idx
    return Relation(superset, rel.q, bits)


def project(rel: Relation, subset) -> Relation:
    """Existential projection: the strongest consequence on the sub-face."""
    subset = tuple(subset)
    if not subset or not set(subset) < set(rel.points):
        raise NotSuperset("projection face must be a nonempty proper subset")
    out = Relation(subset, rel.q, 0)
    pos = [rel.points.index(p) for p in subset]
    bits = 0
    for tup in rel.tuples():
        bits |= 1 << out.index_of(tuple(tup[i] for i in pos))
    return Relation(subset, rel.q, bits)


def base_relation(rels: list[Relation]) -> Relation:
    """Intersection of extensions to the union domain (compatibility)."""
    if not rels:
        raise ValueError("need at least one relation")
    q = rels[0].q
    domain: list[str] = []
    for r in rels:
        if r.q != q:
            raise LengthMismatch("mixed state counts")
        for p in r.points:
            if p not in domain:
                domain.append(p)
    out = trivial_relation(domain, q)
    for r in rels:
        out = out.intersect(extend(r, domain))
    return out


def proper_consequences(rel: Relation, max_codim: int = 1) -> list[tuple[tuple[str, ...], Relation]]:
    """All nontrivial projections onto faces of codimension <= max_codim."""
    out = []
    k = rel.arity
    for codim in range(1, max_codim + 1):
        if codim >= k:
            break
        for face in combinations(rel.points, k - codim):
            proj = project(rel, face)
            if not proj.is_trivial():
                out.append((face, proj))
    return out


def principal_factor(rel: Relation, consequences) -> Relation:
    """R union (hypercube minus the intersection of extended consequences)."""
    inter = trivial_relation(rel.points, rel.q)
    for _face, cons in consequences:
        ext = extend(cons, rel.points)
        if ext.bits & rel.bits != rel.bits:
            raise NotConsequence(f"{cons} is not a consequence of the relation")
        inter = inter.intersect(ext)
    return rel.union(inter.complement())


@dataclass
class CanonicalDecomposition:
    relation: Relation
    consequences: list[tuple[tuple[str, ...], Relation]]
    factor: Relation
    reducible: bool
    prime: bool
    codimension: int
    sub: dict  # face -> CanonicalDecomposition for recursion, possibly empty

    def verify(self) -> bool:
        """factor intersect extended consequences == relation, bit-exact."""
        acc = self.factor
        for _face, cons in self.consequences:
            acc = acc.intersect(extend(cons, self.relation.points))
        return acc.bits == self.relation.bits


def canonical_decomposition(rel: Relation, max_codim: int = 1, depth: int = 0) -> CanonicalDecomposition:
    """R = principal factor intersect extended codim-1 consequences.

    `depth` recurses the decomposition into the consequences themselves
    ("continuing the iterations").  Primality is decided by the codim-1
    projections, which dominate all deeper faces.
    """
    cons = proper_consequences(rel, max_codim)
    factor = principal_factor(rel, cons)
    sub: dict = {}
    if depth > 0:
        for face, c in cons:
            if c.arity > 1:
                sub[face] = canonical_decomposition(c, max_codim, depth - 1)
    deco = CanonicalDecomposition(
        relation=rel,
        consequences=cons,
        factor=factor,
        reducible=factor.is_trivial() and bool(cons),
        prime=not cons,
        codimension=max_codim,
        sub=sub,
    )
    assert deco.verify()
    return deco


def is_functional(rel: Relation, position: int) -> bool:
    """True when the point at `position` is a function of the others."""
    if not 0 <= position < rel.arity:
        raise NotSuperset("position out of range")
    seen: dict[tuple[int, ...], int] = {}
    for tup in rel.tuples():
        key = tup[:position] + tup[position + 1 :]
        if seen.setdefault(key, tup[position]) != tup[position]:
            return False
    return True


# ---------------------------------------------------------------------------
# polynomial (ANF) view for q = 2


@dataclass(frozen=True)
class AnfPoly:
    """Multilinear polynomial over F_2; zeros = members of the relation."""

    points: tuple[str, ...]
    monomials: frozenset[frozenset]

    def evaluate(self, assignment: dict[str, int]) -> int:
        acc = 0
        for mono in self.monomials:
            term = 1
            for p in mono:
                term &= assignment[p]
            acc ^= term
        return acc

    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        order = {p: i for i, p in enumerate(self.points)}
        monos = sorted(
            self.monomials,
            key=lambda m: (-len(m), sorted(order[p] for p in m)),
        )
        parts = []
        for m in monos:
            parts.append("".join(sorted(m, key=lambda p: order[p])) if m else "1")
        return "+".join(parts)


def to_anf(rel: Relation) -> AnfPoly:
    """Moebius transform of the complement indicator; P(x)=0 iff x in R."""
    if rel.q != 2:
        raise UnsupportedQ("polynomial form requires q = 2")
    k = rel.arity
    size = 1 << k
    # truth table of the complement indicator, indexed by our tuple index
    coeffs = [0] * size
    for idx in range(size):
        coeffs[idx] = 0 if rel.bits >> idx & 1 else 1
    # in-place XOR Moebius transform
    step = 1
    while step < size:
        for idx in range(size):
            if idx & step:
                coeffs[idx] ^= coeffs[idx ^ step]
        step <<= 1
    monos = set()
    for idx in range(size):
        if coeffs[idx]:
            monos.add(frozenset(rel.points[i] for i in range(k) if idx >> i & 1))
    return AnfPoly(rel.points, frozenset(monos))


# ---------------------------------------------------------------------------
# cellular-automaton rules as relations


ELEMENTARY_POINTS = ("p", "q", "r", "s")


def elementary_rule_relation(wolfram: int) -> Relation:
    """Local relation of an elementary CA on (p, q, r, s), s = f(p, q, r).

    Wolfram numbering: bit (4p + 2q + r) of the rule number is f(p, q, r).
    """
    if not 0 <= wolfram <= 255:
        raise ValueError("rule number must be in 0..255")
    out = Relation(ELEMENTARY_POINTS, 2, 0)
    bits = 0
    for p in range(2):
        for q_ in range(2):
            for r in range(2):
                s = wolfram >> (4 * p + 2 * q_ + r) & 1
                bits |= 1 << out.index_of((p, q_, r, s))
    return Relation(ELEMENTARY_POINTS, 2, bits)


def kvalent_rule_relation(k: int, born, survive) -> Relation:
    """Relation of a symmetric binary B/S rule on a k-valent neighborhood.

    Points are x1..xk (neighbors), x_{k+1} (the cell) and x_{k+2} (the cell
    one step later).
    """
    born = frozenset(born)
    survive = frozenset(survive)
    points = tuple(f"x{i+1}" for i in range(k + 2))
    out = Relation(points, 2, 0)
    bits = 0
    for idx in range(1 << (k + 1)):
        neigh = [(idx >> i) & 1 for i in range(k)]
        cell = (idx >> k) & 1
        alive = sum(neigh)
        nxt = 1 if (alive in born if cell == 0 else alive in survive) else 0
        bits |= 1 << out.index_of(tuple(neigh) + (cell, nxt))
    return Relation(points, 2, bits)


def life_relation() -> Relation:
    """Conway's Life as a 10-point relation; 512 member tuples."""
    return kvalent_rule_relation(8, born={3}, survive={2, 3})


@dataclass(frozen=True)
class CARule:
    """A cellular-automaton rule together with its induced local relation."""

    kind: str  # "elementary" | "symmetric" | "life"
    wolfram: int | None = None
    valence: int | None = None
    born: frozenset | None = None
    survive: frozenset | None = None

    @staticmethod
    def elementary(wolfram: int) -> "CARule":
        return CARule("elementary", wolfram=wolfram)

    @staticmethod
    def symmetric(k: int, born, survive) -> "CARule":
        return CARule("symmetric", valence=k, born=frozenset(born), survive=frozenset(survive))

    @staticmethod
    def life() -> "CARule":
        return CARule("life", valence=8, born=frozenset({3}), survive=frozenset({2, 3}))

    def relation(self) -> Relation:
        if self.kind == "elementary":
            return elementary_rule_relation(self.wolfram)
        return kvalent_rule_relation(self.valence, self.born, self.survive)


def classify_elementary() -> dict:
    """Decompose all 256 elementary rules; census plus the prime rules."""
    reducible = []
    irreducible = []
    primes = []
    details = {}
    for w in range(256):
        deco = canonical_decomposition(elementary_rule_relation(w))
        details[w] = deco
        if deco.reducible:
            reducible.append(w)
        else:
            irreducible.append(w)
        if deco.prime:
            primes.append(w)
    return {
        "reducible": len(reducible),
        "irreducible": len(irreducible),
        "prime": primes,
        "reducible_rules": reducible,
        "details": details,
    }


# ---------------------------------------------------------------------------
# direct simulation (for behavioral checks against closed-form solutions)


def simulate_elementary(wolfram: int, state: tuple[int, ...], steps: int) -> list[tuple[int, ...]]:
    """Synchronous evolution on a cyclic space; returns all states, t=0 first."""
    width = len(state)
    rows = [tuple(state)]
    cur = tuple(state)
    for _ in range(steps):
        nxt = []
        for x in range(width):
            p, q_, r = cur[(x - 1) % width], cur[x], cur[(x + 1) % width]
            nxt.append(wolfram >> (4 * p + 2 * q_ + r) & 1)
        cur = tuple(nxt)
        rows.append(cur)
    return rows


def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k) if 0 <= k <= n else 0


def general_solution_check(rule: int, initial: tuple[int, ...], steps: int) -> bool:
    """Simulation against the closed forms of rules 15 and 90.

    Rule 15: u(x,t) = a(x-t) + t mod 2.  Rule 90: u(x,t) = sum_k C(t,k)
    a(x-t+2k) mod 2.  Periodic space.
    """
    if rule not in (15, 90):
        raise ValueError("closed forms are available for rules 15 and 90 only")
    width = len(initial)
    rows = simulate_elementary(rule, initial, steps)
    for t in range(steps + 1):
        for x in range(width):
            if rule == 15:
                expected = (initial[(x - t) % width] + t) % 2
            else:
                expected = sum(
                    _binom(t, k) * initial[(x - t + 2 * k) % width] for k in range(t + 1)
                ) % 2
            if rows[t][x] != expected:
                return False
    return True
