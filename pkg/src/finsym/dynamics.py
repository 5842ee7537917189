"""Deterministic dynamics of symmetric systems on graphs.

States are functions from graph vertices to a local state set {0..q-1},
encoded as digit tuples.  Symmetry groups act on states through the wreath
product of internal and space symmetries; with a trivial internal group the
action is just s(x) -> s(x a^-1).  Connections assign internal-group elements
to directed edges; holonomy is the ordered product around a closed path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadPath,
    CapExceeded,
    DegreeMismatch,
    NotAntihomomorphism,
    NotEquivariant,
    NotRegular,
    ScaleExceeded,
)
from .perm import PermAction, Permutation

__all__ = [
    "Graph",
    "WreathElement",
    "wreath_act",
    "wreath_mul",
    "wreath_inv",
    "split_extension_act",
    "split_extension_mul",
    "split_extension_inv",
    "orbit_partition",
    "orbit_census",
    "evolve",
    "phase_portrait",
    "PhasePortrait",
    "soliton_witness",
    "Connection",
    "parallel_transport",
    "holonomy",
    "is_trivial_connection",
    "trivial_connection",
    "gauge_transform",
    "graph_automorphisms",
]

STATE_SPACE_CAP = 2**24


class Graph:
    """Simple undirected graph: vertex count plus an edge list."""

    def __init__(self, n: int, edges, name: str | None = None):
        self.n = n
        seen = set()
        adj = [set() for _ in range(n)]
        for a, b in edges:
            if a == b:
                raise ValueError("loops are not allowed")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a},{b}) outside 0..{n-1}")
            e = (min(a, b), max(a, b))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            adj[a].add(b)
            adj[b].add(a)
        self.edges = tuple(sorted(seen))
        self.adjacency = tuple(frozenset(s) for s in adj)
        self.name = name

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.adjacency)

    def is_regular(self) -> int | None:
        degs = set(self.degree_sequence())
        return degs.pop() if len(degs) == 1 else None

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        frontier = [0]
        while frontier:
            new = []
            for v in frontier:
                for w in self.adjacency[v]:
                    if w not in seen:
                        seen.add(w)
                        new.append(w)
            frontier = new
        return len(seen) == self.n

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def spanning_tree(self, root: int = 0) -> list[tuple[int, int]]:
        """BFS tree edges as (parent, child) pairs."""
        seen = {root}
        out = []
        frontier = [root]
        while frontier:
            new = []
            for v in frontier:
                for w in sorted(self.adjacency[v]):
                    if w not in seen:
                        seen.add(w)
                        out.append((v, w))
                        new.append(w)
            frontier = new
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges], "name": self.name}

    @staticmethod
    def from_json(obj: dict) -> "Graph":
        return Graph(int(obj["n"]), obj["edges"], obj.get("name"))

    def __repr__(self) -> str:
        label = self.name or f"{self.n} vertices"
        return f"Graph({label}, {len(self.edges)} edges)"


def graph_automorphisms(graph: Graph, cap_vertices: int = 12) -> list[Permutation]:
    """All automorphisms by backtracking; brute force, graphs <= 12 vertices."""
    if graph.n > cap_vertices:
        raise ScaleExceeded(f"brute-force automorphisms capped at {cap_vertices} vertices")
    deg = graph.degree_sequence()
    adj = graph.adjacency
    out: list[Permutation] = []

    def extend(img: list[int], used: set[int]):
        k = len(img)
        if k == graph.n:
            out.append(Permutation(img))
            return
        for cand in range(graph.n):
            if cand in used or deg[cand] != deg[k]:
                continue
            if all((prev in adj[k]) == (img[prev] in adj[cand]) for prev in range(k)):
                img.append(cand)
                used.add(cand)
                extend(img, used)
                img.pop()
                used.discard(cand)

    extend([], set())
    return out


# ---------------------------------------------------------------------------
# wreath-product actions on states


@dataclass(frozen=True)
class WreathElement:
    """Element (alpha, a) of M wr G: a local twist per point plus a space map."""

    alpha: tuple[Permutation, ...]
    a: Permutation

    def __post_init__(self):
        if len(self.alpha) != self.a.degree:
            raise DegreeMismatch("need one internal element per point")


def wreath_act(state: tuple[int, ...], u: WreathElement) -> tuple[int, ...]:
    """s(x)(alpha, a) = s(x a^-1) alpha(x a^-1)."""
    if len(state) != u.a.degree:
        raise DegreeMismatch("state length differs from space degree")
    ainv = u.a.inverse()
    out = []
    for x in range(len(state)):
        y = ainv(x)
        out.append(u.alpha[y](state[y]))
    return tuple(out)


def wreath_mul(u: WreathElement, v: WreathElement) -> WreathElement:
    """(alpha, a)(beta, b) = (alpha(x) beta(x a), ab)."""
    if u.a.degree != v.a.degree:
        raise DegreeMismatch("degree mismatch")
    alpha = tuple(u.alpha[x] * v.alpha[u.a(x)] for x in range(u.a.degree))
    return WreathElement(alpha, u.a * v.a)


def wreath_inv(u: WreathElement) -> WreathElement:
    """(alpha, a)^-1 = (alpha(x a^-1)^-1, a^-1)."""
    ainv = u.a.inverse()
    alpha = tuple(u.alpha[ainv(x)].inverse() for x in range(u.a.degree))
    return WreathElement(alpha, ainv)


def _check_antihomomorphism(mu: dict[Permutation, Permutation]):
    for a, b in itertools.product(mu, repeat=2):
        ba = b * a
        if ba not in mu:
            raise NotAntihomomorphism("mu table is not closed under products")
        if mu[a] * mu[b] != mu[ba]:
            raise NotAntihomomorphism(f"mu({a})mu({b}) != mu({b}*{a})")


def split_extension_act(
    state: tuple[int, ...],
    u: WreathElement,
    mu: dict[Permutation, Permutation],
    kappa: dict[Permutation, Permutation],
    check: bool = True,
) -> tuple[int, ...]:
    """s(x)(alpha, a) = s(x mu(a)) alpha(x kappa(a)).

    mu must be an antihomomorphism of the space group; kappa is arbitrary.
    mu = kappa = inverse gives the wreath action, mu = kappa = identity the
    direct-product action.
    """
    if check:
        _check_antihomomorphism(mu)
    m, k = mu[u.a], kappa[u.a]
    out = []
    for x in range(len(state)):
        out.append(u.alpha[k(x)](state[m(x)]))
    return tuple(out)


def split_extension_mul(
    u: WreathElement,
    v: WreathElement,
    mu: dict[Permutation, Permutation],
    kappa: dict[Permutation, Permutation],
) -> WreathElement:
    """(alpha,a)(beta,b) = (alpha(x k(ab)^-1 mu(b) k(a)) beta(x k(ab)^-1 k(b)), ab)."""
    ab = u.a * v.a
    kab_inv = kappa[ab].inverse()
    left = kab_inv * mu[v.a] * kappa[u.a]
    right = kab_inv * kappa[v.a]
    alpha = tuple(u.alpha[left(x)] * v.alpha[right(x)] for x in range(u.a.degree))
    return WreathElement(alpha, ab)


def split_extension_inv(
    u: WreathElement,
    mu: dict[Permutation, Permutation],
    kappa: dict[Permutation, Permutation],
) -> WreathElement:
    ainv = u.a.inverse()
    conv = kappa[ainv].inverse() * mu[u.a].inverse() * kappa[u.a]
    alpha = tuple(u.alpha[conv(x)].inverse() for x in range(u.a.degree))
    return WreathElement(alpha, ainv)


# ---------------------------------------------------------------------------
# state-space enumeration and portraits


def space_act(state: tuple[int, ...], g: Permutation) -> tuple[int, ...]:
    """Pure space action s(x) g = s(x g^-1) (trivial internal group)."""
    ginv = g.inverse()
    return tuple(state[ginv(x)] for x in range(len(state)))


def _encode(state: tuple[int, ...], q: int) -> int:
    code = 0
    for d in reversed(state):
        code = code * q + d
    return code


def _decode(code: int, q: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(code % q)
        code //= q
    return tuple(out)


def orbit_partition(action: PermAction, q: int) -> list[list[int]]:
    """Orbits of the group on all q^N states; states encoded as integers."""
    n = action.degree
    total = q**n
    if total > STATE_SPACE_CAP:
        raise ScaleExceeded(f"state space {q}^{n} exceeds cap {STATE_SPACE_CAP}")
    gen_images = []
    for g in action.generators:
        ginv = g.inverse()
        gen_images.append(tuple(ginv(x) for x in range(n)))
    assigned = [-1] * total
    orbits: list[list[int]] = []
    for code in range(total):
        if assigned[code] >= 0:
            continue
        index = len(orbits)
        orbit = [code]
        assigned[code] = index
        frontier = [code]
        while frontier:
            new = []
            for c in frontier:
                s = _decode(c, q, n)
                for pre in gen_images:
                    t = tuple(s[pre[x]] for x in range(n))
                    tc = _encode(t, q)
                    if assigned[tc] < 0:
                        assigned[tc] = index
                        orbit.append(tc)
                        new.append(tc)
            frontier = new
        orbits.append(sorted(orbit))
    return orbits


def orbit_census(orbits: list[list[int]]) -> dict[int, int]:
    """Map orbit size -> number of orbits of that size."""
    census: dict[int, int] = {}
    for o in orbits:
        census[len(o)] = census.get(len(o), 0) + 1
    return census


def evolve(
    graph: Graph, state: tuple[int, ...], born: frozenset | set, survive: frozenset | set
) -> tuple[int, ...]:
    """One synchronous step of a symmetric binary B/S rule on a regular graph."""
    k = graph.is_regular()
    if k is None:
        raise NotRegular("B/S rules need a regular graph")
    out = []
    for x in range(graph.n):
        alive = sum(state[y] for y in graph.adjacency[x])
        if state[x] == 0:
            out.append(1 if alive in born else 0)
        else:
            out.append(1 if alive in survive else 0)
    return tuple(out)


@dataclass
class PhasePortrait:
    """Quotient dynamics on group orbits of state space."""

    orbit_sizes: list[int]
    transition: list[int]  # orbit index -> orbit index
    cycles: list[list[int]]  # each a list of orbit indices, in cycle order
    cycle_of_orbit: list[int]  # orbit index -> index into cycles
    basin_orbits: list[list[int]]  # per cycle: all orbit ids draining into it
    weights: list[Fraction]  # per cycle: basin states / total states
    total_states: int

    def census(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.orbit_sizes:
            out[s] = out.get(s, 0) + 1
        return out


def phase_portrait(graph: Graph, action: PermAction, q: int, born, survive) -> PhasePortrait:
    """Portrait of a symmetric B/S rule modulo the symmetry group.

    Verifies equivariance of the update rule against every generator on the
    whole state space before quotienting (NotEquivariant otherwise).
    """
    born = frozenset(born)
    survive = frozenset(survive)
    n = graph.n
    orbits = orbit_partition(action, q)
    orbit_index = {}
    for idx, orbit in enumerate(orbits):
        for code in orbit:
            orbit_index[code] = idx

    step_cache: dict[int, int] = {}

    def step(code: int) -> int:
        if code not in step_cache:
            step_cache[code] = _encode(evolve(graph, _decode(code, q, n), born, survive), q)
        return step_cache[code]

    for code in range(q**n):
        s = _decode(code, q, n)
        fs = _decode(step(code), q, n)
        for g in action.generators:
            if evolve(graph, space_act(s, g), born, survive) != space_act(fs, g):
                raise NotEquivariant(f"rule does not commute with generator {g}")

    transition = [orbit_index[step(orbit[0])] for orbit in orbits]

    # cycle structure of the quotient functional graph
    color = [0] * len(orbits)  # 0 unvisited, 1 in progress, 2 done
    cycle_of_orbit = [-1] * len(orbits)
    cycles: list[list[int]] = []
    for start in range(len(orbits)):
        if color[start]:
            continue
        path = []
        x = start
        while color[x] == 0:
            color[x] = 1
            path.append(x)
            x = transition[x]
        if color[x] == 1:  # found a new cycle
            pos = path.index(x)
            cyc = path[pos:]
            cid = len(cycles)
            cycles.append(cyc)
            for y in cyc:
                cycle_of_orbit[y] = cid
        for y in path:
            color[y] = 2

    # propagate cycle membership down the transients
    def cycle_id(x: int) -> int:
        chain = []
        while cycle_of_orbit[x] < 0:
            chain.append(x)
            x = transition[x]
        cid = cycle_of_orbit[x]
        for y in chain:
            cycle_of_orbit[y] = cid
        return cid

    basin_orbits: list[list[int]] = [[] for _ in cycles]
    for idx in range(len(orbits)):
        basin_orbits[cycle_id(idx)].append(idx)

    total = q**n
    weights = [
        Fraction(sum(len(orbits[i]) for i in basin), total) for basin in basin_orbits
    ]
    return PhasePortrait(
        orbit_sizes=[len(o) for o in orbits],
        transition=transition,
        cycles=cycles,
        cycle_of_orbit=cycle_of_orbit,
        basin_orbits=basin_orbits,
        weights=weights,
        total_states=total,
    )


def soliton_witness(
    trajectory: list[tuple[int, ...]], action: PermAction, cap: int = 10**6
) -> tuple[int, int, Permutation] | None:
    """First pair of trajectory states on one group orbit, with its witness.

    Returns (t0, t1, g) with trajectory[t1] = trajectory[t0] . g for the
    earliest t1 and, for it, the earliest t0; None when all states lie on
    distinct orbits.  The group element g realizes the soliton motion.
    """
    elems = action.closure(cap)
    for t1 in range(1, len(trajectory)):
        for t0 in range(t1):
            for g in elems:
                if space_act(trajectory[t0], g) == trajectory[t1]:
                    return (t0, t1, g)
    return None


# ---------------------------------------------------------------------------
# connections, parallel transport and holonomy


class Connection:
    """Internal-group elements on directed edges, P(j,i) = P(i,j)^-1."""

    def __init__(self, graph: Graph, assignment: dict[tuple[int, int], Permutation]):
        self.graph = graph
        table: dict[tuple[int, int], Permutation] = {}
        for (a, b), g in assignment.items():
            if not graph.has_edge(a, b):
                raise BadPath(f"({a},{b}) is not an edge")
            for key, val in (((a, b), g), ((b, a), g.inverse())):
                if key in table and table[key] != val:
                    raise ValueError(f"inconsistent orientation data on edge {key}")
                table[key] = val
        for a, b in graph.edges:
            if (a, b) not in table:
                raise ValueError(f"edge ({a},{b}) has no assigned element")
        self.table = table

    def __call__(self, a: int, b: int) -> Permutation:
        if (a, b) not in self.table:
            raise BadPath(f"({a},{b}) is not an edge")
        return self.table[(a, b)]


def trivial_connection(graph: Graph, alpha: dict[int, Permutation]) -> Connection:
    """The connection P(i,j) = alpha(i) alpha(j)^-1 built from a vertex gauge."""
    assignment = {}
    for a, b in graph.edges:
        assignment[(a, b)] = alpha[a] * alpha[b].inverse()
    return Connection(graph, assignment)


def gauge_transform(conn: Connection, gamma: dict[int, Permutation]) -> Connection:
    """P(i,j) -> gamma(i)^-1 P(i,j) gamma(j)."""
    assignment = {}
    for a, b in conn.graph.edges:
        assignment[(a, b)] = gamma[a].inverse() * conn(a, b) * gamma[b]
    return Connection(conn.graph, assignment)


def parallel_transport(conn: Connection, path: list[int]) -> Permutation:
    """Ordered product of edge elements along a vertex path."""
    if not path:
        raise BadPath("empty vertex list")
    deg = next(iter(conn.table.values())).degree if conn.table else 1
    acc = Permutation.identity(deg)
    for a, b in zip(path, path[1:]):
        acc = acc * conn(a, b)
    return acc


def holonomy(conn: Connection, cycle: list[int]) -> Permutation:
    """Parallel transport around a closed path."""
    if len(cycle) < 2 or cycle[0] != cycle[-1]:
        raise BadPath("cycle must start and end at the same vertex")
    return parallel_transport(conn, cycle)


def is_trivial_connection(conn: Connection, graph: Graph) -> dict[int, Permutation] | None:
    """Recover a vertex gauge alpha with P(i,j) = alpha(i) alpha(j)^-1, or None.

    Spanning-tree gauge fixing: set alpha(root) = id, propagate along tree
    edges, then verify every chord.  The recovered gauge is unique up to a
    global right factor.
    """
    if not graph.is_connected():
        raise BadPath("connection triviality needs a connected graph")
    deg = next(iter(conn.table.values())).degree if conn.table else 1
    alpha = {0: Permutation.identity(deg)}
    for parent, child in graph.spanning_tree(0):
        # P(parent, child) = alpha(parent) alpha(child)^-1
        alpha[child] = conn(parent, child).inverse() * alpha[parent]
    for a, b in graph.edges:
        if conn(a, b) != alpha[a] * alpha[b].inverse():
            return None
    return alpha
