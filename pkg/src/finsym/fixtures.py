"""Built-in groups, graphs, character tables and printed matrices.

Generator permutations for the polyhedral groups were derived once by brute
force over the graph adjacency (see `dynamics.graph_automorphisms`) and are
frozen here; tests re-verify them.  The icosahedron uses the vertex numbering
in which opposite pairs are {i, i+6} and vertex 1 is adjacent to 2..6, so the
complementarity map is Opp(p) = 1 + ((p+5) mod 12) in 1-based labels.

Extra fixtures can be supplied as JSON files (one per fixture, named
<name>.json with a "kind" of "group" or "graph") in a directory pointed to by
the FINSYM_FIXTURE_DIR environment variable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cyclo import Cyclotomic, omega, rational, reduce_coords
from .dynamics import Graph
from .errors import UnknownFixture
from .forms import BasisForm, InvariantForm, basis_forms
from .perm import PermAction, Permutation

__all__ = [
    "group",
    "graph",
    "group_names",
    "graph_names",
    "fixture_names",
    "describe",
    "character_table",
    "s3_monomial_transform",
    "s3_sqrt_transform",
    "tribimaximal_matrix",
    "tribi_squared_moduli",
    "a5_q60_field_elements",
    "s3_component_forms",
    "a5_ico_forms",
    "icosahedron_opposite",
    "glider_cells",
    "torus_moore",
    "torus_group",
    "fullerene_local_model",
    "FullereneLocalModel",
]


# ---------------------------------------------------------------------------
# graphs


def _icosahedron_edges() -> list[tuple[int, int]]:
    # 0 = top, 1..5 upper ring, 6 = bottom, 7..11 lower ring (0-based).
    # Lower-ring labels follow from Opp(v) = v+6 mod 12 being the antipode.
    ups = [1, 2, 3, 4, 5]
    low = [9, 10, 11, 7, 8]  # l_1..l_5 with u_i ~ l_i, l_{i+1}
    edges = [(0, u) for u in ups]
    edges += [(ups[i], ups[(i + 1) % 5]) for i in range(5)]
    edges += [(6, v) for v in [7, 8, 9, 10, 11]]
    edges += [(low[i], low[(i + 1) % 5]) for i in range(5)]
    for i in range(5):
        edges.append((ups[i], low[i]))
        edges.append((ups[i], low[(i + 1) % 5]))
    return edges


def _cube_edges() -> list[tuple[int, int]]:
    return [
        (v, v ^ (1 << bit))
        for v in range(8)
        for bit in range(3)
        if v < v ^ (1 << bit)
    ]


def _dodecahedron_edges() -> list[tuple[int, int]]:
    """Dual construction: vertices are the icosahedron's triangular faces."""
    ico = Graph(12, _icosahedron_edges())
    tris = []
    for a in range(12):
        for b in range(a + 1, 12):
            if not ico.has_edge(a, b):
                continue
            for c in range(b + 1, 12):
                if ico.has_edge(a, c) and ico.has_edge(b, c):
                    tris.append((a, b, c))
    edges = []
    for i in range(len(tris)):
        for j in range(i + 1, len(tris)):
            if len(set(tris[i]) & set(tris[j])) == 2:
                edges.append((i, j))
    return edges


def _a5_deg5() -> PermAction:
    return PermAction(5, ["(1,2,3,4,5)", "(1,2,3)"], name="A5deg5")


def _c60_data():
    """Cayley graph of A5 = <a,b | a^5, b^2, (ab)^3> plus its symmetry action.

    Vertices are the 60 elements of the degree-5 copy of A5 in sorted image
    order.  Left multiplications by a and b generate the A5 factor of the
    automorphism group; right multiplication by the involution h with
    h a h = a^-1, h b h = b supplies the central C2 factor.
    """
    a = Permutation((1, 2, 3, 4, 0))  # (1,2,3,4,5)
    b = Permutation((0, 2, 1, 4, 3))  # (2,3)(4,5)
    h = Permutation((0, 4, 3, 2, 1))  # (2,5)(3,4)
    elems = sorted(PermAction(5, [a, b]).closure(), key=lambda g: g.images)
    index = {g.images: i for i, g in enumerate(elems)}
    edges = set()
    for i, g in enumerate(elems):
        for s in (a, b):
            edges.add(tuple(sorted((i, index[(g * s).images]))))
    graph = Graph(60, sorted(edges), name="fullereneC60")
    left_a = Permutation(tuple(index[(a * g).images] for g in elems))
    left_b = Permutation(tuple(index[(b * g).images] for g in elems))
    right_h = Permutation(tuple(index[(g * h).images] for g in elems))
    action = PermAction(60, [left_a, left_b, right_h], name="fullereneC60")
    return graph, action


def torus_moore(rows: int, cols: int) -> Graph:
    """rows x cols torus with the 8-cell Moore neighborhood (Life's space)."""
    if rows < 3 or cols < 3:
        raise ValueError("torus needs at least 3 rows and columns")
    edges = set()
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            for dr, dc in ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)):
                w = ((r + dr) % rows) * cols + (c + dc) % cols
                if v != w:
                    edges.add((min(v, w), max(v, w)))
    return Graph(rows * cols, sorted(edges), name=f"torus{rows}x{cols}")


def torus_group(rows: int, cols: int) -> PermAction:
    """Translations plus the point group (D8 when the torus is square)."""
    def idx(r, c):
        return (r % rows) * cols + (c % cols)

    tx = Permutation(tuple(idx(v // cols, v % cols + 1) for v in range(rows * cols)))
    ty = Permutation(tuple(idx(v // cols + 1, v % cols) for v in range(rows * cols)))
    gens = [tx, ty]
    if rows == cols:
        rot = Permutation(tuple(idx(v % cols, rows - 1 - v // cols) for v in range(rows * cols)))
        gens.append(rot)
    flip = Permutation(tuple(idx(v % cols, v // cols) for v in range(rows * cols)) if rows == cols
                       else tuple(idx(-(v // cols), v % cols) for v in range(rows * cols)))
    gens.append(flip)
    return PermAction(rows * cols, gens, name=f"torus{rows}x{cols}group")


_GRAPH_BUILDERS = {
    "tetrahedron": lambda: Graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)], name="tetrahedron"),
    "cube": lambda: Graph(8, _cube_edges(), name="cube"),
    "icosahedron": lambda: Graph(12, _icosahedron_edges(), name="icosahedron"),
    "dodecahedron": lambda: Graph(20, _dodecahedron_edges(), name="dodecahedron"),
    "fullereneC60": lambda: _c60_data()[0],
    "torus8x8": lambda: torus_moore(8, 8),
}


# ---------------------------------------------------------------------------
# groups


def _a5_ico() -> PermAction:
    # rotation subgroup of the icosahedron automorphisms, frozen
    return PermAction(
        12,
        ["(2,3,4,5,6)(8,9,10,11,12)", "(1,2)(3,6)(4,10)(5,11)(7,8)(9,12)"],
        name="A5ico",
    )


def _a5_deg6() -> PermAction:
    """A5 on the six blocks of opposite icosahedron vertices."""
    ico = _a5_ico()
    gens = []
    for g in ico.generators:
        gens.append(Permutation(tuple(g(i) % 6 for i in range(6))))
    return PermAction(6, gens, name="A5deg6")


def _a5_deg10() -> PermAction:
    """A5 on unordered pairs from {1..5}, lexicographic pair order."""
    base = _a5_deg5()
    pairs = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    pos = {p: k for k, p in enumerate(pairs)}
    gens = []
    for g in base.generators:
        images = []
        for i, j in pairs:
            u, v = g(i), g(j)
            images.append(pos[(min(u, v), max(u, v))])
        gens.append(Permutation(images))
    return PermAction(10, gens, name="A5deg10")


_GROUP_BUILDERS = {
    "S3": lambda: PermAction(3, ["(2,3)", "(1,3,2)"], name="S3"),
    "C3": lambda: PermAction(3, ["(1,2,3)"], name="C3"),
    "C2": lambda: PermAction(2, ["(1,2)"], name="C2"),
    "C4": lambda: PermAction(4, ["(1,2,3,4)"], name="C4"),
    "SL23deg8": lambda: PermAction(
        8, ["(1,5,3,2,6,4)(7,8)", "(1,3,7,2,4,8)(5,6)"], name="SL23deg8"
    ),
    "A2roots": lambda: PermAction(
        6, ["(1,4)(2,3)(5,6)", "(1,3)(2,5)(4,6)"], name="A2roots"
    ),
    "A5ico": _a5_ico,
    "A5deg5": _a5_deg5,
    "A5deg6": _a5_deg6,
    "A5deg10": _a5_deg10,
    "tetraAut": lambda: PermAction(4, ["(1,2)", "(1,2,3,4)"], name="tetraAut"),
    "cubeAut": lambda: PermAction(
        8, ["[1,2,5,6,3,4,7,8]", "[2,4,1,3,6,8,5,7]"], name="cubeAut"
    ),
    "dodecaAut": lambda: PermAction(
        20,
        [
            "[1,2,6,8,7,3,5,4,10,9,19,20,15,18,13,16,17,14,11,12]",
            "[2,5,1,3,4,7,13,15,6,8,9,10,11,12,14,17,20,16,18,19]",
        ],
        name="dodecaAut",
    ),
    "fullereneC60": lambda: _c60_data()[1],
}


def group(name: str) -> PermAction:
    if name in _GROUP_BUILDERS:
        return _GROUP_BUILDERS[name]()
    external = _load_external(name)
    if external is not None and isinstance(external, PermAction):
        return external
    raise UnknownFixture(name)


def graph(name: str) -> Graph:
    if name in _GRAPH_BUILDERS:
        return _GRAPH_BUILDERS[name]()
    external = _load_external(name)
    if external is not None and isinstance(external, Graph):
        return external
    raise UnknownFixture(name)


def group_names() -> list[str]:
    return sorted(_GROUP_BUILDERS)


def graph_names() -> list[str]:
    return sorted(_GRAPH_BUILDERS)


def _load_external(name: str):
    root = os.environ.get("FINSYM_FIXTURE_DIR")
    if not root:
        return None
    path = Path(root) / f"{name}.json"
    if not path.exists():
        return None
    obj = json.loads(path.read_text())
    kind = obj.get("kind")
    if kind == "group":
        return PermAction.from_json(obj)
    if kind == "graph":
        return Graph.from_json(obj)
    return None


# ---------------------------------------------------------------------------
# character tables


def character_table(name: str) -> dict:
    """Character tables used by the worked examples (stored, not computed)."""
    if name == "S3":
        one = rational(1)
        return {
            "group": "S3",
            "classes": ["1", "2a", "3a"],
            "class_sizes": [1, 3, 2],
            "irreducibles": ["1", "1'", "2"],
            "rows": [
                [one, one, one],
                [one, rational(-1), one],
                [rational(2), rational(0), rational(-1)],
            ],
        }
    if name == "A5":
        phi = reduce_coords([1, 1, 0, 0, 1], 5)  # golden ratio 1 + w5 + w5^4
        one = rational(1)
        return {
            "group": "A5",
            "classes": ["1", "2a", "3a", "5a", "5b"],
            "class_sizes": [1, 15, 20, 12, 12],
            "irreducibles": ["1", "3", "3'", "4", "5"],
            "rows": [
                [one, one, one, one, one],
                [rational(3), rational(-1), rational(0), phi, rational(1) - phi],
                [rational(3), rational(-1), rational(0), rational(1) - phi, phi],
                [rational(4), rational(0), one, rational(-1), rational(-1)],
                [rational(5), one, rational(-1), rational(0), rational(0)],
            ],
        }
    raise UnknownFixture(name)


# ---------------------------------------------------------------------------
# printed matrices


def s3_monomial_transform() -> list[list[Cyclotomic]]:
    """Transition matrix for S3 that diagonalizes the 3-cycle, over Q_12."""
    w = lambda k: omega(12, k)
    a = (2 * w(1) - w(3)) / 3  # 1/sqrt(3)
    b = (-w(1) - w(3)) / 3
    c = (-w(1) + 2 * w(3)) / 3
    return [[a, a, b], [a, b, a], [a, c, c]]


def _q24_roots():
    r3 = (4 * omega(24, 2) - 2 * omega(24, 6)) / 6  # 1/sqrt(3)
    s23 = (2 * omega(24, 1) + 2 * omega(24, 3) + 2 * omega(24, 5) - 4 * omega(24, 7)) / 6
    m16 = (-omega(24, 1) - omega(24, 3) - omega(24, 5) + 2 * omega(24, 7)) / 6
    r2 = (omega(24, 1) + omega(24, 3) - omega(24, 5)) / 2  # 1/sqrt(2)
    return r3, s23, m16, r2


def s3_sqrt_transform() -> list[list[Cyclotomic]]:
    """Transition matrix for S3 that diagonalizes a transposition, over Q_24.

    Entries are the square-root irrationalities 1/sqrt(3), sqrt(2/3),
    -1/sqrt(6), -+1/sqrt(2) as exact cyclotomics.
    """
    r3, s23, m16, r2 = _q24_roots()
    zero = rational(0)
    return [[r3, s23, zero], [r3, m16, -r2], [r3, m16, r2]]


def tribimaximal_matrix() -> list[list[Cyclotomic]]:
    """Harrison-Perkins-Scott tribimaximal mixing matrix, exact over Q_24.

    Coincides with `s3_sqrt_transform` up to swapping the first two columns.
    """
    r3, s23, m16, r2 = _q24_roots()
    zero = rational(0)
    return [[s23, r3, zero], [m16, r3, -r2], [m16, r3, r2]]


def tribi_squared_moduli() -> list[list[Fraction]]:
    """Squared moduli pattern observed in neutrino mixing."""
    f = Fraction
    return [
        [f(2, 3), f(1, 3), f(0)],
        [f(1, 6), f(1, 3), f(1, 2)],
        [f(1, 6), f(1, 3), f(1, 2)],
    ]


def a5_q60_field_elements() -> dict[str, Cyclotomic]:
    """Sample entries of the icosahedral transformation-matrix field in Q_60.

    All are real, hence fixed by the Galois automorphism w -> w^59.
    """
    w = lambda k: omega(60, k)
    return {
        "sqrt3/6": (2 * w(5) - w(15)) / 6,
        "-phi/4": (-w(4) - w(6) + w(14)) / 4,
        "(phi-1)/4": (rational(-1) + w(4) + w(6) - w(14)) / 4,
        "sqrt15/12": (
            -2 * w(1) + 2 * w(5) + 4 * w(7) + 2 * w(9) + 2 * w(11) - 4 * w(13) - 3 * w(15)
        ) / 12,
        "sqrt3(3-sqrt5)/24": (
            w(1) + 2 * w(5) - 2 * w(7) - w(9) - w(11) + 2 * w(13)
        ) / 12,
        "-sqrt3(3+sqrt5)/24": (
            w(1) - 4 * w(5) - 2 * w(7) - w(9) - w(11) + 2 * w(13) + 3 * w(15)
        ) / 12,
    }


# ---------------------------------------------------------------------------
# invariant-form fixtures (printed forms, usable without running the pipeline)


def icosahedron_opposite(p: int) -> int:
    """Opp(p) = 1 + ((p+5) mod 12) in 1-based labels; here 0-based."""
    return (p + 6) % 12


def _form(basis, coeffs, label, d_k):
    n = basis[0].degree
    return InvariantForm(
        label=label,
        basis=list(basis),
        coefficients=[c if isinstance(c, Cyclotomic) else rational(c) for c in coeffs],
        normalization=Fraction(d_k, n),
        exponent=d_k,
    )


def s3_component_forms() -> dict[str, InvariantForm]:
    """Scalar products for S3's components: trivial and standard 2-dim."""
    basis = basis_forms(group("S3"))
    f = Fraction
    return {
        "1": _form(basis, [f(1, 3), f(1, 3)], "1", 1),
        "2": _form(basis, [f(2, 3), f(-1, 3)], "2", 2),
    }


def a5_ico_forms() -> dict[str, InvariantForm]:
    """Printed icosahedral scalar products over the orbital basis.

    Orbital order is the pinned first-seen one: diagonal, neighbor, opposite,
    neighbor-of-opposite, so the pairings are (Q, B, A, C) in that order.
    """
    basis = basis_forms(group("A5ico"))
    sqrt5 = reduce_coords([1, 2, 0, 0, 2], 5)  # 1 + 2w + 2w^4
    f = Fraction
    q20 = rational(f(1, 20))
    return {
        "1": _form(basis, [f(1, 12)] * 4, "1", 1),
        "3": _form(
            basis, [rational(f(1, 4)), q20 * sqrt5, rational(f(-1, 4)), -q20 * sqrt5], "3", 3
        ),
        "3p": _form(
            basis, [rational(f(1, 4)), -q20 * sqrt5, rational(f(-1, 4)), q20 * sqrt5], "3p", 3
        ),
        "5": _form(basis, [f(5, 12), f(-1, 12), f(5, 12), f(-1, 12)], "5", 5),
        "3+3p": _form(basis, [f(1, 2), 0, f(-1, 2), 0], "3+3p", 6),
    }


# ---------------------------------------------------------------------------
# Life glider


def glider_cells() -> set[tuple[int, int]]:
    """Standard glider, (row, col) live cells near the torus origin."""
    return {(0, 1), (1, 2), (2, 0), (2, 1), (2, 2)}


def glider_state(rows: int, cols: int) -> tuple[int, ...]:
    state = [0] * (rows * cols)
    for r, c in glider_cells():
        state[r * cols + c] = 1
    return tuple(state)


# ---------------------------------------------------------------------------
# fullerene local quantum model (data model only)


@dataclass(frozen=True)
class FullereneLocalModel:
    """Local quantum model on the C60 graph: stabilizer orbits of edges.

    The one-step transition scheme at a vertex x consists of the stay-put
    loop, the two pentagon edges (swapped by the vertex stabilizer) and the
    hexagon-hexagon edge; the rule assigns one representation-valued weight
    per orbit.  No evolution operator is defined here.
    """

    graph: Graph
    base_vertex: int
    stabilizer_order: int
    edge_orbits: tuple[tuple[str, tuple[tuple[int, int], ...]], ...]
    rule_weights: tuple[str, ...]


def fullerene_local_model() -> FullereneLocalModel:
    g, action = _c60_data()
    base = 0
    stab = action.stabilizer(base)
    nontrivial = [p for p in stab.generators if not p.is_identity()]
    neighbors = sorted(g.adjacency[base])
    swapped = []
    fixed = []
    for v in neighbors:
        if nontrivial and nontrivial[0](v) != v:
            swapped.append(v)
        else:
            fixed.append(v)
    orbits = (
        ("omega0", ((base, base),)),
        ("omega1", tuple((base, v) for v in swapped)),
        ("omega2", tuple((base, v) for v in fixed)),
    )
    return FullereneLocalModel(
        graph=g,
        base_vertex=base,
        stabilizer_order=len(stab.closure()),
        edge_orbits=orbits,
        rule_weights=("R(alpha0)", "R(alpha1)", "R(alpha2)"),
    )


# ---------------------------------------------------------------------------
# registry for the CLI


def fixture_names() -> dict[str, list[str]]:
    return {
        "groups": group_names(),
        "graphs": graph_names(),
        "character_tables": ["S3", "A5"],
        "matrices": ["s3_monomial_transform", "s3_sqrt_transform", "tribimaximal", "tribi_squared"],
        "forms": ["S3", "A5ico"],
        "models": ["fullerene_local_model"],
    }


def describe(name: str) -> dict:
    """JSON-friendly description of any named fixture."""
    if name in _GROUP_BUILDERS:
        action = group(name)
        return {"kind": "group", **action.to_json(), "order": action.order()}
    if name in _GRAPH_BUILDERS:
        return {"kind": "graph", **graph(name).to_json()}
    if name in ("S3table", "A5table") or name in ("S3", "A5"):
        try:
            table = character_table(name.replace("table", ""))
            return {
                "kind": "character_table",
                "group": table["group"],
                "classes": table["classes"],
                "class_sizes": table["class_sizes"],
                "irreducibles": table["irreducibles"],
                "rows": [[str(v) for v in row] for row in table["rows"]],
            }
        except UnknownFixture:
            pass
    if name == "s3_monomial_transform":
        return {"kind": "matrix", "entries": [[str(v) for v in row] for row in s3_monomial_transform()]}
    if name == "s3_sqrt_transform":
        return {"kind": "matrix", "entries": [[str(v) for v in row] for row in s3_sqrt_transform()]}
    if name == "tribimaximal":
        return {"kind": "matrix", "entries": [[str(v) for v in row] for row in tribimaximal_matrix()]}
    if name == "tribi_squared":
        return {"kind": "matrix", "entries": [[str(v) for v in row] for row in tribi_squared_moduli()]}
    if name == "fullerene_local_model":
        model = fullerene_local_model()
        return {
            "kind": "local_quantum_model",
            "graph": model.graph.name,
            "base_vertex": model.base_vertex,
            "stabilizer_order": model.stabilizer_order,
            "edge_orbits": [
                {"name": label, "edges": [list(e) for e in edges]}
                for label, edges in model.edge_orbits
            ],
            "rule_weights": list(model.rule_weights),
        }
    raise UnknownFixture(name)
