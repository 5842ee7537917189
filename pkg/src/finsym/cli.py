"""Command-line interface: exact reports as JSON, optional CSV/SVG output.

Subcommands map onto the library modules:

    orbitals   orbital partition of a named group action
    forms      centralizer ring, determinant factorization, invariant forms
    born       exact Born probability of two natural vectors
    relations  decompose / classify / life structural analysis
    portrait   phase portrait of a symmetric B/S rule on a named graph
    pathsum    root-of-unity interference profiles
    spacetime  exact vs continuum conditional probabilities
    fixtures   list or show built-in fixtures

All exact numbers are serialized as strings ("3/4", cyclotomic coordinate
arrays); floats are advisory duplicates.  Reports are deterministic for a
fixed --seed (timing lives in a separate field excluded from comparisons).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from . import born as born_mod
from . import fixtures as fx
from . import forms as forms_mod
from . import pathsum as pathsum_mod
from . import relations as rel_mod
from .cyclo import Cyclotomic
from .dynamics import phase_portrait
from .errors import FinsymError

__all__ = ["main", "run"]


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _cyclo_json(z: Cyclotomic) -> dict:
    out = z.to_json()
    out["str"] = str(z)
    out["float"] = [z.to_complex().real, z.to_complex().imag]
    return out


def _parse_vector(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(","))


def _parse_bs_rule(text: str) -> tuple[frozenset, frozenset]:
    try:
        b, s = text.upper().split("/")
        assert b.startswith("B") and s.startswith("S")
        born = frozenset(int(ch) for ch in b[1:])
        survive = frozenset(int(ch) for ch in s[1:])
        return born, survive
    except Exception as exc:
        raise FinsymError(f"cannot parse B/S rule {text!r}") from exc


# ---------------------------------------------------------------------------
# subcommand implementations


def _cmd_orbitals(args) -> dict:
    action = fx.group(args.group)
    orbitals = action.orbitals()
    return {
        "group": args.group,
        "degree": action.degree,
        "transitive": action.is_transitive(),
        "rank": len(orbitals),
        "orbitals": [
            {
                "index": o.index + 1,
                "size": len(o.pairs),
                "pairs": sorted([i + 1, j + 1] for i, j in o.pairs),
            }
            for o in orbitals
        ],
    }


def _forms_pipeline(group_name: str, conductor: int | None, seed: int):
    """Shared forms pipeline: basis, tables, coarsening, factors, forms."""
    action = fx.group(group_name)
    basis = forms_mod.basis_forms(action)
    tables = forms_mod.structure_tables(basis)
    rank = len(basis)
    commutative = all(tables.commute(p, q) for p in range(rank) for q in range(rank))
    merge_map = [[p] for p in range(rank)]
    work_basis = basis
    if not commutative:
        work_basis, merge_map = forms_mod.coarsen_commutative(basis, tables)
    if conductor is None:
        conductor = action.exponent()
    factorization = forms_mod.factor_det(work_basis, conductor, seed=seed)
    invariant = forms_mod.invariant_scalar_products(work_basis, factorization)
    return action, basis, tables, work_basis, merge_map, factorization, invariant


def _cmd_forms(args) -> dict:
    (
        action,
        basis,
        tables,
        work_basis,
        merge_map,
        factorization,
        invariant,
    ) = _forms_pipeline(args.group, args.conductor, args.seed)
    detpoly = forms_mod.det_poly(work_basis)
    return {
        "group": args.group,
        "degree": action.degree,
        "rank": len(basis),
        "conductor": factorization.conductor,
        "structure_alpha": tables.alpha,
        "structure_gamma": tables.gamma,
        "coarsening": merge_map,
        "det": detpoly.to_json(),
        "factors": [
            {"exponent": d, "poly": e.to_json(), "str": str(e)}
            for e, d in factorization.factors
        ],
        "invariant_forms": [
            {
                "label": f.label,
                "exponent": f.exponent,
                "normalization": _fraction_str(f.normalization),
                "coefficients": [_cyclo_json(c) for c in f.orbital_coefficients(len(basis))],
            }
            for f in invariant
        ],
    }


def _component_forms(group_name: str, seed: int):
    """Invariant forms for Born computations: fixtures first, else pipeline."""
    if group_name == "S3":
        forms = fx.s3_component_forms()
        return [forms["1"], forms["2"]], {"1": forms["1"], "2": forms["2"]}
    if group_name == "A5ico":
        forms = fx.a5_ico_forms()
        ordered = [forms["1"], forms["3"], forms["3p"], forms["5"]]
        named = dict(forms)
        return ordered, named
    _, _, _, _, _, _, invariant = _forms_pipeline(group_name, None, seed)
    return invariant, {str(k + 1): f for k, f in enumerate(invariant)}


def _cmd_born(args) -> dict:
    ordered, named = _component_forms(args.group, args.seed)
    key = args.component
    if key in named:
        form = named[key]
    else:
        form = ordered[int(key) - 1]
    m_vec = _parse_vector(args.m)
    n_vec = _parse_vector(args.n)
    combined = False
    try:
        prob = born_mod.born_probability(form, m_vec, n_vec)
    except born_mod.IrrationalProbability:
        if not args.combine_conjugates:
            raise
        conj = _conjugate_partner(form, ordered)
        merged = forms_mod.InvariantForm(
            label=f"{form.label}+conj",
            basis=form.basis,
            coefficients=[a + b for a, b in zip(form.coefficients, conj.coefficients)],
            normalization=form.normalization + conj.normalization,
            exponent=form.exponent + conj.exponent,
        )
        prob = born_mod.born_probability(merged, m_vec, n_vec)
        form = merged
        combined = True
    amp = born_mod.scalar_product(form, m_vec, n_vec)
    return {
        "group": args.group,
        "component": form.label,
        "combined_conjugates": combined,
        "m": list(m_vec),
        "n": list(n_vec),
        "scalar_product": _cyclo_json(amp.value),
        "probability": _fraction_str(prob),
        "probability_float": float(prob),
    }


def _conjugate_partner(form, ordered):
    """The component whose coefficients are Galois-conjugate to this one's."""
    lcm = 1
    for c in form.coefficients:
        lcm = lcm * c.n // math.gcd(lcm, c.n)
    for k in range(2, lcm + 1):
        if math.gcd(k, lcm) != 1:
            continue
        for other in ordered:
            if other is form:
                continue
            if all(
                a.lift(lcm).galois(k) == b
                for a, b in zip(form.coefficients, other.coefficients)
            ):
                return other
    raise FinsymError("no conjugate component available to combine")


def _cmd_relations(args) -> dict:
    if args.what == "classify":
        census = rel_mod.classify_elementary()
        return {
            "reducible": census["reducible"],
            "irreducible": census["irreducible"],
            "prime": census["prime"],
        }
    if args.what == "life":
        life = rel_mod.life_relation()
        deco = rel_mod.canonical_decomposition(life)
        return {
            "relation": "life",
            "members": life.count(),
            "functional_in_next_state": rel_mod.is_functional(life, 9),
            "consequences": [
                {"face": list(face), "members": c.count()}
                for face, c in deco.consequences
            ],
            "reducible": deco.reducible,
        }
    if args.rule is None:
        raise FinsymError("relations decompose needs --rule")
    rel = rel_mod.elementary_rule_relation(args.rule)
    deco = rel_mod.canonical_decomposition(rel)
    return {
        "rule": args.rule,
        "bits": rel.bitstring(),
        "polynomial": str(rel_mod.to_anf(rel)),
        "consequences": [
            {
                "face": list(face),
                "bits": c.bitstring(),
                "polynomial": str(rel_mod.to_anf(c)),
            }
            for face, c in deco.consequences
        ],
        "principal_factor": {
            "bits": deco.factor.bitstring(),
            "polynomial": str(rel_mod.to_anf(deco.factor)),
        },
        "reducible": deco.reducible,
        "prime": deco.prime,
    }


def _cmd_portrait(args) -> dict:
    graph = fx.graph(args.graph)
    born, survive = _parse_bs_rule(args.rule)
    group_name = {
        "cube": "cubeAut",
        "tetrahedron": "tetraAut",
        "icosahedron": "A5ico",
        "dodecahedron": "dodecaAut",
    }.get(args.graph)
    if group_name is None:
        raise FinsymError(f"no symmetry group on file for graph {args.graph!r}")
    action = fx.group(group_name)
    portrait = phase_portrait(graph, action, 2, born, survive)
    return {
        "graph": args.graph,
        "rule": args.rule,
        "states": portrait.total_states,
        "orbits": len(portrait.orbit_sizes),
        "census": {str(k): v for k, v in sorted(portrait.census().items())},
        "cycles": [
            {
                "orbits": [o + 1 for o in cyc],
                "length": len(cyc),
                "orbit_sizes": [portrait.orbit_sizes[o] for o in cyc],
                "weight": _fraction_str(portrait.weights[cid]),
            }
            for cid, cyc in enumerate(portrait.cycles)
        ],
    }


def _cmd_pathsum(args) -> dict:
    sources = []
    for tok in args.sources.split(","):
        pos, phase = tok.split(":")
        sources.append((int(pos), int(phase)))
    profile = pathsum_mod.interference(args.M, args.T, sources)
    rows = []
    for x, amp, inten, norm in zip(
        profile.positions, profile.amplitudes, profile.intensities, profile.normalized
    ):
        rows.append(
            {
                "x": x,
                "amplitude": str(amp),
                "intensity": str(inten)
                if not inten.is_rational()
                else _fraction_str(inten.as_fraction()),
                "normalized": norm,
            }
        )
    out = {
        "M": args.M,
        "T": args.T,
        "sources": [list(s) for s in sources],
        "zeros": profile.zero_positions(),
        "profile": rows,
    }
    if args.svg:
        _write_svg(args.svg, profile)
        out["svg"] = args.svg
    return out


def _write_svg(path: str, profile) -> None:
    width, height, pad = 800, 300, 20
    n = len(profile.positions)
    bar = max(1.0, (width - 2 * pad) / max(n, 1))
    peak = max(profile.normalized) or 1.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<text x="{pad}" y="14" font-size="12">M={profile.m_order} T={profile.t} '
        f"sources={profile.sources}</text>",
    ]
    for i, value in enumerate(profile.normalized):
        h = (height - 2 * pad) * value / peak
        x = pad + i * bar
        y = height - pad - h
        parts.append(
            f'<rect x="{x:.1f}" y="{y:.1f}" width="{bar * 0.9:.1f}" height="{h:.1f}" '
            'fill="steelblue"/>'
        )
    parts.append("</svg>")
    with open(path, "w") as handle:
        handle.write("\n".join(parts))


def _cmd_spacetime(args) -> dict:
    big_t, big_x = args.T, args.X
    rows = []
    for t in range(1, big_t):
        for x in range(-t, t + 1):
            if (t - x) % 2 or (big_t - t - (big_x - x)) % 2:
                continue
            if abs(big_x - x) > big_t - t:
                continue
            entry = {"x": x, "t": t}
            p = pathsum_mod.conditional_probability(x, t, big_x, big_t)
            entry["exact"] = _fraction_str(p)
            entry["exact_float"] = float(p)
            if 0 < t < big_t:
                entry["approx"] = pathsum_mod.approx_conditional(
                    x, t, big_x, big_t, args.v
                )
            rows.append(entry)
    best_value = max(Fraction(*map(int, r["exact"].split("/"))) for r in rows)
    argmax = [
        [r["x"], r["t"]]
        for r in rows
        if Fraction(*map(int, r["exact"].split("/"))) == best_value
    ]
    return {
        "T": big_t,
        "X": big_x,
        "v": args.v,
        "points": rows,
        "exact_max": _fraction_str(best_value),
        "exact_argmax": argmax,
    }


def _cmd_fixtures(args) -> dict:
    if args.what == "list":
        return fx.fixture_names()
    return fx.describe(args.name)


# ---------------------------------------------------------------------------
# driver


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finsym", description="exact finite-symmetry computations"
    )
    parser.add_argument("--seed", type=int, default=0, help="randomness seed")
    parser.add_argument("--out", help="write the JSON report to a file")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--jobs", type=int, default=1, help="parallelism hint")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbitals", help="orbital partition of a group action")
    p.add_argument("--group", required=True)

    p = sub.add_parser("forms", help="centralizer ring and invariant forms")
    p.add_argument("--group", required=True)
    p.add_argument("--conductor", type=int)

    p = sub.add_parser("born", help="exact Born probability")
    p.add_argument("--group", required=True)
    p.add_argument("--component", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--combine-conjugates", action="store_true")

    p = sub.add_parser("relations", help="structural analysis of CA relations")
    p.add_argument("what", choices=["decompose", "classify", "life"])
    p.add_argument("--rule", type=int)

    p = sub.add_parser("portrait", help="phase portrait on a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--rule", required=True, help="e.g. B123/S0")

    p = sub.add_parser("pathsum", help="interference profile")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--sources", required=True, help="pos:phase,pos:phase")
    p.add_argument("--svg", help="write a bar chart to this SVG file")

    p = sub.add_parser("spacetime", help="exact vs continuum conditionals")
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--X", type=int, required=True)
    p.add_argument("--v", type=float, default=0.0)
    p.add_argument("--exact", action="store_true", help="kept for symmetry; exact is always computed")

    p = sub.add_parser("fixtures", help="list or show built-in fixtures")
    p.add_argument("what", choices=["list", "show"])
    p.add_argument("name", nargs="?")

    return parser


_HANDLERS = {
    "orbitals": _cmd_orbitals,
    "forms": _cmd_forms,
    "born": _cmd_born,
    "relations": _cmd_relations,
    "portrait": _cmd_portrait,
    "pathsum": _cmd_pathsum,
    "spacetime": _cmd_spacetime,
    "fixtures": _cmd_fixtures,
}


def _csv_lines(payload: dict) -> str:
    """Flat CSV for profile/point-style payloads; JSON elsewhere."""
    rows = payload.get("profile") or payload.get("points")
    if not rows:
        raise FinsymError("this report has no tabular section; use --format json")
    headers = list(rows[0].keys())
    lines = [",".join(headers)]
    for row in rows:
        lines.append(",".join(str(row.get(h, "")) for h in headers))
    return "\n".join(lines) + "\n"


def run(argv: list[str]) -> tuple[int, dict]:
    """Execute a command line; returns (exit code, report)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (int(exc.code or 0), {})
    started = time.time()
    try:
        payload = _HANDLERS[args.command](args)
    except FinsymError as exc:
        report = {
            "command": args.command,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        print(json.dumps(report, indent=2), file=sys.stderr)
        return (1, report)
    report = {
        "command": args.command,
        "inputs": {
            k: v
            for k, v in vars(args).items()
            if k not in ("command", "out", "format", "jobs") and v is not None
        },
        "seed": args.seed,
        "result": payload,
        "timing_seconds": round(time.time() - started, 6),
    }
    if args.format == "csv":
        text = _csv_lines(payload)
    else:
        text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return (0, report)


def main() -> None:
    code, _ = run(sys.argv[1:])
    raise SystemExit(code)


if __name__ == "__main__":
    main()
