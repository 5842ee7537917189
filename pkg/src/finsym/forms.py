"""Orbital basis forms, centralizer-ring structure, determinant factorization
and invariant scalar products in irreducible subspaces.

The determinant of a general invariant form A = a_1 A_1 + ... + a_R A_R
factors into linear pieces over a cyclotomic integer ring once the basis is
commutative (directly, or after coarsening).  Factors are found numerically
(simultaneous diagonalization of the commuting basis), recognized as
cyclotomic integers, and then verified exactly against the symbolic
determinant; failures retry with fresh randomness (Las Vegas).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclo import Cyclotomic, cyclotomic_polynomial, rational, recognize, omega
from .errors import (
    CoarseningFailed,
    FactorizationFailed,
    NonCommutative,
    NotFound,
    NotInRing,
    ScaleExceeded,
    SingularSystem,
)
from .perm import PermAction, Permutation

__all__ = [
    "BasisForm",
    "StructureTables",
    "FormPoly",
    "FactorizationResult",
    "InvariantForm",
    "basis_forms",
    "structure_tables",
    "det_poly",
    "factor_det",
    "coarsen_commutative",
    "invariant_scalar_products",
    "frobenius_check",
    "group_determinant",
]

DET_MAX_RANK = 8
DET_MAX_DEGREE = 16


# ---------------------------------------------------------------------------
# basis forms


@dataclass(frozen=True)
class BasisForm:
    """(0,1) matrix of one orbital, or of a disjoint sum of orbitals."""

    index: int
    degree: int
    pairs: frozenset[tuple[int, int]]
    members: tuple[int, ...]  # original orbital indices summed into this form

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        rows = [[0] * self.degree for _ in range(self.degree)]
        for i, j in self.pairs:
            rows[i][j] = 1
        return tuple(tuple(r) for r in rows)

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.pairs)

    def label(self) -> str:
        if len(self.members) == 1:
            return f"A{self.members[0] + 1}"
        return "A(" + "+".join(str(m + 1) for m in self.members) + ")"


def basis_forms(action: PermAction) -> list[BasisForm]:
    """Orbital matrices in pinned first-seen order; they sum to the all-ones matrix."""
    return [
        BasisForm(o.index, o.degree, o.pairs, (o.index,)) for o in action.orbitals()
    ]


def _mat_mul_int(a, b, n):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


@dataclass
class StructureTables:
    """Centralizer ring and Lie structure constants over a basis.

    alpha[p][q][r] is the coefficient of A_r in A_p A_q (a natural number,
    at most the degree N); gamma[p][q][r] = alpha[p][q][r] - alpha[q][p][r].
    """

    alpha: list[list[list[int]]]
    gamma: list[list[list[int]]]

    def commute(self, p: int, q: int) -> bool:
        return all(c == 0 for c in self.gamma[p][q])


def structure_tables(basis: list[BasisForm]) -> StructureTables:
    n = basis[0].degree
    r = len(basis)
    mats = [f.matrix() for f in basis]
    reps = [next(iter(f.pairs)) for f in basis]
    alpha = [[[0] * r for _ in range(r)] for _ in range(r)]
    for p in range(r):
        for q in range(r):
            prod = _mat_mul_int(mats[p], mats[q], n)
            coeffs = [prod[i][j] for i, j in reps]
            # exact verification that the product stays in the span
            for i in range(n):
                for j in range(n):
                    acc = 0
                    for k in range(r):
                        if (i, j) in basis[k].pairs:
                            acc += coeffs[k]
                    if acc != prod[i][j]:
                        raise NotInRing(
                            f"A{p+1}*A{q+1} escapes the span of the basis"
                        )
            alpha[p][q] = coeffs
    gamma = [
        [[alpha[p][q][k] - alpha[q][p][k] for k in range(r)] for q in range(r)]
        for p in range(r)
    ]
    return StructureTables(alpha, gamma)


# ---------------------------------------------------------------------------
# multivariate polynomials


def _ip_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        nc = out.get(m, 0) + c
        if nc:
            out[m] = nc
        else:
            out.pop(m, None)
    return out


def _ip_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            nc = out.get(m, 0) + c1 * c2
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
    return out


def _ip_neg(a: dict) -> dict:
    return {m: -c for m, c in a.items()}


def _ip_div_exact(num: dict, den: dict) -> dict:
    """Exact division in Z[a_1..a_R]; raises if the division is not exact."""
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    num = dict(num)
    out: dict = {}
    dlt = max(den)
    dlc = den[dlt]
    while num:
        nlt = max(num)
        mono = tuple(x - y for x, y in zip(nlt, dlt))
        if any(e < 0 for e in mono) or num[nlt] % dlc:
            raise ArithmeticError("inexact polynomial division")
        c = num[nlt] // dlc
        out[mono] = c
        for m, dc in den.items():
            mm = tuple(x + y for x, y in zip(mono, m))
            nc = num.get(mm, 0) - c * dc
            if nc:
                num[mm] = nc
            else:
                num.pop(mm, None)
    return out


def _bareiss_det(matrix: list[list[dict]], nvars: int) -> dict:
    """Fraction-free Gaussian elimination determinant over Z[a_1..a_R]."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    sign = 1
    prev: dict = {(0,) * nvars: 1}
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return {}
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _ip_add(
                    _ip_mul(m[k][k], m[i][j]), _ip_neg(_ip_mul(m[i][k], m[k][j]))
                )
                m[i][j] = _ip_div_exact(num, prev) if prev != {(0,) * nvars: 1} else num
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else _ip_neg(det)


class FormPoly:
    """Polynomial in a_1..a_R with cyclotomic coefficients, sorted-term storage."""

    __slots__ = ("nvars", "terms", "varname")

    def __init__(self, nvars: int, terms: dict | None = None, varname: str = "a"):
        self.nvars = nvars
        self.varname = varname
        clean = {}
        for m, c in (terms or {}).items():
            if not isinstance(c, Cyclotomic):
                c = rational(c)
            if not c.is_zero():
                clean[tuple(m)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def variable(nvars: int, index: int, varname: str = "a") -> "FormPoly":
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return FormPoly(nvars, {mono: rational(1)}, varname)

    @staticmethod
    def constant(nvars: int, value, varname: str = "a") -> "FormPoly":
        return FormPoly(nvars, {(0,) * nvars: value}, varname)

    @staticmethod
    def linear(coeffs, varname: str = "a") -> "FormPoly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            mono = tuple(1 if j == i else 0 for j in range(n))
            terms[mono] = c
        return FormPoly(n, terms, varname)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "FormPoly") -> "FormPoly":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, rational(0)) + c
        return FormPoly(self.nvars, terms, self.varname)

    def __sub__(self, other: "FormPoly") -> "FormPoly":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, rational(0)) - c
        return FormPoly(self.nvars, terms, self.varname)

    def __mul__(self, other: "FormPoly") -> "FormPoly":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, rational(0)) + c1 * c2
        return FormPoly(self.nvars, out, self.varname)

    def scale(self, c) -> "FormPoly":
        if not isinstance(c, Cyclotomic):
            c = rational(c)
        return FormPoly(
            self.nvars, {m: c * v for m, v in self.terms.items()}, self.varname
        )

    def __pow__(self, k: int) -> "FormPoly":
        acc = FormPoly.constant(self.nvars, 1, self.varname)
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormPoly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def substitute_one(self, index: int) -> "FormPoly":
        """Set variable `index` to 1."""
        out: dict = {}
        for m, c in self.terms.items():
            mm = tuple(0 if i == index else e for i, e in enumerate(m))
            out[mm] = out.get(mm, rational(0)) + c
        return FormPoly(self.nvars, out, self.varname)

    def evaluate(self, values: list[Cyclotomic]) -> Cyclotomic:
        acc = rational(0)
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * values[i]
            acc = acc + term
        return acc

    def coefficient_on(self, mono: tuple[int, ...]) -> Cyclotomic:
        return self.terms.get(tuple(mono), rational(0))

    def linear_coefficients(self) -> list[Cyclotomic]:
        """Coefficient vector of a (homogeneous) linear polynomial."""
        assert self.total_degree() <= 1
        out = []
        for i in range(self.nvars):
            mono = tuple(1 if j == i else 0 for j in range(self.nvars))
            out.append(self.terms.get(mono, rational(0)))
        return out

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Cyclotomic]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"monomial": list(m), "coeff": c.to_json()}
                for m, c in self.sorted_terms()
            ],
        }

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                f"{self.varname}{i+1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            )
            cs = str(c)
            if c.is_rational():
                cs = str(c.as_fraction())
            body = f"({cs})" if any(ch in cs for ch in "+- ") else cs
            parts.append(f"{body}*{mono}" if mono else body)
        return " + ".join(parts)

    __repr__ = __str__


def det_poly(basis: list[BasisForm], fix_a1: bool = False) -> FormPoly:
    """Exact determinant of a_1 A_1 + ... + a_R A_R, fraction-free elimination.

    Homogeneous of degree N with a_1 symbolic; fix_a1 substitutes a_1 = 1
    first.  Desk scale only: R <= 8 variables, N <= 16.
    """
    r = len(basis)
    n = basis[0].degree
    if r > DET_MAX_RANK or n > DET_MAX_DEGREE:
        raise ScaleExceeded(f"det_poly capped at R<={DET_MAX_RANK}, N<={DET_MAX_DEGREE}")
    matrix = []
    one = (0,) * r
    for i in range(n):
        row = []
        for j in range(n):
            entry: dict = {}
            for p, form in enumerate(basis):
                if (i, j) in form.pairs:
                    if fix_a1 and p == 0:
                        entry[one] = entry.get(one, 0) + 1
                    else:
                        mono = tuple(1 if kk == p else 0 for kk in range(r))
                        entry[mono] = entry.get(mono, 0) + 1
            row.append(entry)
        matrix.append(row)
    det = _bareiss_det(matrix, r)
    return FormPoly(r, {m: rational(c) for m, c in det.items()})


# ---------------------------------------------------------------------------
# factorization


@dataclass
class FactorizationResult:
    """det(sum a_i A_i) = prod E_k^{d_k}, verified exactly."""

    factors: list[tuple[FormPoly, int]]  # (E_k, exponent d_k)
    conductor: int
    seed: int
    degree: int  # N

    @property
    def multiplicities(self) -> list[int]:
        return [e.total_degree() for e, _ in self.factors]

    @property
    def exponents(self) -> list[int]:
        return [d for _, d in self.factors]

    def dimension_check(self) -> bool:
        """sum d_k m_k = N."""
        return sum(d * e.total_degree() for e, d in self.factors) == self.degree

    def expand(self) -> FormPoly:
        nvars = self.factors[0][0].nvars
        acc = FormPoly.constant(nvars, 1)
        for e, d in self.factors:
            acc = acc * e**d
        return acc


def _numeric_eigen_tuples(mats, rng) -> list[tuple[complex, ...]]:
    """Eigenvalue tuple of each basis matrix on each common eigenvector."""
    n = mats[0].shape[0]
    coeffs = [rng.randint(1, 9973) for _ in mats]
    m = sum(c * a for c, a in zip(coeffs, mats))
    _, vecs = np.linalg.eig(m)
    out = []
    for col in range(n):
        v = vecs[:, col]
        nv = np.vdot(v, v).real
        out.append(tuple(complex(np.vdot(v, a @ v)) / nv for a in mats))
    return out


def factor_det(
    basis: list[BasisForm],
    conductor: int,
    detpoly: FormPoly | None = None,
    seed: int = 0,
    max_retries: int = 8,
) -> FactorizationResult:
    """Factor det(sum a_i A_i) into linear pieces over Z[w_conductor].

    The basis must be pairwise commuting (coarsen first otherwise).  Las
    Vegas: simultaneous numeric diagonalization via a random combination,
    exact recognition of the eigenvalues, then exact re-expansion against the
    symbolic determinant; any failure retries with fresh randomness, and
    FactorizationFailed after the retry budget usually means the conductor
    cannot express the eigenvalues.
    """
    r = len(basis)
    n = basis[0].degree
    mats_int = [f.matrix() for f in basis]
    for p in range(r):
        for q in range(p + 1, r):
            if _mat_mul_int(mats_int[p], mats_int[q], n) != _mat_mul_int(
                mats_int[q], mats_int[p], n
            ):
                raise NonCommutative(
                    f"{basis[p].label()} and {basis[q].label()} do not commute"
                )
    if detpoly is None:
        detpoly = det_poly(basis)
    mats = [np.array(m, dtype=float) for m in mats_int]
    rng = random.Random(seed)
    last_error = None
    for _ in range(max_retries):
        try:
            tuples = _numeric_eigen_tuples(mats, rng)
            exact: list[tuple[Cyclotomic, ...]] = []
            for tup in tuples:
                exact.append(
                    tuple(
                        recognize(lam, conductor, denominator=1, height=n)
                        for lam in tup
                    )
                )
            groups: list[tuple[tuple[Cyclotomic, ...], int]] = []
            for tup in exact:
                for idx, (known, _) in enumerate(groups):
                    if all(a == b for a, b in zip(known, tup)):
                        groups[idx] = (known, groups[idx][1] + 1)
                        break
                else:
                    groups.append((tup, 1))
            groups.sort(
                key=lambda g: tuple(
                    (round(c.to_complex().real, 9), round(c.to_complex().imag, 9))
                    for c in g[0]
                ),
                reverse=True,
            )
            factors = [
                (FormPoly.linear([c.lift(conductor) for c in tup]), mult)
                for tup, mult in groups
            ]
            result = FactorizationResult(factors, conductor, seed, n)
            if not result.dimension_check():
                raise FactorizationFailed("eigenspace dimensions do not add to N")
            if result.expand() != detpoly:
                raise FactorizationFailed("exact re-expansion mismatch")
            return result
        except (NotFound, FactorizationFailed) as exc:
            last_error = exc
            continue
    raise FactorizationFailed(
        f"retries exhausted for conductor {conductor}: {last_error}"
    )


# ---------------------------------------------------------------------------
# coarsening


def coarsen_commutative(
    basis: list[BasisForm], tables: StructureTables
) -> tuple[list[BasisForm], list[list[int]]]:
    """Merge non-diagonal forms by summation until all forms commute.

    Greedy smallest-merge-first: repeatedly look for the smallest set of
    mutually conflicting parts whose sum commutes with every retained part,
    breaking ties by orbital index.  Diagonal forms are never merged.  The
    result is verified to be multiplication-closed (a genuine fusion of the
    configuration); CoarseningFailed otherwise.
    """
    r = len(basis)
    diag = [p for p in range(r) if basis[p].is_diagonal()]
    moving = [p for p in range(r) if p not in diag]
    parts: list[tuple[int, ...]] = [(p,) for p in moving]

    def gamma_sum(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
        """True when [sum_a A_p, sum_b A_q] = 0."""
        for k in range(r):
            acc = 0
            for p in a:
                for q in b:
                    acc += tables.gamma[p][q][k]
            if acc:
                return False
        return True

    while True:
        conflicts = {
            (i, j)
            for i in range(len(parts))
            for j in range(i + 1, len(parts))
            if not gamma_sum(parts[i], parts[j])
        }
        if not conflicts:
            break
        merged = False
        for size in range(2, len(parts) + 1):
            for combo in itertools.combinations(range(len(parts)), size):
                in_conflict = all(
                    any(
                        (min(i, j), max(i, j)) in conflicts
                        for j in combo
                        if j != i
                    )
                    for i in combo
                )
                if not in_conflict:
                    continue
                union = tuple(sorted(sum((parts[i] for i in combo), ())))
                rest = [parts[i] for i in range(len(parts)) if i not in combo]
                if all(gamma_sum(union, other) for other in rest):
                    parts = sorted(rest + [union])
                    merged = True
                    break
            if merged:
                break
        if not merged:
            raise CoarseningFailed("greedy search found no commuting merge")

    merge_map = [(d,) for d in diag] + parts
    merge_map = sorted(merge_map)
    coarse = []
    for new_index, members in enumerate(merge_map):
        pairs = frozenset().union(*(basis[p].pairs for p in members))
        coarse.append(BasisForm(new_index, basis[0].degree, pairs, tuple(members)))
    # closedness under multiplication: a fusion must stay a ring basis
    try:
        structure_tables(coarse)
    except NotInRing as exc:
        raise CoarseningFailed(f"merged forms are not multiplication-closed: {exc}")
    return coarse, [list(m) for m in merge_map]


# ---------------------------------------------------------------------------
# invariant scalar products


@dataclass
class InvariantForm:
    """Scalar product in one irreducible component, over a form basis.

    coefficients[i] multiplies basis[i]; the matrix satisfies P B P^T = B for
    every group generator, is Hermitian, and the forms of all components sum
    to the identity under the d_k/N normalization.
    """

    label: str
    basis: list[BasisForm]
    coefficients: list[Cyclotomic]
    normalization: Fraction
    exponent: int  # d_k

    def orbital_coefficients(self, rank: int) -> list[Cyclotomic]:
        """Coefficients over the original (uncoarsened) orbital basis."""
        out = [rational(0)] * rank
        for form, c in zip(self.basis, self.coefficients):
            for member in form.members:
                out[member] = c
        return out

    def matrix(self) -> list[list[Cyclotomic]]:
        n = self.basis[0].degree
        rows = [[rational(0)] * n for _ in range(n)]
        for form, c in zip(self.basis, self.coefficients):
            for i, j in form.pairs:
                rows[i][j] = rows[i][j] + c
        return rows


def _solve_linear(
    rows: list[list[Cyclotomic]], rhs: list[Cyclotomic]
) -> list[Cyclotomic]:
    """Solve a square exact linear system by Gaussian elimination."""
    k = len(rows)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(k):
        pivot = next(
            (i for i in range(col, k) if not aug[i][col].is_zero()), None
        )
        if pivot is None:
            raise SingularSystem("degenerate factor system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [inv * v for v in aug[col]]
        for i in range(k):
            if i != col and not aug[i][col].is_zero():
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [aug[i][k] for i in range(k)]


def invariant_scalar_products(
    basis: list[BasisForm], factorization: FactorizationResult
) -> list[InvariantForm]:
    """One form per linear factor: zero the other factors at x_1 = 1.

    Normalization C_k = d_k/N makes the forms sum to the identity matrix.
    """
    if basis and not basis[0].is_diagonal():
        raise ValueError("basis[0] must be the diagonal form")
    n = basis[0].degree
    r = len(basis)
    coeff_rows = []
    for e, _d in factorization.factors:
        if e.total_degree() != 1:
            raise SingularSystem(
                "factors must be linear; coarsen the basis before factoring"
            )
        coeff_rows.append(e.linear_coefficients())
    out = []
    for k, (_e, d_k) in enumerate(factorization.factors):
        rows = []
        rhs = []
        for j, row in enumerate(coeff_rows):
            if j == k:
                continue
            rows.append(row[1:])
            rhs.append(-row[0])
        if len(rows) != r - 1:
            raise SingularSystem(
                f"{len(rows)+1} factors cannot pin down {r} coefficients"
            )
        solution = _solve_linear(rows, rhs)
        c_k = Fraction(d_k, n)
        coeffs = [rational(c_k)] + [rational(c_k) * x for x in solution]
        out.append(
            InvariantForm(
                label=f"component-{k+1}",
                basis=list(basis),
                coefficients=coeffs,
                normalization=c_k,
                exponent=d_k,
            )
        )
    return out


# ---------------------------------------------------------------------------
# Frobenius determinant check (small groups)


def group_determinant(action: PermAction, cap: int = 8) -> tuple[FormPoly, list[Permutation]]:
    """det of sum x_g rho_reg(g) over the group's regular representation.

    Variables follow the closure element order; |G| <= cap (degree-|G|
    polynomial in |G| variables is only tractable for tiny groups).
    """
    elems = list(action.closure())
    size = len(elems)
    if size > cap:
        raise ScaleExceeded(f"regular-representation determinant capped at |G|={cap}")
    index = {g: i for i, g in enumerate(elems)}
    matrix = []
    for a in range(size):
        row = []
        for b in range(size):
            g = elems[a].inverse() * elems[b]
            mono = tuple(1 if i == index[g] else 0 for i in range(size))
            row.append({mono: 1})
        matrix.append(row)
    det = _bareiss_det(matrix, size)
    return FormPoly(size, {m: rational(c) for m, c in det.items()}, varname="x"), elems


def _s3_two_dim_irrep() -> dict[tuple[int, ...], list[list[Cyclotomic]]]:
    """The faithful 2-dim irreducible of S3 in its Q_3 matrix form."""
    w = omega(3)
    w2 = omega(3, 2)
    zero, one = rational(0), rational(1)
    mats = {
        "()": [[one, zero], [zero, one]],
        "(2,3)": [[zero, w2], [w, zero]],
        "(1,3)": [[zero, w], [w2, zero]],
        "(1,2)": [[zero, one], [one, zero]],
        "(1,2,3)": [[w2, zero], [zero, w]],
        "(1,3,2)": [[w, zero], [zero, w2]],
    }
    from .perm import parse_permutation

    return {parse_permutation(k, 3).images: v for k, v in mats.items()}


def frobenius_check(action: PermAction, cap: int = 8) -> FactorizationResult:
    """Group determinant factorization for tiny groups (cyclic, or S3).

    Factor F_k = det(sum x_g rho_k(g)) is computed from explicit irreducibles
    (characters for cyclic groups, the printed 2-dim matrices for S3) and the
    product prod F_k^{deg F_k} is verified exactly against the regular
    determinant, exhibiting deg F_k = d_k = multiplicity.
    """
    det, elems = group_determinant(action, cap)
    size = len(elems)
    factors: list[tuple[FormPoly, int]] = []

    # cyclic case: one generator of full order
    gen = next((g for g in elems if g.order() == size), None)
    if gen is not None:
        powers = [Permutation.identity(action.degree)]
        while len(powers) < size:
            powers.append(powers[-1] * gen)
        pos = {g: k for k, g in enumerate(powers)}
        for j in range(size):
            coeffs = [rational(0)] * size
            for i, g in enumerate(elems):
                coeffs[i] = omega(size, (j * pos[g]) % size) if size > 1 else rational(1)
            factors.append((FormPoly.linear(coeffs, varname="x"), 1))
        factors.sort(key=lambda f: str(f[0]))
    else:
        images = {g.images for g in elems}
        s3 = {
            (0, 1, 2), (0, 2, 1), (2, 1, 0), (1, 0, 2), (1, 2, 0), (2, 0, 1),
        }
        if action.degree == 3 and images == s3:
            sgn = {g: 1 if len([c for c in g.cycles() if len(c) % 2 == 0]) % 2 == 0 else -1 for g in elems}
            factors.append(
                (FormPoly.linear([rational(1)] * size, varname="x"), 1)
            )
            factors.append(
                (FormPoly.linear([rational(sgn[g]) for g in elems], varname="x"), 1)
            )
            irrep = _s3_two_dim_irrep()
            mats = [irrep[g.images] for g in elems]
            # det of the symbolic 2x2 block sum_g x_g U_g
            a = FormPoly(size, {}, varname="x")
            b = FormPoly(size, {}, varname="x")
            c = FormPoly(size, {}, varname="x")
            d = FormPoly(size, {}, varname="x")
            for i, m in enumerate(mats):
                xi = FormPoly.variable(size, i, varname="x")
                a = a + xi.scale(m[0][0])
                b = b + xi.scale(m[0][1])
                c = c + xi.scale(m[1][0])
                d = d + xi.scale(m[1][1])
            factors.append((a * d - b * c, 2))
        else:
            raise ScaleExceeded(
                "frobenius_check supports cyclic groups and S3 at this scale"
            )
    result = FactorizationResult(factors, conductor=size if gen else 3, seed=0, degree=size)
    acc = FormPoly.constant(size, 1, varname="x")
    for e, d in result.factors:
        acc = acc * e**d
    if acc != det:
        raise FactorizationFailed("group determinant mismatch against irreducibles")
    return result
