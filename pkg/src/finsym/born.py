"""Natural state vectors and Born probabilities in invariant subspaces.

States of system and apparatus are vectors of occupation numbers; the only
observables are permutation invariants, and scalar products in invariant
subspaces are cyclotomic combinations of orbital pairings.  On natural
vectors a properly combined component always yields a rational probability;
an irrational value is reported as an error, signalling an imprimitive
component used alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cyclo import Cyclotomic, rational
from .errors import DimensionMismatch, IrrationalProbability, ZeroNorm
from .forms import InvariantForm
from .perm import Orbital

__all__ = [
    "PairingValue",
    "orbital_pairing",
    "scalar_product",
    "born_probability",
    "destructive_search",
    "cauchy_check",
    "linear_invariant",
    "quadratic_invariant",
]


@dataclass(frozen=True)
class PairingValue:
    """Exact pairing value plus a convenience rationality flag."""

    value: Cyclotomic

    @property
    def rational(self) -> bool:
        return self.value.is_rational()

    def as_fraction(self) -> Fraction:
        return self.value.as_fraction()


def _check_vector(v, n: int):
    if len(v) != n:
        raise DimensionMismatch(f"vector length {len(v)} != degree {n}")
    if any(x < 0 for x in v):
        raise ValueError("occupation numbers must be nonnegative")


def linear_invariant(n_vec) -> int:
    """L(n) = sum of occupation numbers (the particle counter)."""
    return sum(n_vec)


def quadratic_invariant(m_vec, n_vec) -> int:
    """Q(m,n) = sum m_i n_i."""
    if len(m_vec) != len(n_vec):
        raise DimensionMismatch("vector lengths differ")
    return sum(a * b for a, b in zip(m_vec, n_vec))


def orbital_pairing(orbital: Orbital, m_vec, n_vec) -> int:
    """Sum of m_i * n_j over the orbital's pairs (i, j)."""
    _check_vector(m_vec, orbital.degree)
    _check_vector(n_vec, orbital.degree)
    return sum(m_vec[i] * n_vec[j] for i, j in orbital.pairs)


def _pairings(form: InvariantForm, m_vec, n_vec) -> Cyclotomic:
    n = form.basis[0].degree
    _check_vector(m_vec, n)
    _check_vector(n_vec, n)
    acc = rational(0)
    for base, coeff in zip(form.basis, form.coefficients):
        if coeff.is_zero():
            continue
        pairing = sum(m_vec[i] * n_vec[j] for i, j in base.pairs)
        if pairing:
            acc = acc + coeff * pairing
    return acc


def scalar_product(form: InvariantForm, m_vec, n_vec) -> PairingValue:
    """Exact <phi|psi> in the component: sum of coefficients times pairings."""
    return PairingValue(_pairings(form, m_vec, n_vec))


def born_probability(form: InvariantForm, m_vec, n_vec) -> Fraction:
    """|<phi|psi>|^2 / (<phi|phi><psi|psi>), exact, must come out rational.

    Raises ZeroNorm when either projected vector has zero norm and
    IrrationalProbability when the exact value fails to be rational (an
    imprimitive component evaluated alone).
    """
    mm = _pairings(form, m_vec, m_vec)
    nn = _pairings(form, n_vec, n_vec)
    if mm.is_zero() or nn.is_zero():
        raise ZeroNorm("projection of a state vector has zero norm")
    mn = _pairings(form, m_vec, n_vec)
    prob = (mn * mn.conjugate()) / (mm * nn)
    if not prob.is_rational():
        raise IrrationalProbability(
            f"Born probability {prob} is not rational; combine conjugate components"
        )
    p = prob.as_fraction()
    assert 0 <= p <= 1
    return p


def cauchy_check(form: InvariantForm, m_vec, n_vec) -> bool:
    """|<phi|psi>|^2 <= <phi|phi><psi|psi>, exactly.

    Rational values compare exactly; a non-rational (but real) difference is
    compared through its float embedding with a hard failure when the margin
    is numerically ambiguous.
    """
    mm = _pairings(form, m_vec, m_vec)
    nn = _pairings(form, n_vec, n_vec)
    mn = _pairings(form, m_vec, n_vec)
    diff = mm * nn - mn * mn.conjugate()
    if diff.is_rational():
        return diff.as_fraction() >= 0
    if not (diff == diff.conjugate()):
        raise ValueError("norm expression is not real; form is not Hermitian")
    approx = diff.to_complex().real
    if abs(approx) < 1e-9:
        raise ValueError("sign of irrational margin is numerically ambiguous")
    return approx > 0


def destructive_search(
    form: InvariantForm,
    bound: int,
    require_positive: bool = True,
):
    """Stream (m, n) with <phi|psi> = 0 exactly, entries in [1..B] or [0..B].

    Deterministic lexicographic order; pairs whose projection has zero norm
    are skipped (their Born probability is undefined).
    """
    n = form.basis[0].degree
    lo = 1 if require_positive else 0
    values = range(lo, bound + 1)
    for m_vec in product(values, repeat=n):
        if _pairings(form, m_vec, m_vec).is_zero():
            continue
        for n_vec in product(values, repeat=n):
            if _pairings(form, n_vec, n_vec).is_zero():
                continue
            if _pairings(form, m_vec, n_vec).is_zero():
                yield (m_vec, n_vec)
