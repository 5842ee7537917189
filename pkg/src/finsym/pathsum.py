"""Path sums over roots of unity and the binomial spacetime model.

A free particle hopping on the integer line (stay / left / right each step)
accumulates a weight w per moving step, w a primitive M-th root of unity.
The amplitude to reach x after T steps is an exact element of Z[w_M]; zeros
of amplitudes are decided algebraically (reduction mod Phi_M), never
numerically.  The spacetime model compares exact binomial-path conditional
probabilities with their continuum (Gaussian) approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import Cyclotomic, rational, reduce_coords
from .errors import DomainError, OutOfCone, ParityViolation

__all__ = [
    "amplitude",
    "amplitude_table",
    "interference",
    "InterferenceProfile",
    "smallest_destructive_order",
    "binomial_probability",
    "conditional_probability",
    "continuum_approx",
    "approx_conditional",
]

EXACT_T_CAP = 5000


@lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    return math.factorial(n)


def _trinomial_weights(t: int, x: int) -> dict[int, int]:
    """Number of t-step stay/left/right paths 0 -> x with tau moving steps."""
    out = {}
    for tau in range(abs(x), t + 1):
        if (tau - x) % 2:
            continue
        left = (tau - x) // 2
        right = (tau + x) // 2
        paths = (
            _factorial(tau)
            // (_factorial(left) * _factorial(right))
            * (_factorial(t) // (_factorial(tau) * _factorial(t - tau)))
        )
        out[tau] = paths
    return out


def amplitude(m_order: int, t: int, x: int) -> Cyclotomic:
    """Exact A_x^t(w) = sum over paths of w^(moving steps), w = w_M."""
    if t > EXACT_T_CAP:
        raise DomainError(f"exact mode capped at T={EXACT_T_CAP}")
    if abs(x) > t:
        raise OutOfCone(f"|{x}| > {t}")
    raw = [0] * (t + 1)
    for tau, paths in _trinomial_weights(t, x).items():
        raw[tau] += paths
    return reduce_coords(raw, m_order)


def amplitude_table(m_order: int, t: int) -> dict[int, Cyclotomic]:
    return {x: amplitude(m_order, t, x) for x in range(-t, t + 1)}


@dataclass
class InterferenceProfile:
    """Exact squared amplitudes per position, plus normalized floats."""

    m_order: int
    t: int
    sources: list[tuple[int, int]]  # (position, phase exponent)
    positions: list[int]
    amplitudes: list[Cyclotomic]
    intensities: list[Cyclotomic]  # A * conj(A), exact
    normalized: list[float]

    def zero_positions(self) -> list[int]:
        return [x for x, a in zip(self.positions, self.amplitudes) if a.is_zero()]


def interference(m_order: int, t: int, sources) -> InterferenceProfile:
    """Superpose per-source amplitude tables with phase factors w^k."""
    sources = [(int(p), int(k)) for p, k in sources]
    for pos, _k in sources:
        if abs(pos) > t:
            raise OutOfCone(f"source at {pos} outside the cone for T={t}")
    lo = min(p for p, _ in sources) - t
    hi = max(p for p, _ in sources) + t
    tables = {}
    for pos, _ in sources:
        if pos not in tables:
            tables[pos] = amplitude_table(m_order, t)
    positions = list(range(lo, hi + 1))
    amps = []
    for x in positions:
        acc = rational(0)
        for pos, phase in sources:
            if abs(x - pos) <= t:
                w_phase = reduce_coords([0] * (phase % m_order) + [1], m_order)
                acc = acc + w_phase * tables[pos][x - pos]
        amps.append(acc)
    intensities = [a * a.conjugate() for a in amps]
    for i in intensities:
        assert i == i.conjugate(), "squared amplitude must be conjugation-fixed"
    floats = [i.to_complex().real for i in intensities]
    total = sum(floats)
    normalized = [f / total if total else 0.0 for f in floats]
    return InterferenceProfile(
        m_order=m_order,
        t=t,
        sources=sources,
        positions=positions,
        amplitudes=amps,
        intensities=intensities,
        normalized=normalized,
    )


def smallest_destructive_order(
    t_max: int = 20, d_max: int = 4, m_max: int = 12
) -> int:
    """Smallest root order M with an exact interference zero, two sources.

    Pinned configuration family: sources at -d and +d (1 <= d <= d_max),
    phase offsets k*(2*pi/M) for k = 0..M-1, times T <= t_max, any position
    in either cone.  The midpoint x = 0 with opposite phases (k = M/2) is
    excluded: there the two contributions cancel coefficient-by-coefficient
    for every even M and any T, an antisymmetry artifact rather than a
    root-of-unity interference zero.  Zeros are exact (reduction in Z[w_M]).
    """
    for m_order in range(1, m_max + 1):
        for t in range(1, t_max + 1):
            for d in range(1, d_max + 1):
                tables = amplitude_table(m_order, t)
                for k in range(m_order):
                    w_phase = reduce_coords([0] * k + [1], m_order)
                    for x in range(-d - t, d + t + 1):
                        if x == 0 and 2 * k == m_order:
                            continue
                        acc = rational(0)
                        hit = False
                        if abs(x + d) <= t:
                            acc = acc + tables[x + d]
                            hit = True
                        if abs(x - d) <= t:
                            acc = acc + w_phase * tables[x - d]
                            hit = True
                        if hit and acc.is_zero():
                            return m_order
    raise DomainError(f"no destructive order found up to M={m_max}")


# ---------------------------------------------------------------------------
# binomial spacetime model


def binomial_probability(n1: int, n2: int, p1) -> Fraction:
    """P(n1, n2) = (n1+n2)!/(n1! n2!) p1^n1 (1-p1)^n2, exact."""
    if n1 < 0 or n2 < 0:
        raise DomainError("counts must be nonnegative")
    p1 = Fraction(p1)
    if not 0 <= p1 <= 1:
        raise DomainError("p1 must lie in [0, 1]")
    return (
        Fraction(_factorial(n1 + n2), _factorial(n1) * _factorial(n2))
        * p1**n1
        * (1 - p1) ** n2
    )


def _check_point(x: int, t: int):
    if abs(x) > t:
        raise OutOfCone(f"|{x}| > {t}")
    if (t - x) % 2:
        raise ParityViolation(f"x = {x} unreachable at t = {t}")


def conditional_probability(x: int, t: int, big_x: int, big_t: int) -> Fraction:
    """Probability that a path (0,0) -> (X,T) passes through (x,t), exact.

    Independent of the step probability p: the formula is a pure path count
    ratio C(t, (t+x)/2) C(T-t, (T-t+X-x)/2) / C(T, (T+X)/2).
    """
    _check_point(big_x, big_t)
    _check_point(x, t)
    if not 0 <= t <= big_t:
        raise OutOfCone(f"t = {t} outside 0..{big_t}")
    _check_point(big_x - x, big_t - t)
    num = (
        _factorial(t)
        * _factorial(big_t - t)
        * _factorial((big_t - big_x) // 2)
        * _factorial((big_t + big_x) // 2)
    )
    den = (
        _factorial((t - x) // 2)
        * _factorial((t + x) // 2)
        * _factorial(((big_t - t) - (big_x - x)) // 2)
        * _factorial(((big_t - t) + (big_x - x)) // 2)
        * _factorial(big_t)
    )
    return Fraction(num, den)


def continuum_approx(x: float, t: float, v: float) -> float:
    """Gaussian asymptotic of the binomial distribution in (x, t) variables."""
    if not -1 < v < 1:
        raise DomainError("|v| must be < 1")
    if t <= 0:
        raise DomainError("t must be positive")
    spread = 1 - v * v
    return (
        1 / math.sqrt(spread)
        * math.sqrt(2 / (math.pi * t))
        * math.exp(-((x - v * t) ** 2) / (2 * t * spread))
    )


def approx_conditional(
    x: float, t: float, big_x: float, big_t: float, v: float
) -> float:
    """Continuum counterpart of `conditional_probability` (v-dependent)."""
    if not -1 < v < 1:
        raise DomainError("|v| must be < 1")
    if not 0 < t < big_t:
        raise DomainError("need 0 < t < T")
    spread = 1 - v * v
    denom = 2 * spread * t * big_t * (big_t - t)
    return (
        big_t
        / math.sqrt(math.pi / 2 * spread * t * big_t * (big_t - t))
        * math.exp(-((big_x * t - x * big_t) ** 2) / denom)
    )
