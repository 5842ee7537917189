"""Root-of-unity path sums and the binomial spacetime model."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from finsym.cyclo import rational
from finsym.errors import DomainError, OutOfCone, ParityViolation
from finsym.pathsum import (
    amplitude,
    amplitude_table,
    approx_conditional,
    binomial_probability,
    conditional_probability,
    continuum_approx,
    interference,
    smallest_destructive_order,
)


def brute_force_paths(t, x):
    """Count stay/left/right paths 0 -> x in t steps, by tau moving steps."""
    out = {}
    for steps in itertools.product((-1, 0, 1), repeat=t):
        if sum(steps) == x:
            tau = sum(1 for s in steps if s)
            out[tau] = out.get(tau, 0) + 1
    return out


# ---------------------------------------------------------------------------
# amplitudes


def test_zero_steps():
    assert amplitude(4, 0, 0) == rational(1)


def test_one_step_enumeration():
    # three one-step paths: stay (weight 1), left and right (weight w)
    from finsym.cyclo import omega

    assert amplitude(4, 1, 0) == rational(1)
    assert amplitude(4, 1, 1) == omega(4)
    assert amplitude(4, 1, -1) == omega(4)


def test_amplitude_against_path_enumeration():
    for t in range(0, 7):
        for x in range(-t, t + 1):
            counts = brute_force_paths(t, x)
            raw = [0] * (t + 1)
            for tau, c in counts.items():
                raw[tau] = c
            from finsym.cyclo import reduce_coords

            assert amplitude(12, t, x) == reduce_coords(raw, 12)


def test_m1_total_is_power_of_three():
    for t in range(0, 11):
        total = sum(amplitude(1, t, x).as_fraction() for x in range(-t, t + 1))
        assert total == 3**t


def test_out_of_cone():
    with pytest.raises(OutOfCone):
        amplitude(4, 3, 5)


def test_first_destructive_zero():
    assert amplitude(4, 3, 1).is_zero()
    assert amplitude(4, 3, -1).is_zero()


# ---------------------------------------------------------------------------
# interference


def test_single_source_profile_is_symmetric():
    prof = interference(4, 10, [(0, 0)])
    vals = dict(zip(prof.positions, prof.intensities))
    for x in range(0, 11):
        assert vals[x] == vals[-x]


def test_colocated_sources_quadruple_intensity():
    single = interference(4, 8, [(0, 0)])
    double = interference(4, 8, [(0, 0), (0, 0)])
    for a, b in zip(single.intensities, double.intensities):
        assert b == a * 4


def test_m4_t20_zero_sets_disjoint():
    prof0 = interference(4, 20, [(-4, 0), (4, 0)])
    profpi = interference(4, 20, [(-4, 0), (4, 2)])
    zeros0 = set(prof0.zero_positions())
    zerospi = set(profpi.zero_positions())
    assert not (zeros0 & zerospi)
    # opposite phases kill the symmetric midpoint exactly
    assert 0 in zerospi


def test_intensities_are_real_and_match_floats():
    prof = interference(4, 12, [(-2, 0), (2, 1)])
    for amp, inten in zip(prof.amplitudes, prof.intensities):
        assert inten == inten.conjugate()
        approx = abs(amp.to_complex()) ** 2
        assert abs(inten.to_complex().real - approx) < 1e-9 * max(1.0, approx)


def test_normalized_profile_sums_to_one():
    prof = interference(3, 9, [(-1, 0), (1, 1)])
    assert abs(sum(prof.normalized) - 1) < 1e-12


def test_source_outside_cone_rejected():
    with pytest.raises(OutOfCone):
        interference(4, 3, [(5, 0)])


# ---------------------------------------------------------------------------
# destructive order search


def test_smallest_destructive_order_is_four():
    assert smallest_destructive_order(t_max=20, d_max=4) == 4


def test_m1_never_destructive():
    # positive path counts cannot cancel
    for t in range(1, 9):
        for x in range(-t, t + 1):
            assert not amplitude(1, t, x).is_zero()


def test_m2_has_no_family_zero():
    # derived: within the pinned family the only M=2 cancellations are the
    # excluded antisymmetric midpoints, where A(x+d) - A(x-d) vanishes by
    # the reflection symmetry of the amplitudes
    for t in range(1, 13):
        table = amplitude_table(2, t)
        for d in range(1, 5):
            for k in range(2):
                for x in range(-d - t, d + t + 1):
                    if x == 0 and k == 1:
                        continue
                    acc = rational(0)
                    hit = False
                    if abs(x + d) <= t:
                        acc = acc + table[x + d]
                        hit = True
                    if abs(x - d) <= t:
                        phase = rational(1) if k == 0 else rational(-1)
                        acc = acc + phase * table[x - d]
                        hit = True
                    if hit:
                        assert not acc.is_zero(), (t, d, k, x)


# ---------------------------------------------------------------------------
# binomial spacetime model


def test_binomial_probability_exact():
    assert binomial_probability(2, 1, Fraction(1, 2)) == Fraction(3, 8)
    assert binomial_probability(0, 0, Fraction(1, 3)) == 1


def test_conditional_probability_endpoint():
    assert conditional_probability(0, 12, 0, 12) == 1
    assert conditional_probability(4, 12, 4, 12) == 1


def test_conditional_probability_two_symmetric_points():
    assert conditional_probability(1, 1, 0, 2) == Fraction(1, 2)
    assert conditional_probability(-1, 1, 0, 2) == Fraction(1, 2)


def path_count_oracle(x, t, big_x, big_t):
    """Probability by exhaustive +-1 path enumeration."""
    total = 0
    through = 0
    for steps in itertools.product((-1, 1), repeat=big_t):
        prefix = list(itertools.accumulate(steps))
        if prefix[-1] != big_x:
            continue
        total += 1
        pos = prefix[t - 1] if t > 0 else 0
        if pos == x:
            through += 1
    return Fraction(through, total)


def test_conditional_probability_matches_path_oracle():
    for big_t, big_x in ((6, 0), (7, 1), (8, 2)):
        for t in range(1, big_t):
            for x in range(-t, t + 1):
                if (t - x) % 2 or abs(big_x - x) > big_t - t:
                    continue
                if (big_t - t - (big_x - x)) % 2:
                    continue
                assert conditional_probability(x, t, big_x, big_t) == path_count_oracle(
                    x, t, big_x, big_t
                ), (x, t, big_x, big_t)


def test_conditional_normalization():
    for t in range(1, 12):
        total = sum(
            conditional_probability(x, t, 0, 12)
            for x in range(-t, t + 1)
            if (t - x) % 2 == 0 and abs(-x) <= 12 - t and (12 - t + x) % 2 == 0
        )
        assert total == 1


def test_exact_max_achieved_on_multiple_points():
    values = {}
    for t in range(1, 12):
        for x in range(-t, t + 1):
            if (t - x) % 2 or abs(x) > 12 - t or (12 - t + x) % 2:
                continue
            values[(x, t)] = conditional_probability(x, t, 0, 12)
    best = max(values.values())
    argmax = [pt for pt, v in values.items() if v == best]
    assert len(argmax) >= 2
    assert set(argmax) == {(0, 2), (0, 10)}


def test_approx_conditional_unique_maximum_on_fine_grid():
    # at fixed t the continuum approximation peaks only on the straight line
    for t in (3, 5, 7):
        xs = [i / 100 for i in range(-300, 301)]
        vals = [approx_conditional(x, t, 0, 12, 0.0) for x in xs]
        peak = max(vals)
        argmax = [x for x, v in zip(xs, vals) if v == peak]
        assert argmax == [0.0]
        # whereas the exact conditional ties at x = -1 and x = 1 for odd t
        exact = {
            x: conditional_probability(x, t, 0, 12)
            for x in range(-t, t + 1, 2)
            if abs(x) <= 12 - t
        }
        best = max(exact.values())
        assert sorted(x for x, v in exact.items() if v == best) == [-1, 1]


def test_conditional_errors():
    with pytest.raises(ParityViolation):
        conditional_probability(1, 2, 0, 12)
    with pytest.raises(OutOfCone):
        conditional_probability(5, 3, 0, 12)
    with pytest.raises(OutOfCone):
        conditional_probability(0, 20, 0, 12)


def test_formula_is_p_independent_by_signature():
    import inspect

    params = inspect.signature(conditional_probability).parameters
    assert "p" not in params and "p1" not in params


# ---------------------------------------------------------------------------
# continuum approximations


def test_continuum_center_value():
    for t in (10, 100, 1000):
        assert abs(continuum_approx(0, t, 0.0) - math.sqrt(2 / (math.pi * t))) < 1e-12


def test_continuum_domain_errors():
    with pytest.raises(DomainError):
        continuum_approx(0, 10, 1.0)
    with pytest.raises(DomainError):
        approx_conditional(0, 0, 0, 10, 0.0)


def test_binomial_agrees_with_gaussian_in_bulk():
    # sanity band: T >= 200, v = 0, agreement within 2% for |x| <= sqrt(T)
    big_t = 200
    for x in range(0, int(math.sqrt(big_t)) + 1, 2):
        n1 = (big_t + x) // 2
        n2 = (big_t - x) // 2
        exact = binomial_probability(n1, n2, Fraction(1, 2))
        # the lattice spacing in x is 2, so the density comparison carries
        # a factor 2 against the continuum formula
        approx = continuum_approx(x, big_t, 0.0)
        assert abs(float(2 * exact) / approx - 1) < 0.02
