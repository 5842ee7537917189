"""Born probabilities, interference and icosahedral invariants."""

import random
from fractions import Fraction
from itertools import product

import pytest

from finsym.born import (
    born_probability,
    cauchy_check,
    destructive_search,
    linear_invariant,
    orbital_pairing,
    quadratic_invariant,
    scalar_product,
)
from finsym.errors import DimensionMismatch, IrrationalProbability, ZeroNorm
from finsym.fixtures import (
    a5_ico_forms,
    group,
    icosahedron_opposite,
    s3_component_forms,
)
from finsym.forms import basis_forms, factor_det, invariant_scalar_products


def a5_pairings(m, n):
    """Q, B, A, C in the pinned orbital order of the icosahedron action."""
    orbs = group("A5ico").orbitals()
    return [orbital_pairing(o, m, n) for o in orbs]


def rand_vec(rng, n, lo=0, hi=6):
    return tuple(rng.randint(lo, hi) for _ in range(n))


# ---------------------------------------------------------------------------
# orbital pairings


def test_diagonal_pairing_counts_particles():
    orbs = group("A5ico").orbitals()
    ones = (1,) * 12
    assert orbital_pairing(orbs[0], ones, ones) == 12


def test_opposite_pairing_via_opp_formula():
    orbs = group("A5ico").orbitals()
    opposite = orbs[2]
    e1 = tuple(1 if i == 0 else 0 for i in range(12))
    e7 = tuple(1 if i == 6 else 0 for i in range(12))
    assert icosahedron_opposite(0) == 6
    assert orbital_pairing(opposite, e1, e1) == 0
    assert orbital_pairing(opposite, e7, e1) == 1


def test_a5_form_identity_on_random_vectors():
    rng = random.Random(17)
    for _ in range(300):
        m = rand_vec(rng, 12)
        n = rand_vec(rng, 12)
        q, b, a, c = a5_pairings(m, n)
        assert a + b + c + q == linear_invariant(m) * linear_invariant(n)


def test_dimension_mismatch():
    orbs = group("A5ico").orbitals()
    with pytest.raises(DimensionMismatch):
        orbital_pairing(orbs[0], (1, 2), (1,) * 12)


# ---------------------------------------------------------------------------
# scalar products


def test_s3_two_dim_form_equals_q_minus_ll_over_3():
    form = s3_component_forms()["2"]
    rng = random.Random(5)
    for _ in range(100):
        m = rand_vec(rng, 3)
        n = rand_vec(rng, 3)
        val = scalar_product(form, m, n)
        expect = Fraction(
            quadratic_invariant(m, n) * 3 - linear_invariant(m) * linear_invariant(n),
            3,
        )
        assert val.rational and val.as_fraction() == expect


def test_constant_vectors_have_zero_standard_projection():
    form = s3_component_forms()["2"]
    for c in (1, 2, 5):
        n = (c, c, c)
        assert scalar_product(form, n, n).value.is_zero()


def test_a5_combined_form_is_half_q_minus_a():
    forms = a5_ico_forms()
    combined = forms["3+3p"]
    rng = random.Random(29)
    for _ in range(100):
        m = rand_vec(rng, 12)
        n = rand_vec(rng, 12)
        q, b, a, c = a5_pairings(m, n)
        val = scalar_product(combined, m, n)
        assert val.rational
        assert val.as_fraction() == Fraction(q - a, 2)


def test_a5_component_forms_sum_to_identity():
    forms = a5_ico_forms()
    total = {}
    for key in ("1", "3", "3p", "5"):
        for base, coeff in zip(forms[key].basis, forms[key].coefficients):
            total[base.index] = total.get(base.index, None) or coeff * 0
            total[base.index] = total[base.index] + coeff
    assert total[0] == 1
    assert all(total[k].is_zero() for k in total if k != 0)


def test_a5_printed_forms_match_pipeline():
    # the factorization route reproduces the stored icosahedral forms
    act = group("A5ico")
    bs = basis_forms(act)
    result = factor_det(bs, conductor=5)
    derived = invariant_scalar_products(bs, result)
    stored = a5_ico_forms()
    stored_vecs = [
        [c for c in stored[k].coefficients] for k in ("1", "3", "3p", "5")
    ]
    for form in derived:
        assert any(
            all(a == b for a, b in zip(form.coefficients, vec))
            for vec in stored_vecs
        )


# ---------------------------------------------------------------------------
# Born probabilities


def test_s3_destructive_example_probability_zero():
    form = s3_component_forms()["2"]
    assert born_probability(form, (1, 3, 2), (1, 1, 2)) == 0


def test_born_probability_self_is_one():
    rng = random.Random(31)
    for key, n_pts in (("2", 3),):
        form = s3_component_forms()[key]
        for _ in range(20):
            v = rand_vec(rng, n_pts, lo=0, hi=5)
            if scalar_product(form, v, v).value.is_zero():
                continue
            assert born_probability(form, v, v) == 1


def test_a5_three_dim_alone_is_irrational():
    form = a5_ico_forms()["3"]
    m = tuple(1 if i == 0 else 0 for i in range(12))
    n = (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0)
    with pytest.raises(IrrationalProbability):
        born_probability(form, m, n)
    # generic positive pair
    with pytest.raises(IrrationalProbability):
        born_probability(form, (1, 1, 2, 1, 3, 1, 2, 1, 1, 4, 1, 1), (2, 1, 1, 3, 1, 1, 1, 2, 1, 1, 1, 5))


def test_a5_combined_form_gives_rational_probabilities():
    forms = a5_ico_forms()
    combined = forms["3+3p"]
    rng = random.Random(41)
    count = 0
    for _ in range(50):
        m = rand_vec(rng, 12, lo=1, hi=6)
        n = rand_vec(rng, 12, lo=1, hi=6)
        try:
            p = born_probability(combined, m, n)
        except ZeroNorm:
            continue
        count += 1
        assert 0 <= p <= 1
    assert count > 30


def test_zero_norm_error():
    form = s3_component_forms()["2"]
    with pytest.raises(ZeroNorm):
        born_probability(form, (2, 2, 2), (1, 2, 3))


def test_trivial_component_is_a_particle_counter():
    form = s3_component_forms()["1"]
    rng = random.Random(3)
    for _ in range(20):
        m = rand_vec(rng, 3, lo=0, hi=5)
        n = rand_vec(rng, 3, lo=0, hi=5)
        if sum(m) == 0 or sum(n) == 0:
            continue
        val = scalar_product(form, m, n)
        assert val.as_fraction() == Fraction(sum(m) * sum(n), 3)
        assert born_probability(form, m, n) == 1


def test_relabeling_invariance():
    from finsym.dynamics import space_act

    rng = random.Random(13)
    act = group("A5ico")
    elems = act.closure()
    form = a5_ico_forms()["5"]
    for _ in range(30):
        m = rand_vec(rng, 12)
        n = rand_vec(rng, 12)
        g = elems[rng.randrange(len(elems))]
        mg = tuple(space_act(m, g))
        ng = tuple(space_act(n, g))
        assert scalar_product(form, m, n).value == scalar_product(form, mg, ng).value


def test_sl23_component_probabilities_are_rational():
    act = group("SL23deg8")
    bs = basis_forms(act)
    result = factor_det(bs, conductor=3)
    forms = invariant_scalar_products(bs, result)
    rng = random.Random(7)
    for form in forms:
        for _ in range(25):
            m = rand_vec(rng, 8, lo=0, hi=4)
            n = rand_vec(rng, 8, lo=0, hi=4)
            try:
                p = born_probability(form, m, n)
            except ZeroNorm:
                continue
            assert 0 <= p <= 1


def test_standard_component_norm_positive_for_nonconstant():
    # Q(n,n) - L(n)^2/N = (1/N^2) sum (L - N n_i)^2 > 0 unless n is constant
    form = s3_component_forms()["2"]
    for n in product(range(4), repeat=3):
        if sum(n) == 0:
            continue
        val = scalar_product(form, n, n)
        if len(set(n)) == 1:
            assert val.value.is_zero()
        else:
            assert val.as_fraction() > 0


# ---------------------------------------------------------------------------
# destructive interference search


def test_s3_search_finds_printed_example():
    form = s3_component_forms()["2"]
    found = list(destructive_search(form, bound=3, require_positive=True))
    assert ((1, 3, 2), (1, 1, 2)) in found
    assert ((1, 1, 2), (1, 3, 2)) in found


def test_bound_one_positive_is_empty():
    form = s3_component_forms()["2"]
    assert list(destructive_search(form, bound=1, require_positive=True)) == []


def test_search_count_matches_brute_force_oracle():
    form = s3_component_forms()["2"]
    found = list(destructive_search(form, bound=2, require_positive=False))
    # independent enumeration straight from the invariant formula
    expected = 0
    for m in product(range(3), repeat=3):
        if 3 * quadratic_invariant(m, m) == linear_invariant(m) ** 2:
            continue
        for n in product(range(3), repeat=3):
            if 3 * quadratic_invariant(n, n) == linear_invariant(n) ** 2:
                continue
            if 3 * quadratic_invariant(m, n) == linear_invariant(m) * linear_invariant(n):
                expected += 1
    assert len(found) == expected
    assert len(found) == len(set(found))


# ---------------------------------------------------------------------------
# Cauchy inequality


def test_cauchy_random_vectors():
    form = s3_component_forms()["2"]
    rng = random.Random(19)
    for _ in range(50):
        m = rand_vec(rng, 3, lo=0, hi=9)
        n = rand_vec(rng, 3, lo=0, hi=9)
        assert cauchy_check(form, m, n)


def test_cauchy_equality_for_parallel():
    form = s3_component_forms()["2"]
    m = (1, 2, 3)
    assert cauchy_check(form, m, m)


def test_cauchy_a5_five_dim():
    form = a5_ico_forms()["5"]
    rng = random.Random(23)
    for _ in range(30):
        m = rand_vec(rng, 12)
        n = rand_vec(rng, 12)
        assert cauchy_check(form, m, n)
