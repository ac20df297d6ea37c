import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from parastat.cyclotomic import CycNum, cyclotomic_polynomial


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 8, 12])
def test_roots_multiply_like_exponents(m):
    for a in range(m):
        for b in range(m):
            prod = CycNum.root(m, a) * CycNum.root(m, b)
            assert prod == CycNum.root(m, (a + b) % m)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 12])
def test_full_root_sum_vanishes(m):
    total = CycNum.zero(m)
    for k in range(m):
        total = total + CycNum.root(m, k)
    assert total.is_zero()


def test_as_scaled_root():
    v = CycNum.root(6, 5) * Fraction(3, 4)
    assert v.as_scaled_root() == (Fraction(3, 4), 5)
    assert CycNum.zero(5).as_scaled_root() == (Fraction(0), 0)
    mixed = CycNum.root(5, 1) + CycNum.root(5, 2)
    assert mixed.as_scaled_root() is None


def test_as_root_of_unity_handles_negatives():
    minus_one = CycNum.rational(4, -1)
    assert minus_one.as_root_of_unity() == 2
    assert CycNum.root(4, 3).as_root_of_unity() == 3
    assert (CycNum.root(4, 1) * 2).as_root_of_unity() is None


@given(
    m=st.sampled_from([2, 3, 4, 6, 8]),
    ks=st.lists(st.integers(min_value=-20, max_value=20), min_size=1, max_size=6),
)
def test_to_complex_matches_direct_sum(m, ks):
    acc = CycNum.zero(m)
    direct = 0j
    for k in ks:
        acc = acc + CycNum.root(m, k % m)
        direct += cmath.exp(2j * cmath.pi * (k % m) / m)
    assert abs(acc.to_complex() - direct) < 1e-12


def test_from_counts_scaling():
    v = CycNum.from_counts(4, [2, 0, 2, 0], Fraction(1, 4))
    # (2 + 2*zeta^2)/4 = (2 - 2)/4 = 0
    assert v.is_zero()
    w = CycNum.from_counts(4, [3, 1, 0, 0], Fraction(1, 2))
    assert w == CycNum.rational(4, Fraction(3, 2)) + CycNum.root(4, 1) * Fraction(1, 2)
