import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parastat.cyclotomic import CycNum
from parastat.errors import ArgumentError, SizingError
from parastat.groups import (
    Bicharacter,
    FiniteAbelianGroup,
    GradedVector,
    braid,
    bicharacter_to_rmatrix,
    braiding_on_lines,
    check_quasitriangular,
    enumerate_bicharacters,
    is_commutation_factor,
    rmatrix_to_bicharacter,
)

from oracles import brute_force_bicharacter_tables, brute_force_full_table_search, is_skew_table

Z2 = FiniteAbelianGroup((2,))
Z3 = FiniteAbelianGroup((3,))
V4 = FiniteAbelianGroup((2, 2))

EXPECTED_COUNTS = {
    "Z2": (2, 2),
    "Z3": (3, 1),
    "Z4": (4, 2),
    "Z5": (5, 1),
    "Z6": (6, 2),
    "Z2xZ2": (16, 8),
}


def test_group_parsing_and_arithmetic():
    g = FiniteAbelianGroup.parse("Z3xZ4")
    assert g.factors == (3, 4)
    assert g.order == 12
    assert g.add((2, 3), (2, 2)) == (1, 1)
    assert g.neg((1, 3)) == (2, 1)
    els = g.elements()
    assert els[0] == (0, 0)
    assert els == sorted(els)  # lexicographic and stable
    for bad in ("Z0", "Z1", "z2", "Z2x", "2", "Z2+Z2"):
        with pytest.raises(ArgumentError):
            FiniteAbelianGroup.parse(bad)


@pytest.mark.parametrize("spec,counts", sorted(EXPECTED_COUNTS.items()))
def test_classification_counts(spec, counts):
    g = FiniteAbelianGroup.parse(spec)
    bichars = enumerate_bicharacters(g)
    n_factors = sum(is_commutation_factor(b) for b in bichars)
    assert (len(bichars), n_factors) == counts


@pytest.mark.parametrize("spec", sorted(EXPECTED_COUNTS))
def test_counts_against_generator_pair_oracle(spec):
    g = FiniteAbelianGroup.parse(spec)
    tables = brute_force_bicharacter_tables(g.factors)
    enumerated = {b.table.tobytes() for b in enumerate_bicharacters(g)}
    n = g.order
    els = g.elements()
    oracle = set()
    skew = 0
    for t in tables:
        arr = np.array([[t[(a, b)] for b in els] for a in els], dtype=np.int64)
        oracle.add(arr.tobytes())
        skew += is_skew_table(t, g.factors, n)
    assert oracle == enumerated
    assert skew == EXPECTED_COUNTS[spec][1]


@pytest.mark.parametrize("factors", [(2,), (3,)])
def test_counts_against_full_table_oracle(factors):
    """Exhaustive search over every value assignment on G x G (tiny groups)."""
    g = FiniteAbelianGroup(factors)
    tables = brute_force_full_table_search(factors)
    assert len(tables) == len(enumerate_bicharacters(g))


def test_cyclic_group_count_law():
    for n in range(2, 13):
        g = FiniteAbelianGroup((n,))
        bichars = enumerate_bicharacters(g)
        assert len(bichars) == n
        n_cf = sum(is_commutation_factor(b) for b in bichars)
        assert n_cf == (2 if n % 2 == 0 else 1)


def test_enumeration_order_bound():
    with pytest.raises(SizingError):
        enumerate_bicharacters(FiniteAbelianGroup((65,)))


def test_commutation_factor_examples():
    assert is_commutation_factor(Bicharacter.trivial(Z3))
    assert is_commutation_factor(Bicharacter(Z2, [[1]]))
    assert not is_commutation_factor(Bicharacter(Z3, [[1]]))


def test_rmatrix_trivial_is_unit():
    r = bicharacter_to_rmatrix(Bicharacter.trivial(Z3))
    assert r.coefficients == {((0,), (0,)): CycNum.one(3)}


def test_rmatrix_z2_sign_factor_closed_form():
    r = bicharacter_to_rmatrix(Bicharacter(Z2, [[1]]))
    half = CycNum.rational(2, "1/2")
    assert r.coefficients == {
        ((0,), (0,)): half,
        ((0,), (1,)): half,
        ((1,), (0,)): half,
        ((1,), (1,)): -half,
    }


@pytest.mark.parametrize("spec", sorted(EXPECTED_COUNTS))
def test_qt_and_roundtrip_all_bicharacters(spec):
    g = FiniteAbelianGroup.parse(spec)
    for b in enumerate_bicharacters(g):
        r = bicharacter_to_rmatrix(b)
        qt = check_quasitriangular(r, g)
        assert qt.qt_axioms_ok
        assert qt.triangular == is_commutation_factor(b)
        assert rmatrix_to_bicharacter(r) == b


def test_perturbed_rmatrix_fails_qt():
    r = bicharacter_to_rmatrix(Bicharacter(Z2, [[1]]))
    r.coefficients[((1,), (1,))] = -r.coefficients[((1,), (1,))]
    qt = check_quasitriangular(r, Z2)
    assert not qt.qt_axioms_ok


def test_braiding_on_lines_recovers_theta():
    theta = Bicharacter(V4, [[1, 1], [1, 0]])
    r = bicharacter_to_rmatrix(theta)
    for a in V4.elements():
        for b in V4.elements():
            assert (braiding_on_lines(r, a, b) - theta.value(a, b)).is_zero()


def test_braid_trivial_factor_is_plain_swap():
    theta = Bicharacter.trivial(Z2)
    x = GradedVector((0,), np.array([1.0, 2.0]))
    y = GradedVector((1,), np.array([3.0, -1.0]))
    out = braid(theta, x, y)
    assert out.degree == (1,)
    np.testing.assert_array_equal(out.vec, np.kron(y.vec, x.vec))


def test_braid_sign_factor_odd_odd():
    theta = Bicharacter(Z2, [[1]])
    x = GradedVector((1,), np.array([1.0, 0.0]))
    y = GradedVector((1,), np.array([0.0, 1.0]))
    out = braid(theta, x, y)
    np.testing.assert_array_equal(out.vec, -np.kron(y.vec, x.vec))


def test_braid_rejects_foreign_degree():
    theta = Bicharacter.trivial(Z2)
    with pytest.raises(ArgumentError):
        braid(theta, GradedVector((2,), np.ones(2)), GradedVector((0,), np.ones(2)))


@settings(deadline=None, max_examples=40)
@given(
    gen_exp=st.integers(0, 1),
    dx=st.integers(0, 1),
    dy=st.integers(0, 1),
    vx=st.lists(st.integers(-3, 3), min_size=2, max_size=2),
    vy=st.lists(st.integers(-3, 3), min_size=2, max_size=2),
)
def test_symmetric_braiding_squares_to_identity(gen_exp, dx, dy, vx, vy):
    theta = Bicharacter(Z2, [[gen_exp]])
    assert is_commutation_factor(theta)
    x = GradedVector((dx,), np.array(vx, dtype=float))
    y = GradedVector((dy,), np.array(vy, dtype=float))
    once = braid(theta, x, y)
    np.testing.assert_allclose(once.vec, theta.phase((dx,), (dy,)) * np.kron(y.vec, x.vec))
    # psi o psi multiplies the scalars theta(g,h) theta(h,g) = 1 for a
    # commutation factor, so the double swap restores x (x) y exactly
    total = theta.phase((dx,), (dy,)) * theta.phase((dy,), (dx,))
    assert total == 1.0
    np.testing.assert_array_equal(
        total * np.kron(x.vec, y.vec), np.kron(x.vec, y.vec)
    )
