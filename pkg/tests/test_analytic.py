import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phaselab.analytic import (
    ExpSum,
    Rectangle,
    equivalence_check,
    eval_expsum,
    expsum_from_json,
    expsum_to_json,
    zero_count,
    zero_diff_periodicity_check,
)
from phaselab.counterexamples import expsum_pair
from phaselab.errors import BoundaryProximityError, InputError, MagnitudeOutOfRange, ZeroOnContourError

SINE = ExpSum(((1 / 2j, 1j * np.pi), (-1 / 2j, -1j * np.pi)))
PAIR_F = ExpSum(((1, -np.pi), (1j, np.pi)))


def test_expsum_normalises_terms():
    F = ExpSum(((1, 1j), (2, 1j), (0, 3), (1, -1j), (-1, -1j)))
    assert F.terms == ((3, 1j),)
    assert ExpSum(()).is_zero
    assert ExpSum(((1, 2), (-1, 2))).is_zero


def test_eval_examples():
    assert eval_expsum(ExpSum(((1, 0),)), 5 + 3j) == pytest.approx(1)
    assert abs(eval_expsum(SINE, 1.0)) < 1e-15
    assert eval_expsum(PAIR_F, 0) == pytest.approx(1 + 1j)


def test_eval_matches_direct_sum_and_zero():
    z = np.array([0.3 - 0.2j, -1 + 2j])
    direct = np.exp(-np.pi * z) + 1j * np.exp(np.pi * z)
    assert np.allclose(PAIR_F(z), direct, rtol=1e-14)
    assert ExpSum(())(1 + 1j) == 0


def test_eval_large_shift_stays_finite():
    F = ExpSum(((1, 1.0), (1, 1.0 + 1j)))
    z = 705.0
    # both terms carry |e^{705}|, which fits only after the shared shift
    assert math.isfinite(abs(F(z)))


def test_eval_overflow_names_term():
    F = ExpSum(((1, 0), (1, 1)))
    with pytest.raises(MagnitudeOutOfRange) as err:
        F(800.0)
    assert err.value.term_index == 1


def test_derivative_and_translate():
    z = 0.4 + 0.1j
    assert SINE.derivative()(z) == pytest.approx(np.pi * np.cos(np.pi * z))
    assert PAIR_F.translate(0.5j)(z) == pytest.approx(PAIR_F(z - 0.5j))


def test_equivalence_examples():
    grid = np.array([0, 0.3 + 0.1j, 1 - 0.2j])
    H = ExpSum(((1, 1), (2, -1j)))
    eq = equivalence_check(H * 1j, H, grid)
    assert eq.equivalent and eq.tau == pytest.approx(1j)
    eq2 = equivalence_check(H * 2, H, grid)
    assert not eq2.equivalent and abs(eq2.tau) == pytest.approx(2)
    P = expsum_pair(1, 0, 0, 1, 1j)
    assert not equivalence_check(P.F, P.H, grid).equivalent


def test_equivalence_empty_grid():
    with pytest.raises(InputError):
        equivalence_check(PAIR_F, PAIR_F, [])


def test_zero_count_examples():
    assert zero_count(SINE, Rectangle.from_bounds(-0.5, 2.5, -1, 1)).count == 3
    assert zero_count(ExpSum(((1, 1),)), Rectangle.from_bounds(-3, 3, -3, 3)).count == 0
    zc = zero_count(PAIR_F, Rectangle.from_bounds(-0.5, 0.5, 0, 0.5))
    assert zc.count == 1 and zc.residual < 0.1


def test_zero_on_contour():
    with pytest.raises(ZeroOnContourError):
        zero_count(SINE, Rectangle.from_bounds(0, 1, -1, 1))


def test_boundary_proximity():
    # a zero 1e-9 off the contour cannot be resolved at the refinement cap
    F = ExpSum(((1, 1j * np.pi), (-np.exp(-1j * np.pi * 1e-9 * 2), -1j * np.pi)))
    with pytest.raises((BoundaryProximityError, ZeroOnContourError)):
        zero_count(F, Rectangle.from_bounds(1e-9 - 1e-9 * 2, 0.5, -0.5, 0.5), max_refinements=2)


def test_rectangle_validation():
    with pytest.raises(InputError):
        Rectangle.from_bounds(1, 0, 0, 1)


def test_periodicity_examples():
    R = Rectangle.from_bounds(-0.5, 0.5, 0.1, 0.9)
    assert zero_diff_periodicity_check(PAIR_F, PAIR_F, 0, 1, R)
    P = expsum_pair(1, 0, 0, 1, 1j)
    assert zero_diff_periodicity_check(P.F, P.H, 0, 1, R)


def test_json_roundtrip():
    assert expsum_from_json(expsum_to_json(PAIR_F)) == PAIR_F
    with pytest.raises(InputError):
        expsum_from_json([{"re_c": 1}])


coef = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
freq = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(coef, freq), min_size=1, max_size=4), freq)
def test_eval_agrees_with_naive(terms, z):
    F = ExpSum(tuple(terms))
    naive = sum(c * cmath.exp(xi * z) for c, xi in F.terms)
    scale = sum(abs(c) * abs(cmath.exp(xi * z)) for c, xi in F.terms) + 1
    assert abs(F(z) - naive) <= 1e-12 * scale


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(coef, freq), min_size=1, max_size=3), st.floats(0, 2 * np.pi))
def test_unimodular_multiple_is_equivalent(terms, phase):
    F = ExpSum(tuple(terms))
    grid = np.array([0.1 + 0.2j, -0.7 + 0.4j, 1.1 - 0.5j, 0.3j])
    if np.max(np.abs(F(grid))) < 1e-3:
        return
    tau = cmath.exp(1j * phase)
    eq = equivalence_check(F * tau, F, grid, 1e-8)
    assert eq.equivalent and abs(eq.tau - tau) < 1e-6
