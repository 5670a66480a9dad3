import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phaselab import rigidity as rg
from phaselab.errors import DomainError, InputError

SQRT2 = math.sqrt(2)


def test_frac_mod_examples():
    assert rg.frac_mod(3.5, 1) == 0.5
    assert rg.frac_mod(-0.25, 1) == 0.75
    assert rg.frac_mod(5, 2) == 1
    assert rg.frac_mod(Fraction(-7, 3), Fraction(1, 2)) == Fraction(1, 6)
    with pytest.raises(InputError):
        rg.frac_mod(1, 0)


def test_residue_set_examples():
    S = rg.residue_set(0, Fraction(2, 3), 1, 10)
    assert set(S.residues) == {0, Fraction(1, 3), Fraction(2, 3)}
    assert rg.distinct_count(S, 1e-9) == 3
    assert set(rg.residue_set(0, 0, 1, 10).residues) == {0}
    with pytest.raises(InputError):
        rg.residue_set(0, 1, 0, 10)


def test_sqrt2_residues_spread():
    S = rg.residue_set(0.0, SQRT2, 1.0, 500)
    vals = np.sort(np.array(S.residues))
    sep = np.diff(vals)
    assert np.sum(sep > 1e-4) >= 100
    assert rg.distinct_count(S, 1e-6) > 50


def test_distinct_count_single_and_wraparound():
    assert rg.distinct_count(rg.ResidueSet(1, (0.25,), 1)) == 1
    # 0 and 1 - 1e-12 are neighbours on the circle
    assert rg.distinct_count(rg.ResidueSet(1, (0.0, 1 - 1e-12), 1), 1e-9) == 1


def test_ap_exact_examples():
    v = rg.ap_containment_exact([0, 1, 2])
    assert v.contained and v.a == 1 and v.b == 0
    v = rg.ap_containment_exact([Fraction(1, 2), Fraction(5, 6), Fraction(7, 3)])
    assert v.a == Fraction(1, 6) and v.b == 0
    v = rg.ap_containment_exact([7])
    assert v.a == 0 and v.b == 7
    with pytest.raises(InputError):
        rg.ap_containment_exact([1, 1])


def test_ap_exact_offset_is_normalised():
    # {1/2, 5/6, 7/3} lies in (1/6)Z + 1/2 = (1/6)Z; brute force over gaps k/6
    lam = [Fraction(1, 2), Fraction(5, 6), Fraction(7, 3)]
    coarser = [Fraction(1, q) * m for q in range(1, 7) for m in range(1, 7)]
    fits = [g for g in coarser if all(((v - lam[0]) / g).denominator == 1 for v in lam)]
    assert max(fits) == Fraction(1, 6)


def test_ap_float_examples():
    v = rg.ap_containment_float([0, 1, 2.0000000001], 1e-6, 64)
    assert v.contained and v.a == pytest.approx(1)
    v = rg.ap_containment_float([0, 1, SQRT2], 1e-9, 10**4)
    assert not v.contained
    pert = rg.perturbed_progression(1, 0, 0.5, 0.3, 6)
    assert not rg.ap_containment_float(pert, 1e-9, 1000).contained


def test_perturbed_set_at_large_q_max_is_resolution_limited():
    # the 13 points are rationals with small denominators relative to 1e4,
    # so at q_max = 1e4 a fine progression fits them within 1e-9
    pert = rg.perturbed_progression(1, 0, 0.5, 0.3, 6)
    v = rg.ap_containment_float(pert, 1e-9, 10**4)
    assert v.contained and v.a == pytest.approx(1 / 640)


def test_perturbed_progression_examples():
    p = rg.perturbed_progression(1, 0, 0.5, 0.3, 2)
    assert p == pytest.approx([-2 + 0.075, -1 + 0.15, 0.3, 1.15, 2.075])
    assert all(v - n != 0 for v, n in zip(p, range(-2, 3)))
    for bad in [(0, 0, 0.5, 0.3, 2), (1, 0, 1.5, 0.3, 2), (1, 0, 0.5, 0, 2)]:
        with pytest.raises(InputError):
            rg.perturbed_progression(*bad)


def test_irrationality_examples():
    r = rg.irrationality_ratio(0, 1, 3)
    assert not r.irrational and r.witness == Fraction(1, 2)
    r = rg.irrationality_ratio(0, Fraction(1, 2), Fraction(5, 4))
    assert r.witness == Fraction(2, 3)
    assert rg.irrationality_ratio(0, 1, 1 + SQRT2).irrational
    with pytest.raises(DomainError):
        rg.irrationality_ratio(0, 1, 1)


def test_irrationality_at_fine_resolution_accepts_convergent():
    # 1/sqrt2 has a convergent 470832/665857 within 1e-12, so at
    # (tol=1e-12, q_max=1e6) double-precision input reads as rational
    r = rg.irrationality_ratio(0.0, 1.0, 1 + SQRT2, 1e-12, 10**6)
    assert not r.irrational and r.witness == Fraction(470832, 665857)


def test_lattice_lemma_examples():
    r = rg.lattice_lemma_check([Fraction(1, 2), Fraction(3, 2)], 0)
    assert r.finite and r.a == Fraction(1, 2)
    r = rg.lattice_lemma_check([1], Fraction(1, 3))
    assert r.finite and r.a == 1
    r = rg.lattice_lemma_check([0.5, SQRT2], 0.0, N=250)
    assert not r.finite and r.counts[1] > r.counts[0]
    with pytest.raises(InputError):
        rg.lattice_lemma_check([0], 0)


def test_convergents_of_golden_ratio():
    phi = (1 + 5**0.5) / 2
    cs = list(rg.convergents(phi, 100))
    assert [c.denominator for c in cs] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]


def test_star_discrepancy():
    N = 1000
    # the midpoint set attains the minimum 1/(2N)
    assert rg.star_discrepancy((np.arange(N) + 0.5) / N) == pytest.approx(1 / (2 * N))
    assert rg.star_discrepancy(rg.weyl_points(SQRT2, N)) < 0.01
    assert rg.star_discrepancy(rg.weyl_points(0.5, N)) >= 0.5


def test_parse_scalar():
    assert rg.parse_scalar("7/3") == Fraction(7, 3)
    assert rg.parse_scalar("0.5") == Fraction(1, 2)
    assert isinstance(rg.parse_scalar("1e-3"), Fraction)
    with pytest.raises(InputError):
        rg.parse_scalar("pi")


small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=12)


@settings(max_examples=100, deadline=None)
@given(st.lists(small_fracs, min_size=1, max_size=6, unique=True))
def test_exact_verdict_contains_every_element(lam):
    v = rg.ap_containment_exact(lam)
    if v.a == 0:
        assert len(lam) == 1
    else:
        assert all(((x - v.b) / v.a).denominator == 1 for x in lam)
        assert 0 <= v.b < v.a


@settings(max_examples=100, deadline=None)
@given(
    st.lists(small_fracs, min_size=2, max_size=6, unique=True),
    st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10),
    small_fracs,
)
def test_exact_gap_is_affine_equivariant(lam, s, t):
    a = rg.ap_containment_exact(lam).a
    moved = rg.ap_containment_exact([s * x + t for x in lam]).a
    assert moved == s * a


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.integers(-60, 60), min_size=1, max_size=6, unique=True),
    st.integers(1, 12),
)
def test_exact_and_float_agree_on_rationals(nums, q):
    lam = [Fraction(n, q) for n in nums]
    ex = rg.ap_containment_exact(lam)
    fl = rg.ap_containment_float([float(v) for v in lam], 1e-10, 1000)
    assert fl.contained
    assert fl.a == pytest.approx(float(ex.a), abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.floats(-100, 100), st.floats(0.01, 100))
def test_frac_mod_range(x, y):
    r = rg.frac_mod(x, y)
    assert 0 <= r < y
