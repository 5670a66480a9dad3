import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from phaselab.errors import DomainError, InputError, TruncationCoverageError
from phaselab.transforms import (
    SQRT_HALF,
    GaussianSum,
    SampledSignal,
    bargmann,
    convolve_halfline,
    fourier,
    gabor,
    gabor_quadrature,
    gaussian_sum_from_json,
    gaussian_sum_to_json,
    hardy_swap_check,
    laplace,
    phi,
    relation_check,
    signal_from_csv,
    signal_to_csv,
)

PHI = GaussianSum.gaussian()
TWO_TERM = GaussianSum(((1 + 0.5j, 0.3, -0.2), (-0.4j, -1.0, 0.7)))


def cquad(fn, lo, hi):
    re = quad(lambda t: fn(t).real, lo, hi, epsabs=1e-13, limit=200)[0]
    im = quad(lambda t: fn(t).imag, lo, hi, epsabs=1e-13, limit=200)[0]
    return re + 1j * im


def gabor_by_quad(f, x, w):
    return cquad(lambda t: f(t) * phi(t - x) * np.exp(-2j * np.pi * w * t), x - 8, x + 8)


def test_gabor_examples():
    assert gabor(PHI, 0, 0) == pytest.approx(SQRT_HALF, abs=1e-12)
    assert abs(gabor(PHI, 1, 0)) == pytest.approx(SQRT_HALF * np.exp(-np.pi / 2), abs=1e-12)
    assert gabor(GaussianSum(), 0.3, -1.2) == 0


def test_gabor_modulus_closed_form():
    x, w = np.meshgrid(np.linspace(-1, 1, 5), np.linspace(-1, 1, 5))
    expect = SQRT_HALF * np.exp(-np.pi * (x**2 + w**2) / 2)
    assert np.allclose(np.abs(gabor(PHI, x, w)), expect, atol=1e-14)


@pytest.mark.parametrize("x, w", [(0.0, 0.0), (0.4, -1.1), (-1.3, 0.6), (2.0, 2.0)])
def test_gabor_against_quadrature(x, w):
    assert gabor(TWO_TERM, x, w) == pytest.approx(gabor_by_quad(TWO_TERM, x, w), abs=1e-10)


def test_gabor_quadrature_examples():
    s = PHI.sample(-8, 8, 1 / 64)
    assert abs(gabor_quadrature(s, 0, 0) - SQRT_HALF) < 1e-8
    zero = SampledSignal(-8, 1 / 64, np.zeros(1025))
    assert gabor_quadrature(zero, 0.5, 0.5) == 0
    with pytest.raises(TruncationCoverageError) as err:
        gabor_quadrature(PHI.sample(-2, 2, 1 / 64), 0, 0)
    assert err.value.required == (-6, 6)


def test_gabor_quadrature_matches_closed_form():
    s = TWO_TERM.sample(-10, 10, 1 / 64)
    for x, w in [(0.2, 0.3), (-0.8, -1.5)]:
        assert abs(gabor_quadrature(s, x, w) - gabor(TWO_TERM, x, w)) < 1e-10


def test_bargmann_examples():
    assert bargmann(PHI, 1 + 1j) == pytest.approx(SQRT_HALF, abs=1e-12)
    assert bargmann(GaussianSum(), 2j) == 0


def test_bargmann_against_quadrature():
    z = 0.3 - 0.4j
    direct = cquad(lambda t: TWO_TERM(t) * np.exp(2 * np.pi * t * z - np.pi * t * t - np.pi * z * z / 2), -10, 10)
    assert bargmann(TWO_TERM, z) == pytest.approx(direct, abs=1e-10)


def test_bargmann_coherent_state_is_exponential():
    mu, nu = 0.7, -0.3
    g = GaussianSum.gaussian(mu, nu)
    z = np.array([0, 0.5 + 0.2j, -1 + 1j, 0.3 - 0.8j, 1.2j])
    # fit c e^{xi z} with xi = pi (mu + i nu) by least squares on log-free ratios
    xi = np.pi * (mu + 1j * nu)
    vals = bargmann(g, z)
    c = vals[0]
    assert np.max(np.abs(vals - c * np.exp(xi * z))) < 1e-9


def test_fourier_examples():
    assert fourier(PHI).terms == PHI.terms
    shifted = fourier(GaussianSum.gaussian(1.0))
    xi = np.linspace(-1, 1, 5)
    assert np.allclose(shifted(xi), np.exp(-2j * np.pi * xi) * phi(xi), atol=1e-14)
    for s in xi:
        direct = cquad(lambda t: phi(t - 1) * np.exp(-2j * np.pi * s * t), -8, 10)
        assert shifted(s) == pytest.approx(direct, abs=1e-10)


def test_fourier_linear():
    A, B = GaussianSum.gaussian(0.2, 0.1), GaussianSum.gaussian(-0.5, 1.0)
    t = np.linspace(-2, 2, 7)
    assert np.allclose(fourier(A + 2j * B)(t), fourier(A)(t) + 2j * fourier(B)(t), atol=1e-14)


def test_hardy_swap_examples():
    grid = [(x, w) for x in (-1, 0, 1) for w in (-1, 0, 1)]
    assert hardy_swap_check(PHI, grid)
    rng = np.random.default_rng(3)
    assert hardy_swap_check(TWO_TERM, rng.uniform(-2, 2, (20, 2)), 1e-9)
    assert hardy_swap_check(GaussianSum(), grid)


def test_laplace_examples():
    e = SampledSignal.from_function(lambda t: np.exp(-t), 0, 40, 1 / 128)
    assert abs(laplace(e, 1) - 0.5) < 1e-6
    # the indicator is sampled on its support [0, 1]
    ind = SampledSignal.from_function(np.ones_like, 0, 1, 1 / 128)
    assert abs(laplace(ind, 2) - (1 - np.exp(-2)) / 2) < 1e-6
    assert laplace(SampledSignal(0, 0.1, np.zeros(10)), 1 + 1j) == 0
    with pytest.raises(DomainError):
        laplace(e, -0.1)


def test_laplace_gaussian_sum_against_quadrature():
    f = GaussianSum.gaussian(2.0, 0.3)
    s = 0.5 + 1j
    direct = cquad(lambda t: f(t) * np.exp(-s * t), 0, 12)
    assert laplace(f, s) == pytest.approx(direct, abs=1e-8)


def test_convolution_examples():
    ind = SampledSignal.from_function(lambda t: (t <= 1).astype(float), 0, 2, 1 / 256)
    c = convolve_halfline(ind, ind)
    assert abs(c.values[256] - 1) < 1e-2
    z = SampledSignal(0, 1 / 256, np.zeros(513))
    assert np.all(convolve_halfline(ind, z).values == 0)
    e = SampledSignal.from_function(lambda t: np.exp(-t), 0, 30, 1 / 256)
    s = 1 + 0.5j
    assert abs(laplace(convolve_halfline(e, e), s) - laplace(e, s) ** 2) < 1e-5
    assert abs(laplace(e, s) ** 2 - 1 / (s + 1) ** 2) < 1e-5


def test_convolution_grid_mismatch():
    a = SampledSignal(0, 0.1, np.ones(5))
    with pytest.raises(InputError):
        convolve_halfline(a, SampledSignal(0, 0.2, np.ones(5)))


def test_relation_examples():
    r = relation_check(GaussianSum.gaussian(3.0), -0.5, 0.25, tol=1e-6)
    assert r.passed
    z = relation_check(GaussianSum(), -0.5, 0.25)
    assert z.passed and z.lhs == 0 and z.mid == 0 and z.rhs == 0
    r0 = relation_check(PHI, 0, 0)
    assert abs(r0.lhs - r0.mid) < 1e-12
    # phi has half its mass on the negative axis; the budget covers it
    assert abs(r0.lhs - r0.rhs) <= r0.truncated_mass + 1e-6


def test_relation_positive_x_drops_laplace_leg():
    r = relation_check(GaussianSum.gaussian(2.0), 0.5, 0.1)
    assert r.passed and r.rhs is None and "x > 0" in r.note


def test_relation_rejects_negative_shift():
    with pytest.raises(InputError):
        relation_check(GaussianSum.gaussian(-1.0), -0.5, 0)


def test_serialisation_roundtrip():
    assert gaussian_sum_from_json(gaussian_sum_to_json(TWO_TERM)) == TWO_TERM
    s = TWO_TERM.sample(-1, 1, 0.25)
    back = signal_from_csv(signal_to_csv(s))
    assert back.start == s.start and back.step == s.step and np.array_equal(back.values, s.values)
    with pytest.raises(InputError):
        signal_from_csv("a,b\n1,2\n")


def test_sampled_signal_is_read_only():
    s = PHI.sample(0, 1, 0.5)
    with pytest.raises(ValueError):
        s.values[0] = 3


terms = st.lists(
    st.tuples(
        st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
        st.floats(-2, 2),
        st.floats(-2, 2),
    ),
    min_size=1,
    max_size=3,
)
coords = st.floats(-2, 2)


@settings(max_examples=40, deadline=None)
@given(terms, coords, coords)
def test_hardy_swap_property(ts, x, w):
    f = GaussianSum(tuple(ts))
    assert hardy_swap_check(f, [(x, w)], 1e-9)


@settings(max_examples=40, deadline=None)
@given(terms, coords, coords)
def test_gabor_bargmann_identity_property(ts, x, w):
    f = GaussianSum(tuple(ts))
    z = complex(x, w)
    lhs = gabor(f, x, -w)
    mid = np.exp(1j * np.pi * x * w - np.pi * abs(z) ** 2 / 2) * bargmann(f, z)
    assert abs(lhs - mid) <= 1e-12 * (1 + sum(abs(c) for c, _, _ in f.terms))


@settings(max_examples=30, deadline=None)
@given(terms, st.floats(0, 2 * np.pi), coords, coords)
def test_gabor_magnitude_phase_invariant(ts, phase, x, w):
    f = GaussianSum(tuple(ts))
    g = f * np.exp(1j * phase)
    assert abs(abs(gabor(f, x, w)) - abs(gabor(g, x, w))) < 1e-12
