"""Explicit non-uniqueness witnesses on arithmetic-progression line families.

For a progression ``aZ + b`` and rotation ``theta`` the exponential pair

    F(z) = c e^{i pi b/a} e^{-xi z} + c' e^{-i pi b/a} e^{xi z},   xi = pi e^{-i theta} / a
    H(z) = conj(c) e^{i pi b/a} e^{-xi z} + conj(c') e^{-i pi b/a} e^{xi z}

has ``|F| = |H|`` on ``e^{i theta}(R + i(aZ + b))``, while ``F`` and ``H`` are
not unimodular multiples of each other unless ``(c, c') = nu (conj c, conj c')``
for some ``|nu| = 1``.

The time-domain versions are sums of two coherent states whose Bargmann
transforms are exactly ``F`` and ``H``; since the Gabor transform equals the
Bargmann transform times a weight of modulus ``exp(-pi |z|^2 / 2)`` the Gabor
magnitudes agree on the image of the line family under ``z -> (Re z, -Im z)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .analytic import ExpSum, equivalence_check, expsum_to_json
from .analytic import LOG_MAX
from .errors import InputError, MagnitudeOutOfRange
from .transforms import GaussianSum, coherent_state_exponential, gabor, gaussian_sum_to_json

DEFAULT_C = 1.0 + 0j
DEFAULT_C_PRIME = 1j


class DegenerateProgressionError(InputError):
    """Gap ``a = 0``: use :func:`singleton_progression` to pick ``v``."""


def singleton_progression(b: float, v: float = 1.0) -> tuple[float, float]:
    """Nonzero progression ``(gap, offset)`` containing the single point ``b``.

    ``{b}`` lies in ``|b| Z`` when ``b != 0``, otherwise in ``v Z`` for the
    configured ``v != 0``.
    """
    if b != 0:
        return abs(b), 0.0
    if v == 0:
        raise InputError("fallback gap v must be nonzero")
    return abs(v), 0.0


def unimodular_solution_exists(c: complex, c_prime: complex, tol: float = 1e-12) -> bool:
    """Whether ``(c, c') = nu (conj c, conj c')`` has a solution with ``|nu| = 1``."""
    c, c_prime = complex(c), complex(c_prime)
    if abs(c) > tol:
        nu = c / np.conj(c)
        return abs(c_prime - nu * np.conj(c_prime)) <= tol * max(1.0, abs(c_prime))
    return True


@dataclass(frozen=True)
class CounterexamplePair:
    F: ExpSum
    H: ExpSum
    a: float
    b: float
    theta: float
    c: complex
    c_prime: complex
    non_equivalent: bool

    def line_points(self, xs, ns) -> np.ndarray:
        """Points ``e^{i theta}(x + i(a n + b))`` as an ``(len(ns), len(xs))`` array."""
        xs = np.asarray(xs, dtype=float)
        heights = self.a * np.asarray(ns, dtype=float) + self.b
        return np.exp(1j * self.theta) * (xs[None, :] + 1j * heights[:, None])


def expsum_pair(
    a: float,
    b: float = 0.0,
    theta: float = 0.0,
    c: complex = DEFAULT_C,
    c_prime: complex = DEFAULT_C_PRIME,
) -> CounterexamplePair:
    if a == 0:
        raise DegenerateProgressionError(
            "progression gap a = 0: replace (a, b) by singleton_progression(b, v)"
        )
    if c == 0 and c_prime == 0:
        raise InputError("(c, c') must not both vanish")
    c, c_prime = complex(c), complex(c_prime)
    xi = np.pi * np.exp(-1j * theta) / a
    phase = np.exp(1j * np.pi * b / a)
    F = ExpSum(((c * phase, -xi), (c_prime / phase, xi)))
    H = ExpSum(((np.conj(c) * phase, -xi), (np.conj(c_prime) / phase, xi)))
    return CounterexamplePair(
        F, H, float(a), float(b), float(theta), c, c_prime,
        not unimodular_solution_exists(c, c_prime),
    )


def modulus_gap_profile(
    P: CounterexamplePair,
    y_values: Sequence[float],
    x_range: tuple[float, float, int] = (-2.0, 2.0, 81),
) -> list[tuple[float, float]]:
    """Largest ``||F| - |H||`` along each line ``e^{i theta}(R + i y)``."""
    lo, hi, count = x_range
    if count < 2:
        raise InputError("x_range count must be at least 2")
    xs = np.linspace(lo, hi, int(count))
    rot = np.exp(1j * P.theta)
    out = []
    for y in y_values:
        z = rot * (xs + 1j * y)
        out.append((float(y), float(np.max(np.abs(np.abs(P.F(z)) - np.abs(P.H(z)))))))
    return out


def _coherent_signal(E: ExpSum) -> GaussianSum:
    terms = []
    for k, (coef, xi) in enumerate(E.terms):
        p = xi / np.pi
        # |unit| = 2^{-1/2} exp(-pi |p|^2 / 2)
        log_mag = np.log(abs(coef)) + 0.5 * np.pi * abs(p) ** 2 + 0.5 * np.log(2)
        if log_mag > LOG_MAX:
            raise MagnitudeOutOfRange(k, float(log_mag))
        unit, _ = coherent_state_exponential(1.0, p.real, p.imag)
        terms.append((coef / unit, p.real, p.imag))
    return GaussianSum(tuple(terms))


@dataclass(frozen=True)
class SignalPair:
    """Time-domain pair with ``B f = F`` and ``B h = H``.

    The line family is kept in time-frequency coordinates: the line
    ``e^{i theta}(R + i lam)`` is sampled at ``(Re z, -Im z)``.
    """

    f: GaussianSum
    h: GaussianSum
    theta: float
    lambdas: tuple[float, ...]
    pair: CounterexamplePair

    def tf_points(self, xs, lambdas=None) -> tuple[np.ndarray, np.ndarray]:
        lam = np.asarray(self.lambdas if lambdas is None else lambdas, dtype=float)
        z = np.exp(1j * self.theta) * (np.asarray(xs, dtype=float)[None, :] + 1j * lam[:, None])
        return z.real, -z.imag

    def gabor_gap(self, x, omega) -> np.ndarray:
        return np.abs(np.abs(gabor(self.f, x, omega)) - np.abs(gabor(self.h, x, omega)))


def signal_pair(
    a: float,
    b: float = 0.0,
    theta: float = 0.0,
    c: complex = DEFAULT_C,
    c_prime: complex = DEFAULT_C_PRIME,
    ns: Sequence[int] = range(-3, 4),
    lambdas: Sequence[float] | None = None,
) -> SignalPair:
    """Coherent-state pair for ``expsum_pair(a, b, theta, c, c')``.

    The stored line heights are ``lambdas`` when given, else ``a n + b`` for ``n`` in ``ns``.
    """
    P = expsum_pair(a, b, theta, c, c_prime)
    if lambdas is None:
        lambdas = [a * n + b for n in ns]
    lambdas = tuple(float(v) for v in lambdas)
    return SignalPair(_coherent_signal(P.F), _coherent_signal(P.H), P.theta, lambdas, P)


def pauli_apply(lam: float, f: GaussianSum, t_grid) -> np.ndarray:
    """``T_lam f (t) = Fourier(phi(. - lam) f)(t)``, which is ``G f(lam, t)``."""
    return np.asarray(gabor(f, lam, np.asarray(t_grid, dtype=float)), dtype=complex)


@dataclass(frozen=True)
class PauliReport:
    matched: tuple[float, ...]
    first_mismatch: tuple[float, float] | None
    max_gaps: dict


def pauli_distinguishability(
    lambdas: Sequence[float],
    f: GaussianSum,
    h: GaussianSum,
    t_grid,
    tol: float = 1e-8,
) -> PauliReport:
    if len(lambdas) == 0:
        raise InputError("need at least one operator index")
    t = np.asarray(t_grid, dtype=float)
    matched, mismatch, gaps = [], None, {}
    for lam in lambdas:
        gap = np.abs(np.abs(pauli_apply(lam, f, t)) - np.abs(pauli_apply(lam, h, t)))
        gaps[float(lam)] = float(gap.max())
        if gap.max() <= tol:
            matched.append(float(lam))
        elif mismatch is None:
            mismatch = (float(lam), float(t[int(np.argmax(gap > tol))]))
    return PauliReport(tuple(matched), mismatch, gaps)


# -- reports ----------------------------------------------------------------


def pair_bundle(P: CounterexamplePair, xs, ns, off_grid=None) -> dict:
    """JSON-ready record of a pair with its verification grid and gaps."""
    z = P.line_points(xs, ns)
    gap = float(np.max(np.abs(np.abs(P.F(z)) - np.abs(P.H(z)))))
    if off_grid is None:
        off_grid = [0.0, 0.3 + 0.1j, 1 - 0.2j, -0.4 + 0.7j, 0.25j]
    eq = equivalence_check(P.F, P.H, np.asarray(off_grid), 1e-6)
    return {
        "progression": {"a": P.a, "b": P.b},
        "theta": P.theta,
        "coefficients": {"c": [P.c.real, P.c.imag], "c_prime": [P.c_prime.real, P.c_prime.imag]},
        "F": expsum_to_json(P.F),
        "H": expsum_to_json(P.H),
        "grid": {"x": [float(v) for v in np.asarray(xs)], "n": [int(n) for n in ns]},
        "max_gap": gap,
        "equivalent_on_off_grid": eq.equivalent,
        "non_equivalent_by_construction": P.non_equivalent,
    }


def signal_bundle(S: SignalPair, xs) -> dict:
    X, W = S.tf_points(xs)
    gap = float(np.max(S.gabor_gap(X, W)))
    return {
        "theta": S.theta,
        "lambdas": list(S.lambdas),
        "f": gaussian_sum_to_json(S.f),
        "h": gaussian_sum_to_json(S.h),
        "grid": {"x": [float(v) for v in np.asarray(xs)]},
        "max_gap": gap,
    }
