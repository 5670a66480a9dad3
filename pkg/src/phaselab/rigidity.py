"""Arithmetic-progression containment, residues modulo a real, equidistribution.

Rational inputs are handled exactly with :class:`fractions.Fraction`; floating
inputs go through continued-fraction rationality tests with an explicit
``(tol, q_max)`` resolution. A floating verdict is only meaningful relative to
that resolution: every finite set of doubles is rational, so "not contained"
means "no progression with at most ``q_max`` steps across the span fits within
``tol``".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import DomainError, InputError

Scalar = Union[Fraction, int, float]

DEFAULT_TOL = 1e-9
DEFAULT_Q_MAX = 1000


def is_rational(v) -> bool:
    return isinstance(v, Rational)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"7/3"``, ``"0.5"`` or ``"2"`` exactly; other numerals as float."""
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return float(text)
    except ValueError:
        raise InputError(f"cannot parse number {text!r}") from None


def frac_mod(x: Scalar, y: Scalar) -> Scalar:
    """``x - n|y|`` with ``n = floor(x / |y|)``, lying in ``[0, |y|)``."""
    if y == 0:
        raise InputError("frac_mod needs y != 0")
    m = abs(y)
    r = x - math.floor(x / m) * m
    if r < 0:
        r += m
    if r >= m:
        r -= m
    return r


def _dist_to_lattice(v: float, a: float) -> float:
    return abs(v - a * round(v / a))


# -- rational helpers -------------------------------------------------------


def rational_gcd(p: Fraction, q: Fraction) -> Fraction:
    p, q = Fraction(p), Fraction(q)
    num = math.gcd(p.numerator * q.denominator, q.numerator * p.denominator)
    return Fraction(num, p.denominator * q.denominator)


def convergents(x: Scalar, q_max: int) -> Iterator[Fraction]:
    """Continued-fraction convergents of ``x`` with denominator <= ``q_max``.

    The expansion runs on the exact binary value of ``x``.
    """
    fx = Fraction(x)
    num, den = fx.numerator, fx.denominator
    p0, q0, p1, q1 = 0, 1, 1, 0
    while den:
        a, r = divmod(num, den)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > q_max:
            return
        yield Fraction(p1, q1)
        num, den = den, r


def rational_approximation(x: float, tol: float, q_max: int) -> Fraction | None:
    """Smallest-denominator convergent within ``tol`` of ``x``, if any."""
    for c in convergents(x, q_max):
        if abs(float(x) - c) <= tol:
            return c
    return None


# -- verdict types ----------------------------------------------------------


@dataclass(frozen=True)
class RatioTest:
    value: float
    witness: Fraction | None

    @property
    def accepted(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class APVerdict:
    """Containment of a finite set in ``aZ + b``.

    ``a`` is the coarsest gap found (0 for a singleton) and ``b`` the offset,
    normalised into ``[0, a)`` when ``a > 0``. Both are ``None`` when the set
    is not contained.
    """

    contained: bool
    a: Scalar | None
    b: Scalar | None
    max_residual: float = 0.0
    mode: str = "exact"
    ratios: tuple[RatioTest, ...] = field(default=(), repr=False)
    tol: float | None = None
    q_max: int | None = None

    def to_json(self) -> dict:
        out = {
            "contained": self.contained,
            "a": None if self.a is None else _num(self.a),
            "b": None if self.b is None else _num(self.b),
            "max_residual": self.max_residual if math.isfinite(self.max_residual) else None,
            "mode": self.mode,
        }
        if self.mode == "exact" and self.a is not None:
            out["a_exact"] = str(self.a)
            out["b_exact"] = str(self.b)
        if self.mode == "float":
            out["tol"] = self.tol
            out["q_max"] = self.q_max
            out["ratios"] = [
                {"value": r.value, "witness": None if r.witness is None else str(r.witness)}
                for r in self.ratios
            ]
        return out


def _num(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return float(v)


def _check_distinct(values):
    if len(set(values)) != len(values):
        raise InputError("progression input contains duplicate elements")


def ap_containment_exact(lam: Sequence[Scalar]) -> APVerdict:
    """Coarsest progression containing a finite set of rationals."""
    if not lam:
        raise InputError("empty set")
    vals = [Fraction(v) for v in lam]
    _check_distinct(vals)
    l0 = vals[0]
    a = Fraction(0)
    for v in vals[1:]:
        a = rational_gcd(a, v - l0) if a else abs(v - l0)
    b = frac_mod(l0, a) if a else l0
    return APVerdict(True, a, b, 0.0, "exact")


def ap_containment_float(
    lam: Sequence[float], tol: float = DEFAULT_TOL, q_max: int = DEFAULT_Q_MAX
) -> APVerdict:
    """Progression containment for floating data at resolution ``(tol, q_max)``.

    Differences to the first element are divided by the largest one and each
    ratio must have a convergent ``p/q`` with ``q <= q_max`` within ``tol``.
    """
    if not lam:
        raise InputError("empty set")
    if tol <= 0 or q_max < 2:
        raise InputError("need tol > 0 and q_max >= 2")
    vals = [float(v) for v in lam]
    _check_distinct(vals)
    l0 = vals[0]
    if len(vals) == 1:
        return APVerdict(True, 0.0, l0, 0.0, "float", (), tol, q_max)
    diffs = [v - l0 for v in vals[1:]]
    d_star = max(diffs, key=abs)
    tests = tuple(
        RatioTest(d / d_star, rational_approximation(d / d_star, tol, q_max)) for d in diffs
    )
    if not all(t.accepted for t in tests):
        return APVerdict(False, None, None, math.inf, "float", tests, tol, q_max)
    lcm = 1
    for t in tests:
        lcm = math.lcm(lcm, t.witness.denominator)
    a = abs(d_star) / lcm
    b = frac_mod(l0, a)
    residual = max(_dist_to_lattice(v - b, a) for v in vals)
    return APVerdict(residual <= tol * abs(d_star), a, b, residual, "float", tests, tol, q_max)


def ap_containment(lam: Sequence[Scalar], tol: float = DEFAULT_TOL, q_max: int = DEFAULT_Q_MAX) -> APVerdict:
    """Exact mode when every element is rational, floating mode otherwise."""
    if lam and all(is_rational(v) for v in lam):
        return ap_containment_exact(lam)
    return ap_containment_float(lam, tol, q_max)


def perturbed_progression(a: float, b: float, decay: float, amplitude: float, N: int) -> list[float]:
    """``{a n + b + amplitude * decay^|n| : |n| <= N}``."""
    if a == 0:
        raise InputError("progression gap must be nonzero")
    if amplitude == 0:
        raise InputError("perturbation amplitude must be nonzero")
    if not 0 < decay < 1:
        raise InputError("decay must lie in (0, 1)")
    return [a * n + b + amplitude * decay ** abs(n) for n in range(-N, N + 1)]


# -- residues ---------------------------------------------------------------


@dataclass(frozen=True)
class ResidueSet:
    modulus: Scalar
    residues: tuple
    n_range: int


def residue_set(x: Scalar, d: Scalar, d_prime: Scalar, N: int, scale: int = 1) -> ResidueSet:
    """Residues ``{x + scale d n}`` modulo ``scale |d'|`` for ``|n| <= N``."""
    if d_prime == 0:
        raise InputError("d' must be nonzero")
    if N < 1:
        raise InputError("N must be at least 1")
    if scale not in (1, 2):
        raise InputError("scale must be 1 or 2")
    mod = scale * abs(d_prime)
    res = tuple(frac_mod(x + scale * d * n, mod) for n in range(-N, N + 1))
    return ResidueSet(mod, res, N)


def distinct_count(S: ResidueSet, cluster_tol: float = 0.0) -> int:
    """Number of residue clusters on the circle of circumference ``S.modulus``."""
    if cluster_tol < 0:
        raise InputError("cluster_tol must be nonnegative")
    vals = sorted(S.residues)
    if not vals:
        return 0
    count = 1 + sum(1 for u, v in zip(vals, vals[1:]) if v - u > cluster_tol)
    if count > 1 and vals[0] + S.modulus - vals[-1] <= cluster_tol:
        count -= 1
    return count


@dataclass(frozen=True)
class LatticeResult:
    finite: bool
    a: Scalar | None
    counts: tuple[int, int]
    d_prime: Scalar


def _union_count(D, x, d_prime, N, cluster_tol):
    residues = []
    for d in D:
        residues.extend(residue_set(x, d, d_prime, N).residues)
    return distinct_count(ResidueSet(abs(d_prime), tuple(residues), N), cluster_tol)


def lattice_lemma_check(
    D: Sequence[Scalar],
    x: Scalar = 0,
    N: int = 100,
    cluster_tol: float = 1e-9,
    q_max: int = 10**6,
) -> LatticeResult:
    """Finite-residue test and the gap ``a = |d'| / lcm(q_d)`` with ``D`` in ``aZ``.

    ``d'`` is the first nonzero element of ``D``. Finiteness is declared when
    the union of residue sets has the same size for ``N`` and ``2N``.
    """
    d_prime = next((d for d in D if d != 0), None)
    if d_prime is None:
        raise InputError("D must contain a nonzero element")
    exact = all(is_rational(d) for d in D) and is_rational(x)
    if exact:
        D = [Fraction(d) for d in D]
        x, d_prime = Fraction(x), Fraction(d_prime)
        tol = 0.0
    else:
        D = [float(d) for d in D]
        x, d_prime = float(x), float(d_prime)
        tol = cluster_tol * abs(d_prime)
    counts = (_union_count(D, x, d_prime, N, tol), _union_count(D, x, d_prime, 2 * N, tol))
    if counts[0] != counts[1]:
        return LatticeResult(False, None, counts, d_prime)
    lcm = 1
    for d in D:
        r = d / abs(d_prime)
        if exact:
            q = r.denominator
        else:
            w = rational_approximation(r, cluster_tol, q_max)
            if w is None:
                return LatticeResult(False, None, counts, d_prime)
            q = w.denominator
        lcm = math.lcm(lcm, q)
    a = abs(d_prime) / lcm
    if exact:
        assert all((d / a).denominator == 1 for d in D)
    return LatticeResult(True, a, counts, d_prime)


# -- irrationality ----------------------------------------------------------


@dataclass(frozen=True)
class IrrationalityResult:
    irrational: bool
    ratio: Scalar
    witness: Fraction | None


def irrationality_ratio(
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
    tol: float = DEFAULT_TOL,
    q_max: int = DEFAULT_Q_MAX,
) -> IrrationalityResult:
    """Rationality of ``(beta - alpha) / (gamma - beta)`` for ``alpha < beta < gamma``."""
    if gamma == beta:
        raise DomainError("gamma == beta makes the ratio undefined")
    if not alpha < beta < gamma:
        raise InputError("need alpha < beta < gamma")
    if all(is_rational(v) for v in (alpha, beta, gamma)):
        r = (Fraction(beta) - Fraction(alpha)) / (Fraction(gamma) - Fraction(beta))
        return IrrationalityResult(False, r, r)
    r = (float(beta) - float(alpha)) / (float(gamma) - float(beta))
    w = rational_approximation(r, tol, q_max)
    return IrrationalityResult(w is None, r, w)


# -- equidistribution -------------------------------------------------------


def weyl_points(alpha: float, N: int) -> np.ndarray:
    """Fractional parts of ``n alpha`` for ``n = 1..N``."""
    n = np.arange(1, N + 1, dtype=float)
    return np.mod(n * alpha, 1.0)


def star_discrepancy(points) -> float:
    """Star discrepancy of a finite point set in ``[0, 1)``."""
    x = np.sort(np.asarray(points, dtype=float))
    N = x.size
    if N == 0:
        raise InputError("empty point set")
    i = np.arange(1, N + 1)
    return float(1.0 / (2 * N) + np.max(np.abs(x - (2 * i - 1) / (2 * N))))
