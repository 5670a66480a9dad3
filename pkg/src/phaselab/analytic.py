"""Finite exponential sums, equivalence up to a unimodular factor, and zero counting.

An :class:`ExpSum` represents the entire function

    F(z) = sum_k c_k exp(xi_k z)

with complex coefficients and pairwise distinct complex frequencies. Zero
counting uses the argument principle with the exact derivative
``sum_k c_k xi_k exp(xi_k z)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    BoundaryProximityError,
    InputError,
    MagnitudeOutOfRange,
    ZeroOnContourError,
)

# exp(709.78) is the largest finite double
LOG_MAX = 709.0


@dataclass(frozen=True)
class ExpSum:
    """Finite linear combination of exponentials ``c * exp(xi * z)``.

    Terms with equal frequencies are merged on construction and exactly-zero
    coefficients are dropped, so the empty sum is the zero function.
    """

    terms: tuple[tuple[complex, complex], ...] = ()

    def __post_init__(self):
        merged: dict[complex, complex] = {}
        for c, xi in self.terms:
            xi = complex(xi)
            merged[xi] = merged.get(xi, 0j) + complex(c)
        object.__setattr__(
            self, "terms", tuple((c, xi) for xi, c in merged.items() if c != 0)
        )

    @classmethod
    def from_arrays(cls, coefficients, frequencies) -> "ExpSum":
        return cls(tuple(zip(np.ravel(coefficients), np.ravel(frequencies))))

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([c for c, _ in self.terms], dtype=complex)

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([xi for _, xi in self.terms], dtype=complex)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __call__(self, z):
        return eval_expsum(self, z)

    def derivative(self) -> "ExpSum":
        return ExpSum(tuple((c * xi, xi) for c, xi in self.terms))

    def translate(self, w: complex) -> "ExpSum":
        """The function ``z -> F(z - w)``."""
        return ExpSum(tuple((c * np.exp(-xi * w), xi) for c, xi in self.terms))

    def conjugate_coefficients(self) -> "ExpSum":
        return ExpSum(tuple((np.conj(c), xi) for c, xi in self.terms))

    def __add__(self, other: "ExpSum") -> "ExpSum":
        if not isinstance(other, ExpSum):
            return NotImplemented
        return ExpSum(self.terms + other.terms)

    def __mul__(self, alpha) -> "ExpSum":
        alpha = complex(alpha)
        return ExpSum(tuple((alpha * c, xi) for c, xi in self.terms))

    __rmul__ = __mul__

    def __neg__(self) -> "ExpSum":
        return self * -1

    def __sub__(self, other: "ExpSum") -> "ExpSum":
        return self + (-other)

    def _scaled(self, z):
        """Return ``(S, m, terms)`` with ``F(z) = exp(m) * S``, ``m`` the largest
        real exponent at each point and ``terms`` the shifted summands."""
        z = np.asarray(z, dtype=complex)
        if self.is_zero():
            return np.zeros(z.shape, dtype=complex), np.zeros(z.shape), np.zeros(z.shape + (0,))
        exponents = np.multiply.outer(z, self.frequencies)
        m = exponents.real.max(axis=-1)
        terms = self.coefficients * np.exp(exponents - m[..., None])
        return terms.sum(axis=-1), m, terms


def eval_expsum(F: ExpSum, z):
    """Evaluate ``F`` at a scalar or array ``z``.

    Exponentials are evaluated with a shared shift by the largest real
    exponent per point, so only the final rescaling can overflow.
    """
    z_arr = np.asarray(z, dtype=complex)
    if F.is_zero():
        out = np.zeros(z_arr.shape, dtype=complex)
    else:
        s, m, _ = F._scaled(z_arr)
        if np.any(m > LOG_MAX):
            flat = np.argmax(m)
            zz = z_arr.ravel()[flat]
            k = int(np.argmax((zz * F.frequencies).real))
            raise MagnitudeOutOfRange(k, float(np.ravel(m)[flat]))
        out = np.exp(m) * s
    if np.ndim(z) == 0:
        return complex(out)
    return out


@dataclass(frozen=True)
class Rectangle:
    lower_left: complex
    upper_right: complex

    def __post_init__(self):
        ll, ur = complex(self.lower_left), complex(self.upper_right)
        if not (ur.real > ll.real and ur.imag > ll.imag):
            raise InputError(f"degenerate rectangle {ll} .. {ur}")
        object.__setattr__(self, "lower_left", ll)
        object.__setattr__(self, "upper_right", ur)

    @classmethod
    def from_bounds(cls, x0, x1, y0, y1) -> "Rectangle":
        return cls(complex(x0, y0), complex(x1, y1))

    def shifted(self, w: complex) -> "Rectangle":
        return Rectangle(self.lower_left + w, self.upper_right + w)

    def corners(self) -> list[complex]:
        ll, ur = self.lower_left, self.upper_right
        return [ll, complex(ur.real, ll.imag), ur, complex(ll.real, ur.imag)]


@dataclass(frozen=True)
class ZeroCount:
    count: int
    residual: float
    segments_per_edge: int


def _winding(F: ExpSum, dF: ExpSum, R: Rectangle, n: int) -> complex:
    corners = R.corners()
    total = 0j
    for a, b in zip(corners, corners[1:] + corners[:1]):
        z = a + (b - a) * np.linspace(0.0, 1.0, n + 1)
        den, m_den, den_terms = F._scaled(z)
        noise = 1e-13 * np.abs(den_terms).sum(axis=-1)
        if np.any(np.abs(den) <= noise):
            j = int(np.argmax(np.abs(den) <= noise))
            raise ZeroOnContourError(f"F vanishes numerically at contour node {z[j]}")
        if dF.is_zero():
            continue
        num, m_num, _ = dF._scaled(z)
        g = num / den * np.exp(m_num - m_den)
        h = (b - a) / n
        total += h * (g.sum() - 0.5 * (g[0] + g[-1]))
    return total / (2j * np.pi)


def zero_count(
    F: ExpSum,
    R: Rectangle,
    segments_per_edge: int = 64,
    max_refinements: int = 10,
) -> ZeroCount:
    """Number of zeros of ``F`` inside ``R`` counted with multiplicity.

    The contour integral of F'/F is approximated by the composite trapezoid
    rule along each edge; the resolution is doubled until the raw value lies
    within 0.1 of an integer.
    """
    if F.is_zero():
        raise InputError("zero counting is undefined for the zero function")
    if segments_per_edge < 16:
        raise InputError("segments_per_edge must be at least 16")
    dF = F.derivative()
    n = segments_per_edge
    for _ in range(max_refinements + 1):
        raw = _winding(F, dF, R, n)
        k = int(round(raw.real))
        residual = abs(raw - k)
        if residual < 0.1:
            return ZeroCount(k, float(residual), n)
        n *= 2
    raise BoundaryProximityError(
        f"winding residual {residual:.3g} did not settle below 0.1 "
        f"(up to {n // 2} segments per edge); perturb the rectangle"
    )


def zero_diff_periodicity_check(
    F: ExpSum,
    H: ExpSum,
    x: float,
    y: float,
    R: Rectangle,
    segments_per_edge: int = 64,
) -> bool:
    """Compare zero-count differences on ``R`` and on ``R + 2i(x - y)``.

    The caller is responsible for ``|F| = |H|`` on the lines Im z = x and
    Im z = y; without it the comparison carries no meaning.
    """
    shifted = R.shifted(2j * (x - y))
    here = zero_count(F, R, segments_per_edge).count - zero_count(H, R, segments_per_edge).count
    there = (
        zero_count(F, shifted, segments_per_edge).count
        - zero_count(H, shifted, segments_per_edge).count
    )
    return here == there


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    tau: complex | None


def equivalence_check(
    F: Callable,
    H: Callable,
    grid: Sequence[complex] | np.ndarray,
    tol: float = 1e-8,
) -> Equivalence:
    """Grid test of ``F = tau * H`` for some unimodular ``tau``.

    ``tau`` is estimated at the grid point where ``|H|`` is largest; the
    estimate is exact whenever the relation actually holds.
    """
    grid = np.asarray(grid)
    if grid.size == 0:
        raise InputError("equivalence_check needs a nonempty grid")
    if tol <= 0:
        raise InputError("tol must be positive")
    fv = np.asarray(F(grid), dtype=complex).ravel()
    hv = np.asarray(H(grid), dtype=complex).ravel()
    h_max = np.abs(hv).max()
    f_max = np.abs(fv).max()
    if h_max < tol:
        return Equivalence(bool(f_max < tol), None)
    j = int(np.argmax(np.abs(hv)))
    tau = complex(fv[j] / hv[j])
    ok = abs(abs(tau) - 1.0) <= tol and np.abs(fv - tau * hv).max() <= tol * (1.0 + f_max)
    return Equivalence(bool(ok), tau)


def expsum_to_json(F: ExpSum) -> list[dict]:
    return [
        {"re_c": c.real, "im_c": c.imag, "re_xi": xi.real, "im_xi": xi.imag}
        for c, xi in F.terms
    ]


def expsum_from_json(data: Iterable[dict] | str) -> ExpSum:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return ExpSum(
            tuple(
                (complex(d["re_c"], d["im_c"]), complex(d["re_xi"], d["im_xi"]))
                for d in data
            )
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed ExpSum JSON: {exc}") from exc
