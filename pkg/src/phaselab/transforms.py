"""Gabor, Bargmann, Fourier and Laplace transforms with the Gaussian window.

Signals are either :class:`GaussianSum` (finite sums of modulated, shifted
Gaussians, transformed in closed form) or :class:`SampledSignal` (uniform
samples, transformed by quadrature).

Conventions::

    phi(t)        = exp(-pi t^2)
    G f(x, w)     = int f(t) phi(t - x) exp(-2 pi i w t) dt
    B f(z)        = int f(t) exp(2 pi t z - pi t^2 - pi z^2 / 2) dt
    F f(xi)       = int f(t) exp(-2 pi i xi t) dt
    L f(s)        = int_0^inf f(y) exp(-s y) dy

For one term ``c exp(2 pi i nu t) phi(t - mu)`` the closed forms are::

    G  = c 2^{-1/2} exp(-pi (mu - x)^2 / 2 - pi (nu - w)^2 / 2 + pi i (nu - w)(mu + x))
    B  = c 2^{-1/2} exp(pi p^2 / 2 - pi mu^2) exp(pi p z),   p = mu + i nu
    F  = c exp(2 pi i nu mu) exp(-2 pi i mu xi) phi(xi - nu)
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np
from scipy.special import erfc

from .errors import DomainError, InputError, TruncationCoverageError

SQRT_HALF = 2.0 ** -0.5
WINDOW_RADIUS = 6.0
LAPLACE_STEP = 1.0 / 256
LAPLACE_TAIL = 8.0


def phi(t):
    return np.exp(-np.pi * np.asarray(t, dtype=float) ** 2)


@dataclass(frozen=True)
class GaussianSum:
    """``f(t) = sum_k c_k exp(2 pi i nu_k t) exp(-pi (t - mu_k)^2)``.

    ``terms`` holds ``(coefficient, shift mu, modulation nu)`` triples; equal
    (shift, modulation) pairs are merged and zero coefficients dropped.
    """

    terms: tuple[tuple[complex, float, float], ...] = ()

    def __post_init__(self):
        merged: dict[tuple[float, float], complex] = {}
        for c, mu, nu in self.terms:
            key = (float(mu), float(nu))
            merged[key] = merged.get(key, 0j) + complex(c)
        object.__setattr__(
            self,
            "terms",
            tuple((c, mu, nu) for (mu, nu), c in merged.items() if c != 0),
        )

    @classmethod
    def gaussian(cls, shift: float = 0.0, modulation: float = 0.0, coefficient: complex = 1.0):
        return cls(((coefficient, shift, modulation),))

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([t[0] for t in self.terms], dtype=complex)

    @property
    def shifts(self) -> np.ndarray:
        return np.array([t[1] for t in self.terms], dtype=float)

    @property
    def modulations(self) -> np.ndarray:
        return np.array([t[2] for t in self.terms], dtype=float)

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        out = np.zeros(t_arr.shape, dtype=complex)
        for c, mu, nu in self.terms:
            out += c * np.exp(2j * np.pi * nu * t_arr - np.pi * (t_arr - mu) ** 2)
        return complex(out) if np.ndim(t) == 0 else out

    def __add__(self, other: "GaussianSum") -> "GaussianSum":
        if not isinstance(other, GaussianSum):
            return NotImplemented
        return GaussianSum(self.terms + other.terms)

    def __mul__(self, alpha) -> "GaussianSum":
        alpha = complex(alpha)
        return GaussianSum(tuple((alpha * c, mu, nu) for c, mu, nu in self.terms))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def reflect(self) -> "GaussianSum":
        """The signal ``t -> f(-t)``."""
        return GaussianSum(tuple((c, -mu, -nu) for c, mu, nu in self.terms))

    def sample(self, start: float, stop: float, step: float) -> "SampledSignal":
        n = int(round((stop - start) / step))
        t = start + step * np.arange(n + 1)
        return SampledSignal(start, step, self(t))


@dataclass(frozen=True, eq=False)
class SampledSignal:
    start: float
    step: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=complex).ravel()
        if self.step <= 0:
            raise InputError("sample step must be positive")
        if values.size == 0:
            raise InputError("sampled signal needs at least one value")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "step", float(self.step))

    @classmethod
    def from_function(cls, fn, start: float, stop: float, step: float) -> "SampledSignal":
        n = int(round((stop - start) / step))
        t = start + step * np.arange(n + 1)
        return cls(start, step, fn(t))

    @property
    def t(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.values.size)

    @property
    def stop(self) -> float:
        return self.start + self.step * (self.values.size - 1)


Signal = Union[GaussianSum, SampledSignal]


# -- closed forms -----------------------------------------------------------


def gabor(f: GaussianSum, x, omega):
    """Gabor transform ``G f(x, omega)`` in closed form (broadcasts)."""
    x = np.asarray(x, dtype=float)
    omega = np.asarray(omega, dtype=float)
    out = np.zeros(np.broadcast(x, omega).shape, dtype=complex)
    for c, mu, nu in f.terms:
        dnu = nu - omega
        out += (
            c
            * SQRT_HALF
            * np.exp(
                -0.5 * np.pi * ((mu - x) ** 2 + dnu**2)
                + 1j * np.pi * dnu * (mu + x)
            )
        )
    return complex(out) if out.ndim == 0 else out


def coherent_state_exponential(coefficient: complex, shift: float, modulation: float):
    """Return ``(C, xi)`` with ``B[c exp(2 pi i nu .) phi(. - mu)](z) = C exp(xi z)``."""
    p = complex(shift, modulation)
    log_c = 0.5 * np.pi * p * p - np.pi * shift * shift
    return complex(coefficient) * SQRT_HALF * np.exp(log_c), np.pi * p


def bargmann(f: GaussianSum, z):
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape, dtype=complex)
    for c, mu, nu in f.terms:
        C, xi = coherent_state_exponential(c, mu, nu)
        out += C * np.exp(xi * z)
    return complex(out) if out.ndim == 0 else out


def fourier(f: GaussianSum) -> GaussianSum:
    """Fourier transform; ``phi`` is a fixed point."""
    return GaussianSum(
        tuple((c * np.exp(2j * np.pi * nu * mu), nu, -mu) for c, mu, nu in f.terms)
    )


def hardy_swap_check(f: GaussianSum, grid, tol: float = 1e-9) -> bool:
    """Check ``|G f(x, w)| = |G f^(w, -x)|`` at each ``(x, w)`` of ``grid``."""
    pts = np.asarray(grid, dtype=float).reshape(-1, 2)
    if pts.size == 0:
        return True
    x, w = pts[:, 0], pts[:, 1]
    lhs = np.abs(gabor(f, x, w))
    rhs = np.abs(gabor(fourier(f), w, -x))
    return bool(np.all(np.abs(lhs - rhs) <= tol))


# -- quadrature -------------------------------------------------------------


def _gregory_weights(n: int) -> np.ndarray:
    """Trapezoid weights with Gregory end corrections (exact for cubics)."""
    w = np.ones(n)
    if n >= 8:
        w[:3] = w[-3:][::-1] = (3 / 8, 7 / 6, 23 / 24)
    elif n >= 2:
        w[0] = w[-1] = 0.5
    return w


def trapezoid(values, step: float) -> complex:
    v = np.asarray(values)
    if v.shape[-1] < 2:
        return np.zeros(v.shape[:-1], dtype=complex) if v.ndim > 1 else 0j
    return step * (v.sum(axis=-1) - 0.5 * (v[..., 0] + v[..., -1]))


def halfline_integral(values, step: float):
    """Integral of uniformly sampled values, end-corrected trapezoid rule."""
    v = np.asarray(values)
    return step * (v * _gregory_weights(v.shape[-1])).sum(axis=-1)


def gabor_quadrature(f: SampledSignal, x: float, omega: float, radius: float = WINDOW_RADIUS) -> complex:
    """Trapezoid approximation of ``G f(x, omega)`` over ``[x - radius, x + radius]``."""
    lo, hi = x - radius, x + radius
    slack = 1e-9 * f.step
    if f.start > lo + slack or f.stop < hi - slack:
        raise TruncationCoverageError(lo, hi, f.start, f.stop)
    t = f.t
    sel = (t >= lo - slack) & (t <= hi + slack)
    tt = t[sel]
    integrand = f.values[sel] * phi(tt - x) * np.exp(-2j * np.pi * omega * tt)
    return complex(trapezoid(integrand, f.step))


def _as_halfline_samples(f: Signal, step: float, tail: float) -> SampledSignal:
    if isinstance(f, SampledSignal):
        if f.start < 0:
            raise InputError("half-line signals must start at t >= 0")
        return f
    top = (f.shifts.max() if not f.is_zero() else 0.0) + tail
    return f.sample(0.0, max(top, tail), step)


def laplace(f: Signal, s, step: float = LAPLACE_STEP, tail: float = LAPLACE_TAIL):
    """Laplace transform of a half-line signal at ``s`` with ``Re s >= 0``.

    A :class:`GaussianSum` is restricted to ``[0, max shift + tail]``; its
    mass on the negative axis is ignored here (see :func:`negative_mass_bound`).
    """
    s_arr = np.asarray(s, dtype=complex)
    if np.any(s_arr.real < 0):
        raise DomainError("Laplace transform is evaluated on Re s >= 0 only")
    sig = _as_halfline_samples(f, step, tail)
    t = sig.t
    kernel = np.exp(-np.multiply.outer(s_arr, t))
    out = halfline_integral(kernel * sig.values, sig.step)
    return complex(out) if s_arr.ndim == 0 else out


def convolve_halfline(f: SampledSignal, h: SampledSignal) -> SampledSignal:
    """``(f * h)(x) = int_0^x f(y) h(x - y) dy`` on the doubled grid, trapezoid rule."""
    if f.start != 0 or h.start != 0:
        raise InputError("half-line convolution needs signals starting at 0")
    if not np.isclose(f.step, h.step, rtol=1e-12, atol=0):
        raise InputError(f"grid mismatch: steps {f.step} and {h.step}")
    n = max(f.values.size, h.values.size)
    fv = np.zeros(n, dtype=complex)
    hv = np.zeros(n, dtype=complex)
    fv[: f.values.size] = f.values
    hv[: h.values.size] = h.values
    full = np.convolve(fv, hv)
    k = np.arange(full.size)
    # trapezoid endpoints y = 0 and y = x_k
    f_end = np.where(k < n, fv[np.minimum(k, n - 1)], 0)
    h_end = np.where(k < n, hv[np.minimum(k, n - 1)], 0)
    ends = 0.5 * (fv[0] * h_end + f_end * hv[0])
    ends[0] = fv[0] * hv[0]
    return SampledSignal(0.0, f.step, f.step * (full - ends))


def negative_mass_bound(f: GaussianSum, x: float) -> float:
    """Upper bound for ``int_{-inf}^0 |f(t)| phi(t - x) dt``."""
    total = 0.0
    for c, mu, _ in f.terms:
        m = 0.5 * (mu + x)
        total += (
            abs(c)
            * np.exp(-0.5 * np.pi * (mu - x) ** 2)
            * erfc(np.sqrt(2 * np.pi) * m)
            / (2 * np.sqrt(2))
        )
    return float(total)


@dataclass(frozen=True)
class RelationCheck:
    lhs: complex
    mid: complex
    rhs: complex | None
    truncated_mass: float
    passed: bool
    note: str = ""


def relation_check(
    f: GaussianSum,
    x: float,
    omega: float,
    tol: float = 1e-6,
    step: float = LAPLACE_STEP,
) -> RelationCheck:
    """Compare the Gabor, Bargmann and Laplace expressions of one sample.

    ``lhs = G f(x, -omega)``, ``mid = exp(pi i x omega - pi |z|^2 / 2) B f(z)``
    with ``z = x + i omega``, and ``rhs = phi(x) L(f phi exp(2 pi i omega .))(-2 pi x)``.
    The Laplace leg needs ``x <= 0``; for ``x > 0`` only lhs and mid are compared.
    """
    if not f.is_zero() and f.shifts.min() < 0:
        raise InputError("relation_check expects Gaussian shifts >= 0")
    z = complex(x, omega)
    lhs = gabor(f, x, -omega)
    mid = np.exp(1j * np.pi * x * omega - 0.5 * np.pi * abs(z) ** 2) * bargmann(f, z)
    if x > 0:
        ok = abs(lhs - mid) < tol
        return RelationCheck(lhs, complex(mid), None, 0.0, bool(ok), "x > 0: Laplace leg outside Re s >= 0")
    top = (f.shifts.max() if not f.is_zero() else 0.0) + LAPLACE_TAIL
    n = int(np.ceil(top / step))
    t = step * np.arange(n + 1)
    g = SampledSignal(0.0, step, f(t) * phi(t) * np.exp(2j * np.pi * omega * t))
    rhs = np.exp(-np.pi * x * x) * laplace(g, -2 * np.pi * x)
    budget = negative_mass_bound(f, x)
    gaps = (abs(lhs - mid), abs(lhs - rhs), abs(mid - rhs))
    ok = gaps[0] < tol and max(gaps[1:]) < tol + budget
    return RelationCheck(lhs, complex(mid), complex(rhs), budget, bool(ok))


# -- serialization ----------------------------------------------------------


def gaussian_sum_to_json(f: GaussianSum) -> list[dict]:
    return [
        {"re_c": c.real, "im_c": c.imag, "shift": mu, "modulation": nu}
        for c, mu, nu in f.terms
    ]


def gaussian_sum_from_json(data: Iterable[dict] | str) -> GaussianSum:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return GaussianSum(
            tuple(
                (complex(d["re_c"], d["im_c"]), float(d["shift"]), float(d["modulation"]))
                for d in data
            )
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed GaussianSum JSON: {exc}") from exc


def signal_to_csv(f: SampledSignal) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "re", "im"])
    for t, v in zip(f.t, f.values):
        w.writerow([repr(float(t)), repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()


def signal_from_csv(text: str) -> SampledSignal:
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows or set(rows[0]) != {"t", "re", "im"}:
        raise InputError("signal CSV needs header t,re,im and at least one row")
    t = np.array([float(r["t"]) for r in rows])
    v = np.array([complex(float(r["re"]), float(r["im"])) for r in rows])
    if t.size > 1:
        steps = np.diff(t)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12):
            raise InputError("signal CSV must be uniformly sampled")
        step = float(steps.mean())
    else:
        step = 1.0
    return SampledSignal(float(t[0]), step, v)
