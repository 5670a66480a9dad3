"""Verdicts for phaseless sampling on line families and Laplace uniqueness sets.

The necessity direction (progression lines are never uniqueness sets) is
checked constructively: the verdict carries a verified counterexample pair.
The sufficiency direction is a statement about every function in the space;
for non-progression heights the verdict certifies the hypothesis (the
non-progression property at the stated resolution) and names the claim, and
nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import rigidity
from .counterexamples import (
    CounterexamplePair,
    SignalPair,
    expsum_pair,
    signal_pair,
    singleton_progression,
)
from .errors import DomainError, InputError, MagnitudeOutOfRange
from .transforms import (
    LAPLACE_STEP,
    LAPLACE_TAIL,
    GaussianSum,
    SampledSignal,
    convolve_halfline,
    gabor,
    laplace,
    phi,
)

CLAIM_NECESSITY = "lines over an arithmetic progression are not a uniqueness set (exponential pair)"
CLAIM_GABOR_NECESSITY = "Gabor magnitudes on progression lines do not determine the signal (coherent-state pair)"
CLAIM_SUFFICIENCY = "lines over a set not contained in any arithmetic progression form a uniqueness set"
CLAIM_HALFLINE = "-U x Lambda is a Gabor uniqueness set on the half-line when sum 1/u_j diverges and Lambda is not in a progression"


@dataclass(frozen=True)
class LineFamily:
    """Rotated horizontal lines ``e^{i theta}(R + i lam)``, ``lam`` in ``lambdas``."""

    theta: float
    lambdas: tuple
    x_window: tuple[float, float, int] = (-2.0, 2.0, 81)

    def __post_init__(self):
        lam = tuple(sorted(self.lambdas))
        if not lam:
            raise InputError("line family needs at least one height")
        if len(set(lam)) != len(lam):
            raise InputError("line heights must be pairwise distinct")
        lo, hi, count = self.x_window
        if int(count) < 2 or not lo < hi:
            raise InputError("x_window needs lo < hi and count >= 2")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "x_window", (float(lo), float(hi), int(count)))

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(*self.x_window)


def sample_line_family(L: LineFamily) -> np.ndarray:
    lam = np.array([float(v) for v in L.lambdas])
    z = np.exp(1j * L.theta) * (L.xs[None, :] + 1j * lam[:, None])
    return z.ravel()


@dataclass(frozen=True)
class Agreement:
    agree: bool
    max_gap: float
    argmax: complex


def modulus_agreement(F: Callable, H: Callable, points, tol: float = 1e-9) -> Agreement:
    """Largest ``||F| - |H||`` over ``points``, relative to ``1 + max(|F|, |H|)``."""
    pts = np.asarray(points)
    if pts.size == 0:
        raise InputError("need at least one point")
    fa = np.abs(np.asarray(F(pts))).ravel()
    ha = np.abs(np.asarray(H(pts))).ravel()
    gap = np.abs(fa - ha) / (1.0 + np.maximum(fa, ha))
    j = int(np.argmax(gap))
    return Agreement(bool(gap[j] <= tol), float(gap[j]), complex(pts.ravel()[j]))


@dataclass(frozen=True)
class UniquenessVerdict:
    unique: bool
    reason: str
    witness: dict
    counterexample: CounterexamplePair | None = field(default=None, repr=False)
    signal_counterexample: SignalPair | None = field(default=None, repr=False)
    evidence: dict = field(default_factory=dict)
    citations: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "unique": self.unique,
            "reason": self.reason,
            "witness": self.witness,
            "evidence": self.evidence,
            "citations": list(self.citations),
        }


def _containment(lambdas, mode, tol, q_max) -> rigidity.APVerdict:
    if mode == "exact":
        if not all(rigidity.is_rational(v) for v in lambdas):
            raise InputError("exact mode needs rational heights")
        return rigidity.ap_containment_exact(lambdas)
    if mode == "float":
        return rigidity.ap_containment_float([float(v) for v in lambdas], tol, q_max)
    if mode == "auto":
        return rigidity.ap_containment(list(lambdas), tol, q_max)
    raise InputError(f"unknown mode {mode!r}")


def uniqueness_verdict(
    L: LineFamily,
    mode: str = "auto",
    tol: float = rigidity.DEFAULT_TOL,
    q_max: int = rigidity.DEFAULT_Q_MAX,
    v_fallback: float = 1.0,
    verify_tol: float = 1e-8,
) -> UniquenessVerdict:
    """Decide whether phaseless samples on ``L`` can separate all functions.

    Progression heights yield ``unique=False`` with an exponential pair and a
    coherent-state signal pair, both checked on the sampled family with gaps
    taken relative to 1 + the larger modulus.
    """
    ap = _containment(L.lambdas, mode, tol, q_max)
    if not ap.contained:
        rejected = [r.value for r in ap.ratios if not r.accepted]
        return UniquenessVerdict(
            True,
            "non-AP",
            {"ratios": [r.value for r in ap.ratios], "rejected_ratios": rejected},
            evidence={"containment": ap.to_json()},
            citations=(CLAIM_SUFFICIENCY,),
        )
    a, b = ap.a, ap.b
    note = None
    if a == 0:
        a, b = singleton_progression(float(b), v_fallback)
        note = f"singleton heights: progression gap taken as {a:g}"
    P = expsum_pair(float(a), float(b), L.theta)
    S = None
    evidence = {
        "containment": ap.to_json(),
        "grid": {"x_window": list(L.x_window), "lambdas": [float(v) for v in L.lambdas]},
    }
    if note:
        evidence["note"] = note
    try:
        z = sample_line_family(L)
        exp_agree = modulus_agreement(P.F, P.H, z, verify_tol)
        S = signal_pair(float(a), float(b), L.theta, lambdas=[float(v) for v in L.lambdas])
        X, W = S.tf_points(L.xs)
        ref = np.maximum(np.abs(gabor(S.f, X, W)), np.abs(gabor(S.h, X, W)))
        sig_gap = float((S.gabor_gap(X, W) / (1 + ref)).max())
        evidence.update(
            max_gap=exp_agree.max_gap,
            signal_max_gap=sig_gap,
            verified=bool(exp_agree.agree and sig_gap <= verify_tol),
        )
    except MagnitudeOutOfRange as exc:
        evidence.update(verified=False, error=str(exc))
    witness = {"a": rigidity._num(a), "b": rigidity._num(b)}
    if isinstance(ap.a, Fraction):
        witness.update(a_exact=str(ap.a), b_exact=str(ap.b))
    return UniquenessVerdict(
        False,
        "AP-containment",
        witness,
        P,
        S,
        evidence,
        (CLAIM_NECESSITY, CLAIM_GABOR_NECESSITY),
    )


# -- Laplace transform uniqueness sets ---------------------------------------

PARTIAL_SUM_POINTS = (100, 1000, 10_000)


@dataclass(frozen=True)
class SequenceSpec:
    """Nonnegative sampling sequence ``u_j``, ``j = 1, 2, ...``.

    kinds: ``affine`` (a j + b), ``power`` (a j^p + b), ``geometric`` (a r^j)
    and ``explicit`` (a finite list in ``values``).
    """

    kind: str
    a: float = 1.0
    b: float = 0.0
    p: float = 1.0
    r: float = 2.0
    values: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ("affine", "power", "geometric", "explicit"):
            raise InputError(f"unknown sequence kind {self.kind!r}")
        if self.kind in ("affine", "power", "geometric") and self.a <= 0:
            raise InputError("sequence needs a > 0")
        if self.kind == "power" and self.p <= 0:
            raise InputError("power sequence needs p > 0")
        if self.kind == "geometric" and self.r <= 1:
            raise InputError("geometric sequence needs r > 1")
        if self.kind in ("affine", "power") and self.a + self.b < 0:
            raise InputError("sequence must stay in [0, inf)")
        if self.kind == "explicit":
            vals = tuple(float(v) for v in self.values)
            if not vals or min(vals) < 0:
                raise InputError("explicit sequence needs nonnegative values")
            object.__setattr__(self, "values", vals)

    @classmethod
    def parse(cls, text: str) -> "SequenceSpec":
        """``"power:a=1,p=2"``, ``"affine:a=1,b=1"``, ``"explicit:1,2,3"``."""
        kind, _, rest = text.partition(":")
        kind = kind.strip()
        if kind == "explicit":
            return cls("explicit", values=tuple(float(v) for v in rest.split(",") if v.strip()))
        params = {}
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, eq, val = item.partition("=")
            if not eq or key.strip() not in ("a", "b", "p", "r"):
                raise InputError(f"bad sequence parameter {item!r}")
            params[key.strip()] = float(val)
        return cls(kind, **params)

    def terms(self, J: int) -> np.ndarray:
        if self.kind == "explicit":
            return np.asarray(self.values[:J])
        j = np.arange(1, J + 1, dtype=float)
        if self.kind == "affine":
            return self.a * j + self.b
        if self.kind == "power":
            return self.a * j**self.p + self.b
        with np.errstate(over="ignore"):
            return self.a * self.r**j


def lerch_set(a: float, b: float) -> SequenceSpec:
    """The progression ``a N + b`` with ``a, b > 0``."""
    if a <= 0 or b <= 0:
        raise InputError("Lerch sets need a > 0 and b > 0")
    return SequenceSpec("affine", a=a, b=b)


@dataclass(frozen=True)
class DivergenceReport:
    diverges: bool
    decided: bool
    partial_sums: tuple[tuple[int, float], ...]


def _reciprocal_sum(u: np.ndarray) -> float:
    u = u[u != 0]
    with np.errstate(divide="ignore"):
        return float(np.sum(1.0 / u))


def laplace_divergence(U: SequenceSpec) -> DivergenceReport:
    """Whether ``sum 1/u_j`` (over nonzero terms) diverges, decided by kind.

    Partial sums are reported as evidence only; an explicit finite list is
    never decided.
    """
    points = PARTIAL_SUM_POINTS
    if U.kind == "explicit":
        points = tuple(J for J in points if J < len(U.values)) + (len(U.values),)
    sums = tuple((J, _reciprocal_sum(U.terms(J))) for J in points)
    if U.kind == "affine":
        return DivergenceReport(True, True, sums)
    if U.kind == "power":
        return DivergenceReport(U.p <= 1, True, sums)
    if U.kind == "geometric":
        return DivergenceReport(False, True, sums)
    return DivergenceReport(False, False, sums)


def polya_szego_sums(zeros: Sequence[complex]) -> np.ndarray:
    """Cumulative sums of ``cos(theta_j) / r_j = Re z_j / |z_j|^2``."""
    z = np.asarray(zeros, dtype=complex)
    if np.any(z.real <= 0):
        raise DomainError("zeros must lie in the open right half-plane")
    return np.cumsum(z.real / np.abs(z) ** 2)


@dataclass(frozen=True)
class PipelineCheck:
    passed: bool
    u: tuple[float, ...]
    lhs: tuple[float, ...]
    rhs: tuple[complex, ...]
    max_rel_gap: float


def halfline_pipeline_check(
    f: GaussianSum,
    omega: float,
    u_points: Sequence[float],
    tol: float = 1e-4,
    step: float = LAPLACE_STEP,
) -> PipelineCheck:
    """Check ``|L g(u)|^2 = L(g * conj g)(u)`` for ``g = f phi e^{-2 pi i omega .}`` on R+.

    Both sides come from independent quadratures (direct Laplace vs. Laplace of
    the sampled autoconvolution). For real ``u`` the partner of ``g`` is its
    plain complex conjugate. The gap is measured relative to the larger side.
    """
    u = np.asarray(u_points, dtype=float)
    if np.any(u < 0):
        raise DomainError("u must lie in R+")
    if not f.is_zero() and f.shifts.min() < 0:
        raise InputError("half-line pipeline expects Gaussian shifts >= 0")
    top = (f.shifts.max() if not f.is_zero() else 0.0) + LAPLACE_TAIL
    n = int(np.ceil(top / step))
    t = step * np.arange(n + 1)
    gv = f(t) * phi(t) * np.exp(-2j * np.pi * omega * t)
    g = SampledSignal(0.0, step, gv)
    g_bar = SampledSignal(0.0, step, np.conj(gv))
    lhs = np.abs(np.atleast_1d(laplace(g, u))) ** 2
    rhs = np.atleast_1d(laplace(convolve_halfline(g, g_bar), u))
    gaps = np.abs(lhs - rhs)
    scale = np.maximum(np.abs(lhs), np.abs(rhs))
    rel = np.where(scale > 0, gaps / np.where(scale > 0, scale, 1.0), 0.0)
    passed = bool(np.all(gaps <= tol * scale)) if tol > 0 else bool(np.all(gaps == 0) and np.all(scale == 0))
    return PipelineCheck(
        passed,
        tuple(float(v) for v in u),
        tuple(float(v) for v in lhs),
        tuple(complex(v) for v in rhs),
        float(rel.max()) if rel.size else 0.0,
    )


def halfline_uniqueness_verdict(
    U: SequenceSpec,
    lambdas: Sequence[float],
    tol: float = rigidity.DEFAULT_TOL,
    q_max: int = rigidity.DEFAULT_Q_MAX,
) -> dict:
    """Hypothesis check for uniqueness of ``-U x Lambda`` on ``L^2(R+)``.

    ``unique`` is ``True`` only when both hypotheses hold; otherwise it is
    ``None`` since the criterion is sufficient, not necessary.
    """
    div = laplace_divergence(U)
    ap = rigidity.ap_containment(list(lambdas), tol, q_max)
    holds = div.decided and div.diverges and not ap.contained
    return {
        "unique": True if holds else None,
        "divergence": {"diverges": div.diverges, "decided": div.decided,
                       "partial_sums": [list(p) for p in div.partial_sums]},
        "containment": ap.to_json(),
        "citations": [CLAIM_HALFLINE],
    }


def accumulation_agreement(P: CounterexamplePair, lambdas, K: int = 30, x_window=(-2.0, 2.0, 81), tol: float = 1e-9):
    """Modulus agreement on ``{1/k : k <= K} x Lambda`` and on the full window."""
    gamma = 1.0 / np.arange(1, K + 1)
    rot = np.exp(1j * P.theta)
    lam = np.asarray([float(v) for v in lambdas])
    sub = rot * (gamma[None, :] + 1j * lam[:, None])
    full = rot * (np.linspace(*x_window)[None, :] + 1j * lam[:, None])
    return modulus_agreement(P.F, P.H, sub.ravel(), tol), modulus_agreement(P.F, P.H, full.ravel(), tol)
