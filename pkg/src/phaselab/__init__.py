"""Constructive checks for phase-retrieval uniqueness on line families."""

__version__ = "0.1.0"

from .analytic import ExpSum, Rectangle, equivalence_check, zero_count, zero_diff_periodicity_check
from .counterexamples import expsum_pair, pauli_distinguishability, signal_pair
from .errors import (
    BoundaryProximityError,
    DomainError,
    InputError,
    MagnitudeOutOfRange,
    PhaselabError,
    TruncationCoverageError,
    ZeroOnContourError,
)
from .rigidity import ap_containment, ap_containment_exact, ap_containment_float, lattice_lemma_check
from .transforms import GaussianSum, SampledSignal, bargmann, fourier, gabor, laplace, relation_check
from .uniqueness import LineFamily, SequenceSpec, laplace_divergence, uniqueness_verdict

__all__ = [
    "BoundaryProximityError", "DomainError", "ExpSum", "GaussianSum", "InputError", "LineFamily",
    "MagnitudeOutOfRange", "PhaselabError", "Rectangle", "SampledSignal", "SequenceSpec",
    "TruncationCoverageError", "ZeroOnContourError", "ap_containment", "ap_containment_exact",
    "ap_containment_float", "bargmann", "equivalence_check", "expsum_pair", "fourier", "gabor",
    "laplace", "laplace_divergence", "lattice_lemma_check", "pauli_distinguishability",
    "relation_check", "signal_pair", "uniqueness_verdict", "zero_count", "zero_diff_periodicity_check",
]
