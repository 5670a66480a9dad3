"""Exception hierarchy shared by all phaselab modules."""


class PhaselabError(Exception):
    pass


class InputError(PhaselabError, ValueError):
    """Invalid arguments or malformed input data."""


class DomainError(InputError):
    """Argument outside the domain where the operation is defined."""


class TruncationCoverageError(InputError):
    """A sampled signal does not cover the interval a quadrature needs."""

    def __init__(self, lo, hi, have_lo, have_hi):
        self.required = (lo, hi)
        self.available = (have_lo, have_hi)
        super().__init__(
            f"signal grid [{have_lo:g}, {have_hi:g}] does not cover required "
            f"interval [{lo:g}, {hi:g}]"
        )


class MagnitudeOutOfRange(PhaselabError, OverflowError):
    def __init__(self, term_index, log_magnitude):
        self.term_index = term_index
        self.log_magnitude = log_magnitude
        super().__init__(
            f"term {term_index} has log-magnitude {log_magnitude:.1f}, "
            "beyond double precision range"
        )


class ZeroOnContourError(PhaselabError):
    """The function (numerically) vanishes at a contour node."""


class BoundaryProximityError(PhaselabError):
    """Winding number did not settle near an integer; perturb the rectangle."""
