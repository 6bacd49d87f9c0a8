"""Exception taxonomy shared by all qhecke modules.

Every error raised on purpose by this package derives from QheckeError,
so callers can distinguish engine-level failures from programming bugs.
The CLI maps the assertion-style errors (SupportOverflow, InexactDivision,
HalfIntegerExponent) to exit code 3 because they indicate corrupted
construction rather than a false identity.
"""

from __future__ import annotations


class QheckeError(Exception):
    """Base class for all errors raised by this package."""


class SupportOverflow(QheckeError):
    """A Laurent coefficient's exponent span exceeded the configured cap.

    Every series built here keeps its z-support within a small multiple of
    the q-truncation order, so breaching the cap signals a construction bug.
    """


class NonUnitConstantTerm(QheckeError):
    """Series inversion was attempted on a series whose constant term is
    not a single monomial of coefficient +1 or -1."""


class InexactDivision(QheckeError):
    """An exact polynomial division left a nonzero remainder.

    Gaussian binomials are polynomials by theory, so this must never fire.
    """


class HalfIntegerExponent(QheckeError):
    """A double-sum template produced an odd doubled q-exponent in region."""


class NonTerminating(QheckeError):
    """A sum enumeration failed to prune within its safety cap."""


class UnknownIdentity(QheckeError):
    """Requested identity id is not in the registry or template catalog."""


class UnknownSeriesId(QheckeError):
    """Requested named series side is not recognized."""


class OracleCapExceeded(QheckeError):
    """A brute-force enumeration oracle was asked beyond its size cap."""


class NotInRegion(QheckeError):
    """A lattice point lies outside the domain of the requested map."""


class VerificationFailed(QheckeError):
    """A machine check of a stated relation found a counterexample.

    Carries enough location data (index, q-power, variable power) to make
    the failure reproducible.
    """

    def __init__(self, message: str, **where: object) -> None:
        super().__init__(message)
        self.where = dict(where)
