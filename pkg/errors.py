"""Exception hierarchy for apartdomain.

Every failure the library signals deliberately is a ``DomainError``. Running
out of fuel is *not* an error: semi-decisions report it as an Unknown answer.
"""


class DomainError(Exception):
    """Base class for all apartdomain errors."""


class PreconditionViolated(DomainError, ValueError):
    """An operation was called with inputs outside its contract."""


class InvalidCode(DomainError, ValueError):
    """A value is not a code of the basis it was used with."""


class DescriptorMismatch(DomainError, ValueError):
    """Two elements built over different basis descriptors were compared."""


class MissingDeltaBot(DomainError):
    """The descriptor has no decision for "b is the least code"."""


class MissingDelta(DomainError):
    """A required ⊑ or ≪ decision on codes is absent."""


class MissingRefineDecision(DomainError):
    """The descriptor cannot decide refinability of two codes."""


class MissingBoundednessData(DomainError):
    """The descriptor cannot decide whether a finite set of codes is bounded."""


class UnboundedJoin(DomainError):
    """A finite join was requested for codes without an upper bound."""


class OracleFailure(DomainError):
    """A mandatory (total) oracle failed to answer."""


class FuelExhausted(DomainError):
    """A step that the caller's contract promises to finish needed more fuel."""


class ScheduleViolation(DomainError):
    """A real-number approximation broke its published width schedule."""


class NotDecidable(DomainError):
    """A decision procedure was requested from a merely semi-decidable set."""


class SizeTooLarge(DomainError, ValueError):
    """A finite structure exceeds the configured brute-force size cap."""


class InvalidPoset(DomainError, ValueError):
    """A finite relation is not a partial order."""


class ExpressionError(DomainError, ValueError):
    """An element expression does not match the grammar."""


class ConfigurationError(DomainError, ValueError):
    """Environment configuration is malformed."""
