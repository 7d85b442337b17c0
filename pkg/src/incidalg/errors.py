"""Exception types shared across the package.

Every error the engine raises on bad input derives from EngineError, so the
CLI and the HTTP service can map them uniformly (exit code 1 / HTTP 400).
"""


class EngineError(Exception):
    """Base class for all domain errors raised by this package."""


class OrderError(EngineError):
    """Input does not describe a partial order (cycle, duplicate label, empty interval)."""


class DimensionMismatch(EngineError):
    """Operands live on spaces of different dimension."""


class LabelStructureError(EngineError):
    """A relation key needs label structure the poset does not carry."""


class BoundExceeded(EngineError):
    """A generator or series bound outside the supported desk-scale range."""


class IncompatibleRelation(EngineError):
    """Relation failed a compatibility check required by the construction.

    Carries the full verdict so callers can surface the failing check and
    its witness.
    """

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class InternalConsistencyError(EngineError):
    """A well-definedness audit failed; indicates a checker bug, not bad input."""
