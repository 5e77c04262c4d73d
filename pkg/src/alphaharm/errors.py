class AlphaHarmError(Exception):
    """Base class for errors raised by this package."""


class DomainError(AlphaHarmError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class PreconditionError(AlphaHarmError, ValueError):
    """The hypotheses a check relies on are not met by its inputs."""


class InvariantError(AlphaHarmError, RuntimeError):
    """Two routes to a mathematically identical quantity disagree."""
