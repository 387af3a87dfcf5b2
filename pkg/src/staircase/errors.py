class StaircaseError(Exception):
    """Base class for every error raised by the package."""


class DomainError(StaircaseError, ValueError):
    """A query point or argument lies outside the operation's domain."""


class ScanDepthExceeded(StaircaseError):
    """No clear subinterval was found before the scan-depth cap."""


class NotInM(StaircaseError):
    """The point does not belong to any level of the chain."""


class LevelCapExceeded(NotInM):
    """Membership search in a stream chain stopped at the level cap.

    Distinct from a definitive :class:`NotInM`: the point may still lie in a
    later level.
    """


class SpecError(StaircaseError):
    """A spec file failed validation; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
