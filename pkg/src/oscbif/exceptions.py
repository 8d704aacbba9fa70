"""Exception types raised by the toolkit."""


class OscbifError(Exception):
    """Base class for all toolkit errors."""


class SingularAtPeak(OscbifError):
    """The peak value is a zero of f, so the time-map integral diverges."""


class NonpositiveGap(OscbifError):
    """F(nu) - F(s) vanished for some s < nu (f is identically zero there)."""


class FamilyWithoutZeros(OscbifError):
    """The nonlinearity family has no countable sequence of positive zeros."""


class DegenerateBranch(OscbifError):
    """The branch is flat in lambda; multiplicity is undefined."""


class TooFewPoints(OscbifError):
    """Not enough usable sequence entries for a fit."""


class ConfigError(OscbifError):
    """Invalid or inconsistent run configuration."""
