"""Exception hierarchy shared across the package."""


class CaptuneError(Exception):
    """Base class for all captune errors."""


class ConfigurationError(CaptuneError):
    """Invalid parameters: bad surface spec, unknown preset, infeasible bounds."""


class BoundsError(CaptuneError):
    """A (p, t) configuration outside the platform capabilities."""


class ScenarioError(ConfigurationError):
    """A scenario or surface document failed to parse or validate."""


class BackendError(CaptuneError):
    """An external platform adapter failed to actuate or measure."""


class InvariantError(CaptuneError):
    """An internal invariant was violated; indicates a bug, not bad input."""
