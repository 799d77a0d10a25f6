"""Exception hierarchy shared by all macrowave modules."""


class MacrowaveError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MacrowaveError, ValueError):
    """An argument lies outside the physical domain of a formula."""


class EvanescentError(DomainError):
    """The translational motion is classically forbidden (E <= E_internal)."""


class CapabilityError(MacrowaveError):
    """The requested evaluation path is not supported for these arguments."""


class ConfigurationError(MacrowaveError, ValueError):
    """A run configuration or data structure is malformed."""
