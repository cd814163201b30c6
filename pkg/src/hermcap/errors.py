"""Exception hierarchy."""


class HermcapError(Exception):
    """Base class for all package errors."""


class ConfigurationError(HermcapError):
    """Unsupported field parameters or invalid configuration."""


class CapViolationError(HermcapError):
    """An operation would break the cap condition (adding a covered point)."""


class MemberNotFoundError(HermcapError):
    """A point expected to be a cap member is not."""


class CapCompleteError(HermcapError):
    """The cap is already complete, so the requested quantity is undefined."""


class TangentPlaneError(HermcapError):
    """The requested plane section is tangent (pole lies on the surface)."""


class CapFileError(HermcapError):
    """A cap file failed validation; the message names the violated invariant."""
