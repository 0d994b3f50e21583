"""Exception hierarchy shared by every module."""


class TorusDegError(Exception):
    """Base class for all errors raised by torusdeg."""


class InputError(TorusDegError, ValueError):
    """Malformed input or a violated determinant/trace precondition."""


class CapabilityError(TorusDegError):
    """The request is well formed but exceeds a computational limit."""


class FactorizationLimitError(CapabilityError):
    pass


class SearchLimitError(CapabilityError):
    pass
