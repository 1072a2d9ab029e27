"""Exception hierarchy shared by every cstkit module.

The CLI maps these onto exit codes: InputError -> 1, LimitError -> 2.
"""


class CstkitError(Exception):
    pass


class InputError(CstkitError, ValueError):
    """Malformed or out-of-contract input."""


class LimitError(CstkitError):
    """A configured resource bound was exceeded."""

    def __init__(self, message, *, limit=None, value=None):
        super().__init__(message)
        self.limit = limit
        self.value = value


class TamenessError(InputError):
    """The characteristic divides the order of a constant group."""


class EquivarianceError(InputError):
    pass


class FaithfulnessError(InputError):
    pass


class FieldError(InputError):
    """The declared field cannot hold the required roots of unity."""


class UnsupportedError(InputError):
    pass


class InconclusiveError(CstkitError):
    """The degree cap was too small to decide polynomiality either way."""

    def __init__(self, message, *, resume_degree=None):
        super().__init__(message)
        self.resume_degree = resume_degree


class TheoremViolation(CstkitError):
    """An internal consistency check that a theorem guarantees has failed."""
