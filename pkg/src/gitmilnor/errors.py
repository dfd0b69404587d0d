"""Exception hierarchy shared by all modules."""


class GitMilnorError(Exception):
    """Base class for library errors."""


class ParseError(GitMilnorError, ValueError):
    """Malformed polynomial or weight text. ``pos`` is a 0-based offset."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class DimensionMismatch(GitMilnorError, ValueError):
    pass


class NotHomogeneous(GitMilnorError, ValueError):
    pass


class DegenerateGradient(GitMilnorError):
    """The partial derivatives span fewer than n dimensions.

    ``certificate`` is a :class:`~gitmilnor.oneps.FramedOnePS` destabilizing
    the form: after the frame change the form does not involve the first
    variable, so the weights ``(-(n-1), 1, ..., 1)`` are positive on it.
    """

    def __init__(self, message, certificate=None, rank=None):
        super().__init__(message)
        self.certificate = certificate
        self.rank = rank


class NotRegular(GitMilnorError):
    """Generators do not form a regular sequence (quotient is not Artinian)."""

    def __init__(self, message, hilbert_function=None):
        super().__init__(message)
        self.hilbert_function = hilbert_function


class MultipleMissing(GitMilnorError):
    """More than one monomial is missing from the socle-degree pivots."""


class PreconditionFailed(GitMilnorError):
    pass


class CapExceeded(GitMilnorError):
    pass
