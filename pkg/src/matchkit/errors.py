"""Exception hierarchy.

The CLI maps :class:`PreconditionError` to exit code 2 and
:class:`ParseError` to exit code 3.
"""


class MatchkitError(Exception):
    pass


class PreconditionError(MatchkitError, ValueError):
    pass


class ParseError(MatchkitError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class MixedModes(PreconditionError, TypeError):
    """Exact and float scalars were combined."""


class ArityMismatch(PreconditionError):
    pass


class IndexOutOfRange(PreconditionError):
    pass


class DuplicateIndex(PreconditionError):
    pass


class NotAPermutation(PreconditionError):
    pass


class OddSize(PreconditionError):
    pass


class NotDisjoint(PreconditionError):
    pass


class TooLarge(PreconditionError):
    pass


class CapExceeded(PreconditionError):
    pass


class ArityCapExceeded(CapExceeded):
    pass


class SingularMatrix(PreconditionError):
    pass


class NotBipartite(PreconditionError):
    pass


class NotAMatchgate(PreconditionError):
    pass


class NotPermutableMatchgate(PreconditionError):
    pass


class PreconditionViolated(PreconditionError):
    pass


class DegenerateInput(PreconditionError):
    pass


class SqrtNotInField(PreconditionError):
    pass


class MissingRotation(PreconditionError):
    pass


class Disconnected(PreconditionError):
    pass


class DBelowThree(PreconditionError):
    pass


class NoHub(MatchkitError):
    """A Matching-type signature had no hub; indicates a classification bug."""


class CaseExhaustion(MatchkitError):
    """No construction in a case analysis applied."""


class NoDangling(PreconditionError):
    pass


class MultipleDangling(PreconditionError):
    pass
