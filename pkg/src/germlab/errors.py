"""Exception hierarchy.  Each class knows the CLI exit code it maps to."""


class GermlabError(Exception):
    exit_code = 1


class InputError(GermlabError):
    """Malformed user input (bad expression, bad flag value)."""

    exit_code = 2


class ParseError(InputError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset
        self.reason = message


class PreconditionError(GermlabError):
    """A mathematical precondition fails (linear terms, non-isolated, ...)."""

    exit_code = 3


class NotIsolatedError(PreconditionError):
    pass


class ResourceBoundError(GermlabError):
    """A configured search bound was exhausted before an answer was found."""

    exit_code = 4


class NotMPrimaryUpTo(GermlabError):
    """No jet level up to ``max_n`` certifies that the ideal is m-primary.

    ``proven`` is set when an explicit positive-dimensional zero set was found,
    so the failure is a genuine non-isolated singularity rather than a bound.
    """

    def __init__(self, max_n: int, proven: bool = False, witness: str = ""):
        detail = f" ({witness})" if witness else ""
        kind = "not m-primary" if proven else f"not certified m-primary up to N={max_n}"
        super().__init__(kind + detail)
        self.max_n = max_n
        self.proven = proven
        self.witness = witness

    @property
    def exit_code(self):
        return 3 if self.proven else 4
