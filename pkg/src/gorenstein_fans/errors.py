"""Exception hierarchy shared by all layers."""


class GorensteinFansError(Exception):
    """Base class for every error raised by this package."""


class InputError(GorensteinFansError):
    """Malformed or mathematically invalid input (CLI exit status 2)."""


class ZeroVector(InputError):
    pass


class RankDeficient(InputError):
    pass


class NotPointed(InputError):
    pass


class NotSimplicial(InputError):
    pass


class InvalidFan(InputError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class UnknownCone(InputError):
    pass


class NotComparable(InputError):
    pass


class NotComplete(InputError):
    pass


class NotGraded(InputError):
    pass


class NotEulerian(InputError):
    pass


class NotGorenstein(InputError):
    """The cone (or fan) admits no integral level-one functional."""

    def __init__(self, message, cone_id=None):
        super().__init__(message)
        self.cone_id = cone_id


class NoRationalSolution(NotGorenstein):
    pass


class NonIntegral(NotGorenstein):
    def __init__(self, message, witness=None, value=None, cone_id=None):
        super().__init__(message, cone_id=cone_id)
        self.witness = witness
        self.value = value


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class InternalAssertion(GorensteinFansError):
    """An internal cross-check failed (CLI exit status 3)."""
