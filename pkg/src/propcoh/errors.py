"""Exception hierarchy shared by every module of the package."""


class PropCohError(Exception):
    """Base class for all errors raised by propcoh."""


class MalformedCategory(PropCohError, ValueError):
    pass


class UnknownBase(PropCohError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotComposable(PropCohError, ValueError):
    pass


class UnknownObject(PropCohError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class MalformedPresheaf(PropCohError, ValueError):
    pass


class BaseMismatch(PropCohError, ValueError):
    pass


class NotNatural(PropCohError, ValueError):
    """Raised when a family of components fails a naturality square.

    ``witness`` is the id of the morphism whose square does not commute.
    """

    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"naturality fails at morphism {witness!r}")


class EndpointMismatch(PropCohError, ValueError):
    pass


class NotASection(PropCohError, ValueError):
    pass


class SizeLimitExceeded(PropCohError, ValueError):
    pass


class TargetNotOmega(PropCohError, ValueError):
    pass


class AmbientMismatch(PropCohError, ValueError):
    pass


class NotAProposition(PropCohError, ValueError):
    pass


class WrongType(PropCohError, ValueError):
    pass


class UnknownDemo(PropCohError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ParseError(PropCohError, ValueError):
    def __init__(self, line, col, expected):
        self.line = line
        self.col = col
        self.expected = expected
        super().__init__(f"{line}:{col}: expected {expected}")


class UnboundIdentifier(PropCohError, KeyError):
    def __init__(self, name, line=None, col=None):
        self.name = name
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{where}unbound identifier {name!r}")

    def __str__(self):
        return Exception.__str__(self)


class DuplicateIdentifier(PropCohError, ValueError):
    def __init__(self, name, line=None, col=None):
        self.name = name
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{where}duplicate identifier {name!r}")


class EvaluationError(PropCohError):
    def __init__(self, loc, cause):
        self.loc = loc
        self.cause = cause
        super().__init__(f"{loc}: {type(cause).__name__}: {cause}")


class InvalidDeclaration(PropCohError):
    """A model-file declaration that parses but fails validation."""

    def __init__(self, line, col, cause):
        self.line = line
        self.col = col
        self.cause = cause
        super().__init__(f"{line}:{col}: {type(cause).__name__}: {cause}")
