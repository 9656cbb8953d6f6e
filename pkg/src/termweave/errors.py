"""Exception hierarchy shared by all termweave modules."""


class TermweaveError(Exception):
    """Base class for all errors raised by termweave."""


class SignatureError(TermweaveError):
    """Invalid operation declaration or use of an undeclared head."""


class ParseError(TermweaveError):
    """Malformed term, signature, pattern, or rule text.

    Attributes:
        position: Character offset of the problem in the parsed text, or ``None``.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f'{message} (at position {position})'
        super().__init__(message)
        self.position = position


class SubstitutionError(TermweaveError):
    """A wildcard could not be instantiated."""


class CodegenError(TermweaveError):
    """The net contains something the code generator cannot emit."""
