"""Exception hierarchy shared by the library and the CLI."""


class RandKolError(Exception):
    """Base class for all library errors."""


class DomainError(RandKolError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidAlphabetError(DomainError):
    """A letter is not a positive integer that fits in 8 bits."""


class OutOfRangeError(DomainError):
    """A closed form was asked for below its validity threshold."""


class SpecSyntaxError(RandKolError, ValueError):
    """A source descriptor could not be parsed."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class ResourceLimitError(RandKolError):
    """The request would exceed an enumeration or memory budget."""


class EndOfSource(RandKolError, StopIteration):
    """A finite directing sequence has no more letters."""
