"""Sequences directed by arbitrary directing sequences."""
__version__ = "0.1.0"

from .core import (Alphabet, DirectedStream, RunEncoding, delta, direct_finite, rle,
                   stream_new, stream_next)
from .errors import (DomainError, EndOfSource, InvalidAlphabetError, OutOfRangeError,
                     RandKolError, ResourceLimitError, SpecSyntaxError)
from .sources import make_source, parse_spec, selfref_build, source_next

__all__ = [
    "Alphabet", "DirectedStream", "RunEncoding", "delta", "direct_finite", "rle",
    "stream_new", "stream_next", "DomainError", "EndOfSource", "InvalidAlphabetError",
    "OutOfRangeError", "RandKolError", "ResourceLimitError", "SpecSyntaxError",
    "make_source", "parse_spec", "selfref_build", "source_next",
]
