"""Construction operator, run-length encoding and the streaming directed sequence.

Words are plain tuples of ints; ``len(w)`` is |w| and ``w.count(a)`` is |w|_a.
Positions are 0-indexed internally; anything printed for a user is 1-indexed.
"""
from collections import deque
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import DomainError, EndOfSource, InvalidAlphabetError

MAX_LETTER = 255

Word = tuple


def check_letter(value) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise InvalidAlphabetError(f"letter must be an integer, got {value!r}")
    value = int(value)
    if not 1 <= value <= MAX_LETTER:
        raise InvalidAlphabetError(f"letter must lie in 1..{MAX_LETTER}, got {value}")
    return value


class Alphabet(NamedTuple):
    lo: int
    hi: int

    @classmethod
    def of(cls, a: int, b: int) -> "Alphabet":
        a, b = check_letter(a), check_letter(b)
        if a == b:
            raise DomainError(f"alphabet needs two distinct letters, got {a},{b}")
        return cls(min(a, b), max(a, b))

    def __contains__(self, letter) -> bool:
        return letter == self.lo or letter == self.hi


@dataclass(frozen=True)
class RunEncoding:
    runs: tuple
    # A finite word never tells whether its last run would continue.
    last_run_complete: bool = False

    @property
    def lengths(self) -> Word:
        return tuple(n for _, n in self.runs)

    def complete_runs(self) -> tuple:
        return self.runs if self.last_run_complete else self.runs[:-1]


def direct_finite(T: Sequence[int]) -> Word:
    """Return O_T: block i has length X[i] and is filled with T[i]."""
    if len(T) == 0:
        raise DomainError("directing word must be nonempty")
    X = []
    for k, x in enumerate(T):
        x = check_letter(x)
        X.append(x)
        X.extend([x] * (X[k] - 1))
    return tuple(X)


def rle(w: Sequence[int]) -> RunEncoding:
    if len(w) == 0:
        raise DomainError("cannot encode an empty word")
    return RunEncoding(tuple((k, sum(1 for _ in g)) for k, g in groupby(w)))


def delta(w: Sequence[int]) -> Word:
    """Run lengths of ``w``; the last one may be truncated for a prefix."""
    return rle(w).lengths


class LetterFifo:
    """Chunked FIFO of letters, one bit per letter while at most two letters occur.

    Codes are assigned in order of first appearance. A third distinct letter
    switches the storage to one byte per letter.
    """

    CHUNK = 1 << 12  # bytes per chunk

    def __init__(self):
        self._codes = {}
        self._letters = []
        self._width = 1
        self._chunks = deque()
        self._head = 0  # slot index inside the first chunk
        self._tail = 0  # next free slot inside the last chunk
        self._size = 0

    def __len__(self) -> int:
        return self._size

    @property
    def bits_per_letter(self) -> int:
        return self._width

    @property
    def nbytes(self) -> int:
        return len(self._chunks) * self.CHUNK

    def _slots(self) -> int:
        return self.CHUNK * 8 // self._width

    def _code(self, letter: int) -> int:
        code = self._codes.get(letter)
        if code is None:
            code = len(self._letters)
            self._codes[letter] = code
            self._letters.append(letter)
            if code == 2 and self._width == 1:
                self._widen()
        return code

    def _widen(self):
        items = [self.popleft() for _ in range(self._size)]
        self._width = 8
        self._chunks.clear()
        self._head = self._tail = self._size = 0
        for letter in items:
            self.append(letter)

    def append(self, letter: int) -> None:
        code = self._code(letter)
        slots = self._slots()
        if not self._chunks or self._tail == slots:
            self._chunks.append(bytearray(self.CHUNK))
            self._tail = 0
        chunk = self._chunks[-1]
        if self._width == 8:
            chunk[self._tail] = code
        elif code:
            chunk[self._tail >> 3] |= 1 << (self._tail & 7)
        self._tail += 1
        self._size += 1

    def popleft(self) -> int:
        if self._size == 0:
            raise IndexError("pop from an empty LetterFifo")
        chunk = self._chunks[0]
        if self._width == 8:
            code = chunk[self._head]
        else:
            code = (chunk[self._head >> 3] >> (self._head & 7)) & 1
        self._head += 1
        self._size -= 1
        if self._head == self._slots() or self._size == 0:
            if len(self._chunks) == 1:
                # reuse the only chunk
                self._chunks[0] = bytearray(self.CHUNK)
                self._tail = 0
            else:
                self._chunks.popleft()
            self._head = 0
        return self._letters[code]


class DirectedStream:
    """Streaming form of the construction operator.

    ``pending`` holds the letters at 1-indexed positions ``k+1 .. emitted``:
    emitted letters whose values are the lengths of blocks not started yet.
    """

    def __init__(self, source: Iterable[int]):
        self._source = iter(source)
        self.pending = LetterFifo()
        self.k = 0
        self.emitted = 0
        self.fill = None
        self.remaining = 0

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        try:
            return self.next()
        except EndOfSource:
            raise StopIteration from None

    def next(self) -> int:
        if self.remaining == 0:
            try:
                fill = next(self._source)
            except StopIteration:
                raise EndOfSource(f"source exhausted after {self.k} blocks") from None
            self.fill = check_letter(fill)
            self.pending.append(self.fill)
            self.remaining = self.pending.popleft()
            self.k += 1
        else:
            self.pending.append(self.fill)
        self.remaining -= 1
        self.emitted += 1
        return self.fill

    def take(self, n: int) -> Word:
        return tuple(self.next() for _ in range(n))


def stream_new(source: Iterable[int]) -> DirectedStream:
    return DirectedStream(source)


def stream_next(s: DirectedStream) -> int:
    return s.next()
