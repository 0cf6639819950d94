"""Directing-sequence generators and the descriptor mini-language.

Descriptor grammar (keys are case-sensitive, no whitespace)::

    periodic:<digits>                          e.g. periodic:122
    classic:<a>,<b>                            e.g. classic:1,3
    iid:p=<float>,a=<int>,b=<int>              P(T_i = a) = p
    markov:p=<float>,a=<int>,b=<int>[,start=<int>]   switch probability p, T_1 = start (default a)
    selfref                                    the coupled self-referential construction

Key/value pairs may come in any order. Stochastic sources read their
randomness from the counter-based generator in :mod:`randkol.rng`: an i.i.d.
source uses draw ``i`` for its ``(i+1)``-th letter, a Markov source uses draw
``i`` to decide whether its ``(i+2)``-th letter switches.
"""
import math
from dataclasses import dataclass
from typing import Iterator, Union

from .core import Alphabet, Word, check_letter
from .errors import DomainError, EndOfSource, SpecSyntaxError
from .rng import CounterRng


@dataclass(frozen=True)
class Periodic:
    pattern: Word

    def __post_init__(self):
        if not self.pattern:
            raise DomainError("periodic pattern must be nonempty")
        object.__setattr__(self, "pattern", tuple(check_letter(x) for x in self.pattern))

    @property
    def letters(self) -> tuple:
        # a constant pattern is read over {1, x} so that "lo" still means the letter 1
        distinct = set(self.pattern)
        if len(distinct) == 1:
            distinct.add(1)
        return tuple(sorted(distinct))

    def describe(self) -> str:
        if all(x < 10 for x in self.pattern):
            return "periodic:" + "".join(map(str, self.pattern))
        raise DomainError("periodic descriptors only hold single-digit letters")


@dataclass(frozen=True)
class Classic:
    a: int
    b: int

    def __post_init__(self):
        Alphabet.of(self.a, self.b)

    @property
    def letters(self) -> tuple:
        return tuple(sorted((self.a, self.b)))

    @property
    def pattern(self) -> Word:
        return (self.a, self.b)

    def describe(self) -> str:
        return f"classic:{self.a},{self.b}"


def _check_p(p: float) -> float:
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError(f"probability must lie in ]0,1[, got {p!r}")
    return p


@dataclass(frozen=True)
class IID:
    p: float
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "p", _check_p(self.p))
        Alphabet.of(self.a, self.b)

    @property
    def letters(self) -> tuple:
        return tuple(sorted((self.a, self.b)))

    def describe(self) -> str:
        return f"iid:p={self.p!r},a={self.a},b={self.b}"


@dataclass(frozen=True)
class Markov:
    p: float
    a: int
    b: int
    start: int = None

    def __post_init__(self):
        object.__setattr__(self, "p", _check_p(self.p))
        Alphabet.of(self.a, self.b)
        if self.start is None:
            object.__setattr__(self, "start", self.a)
        if self.start not in (self.a, self.b):
            raise DomainError(f"start letter {self.start} is not in {{{self.a},{self.b}}}")

    @property
    def letters(self) -> tuple:
        return tuple(sorted((self.a, self.b)))

    def describe(self) -> str:
        return f"markov:p={self.p!r},a={self.a},b={self.b},start={self.start}"


@dataclass(frozen=True)
class SelfRef:
    @property
    def letters(self) -> tuple:
        return (1, 2)

    def describe(self) -> str:
        return "selfref"


SourceSpec = Union[Periodic, Classic, IID, Markov, SelfRef]

STOCHASTIC = (IID, Markov)


def lo_letter(spec: SourceSpec) -> int:
    return spec.letters[0]


# -- parsing -----------------------------------------------------------------

def _parse_int(text: str, start: int, end: int) -> int:
    token = text[start:end]
    if not token or not token.isdigit() or not token.isascii():
        raise SpecSyntaxError("expected a non-negative integer", text, start)
    return int(token)


def _parse_float(text: str, start: int, end: int) -> float:
    token = text[start:end]
    try:
        value = float(token)
    except ValueError:
        raise SpecSyntaxError("expected a number", text, start) from None
    if not math.isfinite(value):
        raise SpecSyntaxError("expected a finite number", text, start)
    return value


def _split(text: str, start: int):
    """Yield (token_start, token_end) for the comma-separated fields after ``start``."""
    pos = start
    while True:
        comma = text.find(",", pos)
        end = len(text) if comma < 0 else comma
        yield pos, end
        if comma < 0:
            return
        pos = comma + 1


def _parse_pairs(text: str, start: int, required, optional=()):
    values = {}
    for s, e in _split(text, start):
        eq = text.find("=", s, e)
        if eq < 0:
            raise SpecSyntaxError("expected key=value", text, s)
        key = text[s:eq]
        if key not in required and key not in optional:
            raise SpecSyntaxError(f"unknown key {key!r}", text, s)
        if key in values:
            raise SpecSyntaxError(f"duplicate key {key!r}", text, s)
        if key == "p":
            values[key] = _parse_float(text, eq + 1, e)
        else:
            values[key] = _parse_int(text, eq + 1, e)
    missing = [k for k in required if k not in values]
    if missing:
        raise SpecSyntaxError(f"missing key {missing[0]!r}", text, len(text))
    return values


def parse_spec(text: str) -> SourceSpec:
    if not text:
        raise SpecSyntaxError("empty descriptor", text, 0)
    if text == "selfref":
        return SelfRef()
    colon = text.find(":")
    if colon < 0:
        raise SpecSyntaxError("expected '<kind>:'", text, 0)
    kind, body = text[:colon], colon + 1
    if body == len(text):
        raise SpecSyntaxError("empty parameter list", text, body)
    if kind == "periodic":
        for i in range(body, len(text)):
            if not ("0" <= text[i] <= "9"):
                raise SpecSyntaxError("expected a digit", text, i)
        return Periodic(tuple(int(c) for c in text[body:]))
    if kind == "classic":
        fields = list(_split(text, body))
        if len(fields) != 2:
            raise SpecSyntaxError("expected two letters '<a>,<b>'", text, body)
        (s1, e1), (s2, e2) = fields
        return Classic(_parse_int(text, s1, e1), _parse_int(text, s2, e2))
    if kind == "iid":
        v = _parse_pairs(text, body, ("p", "a", "b"))
        return IID(v["p"], v["a"], v["b"])
    if kind == "markov":
        v = _parse_pairs(text, body, ("p", "a", "b"), ("start",))
        return Markov(v["p"], v["a"], v["b"], v.get("start"))
    raise SpecSyntaxError(f"unknown source kind {kind!r}", text, 0)


# -- resumable generators ----------------------------------------------------

class SourceState:
    """Resumable generator of a directing sequence; ``position`` letters emitted so far."""

    def __init__(self, spec: SourceSpec):
        self.spec = spec
        self.position = 0

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        letter = self._next()
        self.position += 1
        return letter

    def next(self) -> int:
        return self.__next__()

    def take(self, n: int) -> Word:
        return tuple(next(self) for _ in range(n))

    def _next(self) -> int:
        raise NotImplementedError


class PeriodicState(SourceState):
    def _next(self):
        pattern = self.spec.pattern
        return pattern[self.position % len(pattern)]


class IIDState(SourceState):
    def __init__(self, spec: IID, seed: int):
        super().__init__(spec)
        self.rng = CounterRng(seed)

    def _next(self):
        return self.spec.a if self.rng.bernoulli(self.spec.p) else self.spec.b


class MarkovState(SourceState):
    def __init__(self, spec: Markov, seed: int):
        super().__init__(spec)
        self.rng = CounterRng(seed)
        self.prev = None

    def _next(self):
        s = self.spec
        if self.prev is None:
            self.prev = s.start
        elif self.rng.bernoulli(s.p):
            self.prev = s.b if self.prev == s.a else s.a
        return self.prev


class SelfRefState(SourceState):
    """Runs the coupled construction of T and O_T alongside, one T letter per call."""

    def __init__(self, spec: SelfRef = SelfRef()):
        super().__init__(spec)
        self.T = []
        self.O = []
        self.cursor = 0
        self.d = 1

    def _next(self):
        i = self.cursor
        if i == 0:
            t = 2
            self.O.extend((2, 2))
        elif self.O[i] == 2:
            t = 1
            self.O.extend((1, 1))
        else:
            t = self.d
            self.O.append(t)
            self.d = 3 - self.d
        self.T.append(t)
        self.cursor += 1
        return t


class FiniteState(SourceState):
    """A finite directing word; raises :class:`EndOfSource` when used up."""

    def __init__(self, word):
        super().__init__(None)
        self.word = tuple(check_letter(x) for x in word)

    def __next__(self):
        if self.position >= len(self.word):
            raise EndOfSource(f"finite source of length {len(self.word)} exhausted")
        return super().__next__()

    def _next(self):
        return self.word[self.position]


def make_source(spec: SourceSpec, seed: int = 0) -> SourceState:
    if isinstance(spec, Periodic):
        return PeriodicState(spec)
    if isinstance(spec, Classic):
        return PeriodicState(Periodic(spec.pattern))
    if isinstance(spec, IID):
        return IIDState(spec, seed)
    if isinstance(spec, Markov):
        return MarkovState(spec, seed)
    if isinstance(spec, SelfRef):
        return SelfRefState(spec)
    raise TypeError(f"not a source spec: {spec!r}")


def source_next(s: SourceState) -> int:
    return next(s)


def selfref_build(n: int):
    """Coupled construction of T (length ``n``) and O = O_T restricted to its first n blocks."""
    if n < 1:
        raise DomainError("n must be at least 1")
    T = [2]
    O = [2, 2]
    d = 1
    for i in range(1, n):
        if O[i] == 2:
            T.append(1)
            O.extend((1, 1))
        else:
            T.append(d)
            O.append(d)
            d = 3 - d
    return tuple(T), tuple(O)
