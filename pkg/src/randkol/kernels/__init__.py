"""Hot loops, with a numba backend and a pure-numpy backend of identical output.

The backend is chosen once at import: numba when it imports and
``RANDKOL_DISABLE_JIT`` is unset, numpy otherwise. ``backend(name)`` returns
a specific one, which is how the tests and the benchmark compare them.
"""
from typing import NamedTuple

import numpy as np

from .._config import jit_requested
from ..errors import DomainError
from ..sources import IID, Classic, Markov, Periodic, SelfRef
from . import _numpy
from ._common import KIND_IID, KIND_MARKOV, KIND_PERIODIC, KIND_SELFREF, MODE_IID, MODE_MARKOV

try:
    from . import _numba
except ImportError:  # pragma: no cover - numba is an optional speedup
    _numba = None

BACKENDS = {"numpy": _numpy}
if _numba is not None:
    BACKENDS["numba"] = _numba

ACTIVE = "numba" if (_numba is not None and jit_requested()) else "numpy"


def backend(name: str = None):
    return BACKENDS[name or ACTIVE]


class KernelSource(NamedTuple):
    kind: int
    pattern: np.ndarray
    a: int
    b: int
    p: float
    start: int
    lo: int
    hi: int

    @classmethod
    def from_spec(cls, spec) -> "KernelSource":
        lo, hi = spec.letters[0], spec.letters[-1]
        empty = np.zeros(1, dtype=np.uint8)
        if isinstance(spec, (Periodic, Classic)):
            if len(set(spec.pattern)) > 2:
                raise DomainError("kernels support directing sequences over two letters")
            pattern = np.asarray(spec.pattern, dtype=np.uint8)
            return cls(KIND_PERIODIC, pattern, 0, 0, 0.0, 0, lo, hi)
        if isinstance(spec, IID):
            return cls(KIND_IID, empty, spec.a, spec.b, spec.p, spec.a, lo, hi)
        if isinstance(spec, Markov):
            return cls(KIND_MARKOV, empty, spec.a, spec.b, spec.p, spec.start, lo, hi)
        if isinstance(spec, SelfRef):
            return cls(KIND_SELFREF, empty, 0, 0, 0.0, 0, 1, 2)
        raise TypeError(f"not a source spec: {spec!r}")


def stream_counts(src: KernelSource, seed: int, length: int, checkpoints, record=False, name=None):
    cps = np.asarray(checkpoints, dtype=np.int64)
    return backend(name).stream(src.kind, src.pattern, src.a, src.b, src.p, src.start,
                                np.uint64(seed), src.lo, src.hi, length, cps, record)


def prefix(src: KernelSource, seed: int, length: int, name=None) -> np.ndarray:
    _, letters = stream_counts(src, seed, length, np.zeros(0, dtype=np.int64), True, name)
    return letters


def pointwise_hits(src: KernelSource, seed: int, n: int, t0: int, t1: int, name=None) -> int:
    return int(backend(name).pointwise(src.kind, src.pattern, src.a, src.b, src.p, src.start,
                                       np.uint64(seed), src.lo, src.hi, n, t0, t1))


def derive_seed(seed: int, index: int) -> int:
    return int(_numpy.derive_seed(seed, index))


def enum_size(n: int, mode: int) -> int:
    return 1 << (n if mode == MODE_IID else n - 1)


def enum_counts(n, lo, hi, mode, start, pos_a, pos_b, i0=0, i1=None, name=None) -> np.ndarray:
    if i1 is None:
        i1 = enum_size(n, mode)
    return backend(name).enum_counts(n, lo, hi, mode, start, pos_a, pos_b, i0, i1)


def selfref_arrays(n: int, name=None):
    T, O, total = backend(name).selfref_arrays(n)
    return T, O, int(total)


__all__ = [
    "ACTIVE", "BACKENDS", "KernelSource", "backend", "derive_seed", "enum_counts", "enum_size",
    "pointwise_hits", "prefix", "selfref_arrays", "stream_counts",
    "KIND_IID", "KIND_MARKOV", "KIND_PERIODIC", "KIND_SELFREF", "MODE_IID", "MODE_MARKOV",
]
