"""Closed-form letter probabilities and their brute-force enumeration oracles.

Under the i.i.d. law P(T_i = lo) = p, every tuple in {lo, hi}^n with c lo
letters weighs p**c * (1-p)**(n-c). The oracles classify all tuples once,
counting them per weight class ``c`` in exact integers (the counts do not
depend on p and are cached), and only then sum the at most n+1 weighted
classes with ``math.fsum``. The result is therefore independent of how the
tuple space is sharded. The Markov oracle is the same with ``c`` = number of
switches along the path from the fixed start letter.
"""
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict

import numpy as np

from . import kernels
from ._config import ENUM_MAX_N
from .core import Alphabet, check_letter, direct_finite
from .errors import DomainError, OutOfRangeError, ResourceLimitError

CLASSIC = Alphabet(1, 2)


@dataclass(frozen=True)
class SnkTable:
    n: int
    sizes: Dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.sizes.values())


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability must lie in [0,1], got {p!r}")
    return p


def _check_n(n: int) -> int:
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if n > ENUM_MAX_N:
        raise ResourceLimitError(f"enumeration is capped at n={ENUM_MAX_N}, got n={n}")
    return n


def _as_alphabet(alphabet) -> Alphabet:
    if isinstance(alphabet, Alphabet):
        return alphabet
    return Alphabet.of(*alphabet)


def center(x: int, p: float) -> float:
    if x not in (1, 2):
        raise DomainError(f"centering is defined on {{1,2}}, got {x}")
    return x - (2.0 - p)


# -- S_{n,k} -----------------------------------------------------------------

def snk_index(T) -> int:
    """Smallest j such that the letters of O_{t_1..t_j} sum to at least n = |T|."""
    n = len(T)
    if n == 0:
        raise DomainError("T must be nonempty")
    if any(check_letter(t) not in (1, 2) for t in T):
        raise DomainError("S_{n,k} is defined for tuples over {1,2}")
    X = []
    covered = 0
    for j, t in enumerate(T):
        X.append(t)
        X.extend([t] * (X[j] - 1))
        covered += t * X[j]
        if covered >= n:
            return j + 1
    raise AssertionError("unreachable: coverage reaches n after n steps")


@lru_cache(maxsize=256)
def _counts(n, lo, hi, mode, start, pos_a, pos_b, shards=1):
    size = kernels.enum_size(n, mode)
    if shards <= 1:
        out = kernels.enum_counts(n, lo, hi, mode, start, pos_a, pos_b)
    else:
        bounds = np.linspace(0, size, shards + 1).astype(np.int64)
        with ThreadPoolExecutor(max_workers=shards) as pool:
            parts = pool.map(
                lambda r: kernels.enum_counts(n, lo, hi, mode, start, pos_a, pos_b, int(r[0]), int(r[1])),
                zip(bounds[:-1], bounds[1:]),
            )
            out = sum(parts)
    out.setflags(write=False)
    return out


def enum_table(n, alphabet=CLASSIC, mode=kernels.MODE_IID, start=None, pos_a=None, pos_b=None, shards=1):
    """Integer counts ``[class, X_a is lo, X_b is lo, k]`` over all directing tuples of length n.

    Positions are 1-indexed and default to n.
    """
    _check_n(n)
    al = _as_alphabet(alphabet)
    pos_a = n if pos_a is None else pos_a
    pos_b = n if pos_b is None else pos_b
    if not (1 <= pos_a <= n and 1 <= pos_b <= n):
        raise DomainError("positions must lie in 1..n")
    start = al.lo if start is None else start
    if start not in al:
        raise DomainError(f"start letter {start} not in {tuple(al)}")
    return _counts(n, al.lo, al.hi, mode, start, pos_a - 1, pos_b - 1, shards)


def _weights(p: float, steps: int) -> np.ndarray:
    c = np.arange(steps + 1)
    return np.array([p ** int(i) * (1.0 - p) ** int(steps - i) for i in c])


def _weigh(counts_by_class: np.ndarray, p: float, steps: int) -> float:
    w = _weights(p, steps)
    return math.fsum(int(k) * float(wi) for k, wi in zip(counts_by_class, w) if k)


def snk_partition(n: int) -> SnkTable:
    table = enum_table(n)
    per_k = table.sum(axis=(0, 1, 2))
    return SnkTable(n, {k: int(per_k[k]) for k in range(1, n + 1)})


def snk_members(n: int, k: int = None):
    """Tuples of {1,2}^n in lexicographic order with their S_{n,k} index."""
    if n > 20:
        raise ResourceLimitError("listing is capped at n=20")
    _check_n(n)
    for T in itertools.product((1, 2), repeat=n):
        j = snk_index(T)
        if k is None or j == k:
            yield T, j


def snk_conditionals(p: float, n: int) -> Dict[int, tuple]:
    """For each k: (P(T in S_{n,k}), P(X_n = 1 | T in S_{n,k})) under the i.i.d. law; NaN if P(S)=0."""
    p = _check_p(p)
    table = enum_table(n)
    out = {}
    for k in range(1, n + 1):
        ps = _weigh(table[:, :, :, k].sum(axis=(1, 2)), p, n)
        hit = _weigh(table[:, 1, 1, k], p, n)
        out[k] = (ps, hit / ps if ps > 0 else math.nan)
    return out


# -- i.i.d. law --------------------------------------------------------------

def p_xn_closed(p: float, n: int, alphabet=CLASSIC) -> float:
    """P(X_n = lo) under the i.i.d. law with P(T = lo) = p."""
    p = _check_p(p)
    al = _as_alphabet(alphabet)
    if al.lo == 1:
        threshold = max(2, al.hi)
        if n < threshold:
            raise OutOfRangeError(f"closed form over {{1,{al.hi}}} needs n >= {threshold}, got {n}")
        return p * (1.0 - p ** (n - al.hi) + p ** (n - 1))
    if n < al.hi + 1:
        raise OutOfRangeError(f"closed form over {{{al.lo},{al.hi}}} needs n >= {al.hi + 1}, got {n}")
    return p


def p_xn_enum(p: float, n: int, alphabet=CLASSIC, letter: int = None, shards: int = 1) -> float:
    p = _check_p(p)
    al = _as_alphabet(alphabet)
    letter = al.lo if letter is None else letter
    if letter not in al:
        raise DomainError(f"letter {letter} not in {tuple(al)}")
    table = enum_table(n, al, shards=shards)
    hit = table[:, 1, 1, :].sum(axis=1) if letter == al.lo else table[:, 0, 0, :].sum(axis=1)
    return _weigh(hit, p, n)


def joint_enum(p: float, m: int, n: int, lm: int, ln: int, alphabet=CLASSIC) -> float:
    """P(X_m = lm and X_n = ln) by enumeration over {lo, hi}^n."""
    p = _check_p(p)
    al = _as_alphabet(alphabet)
    if not 1 <= m < n:
        raise DomainError(f"need 1 <= m < n, got m={m}, n={n}")
    if lm not in al or ln not in al:
        raise DomainError("letters must belong to the alphabet")
    table = enum_table(n, al, pos_a=m, pos_b=n)
    A = 1 if lm == al.lo else 0
    B = 1 if ln == al.lo else 0
    return _weigh(table[:, A, B, :].sum(axis=1), p, n)


def corr_closed(p: float, m: int, n: int) -> float:
    """E(centered X_m * centered X_n) for n >= m + 2."""
    p = _check_p(p)
    if m < 1 or n < m + 2:
        raise OutOfRangeError(f"closed correlation needs m >= 1 and n >= m + 2, got m={m}, n={n}")
    return -((1.0 - p) ** 2) * p ** (n - 1)


def corr_enum(p: float, m: int, n: int) -> float:
    return math.fsum(
        joint_enum(p, m, n, a, b) * center(a, p) * center(b, p)
        for a in (1, 2) for b in (1, 2)
    )


# -- Markov law --------------------------------------------------------------

def markov_two_step(p: float, gap: int, same: bool = True) -> float:
    """P(T_s = T_r) (``same``) or P(T_s != T_r) for s - r = gap."""
    p = _check_p(p)
    if gap < 1:
        raise DomainError(f"gap must be at least 1, got {gap}")
    r = (1.0 - 2.0 * p) ** gap
    return 0.5 * (1.0 + r) if same else 0.5 * (1.0 - r)


def markov_xn_enum(p: float, n: int, alphabet=CLASSIC, start: int = None, letter: int = None) -> float:
    """P(X_n = letter) (default lo) under the Markov law from ``start`` (default lo)."""
    p = _check_p(p)
    al = _as_alphabet(alphabet)
    letter = al.lo if letter is None else letter
    if letter not in al:
        raise DomainError(f"letter {letter} not in {tuple(al)}")
    table = enum_table(n, al, mode=kernels.MODE_MARKOV, start=start)
    hit = table[:, 1, 1, :].sum(axis=1) if letter == al.lo else table[:, 0, 0, :].sum(axis=1)
    return _weigh(hit, p, n - 1)
