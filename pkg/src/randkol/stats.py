"""Letter-density traces and seeded Monte Carlo estimates.

Trial ``i`` of a Monte Carlo run is keyed by ``derive_seed(seed, i)``, so each
trial is reproducible on its own and results do not depend on how trials are
split across threads. Sums are kept as exact integers; floats are derived.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, NamedTuple, Sequence

import numpy as np

from . import _config, kernels
from .errors import DomainError, ResourceLimitError
from .sources import SelfRef

MAX_LENGTH = 1 << 40


class Checkpoint(NamedTuple):
    position: int
    count_lo: int
    count_hi: int
    density_lo: float


@dataclass
class DensityTrace:
    checkpoints: List[Checkpoint] = field(default_factory=list)
    lo: int = 1

    @property
    def final(self) -> Checkpoint:
        return self.checkpoints[-1]

    def at(self, position: int) -> Checkpoint:
        for cp in self.checkpoints:
            if cp.position == position:
                return cp
        raise KeyError(position)


def default_checkpoints(length: int) -> List[int]:
    """Powers of two from 2**10 below ``length``, then ``length`` itself."""
    out = []
    pos = 1 << 10
    while pos < length:
        out.append(pos)
        pos <<= 1
    out.append(length)
    return out


def _check_budget(length: int, backend: str = None):
    if length < 0:
        raise DomainError("length must be non-negative")
    if length > MAX_LENGTH:
        raise ResourceLimitError(f"length {length} exceeds 2**40")
    # bit ring on the JIT path; letters, directing letters and uniforms on the numpy path
    need = length // 8 + 1 if (backend or kernels.ACTIVE) == "numba" else 10 * length
    if need > _config.PENDING_BUDGET_BYTES:
        raise ResourceLimitError(
            f"length {length} needs ~{need} bytes, budget is {_config.PENDING_BUDGET_BYTES}")


def _threads(threads):
    return _config.default_threads() if threads is None else max(1, int(threads))


def _shards(total: int, parts: int):
    parts = max(1, min(parts, total))
    bounds = np.linspace(0, total, parts + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]


def density_trace(spec, length: int, checkpoints: Sequence[int] = None, seed: int = 0,
                  backend: str = None) -> DensityTrace:
    """Stream one realization keyed by ``seed`` and record lo-letter counts."""
    _check_budget(length, backend)
    cps = default_checkpoints(length) if checkpoints is None else sorted(set(int(c) for c in checkpoints))
    if any(c < 1 or c > length for c in cps):
        raise DomainError("checkpoints must lie in 1..length")
    src = kernels.KernelSource.from_spec(spec)
    counts, _ = kernels.stream_counts(src, seed, length, cps, name=backend)
    trace = DensityTrace(lo=src.lo)
    for pos, c in zip(cps, counts):
        c = int(c)
        trace.checkpoints.append(Checkpoint(pos, c, pos - c, c / pos))
    return trace


@dataclass(frozen=True)
class MCResult:
    """Pooled per-trial values ``v_i = count_i / scale``, with integer sufficient statistics."""

    trials: int = 0
    count_sum: int = 0
    count_sq_sum: int = 0
    scale: int = 1
    seed: int = 0

    @property
    def sum(self) -> float:
        return self.count_sum / self.scale

    @property
    def sum_sq(self) -> float:
        return self.count_sq_sum / self.scale ** 2

    @property
    def mean(self) -> float:
        return self.count_sum / (self.trials * self.scale) if self.trials else math.nan

    @property
    def stderr(self) -> float:
        if not self.trials:
            return math.nan
        spread = self.trials * self.count_sq_sum - self.count_sum ** 2
        return math.sqrt(max(spread, 0)) / (self.trials * self.scale * math.sqrt(self.trials))

    @classmethod
    def from_counts(cls, counts, scale: int, seed: int) -> "MCResult":
        counts = [int(c) for c in counts]
        return cls(len(counts), sum(counts), sum(c * c for c in counts), scale, seed)


def merge(a: MCResult, b: MCResult) -> MCResult:
    if a.trials == 0:
        return b
    if b.trials == 0:
        return a
    if a.scale != b.scale:
        raise DomainError("cannot merge results with different scales")
    return MCResult(a.trials + b.trials, a.count_sum + b.count_sum,
                    a.count_sq_sum + b.count_sq_sum, a.scale, a.seed)


def trial_counts(spec, length: int, trials: int, seed: int = 0, threads: int = None,
                 backend: str = None) -> np.ndarray:
    """Terminal lo-letter count of every trial, in trial order."""
    if trials < 1:
        raise DomainError("trials must be at least 1")
    _check_budget(length, backend)
    src = kernels.KernelSource.from_spec(spec)
    cps = np.array([length], dtype=np.int64)

    def run(bounds):
        out = []
        for t in range(*bounds):
            counts, _ = kernels.stream_counts(src, kernels.derive_seed(seed, t), length, cps, name=backend)
            out.append(int(counts[0]))
        return out

    shards = _shards(trials, _threads(threads))
    with ThreadPoolExecutor(max_workers=len(shards)) as pool:
        parts = list(pool.map(run, shards))
    return np.array([c for part in parts for c in part], dtype=np.int64)


def mc_density(spec, length: int, trials: int, seed: int = 0, threads: int = None,
               backend: str = None) -> MCResult:
    counts = trial_counts(spec, length, trials, seed, threads, backend)
    return MCResult.from_counts(counts, length, seed)


def mc_pointwise(spec, n: int, trials: int, seed: int = 0, threads: int = None,
                 backend: str = None) -> MCResult:
    """Frequency of X_n = lo over independent realizations (n is 1-indexed)."""
    if trials < 1:
        raise DomainError("trials must be at least 1")
    if n < 1:
        raise DomainError("n must be at least 1")
    _check_budget(n, backend)
    src = kernels.KernelSource.from_spec(spec)
    shards = _shards(trials, _threads(threads))
    with ThreadPoolExecutor(max_workers=len(shards)) as pool:
        hits = sum(pool.map(lambda b: kernels.pointwise_hits(src, seed, n, b[0], b[1], name=backend), shards))
    # 0/1 values: the sum of squares equals the sum
    return MCResult(trials, hits, hits, 1, seed)


class SelfRefDensities(NamedTuple):
    dT: float
    dO: float
    limit_residual: float
    balance_residual: float
    limit_defined: bool


class SelfRefProfile(NamedTuple):
    """Per-checkpoint counts of the coupled construction; arrays indexed like ``n``."""

    n: np.ndarray
    T1: np.ndarray          # |T^(n)|_1
    T2: np.ndarray          # |T^(n)|_2
    O1: np.ndarray          # |O^(n)|_1
    O2: np.ndarray          # |O^(n)|_2
    x1: np.ndarray          # |x_1 .. x_n|_1
    x2: np.ndarray          # |x_1 .. x_n|_2

    @property
    def balance_residual(self) -> np.ndarray:
        return (self.T1 - (self.x2 + 0.5 * self.x1)) / self.n


def selfref_profile(n: int, checkpoints: Sequence[int] = None, backend: str = None) -> SelfRefProfile:
    """Letter counts of T^(m) and O^(m) for every checkpoint m (default: every m in 1..n)."""
    if n < 1:
        raise DomainError("n must be at least 1")
    T, O, _ = kernels.selfref_arrays(n, backend)
    T = T.astype(np.int64)
    O = O.astype(np.int64)
    idx = np.arange(1, n + 1) if checkpoints is None else np.asarray(sorted(set(checkpoints)), dtype=np.int64)
    if idx.size and (idx[0] < 1 or idx[-1] > n):
        raise DomainError("checkpoints must lie in 1..n")
    sel = idx - 1
    T1 = np.cumsum(T == 1)[sel]
    O1 = np.cumsum(O * (T == 1))[sel]
    O2 = np.cumsum(O * (T == 2))[sel]
    x1 = np.cumsum(O == 1)[sel]
    return SelfRefProfile(idx, T1, idx - T1, O1, O2, x1, idx - x1)


def selfref_densities(n: int, backend: str = None) -> SelfRefDensities:
    """Densities of 1 in T^(n) and in O^(n), with the residuals of the two limit identities.

    ``limit_residual = dO - (3 dT - 1) / (2 dT)`` is undefined (NaN) when dT = 0.
    ``balance_residual = dT - (d2 + d1 / 2)`` with d1, d2 the densities of 1 and 2
    among the first n letters of O; its magnitude is at most 1/n.
    """
    prof = selfref_profile(n, [n], backend)
    dT = int(prof.T1[0]) / n
    dO = int(prof.O1[0]) / int(prof.O1[0] + prof.O2[0])
    defined = dT > 0
    lim = dO - (3 * dT - 1) / (2 * dT) if defined else math.nan
    return SelfRefDensities(dT, dO, lim, float(prof.balance_residual[0]), defined)


def selfref_trace(length: int, checkpoints: Sequence[int] = None, backend: str = None) -> DensityTrace:
    return density_trace(SelfRef(), length, checkpoints, backend=backend)
