"""Counter-based SplitMix64 generator.

Draw ``j`` of the stream keyed by ``seed`` is::

    mix64(seed + (j + 1) * GAMMA)          (mod 2**64)

and a uniform in [0, 1) keeps its top 53 bits: ``(x >> 11) * 2**-53``.
Because a draw is a pure function of (seed, j), the scalar, vectorized and
JIT-compiled paths agree bit for bit, and any draw can be produced without
replaying the ones before it.

Per-trial keys are ``derive_seed(seed, trial) = mix64(seed ^ mix64((trial + 1) * GAMMA))``.
"""
import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
INV53 = 1.0 / (1 << 53)


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    return mix64((seed & MASK64) ^ mix64(((index + 1) * GAMMA) & MASK64))


def draw_u64(seed: int, j: int) -> int:
    return mix64((seed + (j + 1) * GAMMA) & MASK64)


def draw_uniform(seed: int, j: int) -> float:
    return (draw_u64(seed, j) >> 11) * INV53


def uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized draws ``start .. start + count - 1`` of stream ``seed``."""
    with np.errstate(over="ignore"):
        j = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        z = np.uint64(seed & MASK64) + j * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * INV53


class CounterRng:
    """Sequential view of one stream: remembers how many draws were taken."""

    __slots__ = ("seed", "position")

    def __init__(self, seed: int, position: int = 0):
        self.seed = seed & MASK64
        self.position = position

    def random(self) -> float:
        u = draw_uniform(self.seed, self.position)
        self.position += 1
        return u

    def bernoulli(self, p: float) -> bool:
        return self.random() < p
