"""Runtime switches read from the environment.

``RANDKOL_DISABLE_JIT=1`` forces the pure-numpy kernels even when numba is
importable. ``RANDKOL_THREADS`` is the default worker count for Monte Carlo.
"""
import os

TRUTHY = {"1", "true", "yes", "on"}


def jit_requested() -> bool:
    return os.environ.get("RANDKOL_DISABLE_JIT", "").strip().lower() not in TRUTHY


def default_threads() -> int:
    raw = os.environ.get("RANDKOL_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


# Bytes the pending-block queue of one streamed realization may use.
PENDING_BUDGET_BYTES = int(os.environ.get("RANDKOL_PENDING_BUDGET", str(1 << 30)))

# Largest tuple length the enumeration oracles accept.
ENUM_MAX_N = 24
