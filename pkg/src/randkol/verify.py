"""Invariant checks behind ``randkol verify``.

Each check returns ``(ok, detail)``; ``fast`` shrinks instance sizes so the
whole suite runs in a few seconds.
"""
import math
import random

import numpy as np

from . import exact, kernels, stats
from .core import DirectedStream, delta, direct_finite, rle
from .sources import FiniteState, SelfRef, make_source, parse_spec, selfref_build

KOLAKOSKI_15 = "122112122122112"
O13_16 = "1333111333131333"


def _prefix(text, length, seed=0):
    src = kernels.KernelSource.from_spec(parse_spec(text))
    return "".join(map(str, kernels.prefix(src, seed, length)))


def check_prefixes(fast):
    a, b = _prefix("classic:1,2", 15), _prefix("classic:1,3", 16)
    return a == KOLAKOSKI_15 and b == O13_16, f"{a} {b}"


def check_prefix_monotone(fast):
    rnd = random.Random(1)
    for _ in range(200 if fast else 2000):
        T = [rnd.choice((1, 2, 3)) for _ in range(rnd.randint(1, 16))]
        t = rnd.choice((1, 2, 3))
        small, big = direct_finite(T), direct_finite(T + [t])
        if big[:len(small)] != small or len(small) < len(T):
            return False, f"T={T}"
    return True, "prefix property and length bound hold"


def check_stream_batch(fast):
    n = 10**4 if fast else 10**5
    for text in ("iid:p=0.4,a=1,b=2", "markov:p=0.8,a=1,b=3", "periodic:2112111", "selfref"):
        s = DirectedStream(make_source(parse_spec(text), seed=5))
        streamed = s.take(n)
        src = kernels.KernelSource.from_spec(parse_spec(text))
        if streamed != tuple(kernels.prefix(src, 5, n).tolist()):
            return False, text
    T = make_source(parse_spec("iid:p=0.4,a=1,b=2"), seed=5).take(n)
    s = DirectedStream(iter(T))
    if s.take(n) != direct_finite(T)[:n]:
        return False, "finite source"
    return True, f"n={n}"


def check_fixed_point(fast):
    m = 10**3 if fast else 10**4
    w = tuple(kernels.prefix(kernels.KernelSource.from_spec(parse_spec("classic:1,2")), 0, m).tolist())
    runs = rle(w).complete_runs()
    lengths = tuple(n for _, n in runs)
    return w[:len(lengths)] == lengths, f"{len(lengths)} complete runs"


def check_partition(fast):
    top = 12 if fast else 16
    for n in range(1, top + 1):
        t = exact.snk_partition(n)
        if t.total != 2**n:
            return False, f"n={n}"
        if n >= 3:
            last = sorted(T for T, _ in exact.snk_members(n, n)) if n <= 12 else None
            if t.sizes[n] != 2 or t.sizes[n - 1] != 2:
                return False, f"n={n} boundary sizes"
            if last is not None and last != [(1,) * n, (1,) * (n - 1) + (2,)]:
                return False, f"n={n} S_nn"
    return True, f"n<={top}"


def check_closed_forms(fast):
    top = 14 if fast else 20
    worst = 0.0
    grid = [((1, 2), range(2, top + 1)), ((1, 3), range(3, top + 1)), ((2, 3), range(4, min(top, 16) + 1))]
    for al, ns in grid:
        for n in ns:
            for p in (0.2, 0.5, 0.8):
                worst = max(worst, abs(exact.p_xn_closed(p, n, al) - exact.p_xn_enum(p, n, al)))
    return worst <= 1e-12, f"max |closed - oracle| = {worst:.3g}"


def check_correlation(fast):
    top = 12 if fast else 18
    worst = 0.0
    for p in (0.3, 0.5, 0.7):
        for m in range(1, 7):
            for n in range(m + 2, top + 1):
                worst = max(worst, abs(exact.corr_closed(p, m, n) - exact.corr_enum(p, m, n)),
                            abs(exact.joint_enum(p, m, n, 2, 1) - p * exact.p_xn_enum(p, m, letter=2)))
    return worst <= 1e-12, f"max deviation = {worst:.3g}"


def check_conditionals(fast):
    top = 10 if fast else 14
    for p in (0.3, 0.6):
        for n in range(3, top + 1):
            cond = exact.snk_conditionals(p, n)
            for k, (ps, c) in cond.items():
                if ps == 0:
                    continue
                want = 0.0 if k == n - 1 else p
                if abs(c - want) > 1e-12:
                    return False, f"p={p} n={n} k={k}: {c}"
    return True, f"n<={top}"


def check_markov_two_step(fast):
    worst = 0.0
    for p in (0.1, 0.3, 0.5, 0.9):
        P = np.array([[1 - p, p], [p, 1 - p]])
        for gap in range(1, 31):
            M = np.linalg.matrix_power(P, gap)
            worst = max(worst, abs(M[0, 0] - exact.markov_two_step(p, gap, True)),
                        abs(M[0, 1] - exact.markov_two_step(p, gap, False)))
    return worst <= 1e-12, f"max deviation = {worst:.3g}"


def check_selfref(fast):
    n = 10**4 if fast else 10**5
    prof = stats.selfref_profile(n)
    coupled = bool(np.all(prof.O2 - prof.T2 == 1))
    slack = prof.T1 - (prof.x2 - 1 + 0.5 * prof.x1)
    counting = bool(np.all((slack == 0) | (slack == 0.5)))
    T, O = selfref_build(min(n, 10**4))
    consistent = direct_finite(T) == O
    return coupled and counting and consistent, f"n={n} coupling={coupled} counting={counting} O=O_T:{consistent}"


def check_selfref_densities(fast):
    n = 10**5 if fast else 10**6
    d = stats.selfref_densities(n)
    tol = 0.01 if fast else 0.005
    ok = abs(d.dT - (1 + math.sqrt(17)) / 8) <= tol and abs(d.dO - (7 - math.sqrt(17)) / 4) <= tol
    return ok and abs(d.balance_residual) <= 2 / n, f"dT={d.dT:.6f} dO={d.dO:.6f}"


def check_backends(fast):
    if "numba" not in kernels.BACKENDS:
        return True, "numba unavailable; single backend"
    n = 10**4 if fast else 10**5
    for text in ("iid:p=0.3,a=1,b=2", "markov:p=0.9,a=3,b=1", "periodic:122", "selfref"):
        src = kernels.KernelSource.from_spec(parse_spec(text))
        a = kernels.prefix(src, 11, n, name="numba")
        b = kernels.prefix(src, 11, n, name="numpy")
        if not np.array_equal(a, b):
            return False, text
    return True, f"identical prefixes of {n} letters"


def check_reproducible(fast):
    spec = parse_spec("iid:p=0.3,a=1,b=2")
    length, trials = (10**4, 8) if fast else (10**5, 16)
    a = stats.mc_density(spec, length, trials, seed=3, threads=1)
    b = stats.mc_density(spec, length, trials, seed=3, threads=4)
    return a == b, f"mean={a.mean}"


CHECKS = [
    ("prefixes", check_prefixes),
    ("prefix-monotone", check_prefix_monotone),
    ("stream-batch", check_stream_batch),
    ("fixed-point", check_fixed_point),
    ("partition", check_partition),
    ("closed-forms", check_closed_forms),
    ("correlation", check_correlation),
    ("snk-conditionals", check_conditionals),
    ("markov-two-step", check_markov_two_step),
    ("selfref-coupling", check_selfref),
    ("selfref-densities", check_selfref_densities),
    ("backends", check_backends),
    ("reproducible", check_reproducible),
]


def run_checks(fast=False):
    for name, fn in CHECKS:
        try:
            ok, detail = fn(fast)
        except Exception as e:  # a crashing check is a failing check
            ok, detail = False, f"{type(e).__name__}: {e}"
        yield name, bool(ok), detail
