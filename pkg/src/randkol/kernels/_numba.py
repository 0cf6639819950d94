"""JIT-compiled kernels. Every function here has a twin in ``_numpy`` with identical output."""
import numpy as np
from numba import njit

from ._common import KIND_IID, KIND_MARKOV, KIND_PERIODIC, KIND_SELFREF, MODE_IID

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV53 = 1.0 / (1 << 53)
_ONE = np.uint64(1)


@njit(inline="always")
def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@njit(inline="always")
def _uniform(seed, j):
    z = _mix64(seed + np.uint64(j + 1) * _GAMMA)
    return np.float64(z >> np.uint64(11)) * _INV53


@njit(cache=True)
def derive_seed(seed, index):
    return _mix64(seed ^ _mix64(np.uint64(index + 1) * _GAMMA))


@njit(cache=True)
def _grow(buf, head, size):
    capbits = buf.size * 64
    out = np.zeros(buf.size * 2, dtype=np.uint64)
    for i in range(size):
        src = (head + i) % capbits
        if (buf[src >> 6] >> np.uint64(src & 63)) & _ONE:
            out[i >> 6] |= _ONE << np.uint64(i & 63)
    return out


@njit(cache=True, nogil=True)
def stream(kind, pattern, a, b, p, start, seed, lo, hi, length, checkpoints, record):
    """Stream O_T to ``length`` letters.

    The pending queue is a growable bit ring (bit set = ``hi``). Returns the
    lo-letter counts at each checkpoint and, when ``record``, the letters.
    """
    letters = np.empty(length if record else 0, dtype=np.uint8)
    ncp = checkpoints.size
    counts = np.zeros(ncp, dtype=np.int64)
    ci = 0
    while ci < ncp and checkpoints[ci] <= 0:
        ci += 1

    buf = np.zeros(16, dtype=np.uint64)
    head = 0
    size = 0
    emitted = 0
    count_lo = 0
    k = 0
    prev = start
    d = 1
    plen = pattern.size

    while emitted < length:
        if kind == KIND_SELFREF and k > 0:
            capbits = buf.size * 64
            L = hi if (buf[head >> 6] >> np.uint64(head & 63)) & _ONE else lo
            head = (head + 1) % capbits
            size -= 1
            if L == 2:
                t = 1
            else:
                t = d
                d = 3 - d
            pushed = 0
        else:
            if kind == KIND_PERIODIC:
                t = pattern[k % plen]
            elif kind == KIND_IID:
                t = a if _uniform(seed, k) < p else b
            elif kind == KIND_MARKOV:
                if k > 0 and _uniform(seed, k - 1) < p:
                    prev = b if prev == a else a
                t = prev
            else:
                t = 2
            L = -1
            pushed = 0
        k += 1

        bit = _ONE if t == hi else np.uint64(0)
        is_lo = 1 if t == lo else 0
        r = 0
        while True:
            # push this letter onto the pending queue
            capbits = buf.size * 64
            if size == capbits:
                buf = _grow(buf, head, size)
                head = 0
                capbits = buf.size * 64
            idx = (head + size) % capbits
            w = idx >> 6
            sh = np.uint64(idx & 63)
            buf[w] = (buf[w] & ~(_ONE << sh)) | (bit << sh)
            size += 1
            if L < 0:
                # block's own first letter is its length when nothing was pending
                L = hi if (buf[head >> 6] >> np.uint64(head & 63)) & _ONE else lo
                head = (head + 1) % capbits
                size -= 1
            if record:
                letters[emitted] = t
            emitted += 1
            count_lo += is_lo
            while ci < ncp and checkpoints[ci] == emitted:
                counts[ci] = count_lo
                ci += 1
            r += 1
            if r >= L or emitted >= length:
                break
    return counts, letters


@njit(cache=True, nogil=True)
def pointwise(kind, pattern, a, b, p, start, seed, lo, hi, n, t0, t1):
    """Number of trials in [t0, t1) whose n-th letter (1-indexed) is ``lo``."""
    cps = np.array([n - 1, n], dtype=np.int64)
    hits = 0
    for trial in range(t0, t1):
        s = derive_seed(seed, trial)
        counts, _ = stream(kind, pattern, a, b, p, start, s, lo, hi, n, cps, False)
        hits += counts[1] - counts[0]
    return hits


@njit(cache=True, nogil=True)
def enum_counts(n, lo, hi, mode, start, pos_a, pos_b, i0, i1):
    """Exhaustive classification of directing tuples of length ``n``.

    Returns ``counts[c, A, B, k]``: the number of tuples with weight class c
    (lo-count for i.i.d., switch count for Markov), ``A = [X[pos_a] == lo]``,
    ``B = [X[pos_b] == lo]`` and S_{n,k} index k. Tuples are visited in
    lexicographic order, first letter most significant, bit 0 = lo; only
    tuple indices in [i0, i1) are visited so the space can be sharded.
    """
    counts = np.zeros((n + 1, 2, 2, n + 1), dtype=np.int64)
    T = np.empty(n, dtype=np.int64)
    X = np.empty(n, dtype=np.int64)
    other = hi if start == lo else lo
    for idx in range(i0, i1):
        c = 0
        if mode == MODE_IID:
            for j in range(n):
                if (idx >> (n - 1 - j)) & 1:
                    T[j] = hi
                else:
                    T[j] = lo
                    c += 1
        else:
            cur = start
            T[0] = cur
            for j in range(1, n):
                if (idx >> (n - 1 - j)) & 1:
                    cur = other if cur == start else start
                    c += 1
                T[j] = cur
        w = 0
        covered = 0
        kfound = 0
        j = 0
        while w < n or kfound == 0:
            x = T[j]
            if w < n:
                X[w] = x
            L = X[j]
            for q in range(1, L):
                if w + q < n:
                    X[w + q] = x
            w += L
            covered += L * x
            j += 1
            if kfound == 0 and covered >= n:
                kfound = j
        A = 1 if X[pos_a] == lo else 0
        B = 1 if X[pos_b] == lo else 0
        counts[c, A, B, kfound] += 1
    return counts


@njit(cache=True)
def selfref_arrays(n):
    """T of length n and the first n letters of O from the coupled construction."""
    T = np.empty(n, dtype=np.uint8)
    O = np.empty(n + 2, dtype=np.uint8)
    T[0] = 2
    O[0] = 2
    O[1] = 2
    w = 2
    d = 1
    for i in range(1, n):
        if O[i] == 2:
            T[i] = 1
            if w < n + 2:
                O[w] = 1
            if w + 1 < n + 2:
                O[w + 1] = 1
            w += 2
        else:
            T[i] = d
            if w < n + 2:
                O[w] = d
            w += 1
            d = 3 - d
    return T, O[:n], w
