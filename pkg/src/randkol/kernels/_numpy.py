"""Pure-numpy kernels, used when numba is unavailable or ``RANDKOL_DISABLE_JIT`` is set.

The directed sequence is grown by repeated block expansion: once the first
``w`` letters are known, blocks ``m .. w-1`` have known lengths, so
``np.repeat(T[m:w], X[m:w])`` appends them in one call. Memory is O(length)
rather than the bit ring of the JIT path, but results are identical.
"""
import numpy as np

from .. import rng
from ._common import KIND_IID, KIND_MARKOV, KIND_PERIODIC, KIND_SELFREF, MODE_IID


def derive_seed(seed, index):
    return rng.derive_seed(int(seed), int(index))


def _directing(kind, pattern, a, b, p, start, seed, count):
    if kind == KIND_PERIODIC:
        return np.resize(np.asarray(pattern, dtype=np.uint8), count)
    if kind == KIND_IID:
        u = rng.uniforms(int(seed), 0, count)
        return np.where(u < p, a, b).astype(np.uint8)
    if kind == KIND_MARKOV:
        flips = np.zeros(count, dtype=np.int64)
        if count > 1:
            flips[1:] = rng.uniforms(int(seed), 0, count - 1) < p
        other = b if start == a else a
        return np.where(np.cumsum(flips) % 2 == 1, other, start).astype(np.uint8)
    raise ValueError(f"no directing array for kind {kind}")


def _selfref_fill(X, m, w, ones_before):
    """Fill letters of self-referential blocks m..w-1, given X[:w]."""
    lengths = X[m:w]
    is_one = (lengths == 1)
    if m == 0:
        is_one[0] = False
    idx = ones_before + np.cumsum(is_one) - is_one
    T = np.where(lengths == 2, 1, np.where(idx % 2 == 0, 1, 2)).astype(np.uint8)
    if m == 0:
        T[0] = 2
    return T, ones_before + int(is_one.sum())


def letters(kind, pattern, a, b, p, start, seed, length):
    """First ``length`` letters of O_T, plus the directing letters consumed."""
    if length <= 0:
        return np.empty(0, dtype=np.uint8)
    selfref = kind == KIND_SELFREF
    T = None if selfref else _directing(kind, pattern, a, b, p, start, seed, length)
    X = np.empty(length, dtype=np.uint8)
    w = 0
    m = 0
    ones_before = 0
    while w < length:
        if w == m:
            # nothing pending: the block's first letter is its own length
            if selfref:
                fill, ones_before = _selfref_fill(np.array([2], dtype=np.uint8), 0, 1, 0)
                t = int(fill[0])
            else:
                t = int(T[m])
            L = min(t, length - w)
            X[w:w + L] = t
            w += L
            m += 1
            continue
        if selfref:
            fills, ones_before = _selfref_fill(X, m, w, ones_before)
        else:
            fills = T[m:w]
        block = np.repeat(fills, X[m:w].astype(np.int64))
        take = min(block.size, length - w)
        X[w:w + take] = block[:take]
        m, w = w, w + take
    return X


def stream(kind, pattern, a, b, p, start, seed, lo, hi, length, checkpoints, record):
    X = letters(kind, pattern, a, b, p, start, seed, length)
    cum = np.concatenate(([0], np.cumsum(X == lo, dtype=np.int64)))
    cps = np.asarray(checkpoints, dtype=np.int64)
    counts = cum[np.clip(cps, 0, length)]
    return counts, (X if record else np.empty(0, dtype=np.uint8))


def pointwise(kind, pattern, a, b, p, start, seed, lo, hi, n, t0, t1):
    hits = 0
    for trial in range(t0, t1):
        s = derive_seed(seed, trial)
        X = letters(kind, pattern, a, b, p, start, s, n)
        hits += int(X[n - 1] == lo)
    return hits


def _tuples(n, lo, hi, mode, start, lo_idx, hi_idx):
    idx = np.arange(lo_idx, hi_idx, dtype=np.int64)
    if mode == MODE_IID:
        shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
        bits = (idx[:, None] >> shifts[None, :]) & 1
        T = np.where(bits == 1, hi, lo)
        c = n - bits.sum(axis=1)
    else:
        shifts = np.arange(n - 2, -1, -1, dtype=np.int64)
        bits = (idx[:, None] >> shifts[None, :]) & 1
        parity = np.concatenate([np.zeros((idx.size, 1), dtype=np.int64),
                                 np.cumsum(bits, axis=1) % 2], axis=1)
        other = hi if start == lo else lo
        T = np.where(parity == 1, other, start)
        c = bits.sum(axis=1)
    return T.astype(np.int64), c


def enum_counts(n, lo, hi, mode, start, pos_a, pos_b, i0, i1, chunk=1 << 15):
    counts = np.zeros((n + 1, 2, 2, n + 1), dtype=np.int64)
    for base in range(i0, i1, chunk):
        T, c = _tuples(n, lo, hi, mode, start, base, min(base + chunk, i1))
        rows = np.arange(T.shape[0])
        X = np.zeros((T.shape[0], n), dtype=np.int64)
        w = np.zeros(T.shape[0], dtype=np.int64)
        covered = np.zeros(T.shape[0], dtype=np.int64)
        kfound = np.zeros(T.shape[0], dtype=np.int64)
        for j in range(n):
            x = T[:, j]
            inside = w < n
            X[rows[inside], w[inside]] = x[inside]
            L = X[:, j]
            for q in range(1, int(L.max())):
                sel = (q < L) & (w + q < n)
                X[rows[sel], w[sel] + q] = x[sel]
            w += L
            covered += L * x
            newly = (kfound == 0) & (covered >= n)
            kfound[newly] = j + 1
        A = (X[:, pos_a] == lo).astype(np.int64)
        B = (X[:, pos_b] == lo).astype(np.int64)
        np.add.at(counts, (c, A, B, kfound), 1)
    return counts


def selfref_arrays(n):
    T = np.empty(n, dtype=np.uint8)
    T[0] = 2
    O = np.full(2, 2, dtype=np.uint8)
    m = 1
    ones_before = 0
    while m < n:
        w = min(O.size, n)
        fills, ones_before = _selfref_fill(O, m, w, ones_before)
        T[m:w] = fills
        O = np.concatenate((O, np.repeat(fills, O[m:w].astype(np.int64))))
        m = w
    total = int(O[:n].astype(np.int64).sum())
    return T, O[:n].copy(), total
