"""Backtracking kernels for the longest good coloring.

Two implementations of the same depth-first search live here:

* ``dfs_longest_numba``: compiled with numba ``@njit(nogil=True)``, scalar loops.
* ``dfs_longest_numpy``: plain Python driver with a vectorized conflict test.

Set ``RADOSEARCH_DISABLE_NUMBA=1`` to force the numpy path. It is also used
when numba is not importable.

Constraint layout (CSR over positions): rows ``offsets[p]:offsets[p+1]`` of
``cons`` hold the position sets for integer ``p``; short sets are padded by
repeating their first entry. ``blocked[p]`` is set when (p, ..., p) is itself
a solution, so no color fits at p.

Both kernels return ``(status, best_len, best_colors, nodes)`` where
``best_colors[1:best_len+1]`` is the first coloring (in DFS order) reaching the
longest length seen. Status codes are below.
"""

from __future__ import annotations

import os

import numpy as np

DONE = 0  # subtree exhausted, best_len is exact for this subtree
REACHED_CAP = 1  # a good coloring of length n_cap was found
TIMED_OUT = 2
PREEMPTED = 3  # an earlier partition already reached the cap

# stop[0]: smallest partition index that reached the cap; stop[1]: timeout flag
NO_PARTITION = np.iinfo(np.int64).max
CHECK_EVERY = 1 << 14

_DISABLE = os.environ.get("RADOSEARCH_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLE:
        raise ImportError("numba disabled by RADOSEARCH_DISABLE_NUMBA")
    import numba

    HAS_NUMBA = True
except ImportError:
    numba = None
    HAS_NUMBA = False


def new_stop_flags() -> np.ndarray:
    stop = np.zeros(2, dtype=np.int64)
    stop[0] = NO_PARTITION
    return stop


def dfs_longest_numpy(offsets, cons, blocked, n_cap, t, prefix, part_index, stop):
    col = np.zeros(n_cap + 2, dtype=np.int64)
    maxused = np.zeros(n_cap + 2, dtype=np.int64)
    tryc = np.zeros(n_cap + 2, dtype=np.int64)
    d = len(prefix)
    for i in range(d):
        col[i + 1] = prefix[i]
        maxused[i + 1] = max(maxused[i], prefix[i])
    best = d
    best_col = col.copy()
    nodes = 0
    if d >= n_cap:
        return REACHED_CAP, best, best_col, nodes

    p = d + 1
    tryc[p] = 1
    while p > d:
        if p > n_cap:
            return REACHED_CAP, n_cap, col.copy(), nodes
        c = tryc[p]
        limit = min(t, maxused[p - 1] + 1)
        if c > limit or blocked[p]:
            p -= 1
            if p > d:
                tryc[p] += 1
            continue
        nodes += 1
        if nodes % CHECK_EVERY == 0:
            if stop[1] != 0:
                return TIMED_OUT, best, best_col, nodes
            if stop[0] < part_index:
                return PREEMPTED, best, best_col, nodes
        lo, hi = offsets[p], offsets[p + 1]
        if hi > lo and (col[cons[lo:hi]] == c).all(axis=1).any():
            tryc[p] += 1
            continue
        col[p] = c
        maxused[p] = max(maxused[p - 1], c)
        if p > best:
            best = p
            best_col[:] = col
        p += 1
        tryc[p] = 1
    return DONE, best, best_col, nodes


def _dfs_longest_loops(offsets, cons, blocked, n_cap, t, prefix, part_index, stop):
    width = cons.shape[1]
    col = np.zeros(n_cap + 2, dtype=np.int64)
    maxused = np.zeros(n_cap + 2, dtype=np.int64)
    tryc = np.zeros(n_cap + 2, dtype=np.int64)
    d = len(prefix)
    for i in range(d):
        col[i + 1] = prefix[i]
        maxused[i + 1] = max(maxused[i], prefix[i])
    best = d
    best_col = col.copy()
    nodes = 0
    if d >= n_cap:
        return REACHED_CAP, best, best_col, nodes

    p = d + 1
    tryc[p] = 1
    while p > d:
        if p > n_cap:
            return REACHED_CAP, n_cap, col.copy(), nodes
        c = tryc[p]
        limit = min(t, maxused[p - 1] + 1)
        if c > limit or blocked[p]:
            p -= 1
            if p > d:
                tryc[p] += 1
            continue
        nodes += 1
        if nodes % CHECK_EVERY == 0:
            if stop[1] != 0:
                return TIMED_OUT, best, best_col, nodes
            if stop[0] < part_index:
                return PREEMPTED, best, best_col, nodes
        conflict = False
        for r in range(offsets[p], offsets[p + 1]):
            mono = True
            for w in range(width):
                if col[cons[r, w]] != c:
                    mono = False
                    break
            if mono:
                conflict = True
                break
        if conflict:
            tryc[p] += 1
            continue
        col[p] = c
        if c > maxused[p - 1]:
            maxused[p] = c
        else:
            maxused[p] = maxused[p - 1]
        if p > best:
            best = p
            for i in range(p + 1):
                best_col[i] = col[i]
        p += 1
        tryc[p] = 1
    return DONE, best, best_col, nodes


if HAS_NUMBA:
    dfs_longest_numba = numba.njit(nogil=True, cache=True)(_dfs_longest_loops)
    dfs_longest = dfs_longest_numba
    BACKEND = "numba"
else:
    dfs_longest_numba = None
    dfs_longest = dfs_longest_numpy
    BACKEND = "numpy"
