"""Exact search for Rado numbers and maximal excellent colorings.

The engine walks positions 1, 2, ... and at position p only checks the
solutions whose largest entry is p, so goodness is tested incrementally.
Colorings are explored in canonical form (color c+1 is never used before
color c), which divides the tree by up to t! without losing witnesses.

Because goodness is closed under taking prefixes, a single depth-first pass
that records the deepest node answers both "is there a good coloring of
length cap" and "what is the longest one".
"""

from __future__ import annotations

import enum
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernels
from .equation import (
    Coloring,
    Equation,
    _minimal_sets,
    excellence_equations,
    is_excellent_coloring,
    is_good_coloring,
    solution_constraints,
)

log = logging.getLogger(__name__)

DEFAULT_SPLIT_DEPTH = 8


class SearchStatus(enum.Enum):
    EXACT = "Exact"
    EXCEEDS_CAP = "ExceedsCap"
    TIMEOUT = "Timeout"


class SearchTimeout(TimeoutError):
    def __init__(self, best_len: int, witness: Coloring):
        super().__init__(f"time budget exhausted; longest good coloring seen has length {best_len}")
        self.best_len = best_len
        self.witness = witness


class WitnessError(AssertionError):
    """A coloring returned by the engine failed independent re-verification."""


@dataclass(frozen=True)
class RadoResult:
    """Outcome of ``rado_number``.

    ``value`` is r for EXACT, the cap for EXCEEDS_CAP, and the longest good
    length seen so far for TIMEOUT.
    """

    equation: Equation
    num_colors: int
    status: SearchStatus
    value: int
    witness: Coloring
    elapsed: float
    nodes: int = 0
    backend: str = _kernels.BACKEND
    threads: int = 1

    @property
    def exact(self) -> int | None:
        return self.value if self.status is SearchStatus.EXACT else None


@dataclass(frozen=True)
class ExcellenceResult:
    coeffs: tuple[int, ...]
    num_colors: int
    status: SearchStatus
    value: int
    witness: Coloring
    elapsed: float
    nodes: int = 0
    backend: str = _kernels.BACKEND
    threads: int = 1


@dataclass
class _Outcome:
    status: int
    best_len: int
    colors: tuple[int, ...]
    nodes: int
    elapsed: float
    partitions: int = 1
    node_counts: list[int] = field(default_factory=list)


@lru_cache(maxsize=4096)
def _constraints_at(eq: Equation, p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(solution_constraints(eq, p))


@lru_cache(maxsize=256)
def build_constraints(equations: tuple[Equation, ...], n_cap: int):
    """CSR arrays consumed by the kernels for positions 1..n_cap."""
    offsets = np.zeros(n_cap + 2, dtype=np.int64)
    blocked = np.zeros(n_cap + 2, dtype=np.bool_)
    rows: list[tuple[int, ...]] = []
    for p in range(1, n_cap + 1):
        sets = set()
        for eq in equations:
            sets.update(_constraints_at(eq, p))
        minimal = _minimal_sets(sets)
        if minimal and minimal[0] == ():
            blocked[p] = True
            minimal = []
        offsets[p] = len(rows)
        rows.extend(minimal)
        offsets[p + 1] = len(rows)
    offsets[n_cap + 1] = len(rows)
    width = max((len(r) for r in rows), default=1)
    cons = np.zeros((len(rows), width), dtype=np.int64)
    for i, r in enumerate(rows):
        cons[i, : len(r)] = r
        cons[i, len(r):] = r[0]
    return offsets, cons, blocked


def _kernel(backend: str | None):
    if backend is None:
        return _kernels.dfs_longest
    if backend == "numba":
        if not _kernels.HAS_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable or disabled")
        return _kernels.dfs_longest_numba
    if backend == "numpy":
        return _kernels.dfs_longest_numpy
    raise ValueError(f"unknown backend {backend!r}")


def _prefixes(offsets, cons, blocked, t: int, depth: int) -> list[tuple[int, ...]]:
    """Canonical good colorings of exactly ``depth`` positions, in DFS order."""
    out: list[tuple[int, ...]] = []
    col = [0] * (depth + 1)

    def ok(p: int, c: int) -> bool:
        if blocked[p]:
            return False
        for r in range(offsets[p], offsets[p + 1]):
            if all(col[x] == c for x in cons[r]):
                return False
        return True

    def rec(p: int, maxused: int) -> None:
        if p > depth:
            out.append(tuple(col[1:]))
            return
        for c in range(1, min(t, maxused + 1) + 1):
            if ok(p, c):
                col[p] = c
                rec(p + 1, max(maxused, c))
        col[p] = 0

    rec(1, 0)
    return out


def longest_good(
    equations: Sequence[Equation],
    t: int,
    cap: int,
    *,
    threads: int = 1,
    budget: float | None = None,
    split_depth: int | None = None,
    backend: str | None = None,
) -> _Outcome:
    """Longest canonical coloring of length <= cap avoiding all ``equations``.

    With ``threads > 1`` the tree is cut at ``split_depth`` and subtrees run on
    a thread pool (the numba kernel releases the GIL). Results are merged so
    that the value and the witness match the single-threaded run.
    """
    if t < 1:
        raise ValueError("need at least one color")
    if cap < 0:
        raise ValueError("cap must be non-negative")
    equations = tuple(equations)
    kernel = _kernel(backend)
    offsets, cons, blocked = build_constraints(equations, cap)
    stop = _kernels.new_stop_flags()
    timer = None
    if budget is not None:
        timer = threading.Timer(budget, lambda: stop.__setitem__(1, 1))
        timer.daemon = True
        timer.start()
    start = time.perf_counter()
    try:
        depth = min(split_depth or DEFAULT_SPLIT_DEPTH, cap)
        prefixes = _prefixes(offsets, cons, blocked, t, depth) if threads > 1 else []
        if len(prefixes) < 2:
            status, best, best_col, nodes = kernel(
                offsets, cons, blocked, cap, t, np.zeros(0, dtype=np.int64), 0, stop
            )
            results = [(status, best, best_col, nodes)]
        else:
            results = _run_partitions(kernel, offsets, cons, blocked, cap, t, prefixes, stop, threads)
    finally:
        if timer is not None:
            timer.cancel()
    elapsed = time.perf_counter() - start
    return _merge(results, elapsed)


def _run_partitions(kernel, offsets, cons, blocked, cap, t, prefixes, stop, threads):
    lock = threading.Lock()

    def work(idx: int, prefix: tuple[int, ...]):
        if stop[0] < idx:
            return _kernels.PREEMPTED, 0, np.zeros(cap + 2, dtype=np.int64), 0
        if stop[1]:
            return _kernels.TIMED_OUT, 0, np.zeros(cap + 2, dtype=np.int64), 0
        res = kernel(offsets, cons, blocked, cap, t, np.asarray(prefix, dtype=np.int64), idx, stop)
        if res[0] == _kernels.REACHED_CAP:
            with lock:
                stop[0] = min(stop[0], idx)
        return res

    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(work, i, pre) for i, pre in enumerate(prefixes)]
        return [f.result() for f in futures]


def _merge(results, elapsed: float) -> _Outcome:
    nodes = sum(int(r[3]) for r in results)
    counts = [int(r[3]) for r in results]
    for status, best, col, _ in results:
        if status == _kernels.REACHED_CAP:
            return _Outcome(status, int(best), tuple(int(c) for c in col[1 : best + 1]), nodes, elapsed, len(results), counts)
    status = _kernels.DONE
    if any(r[0] == _kernels.TIMED_OUT for r in results):
        status = _kernels.TIMED_OUT
    best_len, best_col = -1, None
    for _, best, col, _ in results:
        if best > best_len:
            best_len, best_col = int(best), col
    colors = tuple(int(c) for c in best_col[1 : best_len + 1])
    return _Outcome(status, best_len, colors, nodes, elapsed, len(results), counts)


def _check_good(eq: Equation, col: Coloring) -> None:
    if not is_good_coloring(eq, col):
        raise WitnessError(f"engine returned a coloring that is not good for {eq.pretty()}: {col}")


def find_good_coloring(
    eq: Equation,
    t: int,
    n: int,
    *,
    threads: int = 1,
    budget: float | None = None,
    backend: str | None = None,
) -> Coloring | None:
    """Lexicographically least canonical good t-coloring of [1, n], or None."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = longest_good((eq,), t, n, threads=threads, budget=budget, backend=backend)
    if out.status == _kernels.REACHED_CAP:
        col = Coloring(t, out.colors)
        _check_good(eq, col)
        return col
    if out.status == _kernels.TIMED_OUT:
        raise SearchTimeout(out.best_len, Coloring(t, out.colors))
    return None


def rado_number(
    eq: Equation,
    t: int,
    cap: int,
    *,
    threads: int = 1,
    budget: float | None = None,
    split_depth: int | None = None,
    backend: str | None = None,
) -> RadoResult:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    out = longest_good(
        (eq,), t, cap, threads=threads, budget=budget, split_depth=split_depth, backend=backend
    )
    witness = Coloring(t, out.colors)
    _check_good(eq, witness)
    if out.status == _kernels.REACHED_CAP:
        status, value = SearchStatus.EXCEEDS_CAP, cap
    elif out.status == _kernels.TIMED_OUT:
        status, value = SearchStatus.TIMEOUT, out.best_len
    else:
        status, value = SearchStatus.EXACT, out.best_len + 1
    log.debug("rado %s t=%d cap=%d -> %s %d (%d nodes, %.3fs)", eq, t, cap, status.value, value, out.nodes, out.elapsed)
    return RadoResult(
        eq, t, status, value, witness, out.elapsed, out.nodes,
        backend or _kernels.BACKEND, threads,
    )


def max_excellent_length(
    coeffs: Sequence[int],
    t: int,
    cap: int,
    *,
    threads: int = 1,
    budget: float | None = None,
    split_depth: int | None = None,
    backend: str | None = None,
) -> ExcellenceResult:
    """Longest t-coloring that is good for c.x + j = x_k for every j in 0..s."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    coeffs = tuple(coeffs)
    out = longest_good(
        tuple(excellence_equations(coeffs)), t, cap,
        threads=threads, budget=budget, split_depth=split_depth, backend=backend,
    )
    witness = Coloring(t, out.colors)
    if not is_excellent_coloring(coeffs, witness):
        raise WitnessError(f"engine returned a non-excellent coloring for {coeffs}: {witness}")
    if out.status == _kernels.REACHED_CAP:
        status, value = SearchStatus.EXCEEDS_CAP, cap
    elif out.status == _kernels.TIMED_OUT:
        status, value = SearchStatus.TIMEOUT, out.best_len
    else:
        status, value = SearchStatus.EXACT, out.best_len
    return ExcellenceResult(
        coeffs, t, status, value, witness, out.elapsed, out.nodes,
        backend or _kernels.BACKEND, threads,
    )
