"""Hot numeric kernel: the two-segment SSE table over all splits and truncations.

Every Monte Carlo study in this package reduces to evaluating, for one
n x d matrix after another, the within-segment sum of squares for every
split row k in {2, ..., n-2} and every truncation level T in {1, ..., d}.
The default implementation is numba-compiled (cached to disk on first
use); setting the environment variable ``CPKMEANS_NO_NUMBA=1`` before
import selects a pure-numpy path that computes the identical table.
``benchmarks/bench_objective_table.py`` times the two side by side.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    HAVE_NUMBA = False

_ENV_FLAG = "CPKMEANS_NO_NUMBA"


def numba_disabled_by_env() -> bool:
    return os.environ.get(_ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


def objective_table_numpy(values: np.ndarray) -> np.ndarray:
    """Vectorized numpy implementation of the objective table.

    Parameters
    ----------
    values : float64 array of shape (n, d), n >= 4

    Returns
    -------
    table : float64 array of shape (d, n - 3)
        ``table[T - 1, k - 2]`` is the total squared deviation of rows
        1..k from their mean plus rows k+1..n from theirs, restricted to
        the first T coordinates.
    """
    n = values.shape[0]
    ks = np.arange(2, n - 1)
    head = np.cumsum(values, axis=0)
    tail = head[-1] - head
    # Column totals via cumsum, not einsum/sum: their accumulation order is
    # shape-independent, so the table of a column-truncated matrix matches
    # the corresponding rows of the full table bit for bit.
    tss = np.cumsum(np.cumsum(values * values, axis=0)[-1])
    head_energy = np.cumsum(head * head, axis=1)
    tail_energy = np.cumsum(tail * tail, axis=1)
    return tss[:, None] - head_energy[ks - 1].T / ks - tail_energy[ks - 1].T / (n - ks)


def _objective_table_loops(values):
    # Same table as objective_table_numpy, written as loops for numba.
    n, d = values.shape
    head = np.empty((n, d))
    for j in range(d):
        acc = 0.0
        for i in range(n):
            acc += values[i, j]
            head[i, j] = acc
    tss = np.empty(d)
    total = 0.0
    for j in range(d):
        col = 0.0
        for i in range(n):
            col += values[i, j] * values[i, j]
        total += col
        tss[j] = total
    table = np.empty((d, n - 3))
    for idx in range(n - 3):
        k = idx + 2
        inv_head = 1.0 / k
        inv_tail = 1.0 / (n - k)
        head_energy = 0.0
        tail_energy = 0.0
        for j in range(d):
            h = head[k - 1, j]
            t = head[n - 1, j] - h
            head_energy += h * h
            tail_energy += t * t
            table[j, idx] = tss[j] - head_energy * inv_head - tail_energy * inv_tail
    return table


if HAVE_NUMBA:
    objective_table_numba = njit(cache=True)(_objective_table_loops)
else:  # pragma: no cover
    objective_table_numba = None

NUMBA_ENABLED = HAVE_NUMBA and not numba_disabled_by_env()

objective_table = objective_table_numba if NUMBA_ENABLED else objective_table_numpy
