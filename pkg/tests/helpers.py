"""Shared independent oracles for the test suite.

These deliberately avoid the package's fast paths: the Lepski oracle
enumerates every (k, m, j) window literally, and the two-regime oracle
evaluates the split criterion segment by segment.
"""

import math

import numpy as np


def lepski_bruteforce(z: np.ndarray, nu_sq: float, c_lepski: float, n: int, d: int) -> int:
    """Literal scan of the windowed-energy condition over every (k, m, j)."""
    z2 = np.asarray(z, dtype=np.float64) ** 2
    scale = math.log(max(d, n))
    thr = [c_lepski * j * nu_sq * scale for j in range(d + 1)]
    for k in range(1, d + 1):
        ok = True
        for j in range(k, d + 1):
            for m in range(k, j + 1):
                if z2[m - 1 : j].sum() > thr[j]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return k
    return d


def two_regime_scores(z: np.ndarray) -> np.ndarray:
    """Exhaustive split criterion of the surrogate: SSE of z[:T] plus SSE of z[T:]."""
    z = np.asarray(z, dtype=np.float64)
    d = z.size
    out = np.empty(d)
    for t in range(1, d + 1):
        head = z[:t]
        score = float(((head - head.mean()) ** 2).sum())
        if t < d:
            tail = z[t:]
            score += float(((tail - tail.mean()) ** 2).sum())
        out[t - 1] = score
    return out
