"""Truncation-level selection.

A single surrogate vector built from all signals (full column mean minus
twice the first-half mean) carries the between-segment mean difference
with per-coordinate noise variance sigma^2 / n.  Three selectors pick
the truncation level T from it or from the sample directly:

* ``lepski_select`` - smallest k beyond which every windowed energy of
  the surrogate stays under a log-scaled noise threshold;
* ``method1_select`` - two-regime split of the surrogate energies;
* ``method2_select`` - subsampling, minimizing the variance of the
  estimated change fraction across subsamples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import objective_table
from .errors import ValidationError
from .estimator import ChangePointFit, estimate_tau
from .model import SignalMatrix

__all__ = [
    "SurrogateVector",
    "LepskiConfig",
    "surrogate",
    "lepski_select",
    "method1_select",
    "method2_select",
    "estimate_adaptive",
]


@dataclass(frozen=True)
class SurrogateVector:
    """Off-line contrast vector with the noise variance of each coordinate."""

    z: np.ndarray
    nu_sq: float


@dataclass(frozen=True)
class LepskiConfig:
    """Tuning for the windowed-energy selector.

    ``log_scale`` defaults to ln(max(d, n)) at selection time; 16 is the
    smallest admissible threshold constant independent of the unknown
    smoothness radius.
    """

    c_lepski: float = 16.0
    sigma: float = 1.0
    log_scale: float | None = None

    def __post_init__(self):
        if not self.c_lepski > 0:
            raise ValidationError(f"c_lepski must be > 0, got {self.c_lepski}")


def surrogate(Y: SignalMatrix, sigma: float) -> SurrogateVector:
    """Full column mean minus (2/n) times the sum of the first floor(n/2) rows."""
    v = Y.values
    n = Y.n
    z = v.mean(axis=0) - (2.0 / n) * v[: n // 2].sum(axis=0)
    z.flags.writeable = False
    return SurrogateVector(z=z, nu_sq=sigma * sigma / n)


def lepski_select(z: SurrogateVector, config: LepskiConfig, n: int, d: int) -> int:
    """Smallest k such that every window [m, j] with k <= m <= j <= d has
    energy sum(z[m..j]**2) <= c_lepski * j * nu_sq * ln(max(d, n)); d if none.

    Since the summands are non-negative the binding window for each j
    starts at m = k, so the condition reduces to
    C[k-1] >= max_{j >= k} (C[j] - thr(j)) with C the prefix sums of
    z**2, evaluated here with one suffix-max scan.
    """
    zv = np.asarray(z.z, dtype=np.float64)
    if zv.size != d:
        raise ValidationError(f"z has length {zv.size}, expected d={d}")
    log_scale = config.log_scale if config.log_scale is not None else math.log(max(d, n))
    thr = config.c_lepski * np.arange(1, d + 1) * z.nu_sq * log_scale
    csum = np.concatenate([[0.0], np.cumsum(zv * zv)])
    excess = csum[1:] - thr
    suffix_max = np.maximum.accumulate(excess[::-1])[::-1]
    hits = np.nonzero(csum[:-1] >= suffix_max)[0]
    return int(hits[0]) + 1 if hits.size else d


def method1_select(z: SurrogateVector) -> int:
    """Smallest T minimizing the two-regime within-group SSE of the surrogate.

    The complementary group is empty at T = d and contributes 0.
    """
    zv = np.asarray(z.z, dtype=np.float64)
    d = zv.size
    if d < 1:
        raise ValidationError("surrogate vector must be non-empty")
    v = np.empty(d)
    for t in range(1, d + 1):
        head = zv[:t] - zv[:t].mean()
        score = head @ head
        if t < d:
            tail = zv[t:] - zv[t:].mean()
            score += tail @ tail
        v[t - 1] = score
    return int(np.argmin(v)) + 1


def method2_select(
    Y: SignalMatrix, sigma: float, n_sub: int, frac: float, seed: int
) -> int:
    """Smallest T minimizing the variance of the estimated change fraction
    over n_sub sorted subsamples of floor(frac * n) rows each.

    The same subsamples are reused for every T; the variance is the
    unbiased one.  ``sigma`` is accepted for interface parity with the
    other selectors and does not enter the criterion.
    """
    if n_sub < 2:
        raise ValidationError(f"n_sub must be >= 2, got {n_sub}")
    if not 0.0 < frac < 1.0:
        raise ValidationError(f"frac must lie in (0, 1), got {frac}")
    m = int(frac * Y.n)
    if m < 4:
        raise ValidationError(f"subsample of {m} rows is too small (need >= 4)")
    rng = np.random.default_rng(seed)
    tau_hats = np.empty((n_sub, Y.d))
    for s in range(n_sub):
        idx = np.sort(rng.choice(Y.n, size=m, replace=False))
        table = objective_table(np.ascontiguousarray(Y.values[idx]))
        tau_hats[s] = (np.argmin(table, axis=1) + 2) / m
    return int(np.argmin(tau_hats.var(axis=0, ddof=1))) + 1


def estimate_adaptive(
    Y: SignalMatrix, sigma: float, config: LepskiConfig
) -> ChangePointFit:
    """Plug the selected truncation level into the change-point fit."""
    z = surrogate(Y, sigma)
    return estimate_tau(Y, lepski_select(z, config, Y.n, Y.d))
