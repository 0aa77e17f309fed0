import os
import subprocess
import sys

import numpy as np
import pytest

from cpkmeans._kernels import (
    HAVE_NUMBA,
    NUMBA_ENABLED,
    objective_table_numba,
    objective_table_numpy,
)


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")
def test_paths_agree():
    rng = np.random.default_rng(50)
    for n, d in [(4, 1), (4, 7), (10, 1), (30, 12), (100, 40)]:
        y = rng.normal(size=(n, d))
        a = objective_table_numba(y)
        b = objective_table_numpy(y)
        assert a.shape == (d, n - 3)
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)
        assert np.array_equal(a.argmin(axis=1), b.argmin(axis=1))


def test_table_matches_direct_sse():
    rng = np.random.default_rng(51)
    y = rng.normal(size=(9, 4))
    table = objective_table_numpy(y)
    for t in range(1, 5):
        for k in range(2, 8):
            first, second = y[:k, :t], y[k:, :t]
            direct = ((first - first.mean(0)) ** 2).sum() + ((second - second.mean(0)) ** 2).sum()
            assert table[t - 1, k - 2] == pytest.approx(direct, rel=1e-10, abs=1e-12)


def test_env_flag_selects_numpy_path():
    env = dict(os.environ, CPKMEANS_NO_NUMBA="1")
    code = (
        "from cpkmeans import _kernels as k;"
        "assert not k.NUMBA_ENABLED;"
        "assert k.objective_table is k.objective_table_numpy"
    )
    subprocess.run([sys.executable, "-c", code], check=True, env=env)


def test_default_path_prefers_numba():
    if os.environ.get("CPKMEANS_NO_NUMBA"):
        pytest.skip("pure-numpy path forced by environment")
    assert NUMBA_ENABLED == HAVE_NUMBA
