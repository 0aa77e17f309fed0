import numpy as np
import pytest

from cpkmeans._kernels import objective_table


@pytest.fixture(scope="session", autouse=True)
def warm_kernel():
    # Compile/cache the hot kernel once so timed sections measure work, not JIT.
    objective_table(np.zeros((4, 2)))
