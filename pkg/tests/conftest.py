import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from widesort import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # pay any one-time JIT cost before tests that measure wall time
    _kernels.warm_up()
