"""Backend dispatch for the hot batch kernels.

Two interchangeable implementations exist: a numba-jitted one (default) and a
pure-numpy one.  Selection is controlled by the ``WIDESORT_KERNELS``
environment variable:

* ``auto`` (default) -- use numba when importable, else fall back to numpy;
* ``numba``          -- require the jitted backend, fail if unavailable;
* ``numpy``          -- force the pure-numpy fallback.

``python -m widesort.kernel_bench`` times the two backends side by side.
"""

from __future__ import annotations

import os

_choice = os.environ.get("WIDESORT_KERNELS", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"WIDESORT_KERNELS must be one of auto/numba/numpy, got {_choice!r}"
    )

if _choice == "numpy":
    from . import numpy_impl as _impl
else:
    try:
        from . import numba_impl as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice == "numba":
            raise
        from . import numpy_impl as _impl  # type: ignore[no-redef]

BACKEND = _impl.NAME

sort_batch = _impl.sort_batch
pair_multiplicities = _impl.pair_multiplicities
exact_rank_add = _impl.exact_rank_add
dominance_matrix = _impl.dominance_matrix
warm_up = _impl.warm_up

__all__ = [
    "BACKEND",
    "sort_batch",
    "pair_multiplicities",
    "exact_rank_add",
    "dominance_matrix",
    "warm_up",
]
