"""Hot numeric kernels with a switchable backend.

The default backend jit-compiles the kernels with numba. Set
``ADPULSE_BACKEND=numpy`` before import to force the pure-numpy fallback
(useful where numba is unavailable or JIT warmup is unwanted), or
``ADPULSE_BACKEND=numba`` to fail loudly if numba cannot be imported.
``benchmarks/bench_kernels.py`` times the two side by side.
"""

from __future__ import annotations

import os

_requested = os.environ.get("ADPULSE_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(
        f"ADPULSE_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    from adpulse.kernels import _numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from adpulse.kernels import _numba as _impl

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from adpulse.kernels import _numpy as _impl

        BACKEND = "numpy"

pair_loss = _impl.pair_loss
pair_gradient = _impl.pair_gradient
pgd_minimize = _impl.pgd_minimize


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND
