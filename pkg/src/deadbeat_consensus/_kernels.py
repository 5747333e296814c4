"""Hot numeric kernels: numba-compiled when available, pure numpy otherwise.

The trajectory recurrence dominates ensemble runtime (thousands of sequential
matrix-vector products per network), so it gets an @njit implementation.
Set DEADBEAT_CONSENSUS_BACKEND=numpy to force the fallback path; any other
value (or an unavailable numba) is reported by ``backend_name()``.
"""

import os

import numpy as np

_REQUESTED = os.environ.get("DEADBEAT_CONSENSUS_BACKEND", "numba").lower()


def _propagate_numpy(w, x0, steps):
    out = np.empty((steps + 1, x0.shape[0]))
    out[0] = x0
    x = x0
    for k in range(1, steps + 1):
        x = w @ x
        out[k] = x
    return out


if _REQUESTED == "numpy":
    _HAVE_NUMBA = False
else:
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        _HAVE_NUMBA = False

if _HAVE_NUMBA:

    @njit(cache=True)
    def _propagate_numba(w, x0, steps):  # pragma: no cover - compiled
        m = x0.shape[0]
        out = np.empty((steps + 1, m))
        out[0] = x0
        for k in range(1, steps + 1):
            x = out[k - 1]
            for i in range(m):
                acc = 0.0
                for j in range(m):
                    acc += w[i, j] * x[j]
                out[k, i] = acc
        return out

    def propagate(w, x0, steps):
        return _propagate_numba(
            np.ascontiguousarray(w, dtype=np.float64),
            np.ascontiguousarray(x0, dtype=np.float64),
            steps,
        )

else:
    propagate = _propagate_numpy


def backend_name() -> str:
    return "numba" if _HAVE_NUMBA else "numpy"
