"""Select the Smith normal form kernel at import time.

The compiled int64 kernel is used when it was built and the entries fit;
otherwise, or on overflow, the exact big-integer kernel runs.  Setting
``UPIC_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from ._snf_py import smith_kernel as _py_kernel

try:
    if os.environ.get("UPIC_PURE_PYTHON"):
        raise ImportError("pure-Python kernel forced")
    from ._snf_ext import smith_kernel_int64 as _c_kernel
except ImportError:
    _c_kernel = None

BACKEND = "cython" if _c_kernel is not None else "python"

# entries beyond this go straight to the big-integer kernel
_INT64_SAFE = 2**31


def _to_object(rows, m, n):
    out = np.empty((m, n), dtype=object)
    if m and n:
        out[:, :] = rows
    return out


def smith_native(A, left=True, right=True, backend=None):
    """Like :func:`smith` but transforms come back as int64 when the compiled
    kernel succeeded, so callers can slice before converting.

    ``A`` may be an int64 or object array.
    """
    m, n = A.shape
    use_c = _c_kernel is not None if backend is None else backend == "cython"
    if use_c and _c_kernel is None:
        raise RuntimeError("compiled kernel is not available")
    if use_c and m and n:
        if A.dtype == np.int64:
            fits = not A.size or int(np.abs(A).max()) < _INT64_SAFE
        else:
            fits = all(-_INT64_SAFE < int(x) < _INT64_SAFE for x in A.ravel())
        if fits:
            try:
                diag, U, Ui, V = _c_kernel(np.ascontiguousarray(A, dtype=np.int64), left, right)
            except OverflowError:
                pass
            else:
                return [int(d) for d in diag], U, Ui, V
    rows = [[int(x) for x in r] for r in A.tolist()]
    diag, U, Ui, V = _py_kernel(rows, m, n, left, right)
    return (
        diag,
        None if U is None else _to_object(U, m, m),
        None if Ui is None else _to_object(Ui, m, m),
        None if V is None else _to_object(V, n, n),
    )


def smith(A, left=True, right=True, backend=None):
    """Run the selected kernel; returns ``(diag, U, Uinv, V)`` as object arrays or ``None``."""
    diag, U, Ui, V = smith_native(A, left, right, backend)
    conv = lambda M: M if M is None or M.dtype == object else M.astype(object)
    return diag, conv(U), conv(Ui), conv(V)
