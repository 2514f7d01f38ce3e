"""Kernel dispatch: compiled extension when importable, pure Python otherwise.

Set ``D3TORUS_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _kernels_py

if os.environ.get("D3TORUS_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"


def _as_index_array(step):
    return np.ascontiguousarray(step, dtype=np.int64)


def scan_permutation(step):
    return _impl.scan_permutation(_as_index_array(step))


def orbit(step, start, limit=None):
    step = _as_index_array(step)
    if limit is None:
        limit = step.shape[0]
    return _impl.orbit(step, int(start), int(limit))


def lane_returns(table, m, cap):
    return _impl.lane_returns(_as_index_array(table), int(m), int(cap))


def use_backend(name):
    """Switch backends at runtime ("cython" or "python"); returns the previous name."""
    global _impl, BACKEND
    previous = BACKEND
    if name == "python":
        _impl = _kernels_py
    elif name == "cython":
        from . import _ckernels

        _impl = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    return previous
