"""Kernel backend selection.

The hot face-flux loops exist twice: a numba-compiled version (default)
and a pure-numpy fallback. The environment variable HUGONIOT_BACKEND
("numba" or "numpy") picks one; without it, numba is used when it
imports. `hugoniot bench` compares the two.
"""

from __future__ import annotations

import os

from . import kernels_numpy

try:
    from . import kernels_numba
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency normally
    kernels_numba = None
    HAS_NUMBA = False

_ENV_VAR = "HUGONIOT_BACKEND"


def backend_name() -> str:
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice in ("numba", "numpy"):
        if choice == "numba" and not HAS_NUMBA:
            raise RuntimeError("HUGONIOT_BACKEND=numba but numba is not importable")
        return choice
    if choice:
        raise RuntimeError(f"unrecognized {_ENV_VAR}={choice!r}; use 'numba' or 'numpy'")
    return "numba" if HAS_NUMBA else "numpy"


def get_kernels(name: str | None = None):
    """Kernel module for `name` (or the environment-selected backend)."""
    resolved = backend_name() if name is None else name
    if resolved == "numba":
        if kernels_numba is None:
            raise RuntimeError("numba backend requested but unavailable")
        return kernels_numba
    if resolved == "numpy":
        return kernels_numpy
    raise ValueError(f"unknown backend {resolved!r}")
