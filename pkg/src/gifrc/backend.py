"""Kernel backend selection.

The compiled extension (``gifrc._mi_core``) is preferred when it imported
successfully; the vectorized numpy kernel is the fallback.  Set
``GIFRC_BACKEND=python`` to force the fallback (useful for benchmarking and
debugging) or ``GIFRC_BACKEND=cython`` to insist on the extension.
"""

from __future__ import annotations

import os

import numpy as np

from . import _mi_py

try:
    from . import _mi_core
except ImportError:
    _mi_core = None

_KMAX = 12
_SMAX = 24


def _select() -> str:
    choice = os.environ.get("GIFRC_BACKEND", "auto").lower()
    if choice in ("python", "numpy"):
        return "numpy"
    if choice == "cython":
        if _mi_core is None:
            raise ImportError("GIFRC_BACKEND=cython but gifrc._mi_core is not built")
        return "cython"
    return "cython" if _mi_core is not None else "numpy"


_ACTIVE = _select()


def backend_name() -> str:
    """Name of the active kernel backend ('cython' or 'numpy')."""
    return _ACTIVE


def mi_bits_batch(
    coeffs: np.ndarray, variances: np.ndarray, nc: int, na: int, nb: int
) -> np.ndarray:
    """Dispatch a batched conditional-MI evaluation to the active kernel."""
    if _ACTIVE == "cython":
        k = nc + na + nb
        s = coeffs.shape[-1]
        if k <= _KMAX and s <= _SMAX:
            return _mi_core.mi_bits_batch(coeffs, variances, nc, na, nb)
    return _mi_py.mi_bits_batch(coeffs, variances, nc, na, nb)
