"""Kernel backend selection.

The compiled extension is used when it imports; setting
``HYPERSIEVE_PURE_PYTHON=1`` forces the pure-Python kernels.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if os.environ.get("HYPERSIEVE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        kernels = _compiled
        BACKEND = "cython"
    except ImportError:
        pass

enumerate_sl2 = kernels.enumerate_sl2
canonical_double = kernels.canonical_double
