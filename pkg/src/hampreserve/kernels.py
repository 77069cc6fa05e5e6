"""Kernel backend selection.

The compiled extension is used when it imports; setting
``HAMPRESERVE_PURE=1`` forces the pure-Python fallback.
"""

from __future__ import annotations

import os

BACKEND = "python"

if os.environ.get("HAMPRESERVE_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._kernels import augment_flow, closure_fill, unwind_cycle

        BACKEND = "compiled"
    except ImportError:  # extension not built
        pass

if BACKEND == "python":
    from ._kernels_py import augment_flow, closure_fill, unwind_cycle

__all__ = ["BACKEND", "augment_flow", "closure_fill", "unwind_cycle"]
