"""Backend selection for the inner loops.

The compiled extension is used when it imports; otherwise the pure-Python
module is used.  Setting ``PBSCHED_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("PBSCHED_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl
        BACKEND = "python"

max_matching = _impl.max_matching
greedy_matching_by_order = _impl.greedy_matching_by_order
reduced_max_load = _impl.reduced_max_load

__all__ = ["BACKEND", "max_matching", "greedy_matching_by_order", "reduced_max_load"]
