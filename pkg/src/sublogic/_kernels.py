"""Select the compiled kernels when available, else the pure-Python ones.

Set ``SUBLOGIC_PURE=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
closure_fixpoint = _pykernels.closure_fixpoint
eliminate = _pykernels.eliminate

if os.environ.get("SUBLOGIC_PURE") != "1":
    try:
        from . import _speedups
    except ImportError:
        pass
    else:
        def closure_fixpoint(n, ops, init, target=-1, goal=-1):
            if n > 5 or any(k > 5 for k, _ in ops):
                return _pykernels.closure_fixpoint(n, ops, init, target, goal)
            return _speedups.closure_fixpoint(n, ops, init, target, goal)
        eliminate = _speedups.eliminate
        BACKEND = "cython"
