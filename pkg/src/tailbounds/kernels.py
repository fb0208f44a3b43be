"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback implements the
same arithmetic in the same order and returns bit-identical results.
Set ``TAILBOUNDS_PURE=1`` to force the fallback (used by the benchmark
and the backend-equivalence test).
"""

import os

from . import _kernels_py

if os.environ.get("TAILBOUNDS_PURE"):
    _impl = _kernels_py
    USING_COMPILED = False
else:
    try:
        from . import _gridkernels as _impl  # type: ignore[attr-defined]

        USING_COMPILED = True
    except ImportError:
        _impl = _kernels_py
        USING_COMPILED = False

pair_scan = _impl.pair_scan
triple_scan = _impl.triple_scan
sym_pair_scan = _impl.sym_pair_scan
sym_arm_scan = _impl.sym_arm_scan
recip_scan = _impl.recip_scan
