"""Backend selection for the bitmask kernels.

The compiled module is used when it imports; otherwise the pure-Python
module is.  Set ``FACTORSPACE_PURE_PYTHON=1`` to force the fallback.
``BACKEND`` names the module in use.
"""

import os

if os.environ.get("FACTORSPACE_PURE_PYTHON", "") not in ("", "0"):
    from factorspace import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from factorspace import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from factorspace import _kernels_py as _impl

        BACKEND = "python"

popcount = _impl.popcount
meet = _impl.meet
union = _impl.union
leq = _impl.leq
saturate = _impl.saturate
maximal = _impl.maximal
downset_bits = _impl.downset_bits
antichains = _impl.antichains
maximal_cliques = _impl.maximal_cliques

__all__ = [
    "BACKEND",
    "popcount",
    "meet",
    "union",
    "leq",
    "saturate",
    "maximal",
    "downset_bits",
    "antichains",
    "maximal_cliques",
]
