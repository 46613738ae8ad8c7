"""Hot-loop kernels, compiled when available.

The Cython extension ``rbmelm._kernels`` is imported when it was built;
otherwise the numpy implementations in ``rbmelm._fallback`` are used.
Set ``RBMELM_PURE_PYTHON=1`` to force the fallback.

``BACKEND`` names the active implementation (``"cython"`` or ``"numpy"``).
"""

import os

from . import _fallback

if os.environ.get("RBMELM_PURE_PYTHON"):
    _impl = _fallback
    BACKEND = "numpy"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "numpy"

logistic = _impl.logistic
momentum_step = _impl.momentum_step
mgs_orthonormalize = _impl.mgs_orthonormalize

__all__ = ["BACKEND", "logistic", "momentum_step", "mgs_orthonormalize"]
