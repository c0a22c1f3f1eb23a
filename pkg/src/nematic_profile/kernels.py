"""Backend selection for the hot kernels.

The compiled Cython module is used when it was built; otherwise the
pure-Python module is used. Setting ``NEMATIC_PROFILE_PURE=1`` forces the
fallback, which the tests and the benchmark use to compare both.
"""

import os

from . import _pykernels

if os.environ.get("NEMATIC_PROFILE_PURE"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

rk4_endpoint = _impl.rk4_endpoint
rk4_trajectory = _impl.rk4_trajectory
energy_parts = _impl.energy_parts
energy_gradient = _impl.energy_gradient


def available_backends():
    """Return ``{name: module}`` for every importable kernel backend."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
