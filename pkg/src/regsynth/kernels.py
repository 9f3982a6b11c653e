"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``REGSYNTH_PURE_PYTHON`` is set to a non-empty value, the
pure-Python module is used.  Both expose ``DfaKernel``, ``TransducerKernel``,
``explore`` and ``attractor`` with identical behaviour.
"""

import os

from . import _pykernels

if os.environ.get("REGSYNTH_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

DfaKernel = _impl.DfaKernel
TransducerKernel = _impl.TransducerKernel
explore = _impl.explore
attractor = _impl.attractor


def backends():
    """Mapping of every importable backend name to its module."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
