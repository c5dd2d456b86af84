"""Backend selection for the hot loops.

The compiled extension ``_ckernels`` is used when it was built; otherwise
(or when ``HBCOMP_PURE=1``) the numpy implementations are used. Both expose
``horner`` and ``carleson_sums`` with identical semantics.
"""

import os

from . import _pykernels

BACKEND = "python"
horner = _pykernels.horner
carleson_sums = _pykernels.carleson_sums

if not os.environ.get("HBCOMP_PURE"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        horner = _ckernels.horner
        carleson_sums = _ckernels.carleson_sums


def backends():
    """Map backend name -> module, for tests and benchmarks."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        return out
    out["cython"] = _ckernels
    return out
