"""Kernel backend selection.

The compiled module is used when it was built; setting ``TLCOVER_PURE=1``
forces the pure-Python implementation.  :func:`set_backend` switches at run
time (used by the benchmark and the equivalence tests).
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels


def available() -> list[str]:
    return sorted(_BACKENDS)


def set_backend(name: str) -> None:
    global BACKEND, augment, first_full_pair, reach, residual_reach
    mod = _BACKENDS[name]
    BACKEND = mod.BACKEND
    augment = mod.augment
    first_full_pair = mod.first_full_pair
    reach = mod.reach
    residual_reach = mod.residual_reach


def backend_module(name: str):
    return _BACKENDS[name]


_pure = os.environ.get("TLCOVER_PURE", "") not in ("", "0")
set_backend("cython" if _ckernels is not None and not _pure else "python")
