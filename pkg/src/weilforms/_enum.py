"""Backend selection for the ellipsoid traversal.

The compiled extension is used when it was built, unless the environment
variable WEILFORMS_PURE_PYTHON is set to a non-empty value.
"""
from __future__ import annotations

import os
from typing import Optional

from . import _enum_py
from .errors import NodeLimitExceeded

try:
    from . import _enum_ext
except ImportError:  # extension not built
    _enum_ext = None

_BACKENDS = {"python": _enum_py.fincke_pohst}
if _enum_ext is not None:
    _BACKENDS["cython"] = _enum_ext.fincke_pohst

BACKEND = "cython" if _enum_ext is not None and not os.environ.get("WEILFORMS_PURE_PYTHON") else "python"


def available_backends():
    return tuple(sorted(_BACKENDS))


def fincke_pohst(qf, center, r2: float, max_nodes: int, backend: Optional[str] = None):
    name = backend or BACKEND
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} is not available; have {available_backends()}")
    return _BACKENDS[name](qf, center, r2, max_nodes)


__all__ = ["BACKEND", "NodeLimitExceeded", "available_backends", "fincke_pohst"]
