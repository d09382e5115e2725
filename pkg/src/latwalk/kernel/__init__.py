"""Enumeration kernel with a compiled core and a pure-Python fallback.

``enumerate_upto`` is the single hot entry point.  The compiled Cython twin
is preferred when importable; set LATWALK_PURE=1 to force the fallback.  Both
implement identical exact semantics (see _pyenum for the reference).
"""

import os

from . import _pyenum

if os.environ.get("LATWALK_PURE"):
    _impl = _pyenum
else:
    try:
        from . import _cyenum as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pyenum

enumerate_upto = _impl.enumerate_upto
enumerate_coset = _impl.enumerate_coset
BACKEND = _impl.BACKEND

enumerate_upto_py = _pyenum.enumerate_upto
enumerate_coset_py = _pyenum.enumerate_coset


def backend_name():
    return BACKEND
