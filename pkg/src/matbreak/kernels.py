"""Hot-loop backend selected at import.

The compiled core (``_ckernels``) is used when it was built; otherwise, or
when ``MATBREAK_PURE_PYTHON=1`` is set, the pure-Python kernels are used.
Both expose ``matmul`` and ``rref`` with identical results.
"""

from __future__ import annotations

import os

from . import _pykernels

python = _pykernels

try:
    from . import _ckernels as compiled
except ImportError:  # extension not built
    compiled = None

if compiled is not None and os.environ.get("MATBREAK_PURE_PYTHON", "") not in ("1", "true", "yes"):
    _active = compiled
else:
    _active = _pykernels

BACKEND: str = _active.BACKEND
matmul = _active.matmul
rref = _active.rref
