"""Hot kernels: a compiled Cython build when available, else pure Python.

``BACKEND`` names the implementation picked at import.  Setting the
environment variable ``STABCLASS_PURE=1`` forces the fallback.
"""
import os

from . import _pure

pure = _pure
compiled = None
if not os.environ.get("STABCLASS_PURE"):
    try:
        from . import _compiled as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

impl = compiled if compiled is not None else _pure
BACKEND = "cython" if compiled is not None else "python"

rref_inplace = impl.rref_inplace
reduce_vector = impl.reduce_vector
