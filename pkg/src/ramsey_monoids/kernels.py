"""Backend selection for the hot kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module is used.  Setting ``RAMSEY_MONOIDS_PURE=1``
forces the fallback.  Both expose the same functions.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("RAMSEY_MONOIDS_PURE"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

canonical_poset = _impl.canonical_poset
closure_bfs = _impl.closure_bfs
cayley_from_right = _impl.cayley_from_right
cayley_from_elements = _impl.cayley_from_elements
coset_order = _impl.coset_order
MAX_CANONICAL_N = _impl.MAX_CANONICAL_N
