"""Backend selection for the hot loops.

The compiled extension is used when it imports; setting ``LOCTOOL_PURE=1``
forces the pure-Python fallback.
"""
import os

from . import _pykernels

_impl = _pykernels
if os.environ.get("LOCTOOL_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
native = _impl.native
closure = _impl.closure
conj_images = _impl.conj_images
scan_words = _impl.scan_words
close_morphisms = _impl.close_morphisms

# validator word budget per backend when the caps leave it unset
WORD_BUDGET = 5_000_000 if BACKEND == "cython" else 200_000


def backends():
    """Both implementations that can be loaded, keyed by name."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
