"""Select the term kernels: compiled extension when importable, else pure Python.

Set ``CRTOOL_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

BITS = _pykernels.BITS
MASK = _pykernels.MASK

_impl = _pykernels
BACKEND = "python"
if os.environ.get("CRTOOL_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

mul_terms = _impl.mul_terms
add_terms = _impl.add_terms
scale_terms = _impl.scale_terms
diff_terms = _impl.diff_terms
iadd_terms = _impl.iadd_terms


def backend_module(name: str):
    """Return the kernel module for ``"python"`` or ``"cython"`` (for benchmarks and tests)."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")
