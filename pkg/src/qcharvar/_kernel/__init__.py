"""Kernel selection: compiled extension if present, pure Python otherwise.

Set QCHARVAR_PURE=1 to force the pure Python kernel (used by the benchmark
and by CI to exercise both paths).
"""

import os

if os.environ.get("QCHARVAR_PURE"):
    from . import pykernel as _impl
else:
    try:
        from . import ckernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pykernel as _impl

IMPL = _impl.IMPL
terms_add = _impl.terms_add
terms_sub = _impl.terms_sub
terms_neg = _impl.terms_neg
terms_mul = _impl.terms_mul
terms_scale = _impl.terms_scale
vec_conv = _impl.vec_conv
vec_reduce = _impl.vec_reduce
