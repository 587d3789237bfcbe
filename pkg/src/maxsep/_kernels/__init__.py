"""Kernel backend selection.

Prefers the compiled Cython extension; falls back to the pure
Python/numpy implementations when it is unavailable. Override with
MAXSEP_KERNELS=pure (force fallback) or MAXSEP_KERNELS=c (require the
extension, raising if it is missing).
"""

import os

from . import fallback

_choice = os.environ.get("MAXSEP_KERNELS", "auto").lower()

if _choice not in ("auto", "c", "pure"):
    raise ValueError(f"MAXSEP_KERNELS must be auto, c or pure, got {_choice!r}")

_impl = None
if _choice in ("auto", "c"):
    try:
        from . import _graphcore as _impl
    except ImportError:
        if _choice == "c":
            raise ImportError(
                "MAXSEP_KERNELS=c but the compiled extension is not built; "
                "run `python setup.py build_ext --inplace`"
            )

if _impl is None:
    _impl = fallback
    BACKEND = "pure"
else:
    BACKEND = "c"

bfs_all_pairs = _impl.bfs_all_pairs
interval_step = _impl.interval_step
gamma_closure = _impl.gamma_closure
tree_steiner = _impl.tree_steiner
