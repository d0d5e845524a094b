"""Backend selection for the Monte Carlo kernels.

The compiled extension is used when it was built; otherwise the numpy
implementation. Set ``POLBENCH_PURE_PYTHON=1`` to force the fallback. Both
backends produce identical integer counts for identical arguments.
"""
import os

from . import _pykernels
from ._pykernels import DETECTION_STRIDE, mix64, stream_key

BACKEND = "python"
_impl = _pykernels

if os.environ.get("POLBENCH_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

words = _impl.words
state_counts = _impl.state_counts
coincidence_counts = _impl.coincidence_counts

__all__ = [
    "BACKEND",
    "DETECTION_STRIDE",
    "mix64",
    "stream_key",
    "words",
    "state_counts",
    "coincidence_counts",
]
