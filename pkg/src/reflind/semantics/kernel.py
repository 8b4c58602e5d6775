"""Backend selection for the program evaluator.

The compiled extension is used when it imports; setting
``REFLIND_PURE_PYTHON=1`` forces the pure-Python fallback.  ``BACKEND`` names
the active one.
"""

from __future__ import annotations

import os
from array import array
from typing import Sequence

from . import _pykernel

if os.environ.get("REFLIND_PURE_PYTHON") == "1":
    _impl = _pykernel
    BACKEND = "python"
else:
    try:
        from . import _ckernel as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        _impl = _pykernel
        BACKEND = "python"


def backends() -> dict[str, object]:
    out: dict[str, object] = {"python": _pykernel}
    try:
        from . import _ckernel

        out["c"] = _ckernel
    except ImportError:
        pass
    return out


def _ints(xs: Sequence[int]) -> array:
    return xs if isinstance(xs, array) and xs.typecode == "i" else array("i", xs)


def eval_batch(batch, models: Sequence[int], n_models: int, layout, impl=None) -> bytearray:
    """Evaluate every program of ``batch`` in every packed model (program-major)."""
    impl = impl or _impl
    return impl.eval_batch(
        _ints(batch.code) if len(batch.code) else array("i", [0]),
        _ints(batch.starts),
        _ints(models) if len(models) else array("i", [0]),
        n_models,
        layout.stride,
        _ints(layout.sizes),
        batch.slots,
        batch.depth,
    )


__all__ = ["BACKEND", "backends", "eval_batch"]
