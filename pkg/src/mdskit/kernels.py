"""Kernel backend selection.

Prefers the compiled extension; falls back to the pure-Python bitmask
implementation when the extension is unavailable. Set ``MDSKIT_PURE=1`` to
force the fallback (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("MDSKIT_PURE"):
    from mdskit import _kernels_py as _impl
else:
    try:
        from mdskit import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from mdskit import _kernels_py as _impl

BACKEND = _impl.BACKEND

greedy_construct = _impl.greedy_construct
static_construct = _impl.static_construct
prune = _impl.prune
exchange_2_1 = _impl.exchange_2_1
bnb = _impl.bnb
