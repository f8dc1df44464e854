"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python twin is
the fallback.  Set TSPGA_BACKEND=pure (or =compiled) to force one, e.g.
for the backend benchmark.  Both backends are bit-identical, so the choice
never affects results, only speed.
"""

import os

from . import _pure


def _select():
    forced = os.environ.get("TSPGA_BACKEND", "").strip().lower()
    if forced == "pure":
        return _pure
    try:
        from . import _kernels
    except ImportError:
        if forced == "compiled":
            raise ImportError(
                "TSPGA_BACKEND=compiled but the tspga._kernels extension is not built"
            )
        return _pure
    return _kernels


_backend = _select()

BACKEND_NAME: str = _backend.BACKEND_NAME
mix64 = _backend.mix64
tour_length = _backend.tour_length
