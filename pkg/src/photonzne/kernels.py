"""Kernel backend selection: compiled Cython extension when available,
pure NumPy otherwise.  Set ``PHOTONZNE_PURE=1`` to force the fallback."""

from __future__ import annotations

import os

if os.environ.get("PHOTONZNE_PURE"):
    from . import _fallback as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as _impl

BACKEND: str = _impl.BACKEND

compose_chip = _impl.compose_chip
pattern_probs = _impl.pattern_probs
full_distribution = _impl.full_distribution
chip_pattern_probs = _impl.chip_pattern_probs
