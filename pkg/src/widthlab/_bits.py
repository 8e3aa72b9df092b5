"""Popcount helpers for numpy arrays of bitmask words."""

from __future__ import annotations

import numpy as np

# 16-bit lookup table; uint32 popcount is two lookups, uint64 four.
_POP16 = (
    np.unpackbits(np.arange(1 << 16, dtype=">u2").view(np.uint8))
    .reshape(-1, 16)
    .sum(axis=1)
    .astype(np.uint8)
)


def popcount_u32(a: np.ndarray) -> np.ndarray:
    """Elementwise popcount of a uint32 array."""
    a = a.astype(np.uint32, copy=False)
    return _POP16[a & np.uint32(0xFFFF)].astype(np.int32) + _POP16[a >> np.uint32(16)]


def popcount_u64(a: np.ndarray) -> np.ndarray:
    """Elementwise popcount of a uint64 array."""
    a = a.astype(np.uint64, copy=False)
    lo = (a & np.uint64(0xFFFFFFFF)).astype(np.uint32)
    hi = (a >> np.uint64(32)).astype(np.uint32)
    return popcount_u32(lo) + popcount_u32(hi)
