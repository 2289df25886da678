"""Kontsevich's recursion for rational plane curves through ``3d - 1`` points.

Kept separate from :mod:`planargw.gw_table` on purpose: it is a second,
independent route used only for cross-checking.
"""
from __future__ import annotations

from functools import lru_cache

from .gw_table import binomial


@lru_cache(maxsize=None)
def kontsevich(d: int) -> int:
    """Number of rational degree-``d`` plane curves through ``3d - 1`` general points."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    if d == 1:
        return 1
    total = 0
    for d1 in range(1, d):
        d2 = d - d1
        total += kontsevich(d1) * kontsevich(d2) * (
            d1 ** 2 * d2 ** 2 * binomial(3 * d - 4, 3 * d1 - 2)
            - d1 ** 3 * d2 * binomial(3 * d - 4, 3 * d1 - 1))
    return total


def kontsevich_table(d_max: int) -> list[dict]:
    return [{"d": d, "value": str(kontsevich(d))} for d in range(1, d_max + 1)]
