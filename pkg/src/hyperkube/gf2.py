"""Rank of sparse GF(2) matrices, rows packed into Python ints."""

from __future__ import annotations

from typing import Iterable, List


def pack_rows(rows: Iterable[Iterable[int]]) -> List[int]:
    """Column index lists -> bitmask ints (repeated indices cancel mod 2)."""
    out = []
    for cols in rows:
        v = 0
        for c in cols:
            v ^= 1 << c
        out.append(v)
    return out


def rank(rows: Iterable[int]) -> int:
    """Rank of the matrix whose rows are the given bitmasks.

    Keeps a basis keyed by leading bit, so each new row is reduced against at
    most ``rank`` pivots.
    """
    pivots = {}
    r = 0
    for v in rows:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                r += 1
                break
            v ^= p
    return r
