"""Indexed tables over I(Finite(n)) for exhaustive sweeps.

Sets of elements are Python ints used as bitsets over the enumeration
index.  Everything here is derived from :func:`pbij.compose`, so sweeps
that use the tables are still sweeps over the real operation.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .pbij import Finite, PartialBijection, enumerate_all


class Universe:
    def __init__(self, n: int):
        self.n = n
        self.ground = Finite(n)
        self.elements: tuple[PartialBijection, ...] = enumerate_all(n)
        self.size = len(self.elements)
        self.index = {f: i for i, f in enumerate(self.elements)}
        idx = self.index
        els = self.elements
        self.inv = [idx[f.inverse()] for f in els]
        self.dom_size = [len(f.pairs()) for f in els]
        table = np.empty((self.size, self.size), dtype=np.int32)
        for i, f in enumerate(els):
            for j, g in enumerate(els):
                table[i, j] = idx[f * g]
        self.table = table
        self.full = (1 << self.size) - 1

    def compose(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def mask(self, predicate) -> int:
        m = 0
        for i, f in enumerate(self.elements):
            if predicate(f):
                m |= 1 << i
        return m

    def members(self, mask: int) -> list[int]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return out

    def to_mask(self, indices) -> int:
        m = 0
        for i in indices:
            m |= 1 << int(i)
        return m

    def setwise(self, left: int, right: int) -> int:
        """Bitset of ``{g o h : g in left, h in right}``."""
        a = self.members(left)
        b = self.members(right)
        if not a or not b:
            return 0
        vals = np.unique(self.table[np.ix_(a, b)])
        return self.to_mask(vals)

    def invert_mask(self, mask: int) -> int:
        return self.to_mask(self.inv[i] for i in self.members(mask))

    def elements_of(self, mask: int) -> list[PartialBijection]:
        return [self.elements[i] for i in self.members(mask)]


@lru_cache(maxsize=None)
def universe(n: int) -> Universe:
    return Universe(n)
