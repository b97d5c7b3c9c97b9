"""Exact references: true distinct counts and observed hash collisions.

These keep every distinct key in memory, which is exactly what the sketch
exists to avoid.  They are for validation and side-by-side comparison.
"""

from __future__ import annotations

from typing import Hashable, Iterable

import numpy as np

from .hashing import HashConfig, hash_to_domain


class ExactCounter:
    def __init__(self, keys: Iterable[Hashable] = ()):
        self.seen: set = set(keys)

    def add(self, key: Hashable) -> None:
        self.seen.add(key)

    def update(self, keys: Iterable[Hashable]) -> None:
        self.seen.update(keys)

    @property
    def count(self) -> int:
        return len(self.seen)

    def __len__(self):
        return len(self.seen)


def exact_distinct(stream: Iterable[Hashable]) -> int:
    return ExactCounter(stream).count


def empirical_collisions(records: Iterable[bytes], cfg: HashConfig) -> int:
    """Number of distinct records minus the number of distinct hash values."""
    distinct = set(records)
    occupied = {hash_to_domain(r, cfg) for r in distinct}
    return len(distinct) - len(occupied)


def empirical_collisions_of_hashes(hashes) -> int:
    """Same count for hash values already computed, one per distinct record."""
    hashes = np.asarray(hashes)
    return int(hashes.size - np.unique(hashes).size)
