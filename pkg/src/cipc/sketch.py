"""The L-bit BITMAP register and its on-disk format.

Layout of a serialized sketch (multi-byte fields little-endian)::

    0..3    magic b"CIPC"
    4       format version (1)
    5       L, unsigned byte
    6..13   mix_multiplier
    14..21  fold_offset
    22..29  fold_prime
    30..    ceil(L / 8) payload bytes; bitmap bit i is bit (i % 8) of byte i // 8

The encoded size depends only on L, never on what was added.
"""

from __future__ import annotations

import struct
from typing import Iterable

import numpy as np

from .errors import (
    BadMagic,
    ConfigMismatch,
    StateFormatError,
    TruncatedPayload,
    UnsupportedVersion,
)
from .hashing import HashConfig, check_register_bits, hash_to_domain, lssb, lssb_array

MAGIC = b"CIPC"
VERSION = 1
_HEADER = struct.Struct("<4sBBQQQ")
HEADER_SIZE = _HEADER.size  # 30


def payload_size(L: int) -> int:
    return (L + 7) // 8


class Sketch:
    """A single probabilistic-counting register.

    Bits are held in an int mask, bit ``i`` of the mask being register
    position ``i``.  Positions only ever go from 0 to 1.
    """

    __slots__ = ("cfg", "_mask")

    def __init__(self, cfg: HashConfig | int, mask: int = 0):
        if not isinstance(cfg, HashConfig):
            cfg = HashConfig(register_bits=cfg)
        if mask < 0 or mask >> cfg.register_bits:
            raise ValueError("mask has bits beyond the register width")
        self.cfg = cfg
        self._mask = mask

    @property
    def L(self) -> int:
        return self.cfg.register_bits

    @property
    def mask(self) -> int:
        return self._mask

    @property
    def bits(self) -> tuple[bool, ...]:
        return tuple(bool((self._mask >> i) & 1) for i in range(self.L))

    @property
    def is_empty(self) -> bool:
        return self._mask == 0

    def copy(self) -> "Sketch":
        return Sketch(self.cfg, self._mask)

    def add(self, record: bytes) -> "Sketch":
        self._mask |= 1 << lssb(hash_to_domain(record, self.cfg), self.L)
        return self

    def update(self, records: Iterable[bytes]) -> "Sketch":
        for record in records:
            self.add(record)
        return self

    def add_hashes(self, hashes) -> "Sketch":
        """Mark positions for ``L``-bit hash values already computed in bulk."""
        positions = np.unique(lssb_array(hashes, self.L))
        for p in positions.tolist():
            self._mask |= 1 << p
        return self

    def rightmost_zero(self) -> int:
        """Smallest unset position, or ``L`` when the register is saturated."""
        return min((~self._mask & (self._mask + 1)).bit_length() - 1, self.L)

    @property
    def saturated(self) -> bool:
        return self.rightmost_zero() == self.L

    def __or__(self, other: "Sketch") -> "Sketch":
        return merge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Sketch):
            return NotImplemented
        return self.cfg == other.cfg and self._mask == other._mask

    def __hash__(self):
        return hash((self.cfg, self._mask))

    def __repr__(self):
        return f"Sketch(L={self.L}, bits={self._mask:0{self.L}b})"

    def to_bytes(self) -> bytes:
        return serialize(self)

    @classmethod
    def from_bytes(cls, data: bytes) -> "Sketch":
        return deserialize(data)


def rightmost_zero(sk: Sketch) -> int:
    return sk.rightmost_zero()


def merge(a: Sketch, b: Sketch) -> Sketch:
    if a.cfg != b.cfg:
        raise ConfigMismatch(f"cannot merge sketches with configs {a.cfg} and {b.cfg}")
    return Sketch(a.cfg, a.mask | b.mask)


def serialize(sk: Sketch) -> bytes:
    cfg = sk.cfg
    header = _HEADER.pack(
        MAGIC, VERSION, cfg.register_bits, cfg.mix_multiplier, cfg.fold_offset, cfg.fold_prime
    )
    return header + sk.mask.to_bytes(payload_size(cfg.register_bits), "little")


def deserialize(data: bytes) -> Sketch:
    data = bytes(data)
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic("not a sketch state file")
    if len(data) < 5:
        raise TruncatedPayload("missing version byte")
    if data[4] != VERSION:
        raise UnsupportedVersion(f"state format version {data[4]} is not supported")
    if len(data) < HEADER_SIZE:
        raise TruncatedPayload(f"header needs {HEADER_SIZE} bytes, got {len(data)}")
    _, _, L, multiplier, offset, prime = _HEADER.unpack_from(data)
    L = check_register_bits(L)
    expected = HEADER_SIZE + payload_size(L)
    if len(data) < expected:
        raise TruncatedPayload(f"payload needs {expected} bytes, got {len(data)}")
    if len(data) > expected:
        raise StateFormatError(f"{len(data) - expected} trailing bytes after payload")
    try:
        cfg = HashConfig(L, fold_offset=offset, fold_prime=prime, mix_multiplier=multiplier)
    except ValueError as exc:
        raise StateFormatError(str(exc)) from exc
    mask = int.from_bytes(data[HEADER_SIZE:], "little")
    if mask >> L:
        raise StateFormatError("payload has bits set beyond the register width")
    return Sketch(cfg, mask)

