"""Record hashing: FNV-1a folding followed by multiplicative mixing.

A record (any byte string) is first folded to a 64-bit word with FNV-1a,
then multiplied by an odd 64-bit constant modulo 2**64.  The top ``L``
bits of the product form the hash, which is close to uniform over
``[0, 2**L - 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidL

MASK64 = (1 << 64) - 1
FNV_OFFSET = 14695981039346656037
FNV_PRIME = 1099511628211
GOLDEN_MULTIPLIER = 0x9E3779B97F4A7C15

MIN_REGISTER_BITS = 1
MAX_REGISTER_BITS = 56


def check_register_bits(L) -> int:
    if isinstance(L, bool) or not isinstance(L, (int, np.integer)):
        raise InvalidL(f"register width must be an integer, got {L!r}")
    L = int(L)
    if not MIN_REGISTER_BITS <= L <= MAX_REGISTER_BITS:
        raise InvalidL(
            f"register width {L} outside [{MIN_REGISTER_BITS}, {MAX_REGISTER_BITS}]"
        )
    return L


@dataclass(frozen=True)
class HashConfig:
    """Register width plus the constants that define the hash."""

    register_bits: int
    fold_offset: int = FNV_OFFSET
    fold_prime: int = FNV_PRIME
    mix_multiplier: int = GOLDEN_MULTIPLIER

    def __post_init__(self):
        check_register_bits(self.register_bits)
        for name in ("fold_offset", "fold_prime", "mix_multiplier"):
            value = getattr(self, name)
            if not 0 <= value <= MASK64:
                raise ValueError(f"{name} must fit in 64 bits")
        if self.mix_multiplier % 2 == 0:
            raise ValueError("mix_multiplier must be odd")

    @property
    def domain_size(self) -> int:
        return 1 << self.register_bits


def fold_bytes(record: bytes, offset: int = FNV_OFFSET, prime: int = FNV_PRIME) -> int:
    value = offset
    for byte in record:
        value = ((value ^ byte) * prime) & MASK64
    return value


def mix(folded: int, cfg: HashConfig) -> int:
    """Top ``L`` bits of ``folded * mix_multiplier mod 2**64``."""
    return ((folded * cfg.mix_multiplier) & MASK64) >> (64 - cfg.register_bits)


def hash_to_domain(record: bytes, cfg: HashConfig) -> int:
    return mix(fold_bytes(record, cfg.fold_offset, cfg.fold_prime), cfg)


def lssb(h: int, L: int) -> int:
    """Position of the least significant set bit of ``h``.

    ``h == 0`` has no set bit; it is clamped to ``L - 1`` so that every
    record marks some register position.
    """
    if not 0 <= h < (1 << L):
        raise ValueError(f"hash value {h} outside [0, 2**{L})")
    if h == 0:
        return L - 1
    return (h & -h).bit_length() - 1


# Vectorised paths for fixed-width integer records (the experiment workload).
# They must agree bit-for-bit with the scalar functions above.


def hash_uint64_records(values, cfg: HashConfig) -> np.ndarray:
    """Hash integers encoded as 8 little-endian bytes, in bulk."""
    values = np.asarray(values, dtype=np.uint64)
    prime = np.uint64(cfg.fold_prime)
    acc = np.full(values.shape, cfg.fold_offset, dtype=np.uint64)
    byte_mask = np.uint64(0xFF)
    for i in range(8):
        acc ^= (values >> np.uint64(8 * i)) & byte_mask
        acc *= prime
    acc *= np.uint64(cfg.mix_multiplier)
    return acc >> np.uint64(64 - cfg.register_bits)


def lssb_array(hashes: np.ndarray, L: int) -> np.ndarray:
    hashes = np.asarray(hashes, dtype=np.uint64)
    lowest = hashes & (~hashes + np.uint64(1))
    positions = np.full(hashes.shape, L - 1, dtype=np.int64)
    nonzero = lowest != 0
    # powers of two below 2**56 are exact in float64
    positions[nonzero] = np.log2(lowest[nonzero].astype(np.float64)).astype(np.int64)
    return positions
