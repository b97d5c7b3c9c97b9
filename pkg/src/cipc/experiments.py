"""Synthetic accuracy experiments over a grid of true cardinalities.

Each trial samples ``M`` distinct integers from ``[1, universe_max]``,
builds one register of width ``floor(log2 M) + l_offset`` and reads both
estimators off that same register.  Trials whose register saturates are
counted but left out of the aggregates.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import UniverseTooSmall
from .estimators import estimate_cipc, estimate_pc
from .hashing import HashConfig, check_register_bits, hash_uint64_records
from .sketch import Sketch
from .stats import TrialAggregate, aggregate, mean

DEFAULT_M_VALUES = (1_000, 5_000) + tuple(i * 10_000 for i in range(1, 11))
ROW_SEED_STRIDE = 10**6
CSV_HEADER = (
    "M",
    "L",
    "pc_mean",
    "pc_ci_low",
    "pc_ci_high",
    "pc_pe",
    "cipc_mean",
    "cipc_ci_low",
    "cipc_ci_high",
    "cipc_pe",
    "saturated_trials",
)
SWEEP_HEADER = ("M", "L", "mean_indicator")


@dataclass(frozen=True)
class ExperimentConfig:
    m_values: Sequence[int] = DEFAULT_M_VALUES
    trials: int = 50
    universe_max: int = 200_000
    l_offset: int = 2
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "m_values", tuple(int(m) for m in self.m_values))
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.l_offset not in (0, 1, 2):
            raise ValueError("l_offset must be 0, 1 or 2")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be an unsigned 64-bit integer")
        for m in self.m_values:
            if m < 1:
                raise ValueError(f"M must be positive, got {m}")
            if m > self.universe_max:
                raise UniverseTooSmall(f"M={m} exceeds universe_max={self.universe_max}")
            check_register_bits(self.register_bits(m))

    def register_bits(self, M: int) -> int:
        return int(M).bit_length() - 1 + self.l_offset

    def trial_seed(self, row_index: int, trial_index: int) -> int:
        return self.master_seed + row_index * ROW_SEED_STRIDE + trial_index


@dataclass
class TableRow:
    M: int
    L: int
    pc: Optional[TrialAggregate]
    cipc: Optional[TrialAggregate]
    saturated_trials: int
    indicators: list = field(default_factory=list, repr=False)


def sample_distinct(M: int, universe_max: int, seed: int) -> np.ndarray:
    """``M`` distinct integers from ``[1, universe_max]`` (prefix of a Fisher-Yates shuffle)."""
    if M > universe_max:
        raise UniverseTooSmall(f"cannot draw {M} distinct values from [1, {universe_max}]")
    if M < 0:
        raise ValueError("M must be non-negative")
    rng = np.random.default_rng(seed)
    return rng.permutation(np.arange(1, universe_max + 1, dtype=np.uint64))[:M]


def encode_record(value: int) -> bytes:
    return int(value).to_bytes(8, "little")


def generate_workload(M: int, universe_max: int, seed: int) -> list[bytes]:
    return [encode_record(v) for v in sample_distinct(M, universe_max, seed).tolist()]


def trial_sketch(M: int, L: int, universe_max: int, seed: int) -> Sketch:
    cfg = HashConfig(L)
    values = sample_distinct(M, universe_max, seed)
    return Sketch(cfg).add_hashes(hash_uint64_records(values, cfg))


def run_row(M: int, cfg: ExperimentConfig, row_index: int = 0) -> TableRow:
    L = cfg.register_bits(M)
    pc, cipc, indicators = [], [], []
    saturated = 0
    for t in range(cfg.trials):
        sk = trial_sketch(M, L, cfg.universe_max, cfg.trial_seed(row_index, t))
        k = sk.rightmost_zero()
        indicators.append(2**k)
        if k == L:
            saturated += 1
            continue
        pc.append(estimate_pc(k, L))
        cipc.append(estimate_cipc(k, L))
    return TableRow(
        M=M,
        L=L,
        pc=aggregate(pc, M) if pc else None,
        cipc=aggregate(cipc, M) if cipc else None,
        saturated_trials=saturated,
        indicators=indicators,
    )


def run_table(cfg: ExperimentConfig) -> list[TableRow]:
    return [run_row(m, cfg, i) for i, m in enumerate(cfg.m_values)]


def sweep_indicator(cfg: ExperimentConfig) -> list[tuple[int, int, float]]:
    """Mean raw indicator ``2**k`` per M, saturated trials included."""
    out = []
    for i, m in enumerate(cfg.m_values):
        L = cfg.register_bits(m)
        ks = [
            trial_sketch(m, L, cfg.universe_max, cfg.trial_seed(i, t)).rightmost_zero()
            for t in range(cfg.trials)
        ]
        out.append((m, L, mean([2**k for k in ks])))
    return out


# --- output -----------------------------------------------------------------

INSUFFICIENT = "InsufficientSamples"
EMPTY = "EmptySamples"


def _agg_fields(agg: Optional[TrialAggregate]) -> list:
    if agg is None:
        return [EMPTY] * 4
    ci = [INSUFFICIENT, INSUFFICIENT] if agg.ci_low is None else [agg.ci_low, agg.ci_high]
    return [agg.mean, *ci, agg.percent_error]


def row_record(row: TableRow) -> dict:
    values = [row.M, row.L, *_agg_fields(row.pc), *_agg_fields(row.cipc), row.saturated_trials]
    return dict(zip(CSV_HEADER, values))


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows: Sequence[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_fmt(v) for v in row_record(row).values()])
    return buf.getvalue()


def rows_to_json(rows: Sequence[TableRow]) -> str:
    return json.dumps([row_record(r) for r in rows], indent=2) + "\n"


def sweep_to_csv(points) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for m, L, value in points:
        writer.writerow([m, L, _fmt(value)])
    return buf.getvalue()


def sweep_to_json(points) -> str:
    return json.dumps([dict(zip(SWEEP_HEADER, p)) for p in points], indent=2) + "\n"
