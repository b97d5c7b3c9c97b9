import csv
import io
import json

import numpy as np
import pytest

from cipc.errors import UniverseTooSmall
from cipc.experiments import (
    CSV_HEADER,
    DEFAULT_M_VALUES,
    INSUFFICIENT,
    ExperimentConfig,
    encode_record,
    generate_workload,
    rows_to_csv,
    rows_to_json,
    run_row,
    run_table,
    sample_distinct,
    sweep_indicator,
    sweep_to_csv,
    trial_sketch,
)
from cipc.estimators import estimate_cipc, estimate_pc
from cipc.hashing import HashConfig
from cipc.sketch import Sketch


def test_default_grid():
    assert DEFAULT_M_VALUES == (1000, 5000, 10000, 20000, 30000, 40000, 50000,
                                60000, 70000, 80000, 90000, 100000)
    cfg = ExperimentConfig()
    assert cfg.trials == 50 and cfg.universe_max == 200_000


def test_register_bits_per_offset():
    assert [ExperimentConfig(l_offset=o).register_bits(1000) for o in (0, 1, 2)] == [9, 10, 11]
    assert ExperimentConfig().register_bits(65536) == 18


def test_seed_schedule():
    cfg = ExperimentConfig(master_seed=5)
    assert cfg.trial_seed(3, 7) == 5 + 3 * 10**6 + 7


def test_workload_full_universe_is_permutation():
    values = sorted(sample_distinct(100, 100, seed=1).tolist())
    assert values == list(range(1, 101))


def test_workload_deterministic_and_distinct():
    a = generate_workload(1000, 200_000, seed=9)
    assert a == generate_workload(1000, 200_000, seed=9)
    assert len(set(a)) == 1000
    assert all(len(r) == 8 for r in a)
    assert min(int.from_bytes(r, "little") for r in a) >= 1


def test_workload_universe_too_small():
    with pytest.raises(UniverseTooSmall):
        generate_workload(11, 10, seed=0)
    with pytest.raises(UniverseTooSmall):
        ExperimentConfig(m_values=[300_000])


def test_bulk_trial_sketch_matches_record_path():
    seed, M, L = 42, 3000, 13
    via_records = Sketch(HashConfig(L)).update(generate_workload(M, 200_000, seed))
    assert trial_sketch(M, L, 200_000, seed) == via_records


def test_run_row_uses_one_bitmap_for_both():
    cfg = ExperimentConfig(m_values=[1000], trials=10)
    row = run_row(1000, cfg)
    ks = [trial_sketch(1000, row.L, cfg.universe_max, cfg.trial_seed(0, t)).rightmost_zero()
          for t in range(10)]
    kept = [k for k in ks if k < row.L]
    assert row.saturated_trials == len(ks) - len(kept)
    assert row.pc.mean == pytest.approx(np.mean([estimate_pc(k, row.L) for k in kept]))
    assert row.cipc.mean == pytest.approx(np.mean([estimate_cipc(k, row.L) for k in kept]))
    assert row.indicators == [2**k for k in ks]


def test_single_trial_row_reports_insufficient_samples():
    cfg = ExperimentConfig(m_values=[5000], trials=1)
    rec = list(csv.DictReader(io.StringIO(rows_to_csv(run_table(cfg)))))[0]
    if rec["saturated_trials"] == "0":
        assert rec["pc_ci_low"] == rec["cipc_ci_high"] == INSUFFICIENT


def test_empty_grid():
    cfg = ExperimentConfig(m_values=[])
    assert run_table(cfg) == [] and sweep_indicator(cfg) == []
    assert rows_to_csv([]) == ",".join(CSV_HEADER) + "\n"


def test_csv_and_json_mirror():
    cfg = ExperimentConfig(m_values=[1000, 5000], trials=5)
    rows = run_table(cfg)
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == (
        "M,L,pc_mean,pc_ci_low,pc_ci_high,pc_pe,cipc_mean,cipc_ci_low,cipc_ci_high,cipc_pe,"
        "saturated_trials"
    )
    parsed = json.loads(rows_to_json(rows))
    assert [list(r) for r in parsed] == [list(CSV_HEADER)] * 2
    for rec, js in zip(csv.DictReader(io.StringIO(text)), parsed):
        assert float(rec["cipc_pe"]) == js["cipc_pe"]


def test_reproducible_output():
    cfg = ExperimentConfig(m_values=[1000, 20000], trials=8, master_seed=123)
    assert rows_to_csv(run_table(cfg)) == rows_to_csv(run_table(cfg))
    other = ExperimentConfig(m_values=[1000, 20000], trials=8, master_seed=124)
    assert rows_to_csv(run_table(other)) != rows_to_csv(run_table(cfg))


def test_sweep_matches_table_indicators():
    cfg = ExperimentConfig(m_values=[1000, 10000], trials=6)
    points = sweep_indicator(cfg)
    rows = run_table(cfg)
    assert [p[2] for p in points] == [np.mean(r.indicators) for r in rows]
    assert sweep_to_csv(points).splitlines()[0] == "M,L,mean_indicator"


def test_sweep_underestimates_large_m():
    # register sized floor(log2 M): the raw indicator stays under M
    cfg = ExperimentConfig(m_values=[40000, 60000, 80000, 100000], trials=20, l_offset=0)
    below = [mean_2k <= m for m, _, mean_2k in sweep_indicator(cfg)]
    assert sum(below) >= 3


def test_encode_record():
    assert encode_record(1) == b"\x01" + b"\x00" * 7
