from cipc.experiments import ExperimentConfig, run_table, sweep_indicator
from cipc.plotting import plot_sweep, plot_table


def test_plots_written(tmp_path):
    cfg = ExperimentConfig(m_values=[1000, 5000, 10000], trials=4)
    p1 = plot_table(run_table(cfg), tmp_path / "sub" / "pe.png")
    p2 = plot_sweep(sweep_indicator(cfg), tmp_path / "sweep.pdf")
    assert p1.stat().st_size > 0
    assert p2.read_bytes()[:4] == b"%PDF"
