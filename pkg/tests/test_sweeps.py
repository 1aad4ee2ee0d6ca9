import json
import math

import pytest

from core.errors import InvalidParameters
from experiments import sweeps
from experiments.sweeps import run_fig1, run_fig2
from experiments.writers import metadata_path, render_svg, scatter_path, write_sweep_csv, write_svg


@pytest.fixture(scope="module")
def fig1_small():
    return run_fig1(steps=9, random_trials=6, seed=3)


@pytest.fixture(scope="module")
def fig2_small():
    return run_fig2(steps=5, restarts=2, seed=1)


def test_fig1_rows_pass_self_check(fig1_small):
    assert fig1_small.ok
    assert fig1_small.failures == 0
    assert list(fig1_small.curves) == ["sum_variances", "LB_SUR", "LB_ort", "LB_op"]
    assert fig1_small.grid[0] == 0.0 and fig1_small.grid[-1] == pytest.approx(math.pi)


def test_fig1_curves(fig1_small):
    for alpha, lb_sur, lb_ort, lb_op, total in zip(
        fig1_small.grid,
        fig1_small.curves["LB_SUR"],
        fig1_small.curves["LB_ort"],
        fig1_small.curves["LB_op"],
        fig1_small.curves["sum_variances"],
    ):
        assert lb_sur == pytest.approx(0.0, abs=1e-12)
        assert lb_ort == pytest.approx(0.5, abs=1e-12)
        assert lb_op == pytest.approx(0.5 + math.sin(2 * alpha) ** 2, abs=1e-9)
        assert lb_op == pytest.approx(total, abs=1e-9)


def test_fig1_scatter_is_seeded(fig1_small):
    assert len(fig1_small.scatter) == 6
    assert all(p.ok for p in fig1_small.scatter)
    assert all(0.0 <= p.alpha <= math.pi for p in fig1_small.scatter)
    again = run_fig1(steps=2, random_trials=6, seed=3)
    assert [p.value for p in again.scatter] == [p.value for p in fig1_small.scatter]


def test_fig2_rows(fig2_small):
    assert fig2_small.ok
    assert list(fig2_small.curves) == ["LB_0", "LB_1", "LB_2", "LB_3", "sum_variances"]
    # β = π/4 and 3π/4 sit on a five-point grid
    assert fig2_small.curves["LB_0"][1] == pytest.approx(0.0, abs=1e-8)
    assert fig2_small.curves["LB_0"][3] == pytest.approx(0.0, abs=1e-8)
    for i, beta in enumerate(fig2_small.grid):
        row = [fig2_small.curves[f"LB_{k}"][i] for k in range(4)]
        assert all(a <= b + 1e-12 for a, b in zip(row, row[1:]))
        assert row[3] == pytest.approx(1 + math.sin(2 * beta) ** 2, abs=1e-8)


def test_invalid_sweep_parameters():
    with pytest.raises(InvalidParameters):
        run_fig1(steps=1, random_trials=0)
    with pytest.raises(InvalidParameters):
        run_fig1(steps=3, random_trials=-1)
    with pytest.raises(InvalidParameters):
        run_fig2(steps=3, restarts=-1)


def test_progress_callback_reaches_total():
    calls = []
    run_fig1(steps=3, random_trials=2, seed=0, progress=lambda done, total: calls.append((done, total)))
    assert calls[-1] == (5, 5)


def test_csv_is_byte_identical(tmp_path, fig1_small):
    first = write_sweep_csv(fig1_small, tmp_path / "a.csv")
    rerun = run_fig1(steps=9, random_trials=6, seed=3)
    second = write_sweep_csv(rerun, tmp_path / "b.csv")
    assert [p.name for p in first] == ["a.csv", "a_scatter.csv", "a.meta.json"]
    for x, y in zip(first, second):
        assert x.read_bytes() == y.read_bytes()


def test_csv_layout(tmp_path, fig2_small):
    out = tmp_path / "fig2.csv"
    write_sweep_csv(fig2_small, out)
    raw = out.read_bytes()
    assert b"\r\n" not in raw
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == "beta,LB_0,LB_1,LB_2,LB_3,sum_variances,verdict"
    assert len(lines) == 6
    assert all(line.endswith(",ok") for line in lines[1:])
    assert not scatter_path(out).exists()
    meta = json.loads(metadata_path(out).read_text(encoding="utf-8"))
    assert meta["experiment"] == "fig2" and meta["seed"] == 1


def test_svg(tmp_path, fig1_small):
    svg = render_svg(fig1_small, "spin-1")
    assert svg.startswith("<svg")
    assert svg.count("<polyline") == 4
    assert svg.count("<circle") == 7
    path = write_svg(fig1_small, tmp_path / "fig1.svg", "spin-1")
    assert path.read_text(encoding="utf-8") == svg


@pytest.mark.slow
def test_full_size_experiments():
    assert run_fig1().ok
    assert run_fig2().ok


def test_fig2_csv_is_byte_identical(tmp_path, fig2_small):
    first = write_sweep_csv(fig2_small, tmp_path / "a.csv")
    second = write_sweep_csv(run_fig2(steps=5, restarts=2, seed=1), tmp_path / "b.csv")
    for x, y in zip(first, second):
        assert x.read_bytes() == y.read_bytes()


def test_fig2_checks_lb0_at_quarter_pi_off_grid():
    result = run_fig2(steps=2, restarts=1, seed=0)
    assert result.checks == {"LB_0_at_pi_over_4": True}
    assert result.metadata["LB_0_at_pi_over_4"] <= 1e-8


def test_fig2_fails_when_lb0_at_quarter_pi_is_positive(monkeypatch):
    original = sweeps._fig2_row

    def shifted(beta, restarts, seed, observables):
        values, total = original(beta, restarts, seed, observables)
        if beta == math.pi / 4:
            values[0] += 1e-3
        return values, total

    monkeypatch.setattr(sweeps, "_fig2_row", shifted)
    result = run_fig2(steps=2, restarts=1, seed=0)
    assert all(result.verdicts)
    assert not result.ok
    assert result.failures == 1


def test_satisfied_tolerance_drives_verdicts():
    assert run_fig1(steps=3, random_trials=2, seed=0, tol=1e-9).ok
    strict = run_fig1(steps=3, random_trials=2, seed=0, tol=-1.0)
    assert not any(strict.verdicts)
    assert strict.metadata["tolerances"]["satisfied"] == -1.0
    assert not run_fig2(steps=2, restarts=1, seed=0, tol=-1.0).ok
