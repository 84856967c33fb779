"""CLI surface plus end-to-end rendering from real simulator output."""

import shutil
import subprocess

import matplotlib.image
import pytest

from figtools.cli import main


class TestExitCodes:
    def test_no_command(self):
        assert main([]) == 1

    def test_missing_input(self, tmp_path):
        assert main(["curves", "--in", str(tmp_path / "absent.csv"),
                     "--out", str(tmp_path / "o.png")]) == 1

    def test_malformed_input(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("nope\n")
        assert main(["curves", "--in", str(bad), "--out", str(tmp_path / "o.png")]) == 1

    def test_success(self, tmp_path):
        src = tmp_path / "ts.csv"
        src.write_text("tick,n_A,n_0\n0,0.0,1.0\n1,0.5,0.5\n")
        out = tmp_path / "o.png"
        assert main(["curves", "--in", str(src), "--out", str(out)]) == 0
        assert out.exists()


@pytest.fixture(scope="module")
def sim_out(tmp_path_factory):
    root = tmp_path_factory.mktemp("sim")
    cfg = root / "run.cfg"
    cfg.write_text(
        "grid.width = 30\ngrid.height = 30\n"
        "innovators.A.rate = 5\ninnovators.B.rate = 5\n"
        "run.seed = 2\n"
    )
    run_dir = root / "run"
    subprocess.run(
        ["pottsdiff", "run", "--config", str(cfg), "--out", str(run_dir)],
        check=True,
    )
    sweep_dir = root / "sweep"
    subprocess.run(
        ["pottsdiff", "sweep", "--config", str(cfg),
         "--param", "innovators.B.rate", "--values", "2,5,10",
         "--out", str(sweep_dir)],
        check=True,
    )
    return {"run": run_dir, "sweep": sweep_dir}


@pytest.mark.skipif(shutil.which("pottsdiff") is None,
                    reason="simulator CLI not on PATH")
class TestEndToEnd:
    """Render every figure kind from files the simulator actually wrote."""

    def test_curves_from_simulator_csv(self, sim_out, tmp_path):
        out = tmp_path / "curves.png"
        assert main(["curves", "--in", str(sim_out["run"] / "timeseries.csv"),
                     "--out", str(out)]) == 0
        assert out.stat().st_size > 0

    def test_landscape_raster_matches_grid(self, sim_out, tmp_path):
        out = tmp_path / "landscape.png"
        assert main(["landscape", "--in", str(sim_out["run"] / "landscape.txt"),
                     "--out", str(out)]) == 0
        assert matplotlib.image.imread(out).shape[:2] == (30, 30)

    def test_sweep_chart(self, sim_out, tmp_path):
        out = tmp_path / "sweep.png"
        assert main(["sweep", "--in", str(sim_out["sweep"] / "sweep.csv"),
                     "--out", str(out)]) == 0
        assert out.stat().st_size > 0
