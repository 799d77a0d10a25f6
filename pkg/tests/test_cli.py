import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from macrowave import cli
from macrowave.config import load_config
from macrowave.io import read_csv

CONFIGS = Path(__file__).resolve().parents[1] / "configs"

RUNS = [
    ("dispersion", "electron_500ev_100g"),
    ("dispersion", "electron_1kev_100g"),
    ("dispersion", "electron_150g"),
    ("dispersion", "diatomic_2000cm"),
    ("dispersion", "rydberg_100"),
    ("fringes", "fringes_mixture"),
    ("fringes", "fringes_rovib"),
    ("sweep", "sweep_landau"),
    ("beats", "beats_landau"),
    ("evolve", "evolve_plane_wave"),
    ("evolve", "evolve_packet"),
    ("matrix", "matrix_linear"),
]


@pytest.fixture(autouse=True)
def no_env_dir(monkeypatch):
    monkeypatch.delenv(cli.OUTPUT_ENV, raising=False)


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("command,name", RUNS, ids=[r[1] for r in RUNS])
def test_commands_write_envelope_and_csv(capsys, tmp_path, command, name):
    code, out, _ = run(capsys, command, CONFIGS / f"{name}.yaml", "--output-dir", tmp_path)
    assert code == 0
    envelope = json.loads(out)
    assert envelope["command"] == command
    assert json.loads((tmp_path / f"{command}.json").read_text()) == envelope
    columns, data = read_csv(tmp_path / f"{command}.csv")
    assert columns == envelope["payload"]["columns"]
    assert data.shape[0] == envelope["payload"]["rows"] > 0
    for scalar in envelope["scalars"].values():
        assert isinstance(scalar["unit"], str)


@pytest.mark.parametrize("command,name", RUNS[:5], ids=[r[1] for r in RUNS[:5]])
def test_envelope_echo_reproduces_config(capsys, tmp_path, command, name):
    _, out, _ = run(capsys, command, CONFIGS / f"{name}.yaml")
    echo = json.loads(out)["config"]
    path = tmp_path / "echo.json"
    path.write_text(json.dumps(echo))
    assert load_config(path) == load_config(CONFIGS / f"{name}.yaml")


def test_scenario_notes_attached(capsys):
    _, out, _ = run(capsys, "dispersion", CONFIGS / "electron_150g.yaml")
    notes = json.loads(out)["notes"]
    assert any(n.get("flagged") and n.get("published") == 0.026 for n in notes)


def test_fringes_mixture_counts(capsys):
    _, out, _ = run(capsys, "fringes", CONFIGS / "fringes_mixture.yaml")
    scalars = json.loads(out)["scalars"]
    assert scalars["period_ratio"]["value"] == pytest.approx(2.0, rel=1e-6)


def test_rovib_period_ratio(capsys):
    _, out, _ = run(capsys, "fringes", CONFIGS / "fringes_rovib.yaml")
    assert json.loads(out)["scalars"]["period_ratio"]["value"] == pytest.approx(100.0, rel=1e-3)


def test_fundamental_fringes_three_maxima(capsys):
    _, out, _ = run(capsys, "fringes", CONFIGS / "fringes_mixture.yaml",
                    "--set", "fringes.harmonics=[{l: 1}]")
    assert json.loads(out)["scalars"]["maxima_count"]["value"] == 3


def test_set_override(capsys):
    _, out, _ = run(capsys, "dispersion", CONFIGS / "electron_500ev_100g.yaml",
                    "--set", "beam.parallel_energy_ev=2000")
    envelope = json.loads(out)
    assert envelope["config"]["beam"]["parallel_energy_ev"] == 2000
    assert envelope["scalars"]["wavelength"]["value"] == pytest.approx(2 * 0.047377, rel=1e-4)


def test_output_dir_precedence(capsys, tmp_path, monkeypatch):
    cfg_dir, env_dir, flag_dir = tmp_path / "cfg", tmp_path / "env", tmp_path / "flag"
    config = CONFIGS / "electron_500ev_100g.yaml"
    base = ["dispersion", config, "--quiet", "--set", f"output.directory={cfg_dir}"]
    assert run(capsys, *base)[0] == 0
    assert (cfg_dir / "dispersion.json").exists()
    monkeypatch.setenv(cli.OUTPUT_ENV, str(env_dir))
    run(capsys, *base)
    assert (env_dir / "dispersion.json").exists()
    run(capsys, *base, "--output-dir", flag_dir)
    assert (flag_dir / "dispersion.json").exists()


def test_format_selection(capsys, tmp_path):
    run(capsys, "dispersion", CONFIGS / "electron_500ev_100g.yaml", "--quiet",
        "--output-dir", tmp_path, "--set", "output.format=csv")
    assert (tmp_path / "dispersion.csv").exists()
    assert not (tmp_path / "dispersion.json").exists()


@pytest.mark.parametrize("argv", [
    ["dispersion", CONFIGS / "electron_500ev_100g.yaml", "--set", "beam.bogus=1"],
    ["dispersion", CONFIGS / "missing.yaml"],
    ["fringes", CONFIGS / "electron_500ev_100g.yaml"],
    ["beats", CONFIGS / "sweep_landau.yaml"],
    ["evolve", CONFIGS / "electron_500ev_100g.yaml"],
    ["matrix", CONFIGS / "rydberg_100.yaml", "--set", "matrix={perturbation: linear, quantum_number: 3}"],
])
def test_configuration_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and "configuration error" in err


@pytest.mark.parametrize("argv", [
    ["matrix", CONFIGS / "matrix_linear.yaml", "--set", "matrix.quantum_number=20000"],
    ["evolve", CONFIGS / "evolve_plane_wave.yaml", "--set", "evolution.time_step_s=10.0"],
    ["dispersion", CONFIGS / "electron_500ev_100g.yaml", "--set", "beam.parallel_energy_ev=null",
     "--set", "beam.energy_ev=1e-30"],
])
def test_domain_errors_exit_3(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 3
    assert "physics error" in err


def test_console_script_entry_point(tmp_path):
    exe = shutil.which("macrowave")
    cmd = [exe] if exe else [sys.executable, "-m", "macrowave.cli"]
    proc = subprocess.run(cmd + ["dispersion", str(CONFIGS / "electron_500ev_100g.yaml"),
                                 "--output-dir", str(tmp_path)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["command"] == "dispersion"
