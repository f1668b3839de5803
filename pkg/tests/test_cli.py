"""Command-line behavior: exit codes, output channels, determinism."""

import subprocess
import sys
import textwrap

from wqed.cli import main

LAMBDA_INTENSITY = """
[waveguide]
gamma_ref = 1.0

[[emitter]]
id = "L"
phase_position = 0.0
levels = [
  { id = "g0", energy = 0.0, kind = "ground" },
  { id = "g1", energy = %(splitting)s, kind = "ground" },
  { id = "e", energy = 0.0, kind = "excited" },
]

[[transition]]
emitter = "L"
excited = "e"
ground = "g0"
gamma1d_right = 0.25
gamma1d_left = 0.25

[[transition]]
emitter = "L"
excited = "e"
ground = "g1"
gamma1d_right = 0.25
gamma1d_left = 0.25

[run]
mode = "lambda_intensity"
detuning = 0.0
grid = { start = 0.0, stop = 1.0, points = 5 }
x_column = "t"
pulse = { intensity = 0.8, duration = 1.0 }
"""


def lambda_file(tmp_path, splitting="0.001"):
    path = tmp_path / "scenario.toml"
    path.write_text(textwrap.dedent(LAMBDA_INTENSITY % {"splitting": splitting}))
    return str(path)


class TestRunPreset:
    def test_to_file(self, tmp_path):
        out = tmp_path / "out.csv"
        assert main(["run", "--preset", "fig3a", "-o", str(out)]) == 0
        data = out.read_bytes()
        assert data.startswith(b"# wqed=")
        assert b"delta,T2_beta0.5,T2_beta0.9,T2_beta0.99" in data

    def test_to_stdout(self, capsysbinary):
        assert main(["run", "--preset", "fig9b"]) == 0
        captured = capsysbinary.readouterr()
        assert b"nbar,omega01_T,f_closed,f_numeric,abs_diff" in captured.out

    def test_threads_are_deterministic(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert main(["run", "--preset", "fig6b", "-o", str(a)]) == 0
        assert main(["run", "--preset", "fig6b", "--threads", "3",
                     "-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestRunFile:
    def test_scenario_file(self, tmp_path, capsysbinary):
        path = lambda_file(tmp_path)
        assert main(["run", path]) == 0
        captured = capsysbinary.readouterr()
        assert b"t,intensity_out,rho00,rho11,rho01_abs" in captured.out


class TestExitCodes:
    def test_validation_failure_is_one(self, tmp_path, capsys):
        path = tmp_path / "bad.toml"
        path.write_text("[waveguide]\ngamma_ref = -1.0\n")
        assert main(["run", str(path)]) == 1
        err = capsys.readouterr().err
        assert err.startswith("ERROR ")

    def test_parse_failure_is_one(self, tmp_path, capsys):
        path = tmp_path / "bad.toml"
        path.write_text("= = garbage")
        assert main(["run", str(path)]) == 1
        assert "ERROR PARSE" in capsys.readouterr().err

    def test_missing_file_is_one(self, tmp_path, capsys):
        assert main(["run", str(tmp_path / "absent.toml")]) == 1
        assert "ERROR IO" in capsys.readouterr().err

    def test_numerical_failure_is_two(self, tmp_path, capsys):
        path = lambda_file(tmp_path, splitting="1.0e9")
        assert main(["run", path]) == 2
        assert "ERROR STEP_TOO_LARGE" in capsys.readouterr().err

    def test_unknown_preset(self, capsys):
        assert main(["run", "--preset", "nope"]) == 1
        assert "ERROR VALIDATION" in capsys.readouterr().err

    def test_scenario_and_preset_conflict(self, tmp_path, capsys):
        path = lambda_file(tmp_path)
        assert main(["run", path, "--preset", "fig3a"]) == 1
        assert "exactly one" in capsys.readouterr().err

    def test_neither_input(self, capsys):
        assert main(["run"]) == 1
        assert "ERROR" in capsys.readouterr().err

    def test_missing_command(self, capsys):
        assert main([]) == 1

    def test_unwritable_output(self, tmp_path, capsys):
        assert main(["run", "--preset", "fig9b",
                     "-o", str(tmp_path / "no" / "dir" / "x.csv")]) == 1
        assert "ERROR IO" in capsys.readouterr().err

    def test_version_exits_zero(self, capsys):
        assert main(["--version"]) == 0
        assert "wqed" in capsys.readouterr().out


class TestWarnings:
    def test_sweep_warnings_go_to_stderr(self, tmp_path, capsys):
        path = tmp_path / "phase.toml"
        path.write_text(textwrap.dedent("""
        [waveguide]
        gamma_ref = 1.0

        [[emitter]]
        id = "A"
        phase_position = 0.0
        levels = [
          { id = "gA", energy = 0.0, kind = "ground" },
          { id = "eA", energy = 0.0, kind = "excited" },
        ]

        [[emitter]]
        id = "B"
        phase_position = 1.0
        levels = [
          { id = "gB", energy = 0.0, kind = "ground" },
          { id = "eB", energy = 0.0, kind = "excited" },
        ]

        [[transition]]
        emitter = "A"
        excited = "eA"
        ground = "gA"
        gamma1d_right = 0.5
        gamma1d_left = 0.5

        [[transition]]
        emitter = "B"
        excited = "eB"
        ground = "gB"
        gamma1d_right = 0.5
        gamma1d_left = 0.5

        [run]
        mode = "spectrum"
        sweep = "phase"
        sweep_emitter = "B"
        detuning = 0.0
        grid = { start = 0.0, stop = 3.141592653589793, points = 3 }
        x_column = "k_dz"
        """))
        assert main(["run", str(path)]) == 0
        captured = capsys.readouterr()
        assert "WARN SINGULAR_MATRIX" in captured.err
        assert "nan" in captured.out


class TestSubprocess:
    def test_installed_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "wqed.cli", "run", "--preset", "fig9b"],
            capture_output=True,
        )
        assert proc.returncode == 0
        assert b"f_closed" in proc.stdout
