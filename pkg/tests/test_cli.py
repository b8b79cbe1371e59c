import json
import subprocess
import sys

import pytest

from noonqec.cli import main
from noonqec.fock import parse_state


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_list_codes(capsys):
    code, out, _ = run(capsys, "list-codes")
    assert code == 0
    assert "bosonic9" in out
    assert "noon(2,3)" in out


@pytest.mark.parametrize(
    "argv,status",
    [
        (["verify", "--code", "noon", "--N", "2", "--d", "2", "--max-loss", "1"], 0),
        (["verify", "--code", "noon", "--N", "2", "--d", "2", "--max-loss", "2"], 1),
        (["verify", "--code", "fake2", "--max-loss", "1"], 1),
        (["verify", "--code", "bosonic9", "--max-loss", "2"], 0),
        (["verify", "--code", "multirail", "--d", "3", "--max-loss", "0"], 0),
    ],
)
def test_verify_status(capsys, argv, status):
    code, out, _ = run(capsys, *argv)
    assert code == status
    report = json.loads(out)
    assert report["max_weight"] == int(argv[argv.index("--max-loss") + 1])


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--code", "steane"],
        ["verify", "--code", "noon", "--N", "2"],
        ["verify"],
        ["verify", "--code", "leung4", "--gamma", "1.0"],
        ["verify", "--code", "leung4", "--gamma", "nan"],
        ["verify", "--code", "leung4", "--max-loss", "-1"],
        ["prep-sim", "--t", "1.5"],
        ["fidelity-sweep", "--gamma-min", "0.9", "--gamma-max", "0.5"],
        ["cost-table", "--d", "1"],
        ["bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_threads_variable(capsys, monkeypatch):
    monkeypatch.setenv("NOONQEC_THREADS", "zero")
    assert run(capsys, "list-codes")[0] == 2
    monkeypatch.setenv("NOONQEC_THREADS", "4")
    assert run(capsys, "list-codes")[0] == 0


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_dump_and_reload(capsys, tmp_path, fmt):
    _, dumped, _ = run(capsys, "dump-code", "--code", "noon_alt", "--N", "2", "--d", "3", "--format", fmt)
    path = tmp_path / f"code.{fmt}"
    path.write_text(dumped)
    code, out, _ = run(capsys, "verify", "--code-file", str(path), "--max-loss", "1")
    assert code == 0
    assert json.loads(out)["code_label"] == "noon_alt(2,3)"


def test_sweeps_are_deterministic(capsys):
    outputs = [run(capsys, "cost-table", "--points", "5", "--N", "3", "--d", "2", "3")[1] for _ in range(2)]
    assert outputs[0] == outputs[1]
    lines = outputs[0].splitlines()
    assert lines[0] == "L0_km,N,d,cost"
    assert len(lines) == 11


def test_fidelity_sweep(capsys):
    code, out, _ = run(capsys, "fidelity-sweep", "--gamma-min", "0.9", "--gamma-max", "0.9", "--points", "1", "--N", "2")
    assert code == 0
    assert float(out.splitlines()[1].split(",")[2]) == pytest.approx(0.9477)


def test_prep_sim(capsys, tmp_path):
    path = tmp_path / "state.txt"
    code, out, _ = run(capsys, "prep-sim", "--t", "0.25", "--dump-state", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["success_probability"] == pytest.approx((0.25**2 + 0.75**2) / 2)
    assert data["fidelity_to_target"] == pytest.approx(1.0)
    assert parse_state(path.read_text()).mode_count == 4


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "noonqec", "verify", "--code", "naive2", "--max-loss", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["violations"]
