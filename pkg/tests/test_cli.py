from __future__ import annotations

import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from hypersieve import __version__
from hypersieve.cli import (
    EXIT_INVALID,
    EXIT_OK,
    EXIT_UNSATURATED,
    RunConfig,
    config_from_args,
    main,
    parse_z,
    validate,
    write_atomic,
)


def _body(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO("\n".join(ln for ln in text.splitlines() if not ln.startswith("#")))))


# --- validation ---------------------------------------------------------------


def test_validate_examples():
    assert len(validate(RunConfig("window", {"T": 0.5}))) == 1
    assert validate(RunConfig()) == ["missing command"]
    assert validate(RunConfig("window", {"T": 4, "r": 0.1}, "out.csv", "csv")) == []


def test_validate_collects_every_problem():
    diags = validate(RunConfig("nope", {"T": 0.5, "r": 0.9, "X": 1, "tol": -1, "H": 2.5,
                                        "seed": -3, "variant": "c", "z": "1,-1", "bogus": 1},
                               format="xml"))
    assert len(diags) == 11
    assert diags[0] == "unknown command 'nope'"


@pytest.mark.parametrize("seed,ok", [(0, True), (2 ** 64 - 1, True), ("17", True), (2 ** 64, False),
                                     ("x", False), (1.5, False), (True, False)])
def test_validate_seed_range(seed, ok):
    assert (validate(RunConfig("sieve", {"seed": seed})) == []) is ok


def test_parse_z():
    assert parse_z("0.2,1.5") == complex(0.2, 1.5)
    assert parse_z([1, 2]) == complex(1, 2)
    with pytest.raises(ValueError):
        parse_z("1")


# --- config handling ----------------------------------------------------------


def test_flags_override_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"command": "lattice", "X": 20, "H": 8, "format": "json"}))
    rc = config_from_args(["--config", str(cfg), "--X", "10"])
    assert rc.command == "lattice" and rc.format == "json"
    assert rc.params == {"X": 10.0, "H": 8}


def test_bad_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text("[1, 2]")
    assert main(["--config", str(cfg)]) == EXIT_INVALID
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "validation" and err["exit_code"] == EXIT_INVALID


# --- running ------------------------------------------------------------------


def test_lattice_csv_and_metadata(capsys):
    assert main(["lattice", "--X", "10"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith(f"# hypersieve {__version__}\n# config ")
    assert "\r" not in out
    config = json.loads(out.splitlines()[1][len("# config "):])
    assert config["command"] == "lattice" and config["params"] == {"X": 10.0}
    rows = _body(out)
    assert rows[0] == ["a", "b", "c", "d", "B", "height"]
    assert len(rows) - 1 == 25


def test_sieve_json_deterministic(tmp_path):
    # the output path is part of the embedded config, so reuse it
    a = tmp_path / "a.json"
    args = ["sieve", "--T", "10", "--X", "20", "--delta", "0.5", "--trials", "10", "--seed", "5",
            "--out", str(a)]
    assert main(args) == EXIT_OK
    first = a.read_bytes()
    assert main(args) == EXIT_OK
    assert a.read_bytes() == first
    doc = json.loads(a.read_text())
    assert doc["tool"] == "hypersieve" and doc["version"] == __version__
    assert doc["seed"] == 5 and doc["config"]["params"]["seed"] == 5
    assert 0 < doc["ratio_mean"] <= doc["ratio_max"]


def test_transform_csv(capsys):
    assert main(["transform", "--n", "3", "--t-max", "2"]) == EXIT_OK
    rows = _body(capsys.readouterr().out)
    assert rows[0] == ["t", "d0", "d1"] and len(rows) == 4
    assert all(len(v.replace("-", "").replace(".", "").rstrip("0")) <= 14 for row in rows[1:] for v in row)


def test_invert_small_grid(capsys):
    assert main(["invert", "--n", "4", "--p-max", "5"]) == EXIT_OK
    rows = _body(capsys.readouterr().out)
    assert rows[0] == ["p", "f", "f_reconstructed", "abs_err"]
    assert max(float(r[3]) for r in rows[1:]) <= 1e-3


def test_validation_exit_code(capsys):
    assert main(["window", "--T", "0.5"]) == EXIT_INVALID
    err = json.loads(capsys.readouterr().err)
    assert err["diagnostics"] == ["T must be >= 1, got 0.5"]


def test_unsaturated_exit_code(capsys):
    assert main(["lattice", "--X", "400", "--H", "4"]) == EXIT_UNSATURATED
    assert json.loads(capsys.readouterr().err)["error"] == "census_not_saturated"


def test_atomic_write_leaves_no_temp_files(tmp_path):
    target = tmp_path / "sub" / "x.csv"
    write_atomic(str(target), "a\n")
    write_atomic(str(target), "b\n")
    assert target.read_text() == "b\n"
    assert [p.name for p in target.parent.iterdir()] == ["x.csv"]


@pytest.mark.skipif(shutil.which("hypersieve") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["hypersieve", "lattice", "--X", "5", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == len(json.loads(proc.stdout)["rows"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypersieve.cli", "--T", "0.5", "window"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == EXIT_INVALID
