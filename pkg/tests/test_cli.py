import json
import subprocess
import sys

import pytest

from superspecial.cli import (EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, RunConfig, UsageError,
                              parse_cells, read_flat_config, run)


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mass(capsys):
    code, out, _ = _run(capsys, "mass", "--genus", "4", "--p", "5")
    assert code == EXIT_OK and "126139/21772800" in out
    code, out, _ = _run(capsys, "mass", "--genus", "4", "--p", "5", "--aut-order", "360")
    assert code == EXIT_OK and "23.97" in out


def test_hw(capsys):
    code, out, _ = _run(capsys, "hw", "--q", "2*y*w+z^2", "--c", "x^3+y^3+w^3", "--p", "5")
    assert code == EXIT_OK
    assert out.splitlines()[:4] == ["[0 0 0 0]"] * 4 and "SUPERSPECIAL-CANDIDATE" in out
    code, out, _ = _run(capsys, "hw", "--q", "2*y*w+z^2", "--c", "x^3+y^3+w^3", "--p", "7")
    assert code == EXIT_NEGATIVE and "not superspecial" in out
    code, out, _ = _run(capsys, "hw", "--eq", "x^3+y^3+z^3", "--vars", "x,y,z", "--p", "5", "--n", "1")
    assert code == EXIT_OK


def test_smooth(capsys):
    assert _run(capsys, "smooth", "--eq", "2*y*w+z^2", "--eq", "x^3+y^3+w^3")[0] == EXIT_OK
    assert _run(capsys, "smooth", "--eq", "2*y*w+z^2", "--eq", "y^3+w^3+x*z^2", "--dim", "1")[0] == EXIT_NEGATIVE


def test_solve_and_nf(capsys):
    code, out, _ = _run(capsys, "solve", "--eq", "a^2 - 4", "--eq", "b - a", "--vars", "a,b", "--p", "5", "--n", "1")
    assert code == EXIT_OK
    assert "(2, 2)" in out and "(3, 3)" in out
    code, out, _ = _run(capsys, "nf", "--f", "y*w", "--g", "2*y*w + z^2", "--p", "5", "--n", "1")
    assert code == EXIT_OK and out.strip() == "2*z^2"


def test_points_and_classify(capsys, tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("Q = 2*y*w + z^2\nP = x^3 + y^3 + w^3\n")
    code, out, _ = _run(capsys, "points", "--curve", str(f))
    assert code == EXIT_OK and out.split()[-1] == "66"
    code, out, _ = _run(capsys, "classify", "--out", str(tmp_path / "t.csv"))
    assert code == EXIT_OK
    assert len((tmp_path / "t.csv").read_text().splitlines()) == 22


def test_aut_check(capsys):
    code, out, _ = _run(capsys, "aut-check")
    assert code == EXIT_OK and "720" in out


def test_enumerate(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, err = _run(capsys, "enumerate", "--case", "deg-25", "--cells", "0-1", "--jobs", "1",
                        "--out", str(out), "--csv", str(tmp_path / "r.csv"))
    assert code == EXIT_OK and "cells/s" in err and "ETA" in err
    data = json.loads(out.read_text())
    assert data["cells_done"] == 2 and len(data["survivors"]) == 48
    code, _, _ = _run(capsys, "enumerate", "--case", "n2-25", "--sample", "2", "--seed", "3", "--jobs", "1",
                      "--quiet", "--out", str(out))
    data = json.loads(out.read_text())
    assert code == EXIT_OK and data["seed"] == 3 and data["mode"] == "sample" and data["cells_done"] == 2


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"# a sweep\ncase = deg-25\ncells = 4\njobs = 1\nout = {tmp_path / 'c.json'}\nquiet = 1\n")
    code, _, _ = _run(capsys, "--config", str(cfg), "enumerate")
    assert code == EXIT_OK
    assert json.loads((tmp_path / "c.json").read_text())["cells_done"] == 1


def test_exit_codes(capsys):
    assert _run(capsys, "bogus")[0] == EXIT_USAGE
    assert _run(capsys)[0] == EXIT_USAGE
    assert _run(capsys, "mass", "--genus", "4")[0] == EXIT_USAGE
    assert _run(capsys, "hw", "--q", "2*y*w+", "--c", "x^3")[0] == EXIT_ERROR
    assert _run(capsys, "mass", "--genus", "40", "--p", "5")[0] == EXIT_ERROR
    assert _run(capsys, "enumerate", "--case", "n9-25", "--out", "x.json")[0] == EXIT_ERROR
    assert _run(capsys, "--config", "/nonexistent/file", "mass", "--genus", "1", "--p", "2")[0] == EXIT_ERROR
    assert _run(capsys, "enumerate", "--case", "deg-25", "--cells", "99999999", "--out", "x.json")[0] == EXIT_USAGE


def test_run_config_round_trip():
    cfg = RunConfig(p=7, n=2, case="n2-49", mode="sample", sample=500, seed=11, jobs=2, out="r.json")
    assert RunConfig.from_text(cfg.validate().to_text()) == cfg
    with pytest.raises(UsageError):
        RunConfig(mode="full", sample=3).validate()
    with pytest.raises(UsageError):
        RunConfig(mode="sample").validate()
    with pytest.raises(UsageError):
        RunConfig.from_mapping({"colour": "red"})
    with pytest.raises(UsageError):
        read_flat_config("no equals sign")


def test_parse_cells():
    assert parse_cells("0-3, 7,2", 10) == [0, 1, 2, 3, 7]
    with pytest.raises(UsageError):
        parse_cells("5-12", 10)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "superspecial", "mass", "--genus", "1", "--p", "5"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip().endswith("1/6")
