import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from helpers import tmsv
from sofeof.gaussian_core import load_state, save_state
from sofeof.harness import cli
from sofeof.harness.batch import RunRecord
from sofeof.resources import h0
from sofeof.special_states import SpecialStateParams, make_special


def run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr()


@pytest.fixture
def special_file(tmp_path):
    path = tmp_path / "sp.json"
    save_state(make_special(SpecialStateParams(0.4, 0.3, 0.2, 0.5, 0.3, 1.0)), path)
    return path


class TestVerbs:
    def test_make_special(self, tmp_path, capsys):
        out = tmp_path / "s.json"
        code, _ = run(["make-special", "--r1", "0.4", "--r2", "0.3", "--l1", "0.2", "--l2", "0.5",
                       "--alpha", "0.3", "--theta", "1.0", "--out", str(out)], capsys)
        assert code == 0
        assert np.allclose(load_state(out), make_special(SpecialStateParams(0.4, 0.3, 0.2, 0.5, 0.3, 1.0)))

    def test_make_special_invalid(self, tmp_path, capsys):
        code, io = run(["make-special", "--r1", "0.4", "--r2", "0.3", "--l1", "0.2", "--l2", "0.5",
                        "--alpha", "0.9", "--theta", "1.0", "--out", str(tmp_path / "s.json")], capsys)
        assert code == 1 and "InvalidParams" in io.err

    def test_resources_stdout(self, special_file, capsys):
        code, io = run(["resources", "--input", str(special_file)], capsys)
        data = json.loads(io.out)
        assert code == 0 and abs(data["sof"] - 0.7) <= 1e-6 and abs(data["eof"] - h0(0.7)) <= 1e-6

    def test_resources_file(self, special_file, tmp_path, capsys):
        out = tmp_path / "rep.json"
        assert run(["resources", "--input", str(special_file), "--out", str(out)], capsys)[0] == 0
        assert "optimizer" in json.loads(out.read_text())

    def test_maximize_eof(self, tmp_path, capsys):
        src, out, tr = tmp_path / "in.json", tmp_path / "out.json", tmp_path / "trace.json"
        save_state(tmsv(0.5) + 0.3 * np.eye(4), src)
        code, io = run(["maximize-eof", "--input", str(src), "--out", str(out), "--trace", str(tr),
                        "--seed", "3"], capsys)
        assert code == 0 and json.loads(io.out)["status"] == "OK"
        assert load_state(out).shape == (4, 4) and "circuit" in json.loads(tr.read_text())

    def test_verify_conjecture(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code, io = run(["verify-conjecture", "--samples", "2", "--seed", "4", "--out", str(out), "--no-timing"],
                       capsys)
        summary = json.loads(io.out)
        assert code == 0 and summary["counts"]["OK"] == 2
        rows = list(csv.DictReader(out.open()))
        assert len(rows) == 2 and all(r["wall_time_ms"] == "0" for r in rows)

    def test_verify_strata_flags(self, capsys):
        code, io = run(["verify-conjecture", "--samples", "1", "--strata", "near_pure", "--nu-max", "2",
                        "--r-max", "1", "--jobs", "1"], capsys)
        assert code == 0 and json.loads(io.out)["n_samples"] == 1

    def test_selftest(self, capsys):
        code, io = run(["selftest"], capsys)
        assert code == 0 and io.out.count("PASS") == 4


class TestExitCodes:
    def test_evidence(self, monkeypatch, capsys):
        bad = RunRecord(0, 1, 0.5, 0.5, 0.1, 0.2, -0.1, 0.0, "UNRESOLVED", 1.0)
        monkeypatch.setattr(cli, "run_batch", lambda cfg, jobs=1: [bad])
        assert run(["verify-conjecture", "--samples", "1"], capsys)[0] == 2

    def test_missing_input(self, tmp_path, capsys):
        code, io = run(["resources", "--input", str(tmp_path / "none.json")], capsys)
        assert code == 1 and "error" in io.err

    def test_invalid_state(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"n_modes": 2, "matrix": (0.5 * np.eye(4)).tolist()}))
        assert run(["resources", "--input", str(path)], capsys)[0] == 1

    @pytest.mark.parametrize("argv", [[], ["nope"], ["verify-conjecture", "--samples", "x"],
                                      ["verify-conjecture", "--strata", "other"]])
    def test_usage(self, argv, capsys):
        assert run(argv, capsys)[0] == 1

    def test_help(self, capsys):
        code, io = run(["--help"], capsys)
        assert code == 0 and "verify-conjecture" in io.out

    def test_module_entry(self):
        res = subprocess.run([sys.executable, "-m", "sofeof", "nope"], capture_output=True, text=True)
        assert res.returncode == 1
