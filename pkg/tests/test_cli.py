from __future__ import annotations

import csv
import dataclasses
import io as _stdio
import json

import numpy as np
import pytest

from lnqec import cli, codes, io

from .conftest import load


def path(name: str) -> str:
    return str(io.bundled(io.BUNDLED[name]))


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestImport:
    def test_quaternary_summary(self, capsys):
        code, out, _ = run(capsys, "import", path("rep3_gf4"))
        assert code == 0
        assert out.splitlines()[0] == "n=3 k=1 aux=4 physical=5"

    def test_hamming_alist(self, capsys):
        code, out, _ = run(capsys, "import", path("hamming74"))
        assert code == 0 and out.splitlines()[0] == "n=7 k=4"

    def test_json_with_distance(self, capsys):
        code, out, _ = run(capsys, "import", path("rep3_gf4_scrambled"), "--distance", "--format", "json")
        info = json.loads(out)
        assert code == 0 and info["redundant_rows"] == 1 and info["d"] == 3 and info["rank"] == 2

    def test_malformed_header(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("3 x 4\n1 0 1\n")
        code, _, err = run(capsys, "import", bad)
        assert code != 0 and "ParseError" in err and "line 1" in err


class TestTable:
    def test_ag43_pair(self, capsys):
        code, out, _ = run(capsys, "table", path("ag43"), "--format", "json")
        row = json.loads(out)[0]
        assert code == 0 and (row["physical"], row["aux"], row["logical"]) == (1161, 162, 999)

    def test_rep3_quaternary(self, capsys):
        _, out, _ = run(capsys, "table", path("rep3_gf4"))
        assert "physical=5 logical=1 aux=4 t=1" in out

    def test_hamming_pair(self, capsys):
        _, out, _ = run(capsys, "table", path("hamming74"), "--pair", path("hamming74"), "--format", "json")
        row = json.loads(out)[0]
        assert (row["physical"], row["aux"]) == (10, 6)

    def test_pair_flag_rejected_for_quaternary(self, capsys):
        code, _, err = run(capsys, "table", path("rep3_gf4"), "--pair", path("rep3"))
        assert code != 0 and "--pair" in err


class TestVerify:
    def test_bundled_rep3(self, capsys):
        code, out, _ = run(capsys, "verify", path("rep3_gf4"), "--format", "json")
        report = json.loads(out)
        assert code == 0 and report["passed"]
        oracle = next(c for c in report["checks"] if c["name"] == "state_vector_oracle")
        assert oracle["count"] == 4**5 * 5

    def test_corrupted_n_z(self, capsys):
        pcm = codes.build_trace_pcm(load("rep3_gf4", 3))
        N_Z = pcm.N_Z.copy()
        N_Z[0, 0] ^= 1
        bad = dataclasses.replace(pcm, N_Z=N_Z)
        args = cli._parser().parse_args(["verify", path("rep3_gf4"), "--format", "json"])
        assert cli.cmd_verify(args, construction=bad) != 0
        report = json.loads(capsys.readouterr().out)
        failed = [c["name"] for c in report["checks"] if c["status"] == "fail"]
        assert "block_consistency" in failed

    def test_k0_code(self, capsys, tmp_path):
        f = tmp_path / "k0.txt"
        f.write_text("2 2 4\n1 w\n0 1\n")
        code, out, _ = run(capsys, "verify", f)
        assert code == 0 and out.rstrip().endswith("PASS")

    def test_binary_pair(self, capsys):
        code, out, _ = run(capsys, "verify", path("rep3"))
        assert code == 0 and "binary_closed_form_oracle" in out

    def test_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("LNQEC_CAP", "4")
        code, _, err = run(capsys, "verify", path("rep3_gf4"))
        assert code != 0 and "CapExceeded" in err and "LNQEC_CAP" in err


class TestDecode:
    def test_quaternary(self, capsys):
        code, out, _ = run(capsys, "decode", path("rep3_gf4"), "--syndrome", "1010")
        assert code == 0 and out.strip() == "w 0 0"

    def test_failure(self, capsys):
        code, out, _ = run(capsys, "decode", path("rep3_gf4"), "--syndrome", "0110", "--format", "json")
        assert code == 1 and json.loads(out)["ok"] is False

    def test_permuted_columns_map_back(self, capsys):
        # the Hamming file imports with pivot order 0,1,3,2,...; column 2 of the file is (1,1,0)
        assert load("hamming74").perm.tolist()[:4] == [0, 1, 3, 2]
        code, out, _ = run(capsys, "decode", path("hamming74"), "--syndrome", "110")
        assert code == 0 and out.strip() == "0 0 1 0 0 0 0"

    def test_sum_product(self, capsys):
        code, out, _ = run(capsys, "decode", path("hamming74_redundant"), "--syndrome", "1110", "--method", "bp")
        assert code == 0 and out.strip() == "0 0 0 0 0 0 1"


class TestSimulate:
    def test_zero_noise(self, capsys):
        code, out, _ = run(capsys, "simulate", path("rep3_gf4"), "--trials", 1000, "--format", "json")
        assert code == 0 and json.loads(out)["rate"] == "0.0"

    def test_sweep_rows(self, capsys):
        code, out, _ = run(capsys, "simulate", path("rep3_gf4"), "--sweep", "0.003,0.01,0.03", "--trials", 2000)
        rows = list(csv.DictReader(_stdio.StringIO(out)))
        assert code == 0 and len(rows) == 3
        assert tuple(rows[0]) == cli.CSV_COLUMNS
        assert [float(r["p_aux_z"]) for r in rows] == [0.003, 0.01, 0.03]

    def test_same_seed_same_bytes(self, capsys, tmp_path):
        outs = []
        for workers in (1, 3):
            f = tmp_path / f"w{workers}.csv"
            run(capsys, "simulate", path("rep3_gf4"), "--sweep", "0.05,0.1", "--trials", 70_000,
                "--seed", 11, "--workers", workers, "--out", f)  # fmt: skip
            outs.append(f.read_bytes())
        assert outs[0] == outs[1]

    def test_summary_line(self, capsys, tmp_path):
        code, out, _ = run(capsys, "simulate", path("rep3"), "--p-z", 0.05, "--trials", 500, "--out", tmp_path / "r.csv")
        assert code == 0 and "seed=" in out and len(out.splitlines()) == 1

    def test_bp_pair(self, capsys):
        code, out, _ = run(capsys, "simulate", path("hamming74_redundant"), "--method", "bp", "--p-x", 0.01,
                           "--trials", 500, "--format", "json")  # fmt: skip
        assert code == 0 and json.loads(out)["physical"] == 10


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", path("rep3"), path("rep5"), path("rep4"), path("rep4"),
                       "--p-aux-z", 0.05, "--p-z", 0.05, "--p-x", 0.005, "--trials", 5000)  # fmt: skip
    rows = list(csv.DictReader(_stdio.StringIO(out)))
    assert code == 0 and len(rows) == 2
    assert {r["physical"] for r in rows} == {"7"}


def test_json_output_is_one_document(capsys):
    _, out, _ = run(capsys, "simulate", path("rep3_gf4"), "--sweep", "0.01,0.02", "--trials", 100, "--format", "json")
    assert isinstance(json.loads(out), list)
    assert np.isfinite([float(r["rate"]) for r in json.loads(out)]).all()
