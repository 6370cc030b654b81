import json
import os
import subprocess
import sys

import pytest

from spectral_cliques import emit_graph6, turan_graph
from spectral_cliques.cli import main
from spectral_cliques.scan import ScanResult


def run_cli(*args, cwd=None, env_extra=None):
    env = dict(os.environ, **env_extra) if env_extra else None
    proc = subprocess.run([sys.executable, "-m", "spectral_cliques", *args],
                          capture_output=True, text=True, cwd=cwd, env=env)
    return proc


class TestGen:
    def test_turan_roundtrip(self, tmp_path):
        out = tmp_path / "t.g6"
        proc = run_cli("gen", "turan", "--r", "3", "--n", "6", "--out", str(out))
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["count"] == 1
        assert out.read_text().strip() == emit_graph6(turan_graph(3, 6))

    def test_random_reproducible(self, tmp_path):
        a, b = tmp_path / "a.g6", tmp_path / "b.g6"
        args = ["gen", "random", "--n", "6", "--p", "0.5", "--count", "10",
                "--seed", "1"]
        assert run_cli(*args, "--out", str(a)).returncode == 0
        assert run_cli(*args, "--out", str(b)).returncode == 0
        assert a.read_text() == b.read_text()
        assert len(a.read_text().splitlines()) == 10

    def test_bad_params_exit_2(self, tmp_path):
        proc = run_cli("gen", "turan", "--r", "5", "--n", "3",
                       "--out", str(tmp_path / "x.g6"))
        assert proc.returncode == 2
        assert proc.stdout == ""

    def test_unwritable_out_exit_3(self):
        proc = run_cli("gen", "named", "--name", "petersen",
                       "--out", "/nonexistent-dir/x.g6")
        assert proc.returncode == 3
        assert "error" in json.loads(proc.stdout)

    def test_named(self, tmp_path):
        out = tmp_path / "p.g6"
        assert run_cli("gen", "named", "--name", "c5", "--out", str(out)).returncode == 0

    def test_vertex_cap_env_override(self, tmp_path):
        out = tmp_path / "big.g6"
        args = ("gen", "turan", "--r", "2", "--n", "80", "--out", str(out))
        assert run_cli(*args).returncode == 2  # over the default cap of 64
        proc = run_cli(*args, env_extra={"SCL_MAX_N": "100"})
        assert proc.returncode == 0
        check = run_cli("check", "--file", str(out), "--theorem", "maxmu1",
                        env_extra={"SCL_MAX_N": "100"})
        assert check.returncode == 0
        assert json.loads(check.stdout)[0]["status"] == "equality"

    def test_gen_piped_to_check(self, tmp_path):
        for kind, extra in [
            ("turan", ["--r", "2", "--n", "6"]),
            ("multipartite", ["--parts", "2,2", "--isolated", "1"]),
            ("random", ["--n", "5", "--p", "0.3", "--seed", "3"]),
            ("named", ["--name", "petersen"]),
        ]:
            out = tmp_path / f"{kind}.g6"
            assert run_cli("gen", kind, *extra, "--out", str(out)).returncode == 0
            proc = run_cli("check", "--file", str(out), "--theorem", "wilf")
            assert proc.returncode == 0, proc.stderr


class TestCheck:
    def test_polyn_equality_k3(self):
        proc = run_cli("check", "--g6", "Bw", "--theorem", "polyn")
        assert proc.returncode == 0
        entries = json.loads(proc.stdout)
        assert len(entries) == 1
        assert entries[0]["status"] == "equality"

    def test_theorem1_k3(self):
        proc = run_cli("check", "--g6", "Bw", "--theorem", "theorem1", "--r", "2")
        assert proc.returncode == 0
        entry = json.loads(proc.stdout)[0]
        assert entry["lhs"] == pytest.approx(8.0, abs=1e-8)
        assert entry["rhs"] == pytest.approx(9.0, abs=1e-8)

    def test_malformed_exit_2(self):
        proc = run_cli("check", "--g6", "###", "--theorem", "wilf")
        assert proc.returncode == 2

    def test_momo_detail(self):
        proc = run_cli("check", "--g6", "Bw", "--theorem", "momo")
        entry = json.loads(proc.stdout)[0]
        assert entry["detail"]["monotone"] is True

    def test_multiple_checks(self):
        proc = run_cli("check", "--g6", "Bw", "--theorem", "wilf",
                       "--theorem", "maxmu", "--s", "1,2")
        entries = json.loads(proc.stdout)
        assert [e["check"] for e in entries] == ["wilf", "maxmu", "maxmu"]

    def test_global_tol_scales_epsilons(self):
        from spectral_cliques import cycle_graph
        g6 = emit_graph6(cycle_graph(5))
        strict = json.loads(run_cli("check", "--g6", g6, "--theorem", "wilf").stdout)
        sloppy = json.loads(run_cli("--tol", "1000000", "check", "--g6", g6,
                                    "--theorem", "wilf").stdout)
        # slack 0.5 on scale 2.5: within the inflated equality band only
        assert strict[0]["status"] == "holds"
        assert sloppy[0]["status"] == "equality"


class TestScanCli:
    def test_exhaustive_n5(self):
        proc = run_cli("scan", "--exhaustive-n", "5", "--check", "theorem1",
                       "--r", "2..3")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["graphs_checked"] == 1024
        assert payload["violations"] == []
        assert payload["timing_s"] is None

    def test_byte_identical_across_jobs(self):
        args = ["scan", "--exhaustive-n", "5", "--check", "polyn",
                "--check", "momo", "--top-k", "5"]
        out1 = run_cli("--jobs", "1", *args)
        out2 = run_cli("--jobs", "2", *args)
        assert out1.returncode == out2.returncode == 0
        assert out1.stdout == out2.stdout

    def test_filter_kfree_conjecture(self):
        proc = run_cli("scan", "--exhaustive-n", "5", "--check", "conjecture",
                       "--r", "2", "--filter", "kfree")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["violations"] == []

    def test_file_scan_momo(self, tmp_path):
        corpus = tmp_path / "c.g6"
        corpus.write_text("\n".join(emit_graph6(turan_graph(r, 6))
                                    for r in (2, 3)) + "\n")
        proc = run_cli("scan", "--file", str(corpus), "--check", "momo")
        assert proc.returncode == 0

    def test_out_and_csv(self, tmp_path):
        out = tmp_path / "res.json"
        csv_path = tmp_path / "res.csv"
        proc = run_cli("scan", "--exhaustive-n", "4", "--check", "wilf",
                       "--out", str(out), "--csv", str(csv_path))
        assert proc.returncode == 0
        saved = json.loads(out.read_text())
        assert saved["graphs_checked"] == 64
        assert saved["timing_s"] > 0
        header = csv_path.read_text().splitlines()[0]
        assert header == "kind,graph6,check,params,lhs,rhs,slack"

    def test_missing_file_exit_3(self):
        proc = run_cli("scan", "--file", "/no/such/file.g6", "--check", "wilf")
        assert proc.returncode == 3

    def test_usage_error_exit_2(self):
        proc = run_cli("scan", "--exhaustive-n", "5")
        assert proc.returncode == 2


class TestWitnessCli:
    def test_t36_witnessed(self):
        g6 = emit_graph6(turan_graph(3, 6))
        proc = run_cli("witness", "--g6", g6, "--r", "3",
                       "--alpha", "0.0000013", "--mode", "exhaustive")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["verdict"] == "witnessed"
        assert payload["witness"]["order"] == 6

    def test_c5_premise_failed_exit_0(self):
        from spectral_cliques import cycle_graph
        g6 = emit_graph6(cycle_graph(5))
        proc = run_cli("witness", "--g6", g6, "--r", "2", "--alpha", "0.00001")
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["verdict"] == "premise-failed"

    def test_t28_alpha_zero_boundary(self):
        g6 = emit_graph6(turan_graph(2, 8))
        proc = run_cli("witness", "--g6", g6, "--r", "2", "--alpha", "0",
                       "--mode", "exhaustive")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["boundary"] is True
        assert payload["verdict"] == "witnessed"


class TestExitCodeMapping:
    def test_conjecture_violation_maps_to_discovery(self):
        # no real counterexample is known; exercise the mapping on a
        # fabricated result
        res = ScanResult(graphs_checked=1, violations=[
            {"graph6": "Bw", "check": "conjecture", "params": {"r": 2},
             "lhs": 2.0, "rhs": 1.0, "slack": -1.0}])
        assert res.theorem_violations() == []
        assert len(res.conjecture_violations()) == 1

    def test_theorem_violation_classified(self):
        res = ScanResult(graphs_checked=1, violations=[
            {"graph6": "Bw", "check": "wilf", "params": {},
             "lhs": 2.0, "rhs": 1.0, "slack": -1.0}])
        assert len(res.theorem_violations()) == 1

    def test_main_returns_usage_on_no_args(self):
        assert main([]) == 2
