import csv
import hashlib
import json
import subprocess
import sys

import pytest

from repgap import baseline

RUN = [sys.executable, "-m", "repgap"]


def run_cli(args, cwd):
    return subprocess.run(
        RUN + args, cwd=cwd, capture_output=True, text=True, timeout=600
    )


def test_eqsearch_prints_known_solution(tmp_path):
    res = run_cli(["eqsearch", "--a", "-1", "--nmax", "100"], tmp_path)
    assert res.returncode == 0
    lines = [json.loads(line) for line in res.stdout.splitlines()]
    assert {"n": 5, "m": 5, "b": 3, "a": -1} in lines
    assert {"n": 3, "m": 3, "b": 2, "a": -1} in lines


def test_poly_disc_reports_equality(tmp_path):
    res = run_cli(["poly", "disc", "--p", "7", "--a", "7"], tmp_path)
    assert res.returncode == 0
    rec = json.loads(res.stdout)
    assert rec["equal"] is True
    assert rec["closed_abs"] == "1297500400"


def test_poly_shape(tmp_path):
    res = run_cli(["poly", "shape", "--p", "7", "--a", "-43"], tmp_path)
    rec = json.loads(res.stdout)
    assert rec["shape"] == "linear_times_irreducible"
    assert rec["root"] == -2


def test_analytic_lhs6_exact_zero(tmp_path):
    res = run_cli(["analytic", "lhs6", "--m", "4"], tmp_path)
    rec = json.loads(res.stdout)
    assert rec["lhs6"] == "0" and rec["positive"] is False


def test_obstruct_scan_jsonl_schema_and_manifest(tmp_path):
    out = tmp_path / "s0.jsonl"
    res = run_cli(
        ["--out", str(out), "obstruct", "scan", "--amax", "2000", "--qbound", "100",
         "--residues"],
        tmp_path,
    )
    assert res.returncode == 0
    statuses = set()
    for line in out.read_text().splitlines():
        rec = json.loads(line)
        assert isinstance(rec["a"], int) and isinstance(rec["p"], int)
        assert rec["status"] in ("survivor", "obstructed", "fiat", "discrepancy")
        statuses.add(rec["status"])
        if rec["status"] == "obstructed":
            assert isinstance(rec["q"], int)
            assert len(rec["residues"]) == rec["q"]
            assert all(isinstance(v, int) and v != 0 for v in rec["residues"])
    assert {"survivor", "obstructed", "fiat"} <= statuses
    manifest = json.loads((tmp_path / "s0.jsonl.manifest.json").read_text())
    digest = hashlib.sha256(out.read_bytes()).hexdigest()
    assert manifest["outputs"][0]["sha256"] == digest
    assert manifest["version"]
    assert "wall_seconds" in manifest["timing"]


def test_scan_rerun_byte_identical(tmp_path):
    outs = []
    manifests = []
    for name in ("a.jsonl", "b.jsonl"):
        out = tmp_path / name
        res = run_cli(
            ["--out", str(out), "obstruct", "scan", "--amax", "1500"], tmp_path
        )
        assert res.returncode == 0
        outs.append(out.read_bytes())
        manifests.append(
            json.loads((tmp_path / (name + ".manifest.json")).read_text())
        )
    assert outs[0] == outs[1]
    # manifests agree everywhere outside the isolated timing block and the
    # output paths themselves
    for m in manifests:
        del m["timing"]
        for o in m["outputs"]:
            del o["path"]
        del m["command"]
        del m["config"]["out"]
    assert manifests[0] == manifests[1]


def test_scan_csv_format(tmp_path):
    out = tmp_path / "s0.csv"
    res = run_cli(
        ["--out", str(out), "--format", "csv", "obstruct", "scan", "--amax", "1500"],
        tmp_path,
    )
    assert res.returncode == 0
    rows = list(csv.DictReader(out.open()))
    assert rows and {"a", "p", "status"} <= set(rows[0])


def test_obstruct_probe_residues(tmp_path):
    res = run_cli(["obstruct", "probe", "--a", "-8191", "--p", "11"], tmp_path)
    rec = json.loads(res.stdout)
    assert rec["status"] == "obstructed"
    assert rec["q"] == 11
    assert rec["residues"] == [5, 4, 5, 5, 5, 5, 5, 5, 5, 5, 5]


def test_usage_error_exit_code(tmp_path):
    assert run_cli(["no-such-command"], tmp_path).returncode == 64
    assert run_cli(["eqsearch", "--a", "-1"], tmp_path).returncode == 64


def test_global_flags_accepted_inline(tmp_path):
    # --out and --jobs may come after the subcommand as well as before it
    out = tmp_path / "inline.jsonl"
    res = run_cli(
        ["obstruct", "scan", "--amax", "1500", "--jobs", "1", "--out", str(out)],
        tmp_path,
    )
    assert res.returncode == 0
    assert out.exists() and (tmp_path / "inline.jsonl.manifest.json").exists()


def test_verification_failure_exit_code(tmp_path):
    # a constant far below the fitted one must produce violations -> exit 1
    res = run_cli(
        ["analytic", "prop-pom", "--x", "1e4", "--kmax", "10",
         "--constant", "0.05"],
        tmp_path,
    )
    assert res.returncode == 1


def test_prop_pom_csv(tmp_path):
    out = tmp_path / "prop.csv"
    res = run_cli(
        ["--out", str(out), "analytic", "prop-pom", "--x", "1e4", "--kmax", "12",
         "--constant", "10"],
        tmp_path,
    )
    assert res.returncode == 0
    assert "fitted-constant" in res.stderr
    rows = list(csv.DictReader(out.open()))
    cols = {"x", "k", "l", "pi", "S", "T", "p_kl", "bound", "violation"}
    assert cols <= set(rows[0])
    assert all(r["violation"] == "False" for r in rows)


def test_analytic_bt_small(tmp_path):
    res = run_cli(
        ["analytic", "bt", "--kmin", "3", "--kmax", "8", "--x", "1e4"], tmp_path
    )
    assert res.returncode == 0
    for line in res.stdout.splitlines():
        rec = json.loads(line)
        assert rec["exceeds_2"] is False


def test_reproduce_all_small_range(tmp_path):
    out = tmp_path / "report.json"
    res = run_cli(
        ["--out", str(out), "reproduce-all", "--amax", "3000"], tmp_path
    )
    assert res.returncode == 0, res.stderr
    report = json.loads(out.read_text())
    assert report["status"] == "ok"
    s0 = report["s0_scan"]
    assert s0["missing_from_scan"] == [] and s0["extra_in_scan"] == []
    assert [-43, 7] in [list(p) for p in s0["matched"]]
    assert report["eqsearch"]["known_solution_found"] is True
    assert report["eqsearch"]["extra_verified_solutions"] == [
        {"n": 3, "m": 3, "b": 2, "a": -1}
    ]
    assert report["lhs6"]["value_at_4"] == "0"
    assert report["discriminants"]["mismatches"] == []
    assert all(
        s["shape"] == "linear_times_irreducible" for s in report["shapes"]
    )


def test_reproduce_all_full_scale(tmp_path):
    out = tmp_path / "full.json"
    res = run_cli(["--out", str(out), "reproduce-all"], tmp_path)
    assert res.returncode == 0, res.stderr
    report = json.loads(out.read_text())
    assert report["status"] == "ok"
    s0 = report["s0_scan"]
    assert len(s0["matched"]) == 16
    assert s0["missing_from_scan"] == [[-8191, 11]]
    assert s0["uncertified"] == 0
    assert s0["fiat_count"] == 9589
    assert s0["fiat_matches_range"] is True
    kinds = {(d["a"], d["p"]): d["kind"] for d in s0["discrepancies"]}
    assert kinds[(-8191, 11)] == "listed_pair_not_discovered"
    assert kinds[(-8191, 13)] == "discovered_pair_not_listed"
    above_bound = [k for k, v in kinds.items() if v == "survivor_only_below_q_bound"]
    assert len(above_bound) == 10
    assert len(report["shapes"]) == 17
    assert all(s["shape"] == "linear_times_irreducible" for s in report["shapes"])


def test_reproduce_all_corrupted_baseline(tmp_path):
    bad = tmp_path / "baseline.json"
    baseline.write_baseline(str(bad))
    bad.write_text(bad.read_text().replace("-43", "-44", 1))
    res = run_cli(
        ["reproduce-all", "--amax", "3000", "--baseline", str(bad)], tmp_path
    )
    assert res.returncode == 2
    assert "baseline" in res.stderr


def test_seed_cache_flag(tmp_path):
    cache = tmp_path / "sieve.rgl"
    res = run_cli(
        ["--seed-cache", str(cache), "analytic", "prop-pom", "--x", "1e4",
         "--kmax", "5", "--constant", "10"],
        tmp_path,
    )
    assert res.returncode == 0
    assert cache.exists()
    # second run loads the cache instead of rebuilding
    res = run_cli(
        ["--seed-cache", str(cache), "analytic", "prop-pom", "--x", "1e4",
         "--kmax", "5", "--constant", "10"],
        tmp_path,
    )
    assert res.returncode == 0
