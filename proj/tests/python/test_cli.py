"""Command-line interface contract: subcommands, file outputs, exit codes."""

import json
import os
import subprocess
import sys

import pytest

CLI = os.environ.get("ROTWALK_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="ROTWALK_CLI not set")


def run(*args, expect=0):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    assert proc.returncode == expect, proc.stderr
    return proc


def test_spectrum_json():
    out = run("spectrum", "--angle", "golden", "--series", "1:1").stdout
    doc = json.loads(out)
    assert "config_hash" in doc
    assert doc["results"]["kv_partial"] > 0


def test_spectrum_resonance_exit_2():
    proc = run("spectrum", "--angle", "1/2", "--series", "2:1", expect=2)
    assert "2" in proc.stderr  # message names the frequency


def test_unknown_preset_exit_1():
    proc = run("preset", "does-not-exist", expect=1)
    assert "golden-c1" in proc.stderr


def test_tail_reproducibility(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    common = ["tail", "--angle", "golden", "--series", "1:1", "--n", "500", "--m", "400",
              "--s", "3/5", "--t", "0.3", "--seed", "11"]
    run(*common, "--out", str(a), "--threads", "1")
    run(*common, "--out", str(b), "--threads", "3")
    assert a.read_bytes() == b.read_bytes()


def test_exact_vs_mc_agreement():
    out = run("exact", "--angle", "2/7", "--series", "3:1", "--n", "8", "--t", "0.4",
              "--s", "3/5", "--compare-mc", "20000").stdout
    doc = json.loads(out)
    assert doc["results"]["mc_interval_contains_exact"]


def test_construct_verify_roundtrip(tmp_path):
    prefix = str(tmp_path / "t1")
    run("construct", "--theorem", "1", "--s", "3/5", "--depth", "2", "--toy", "--out", prefix)
    ledger = prefix + ".ledger.json"
    assert os.path.exists(ledger)
    assert os.path.exists(prefix + ".angle.json")
    assert os.path.exists(prefix + ".series.json")
    run("verify", "--ledger", ledger)

    # corrupt a level: named failure, exit 3
    doc = json.loads(open(ledger).read())
    doc["levels"][1]["N"] = "2300"
    bad = str(tmp_path / "bad.json")
    open(bad, "w").write(json.dumps(doc))
    proc = run("verify", "--ledger", bad, expect=3)
    assert "threshold" in proc.stderr


def test_chain_subcommand():
    doc = json.loads(run("chain", "--q", "5", "--p", "2").stdout)
    assert doc["results"]["A"] == 1.0
    assert abs(doc["results"]["rho"] - 0.8090169943749475) < 1e-12


def test_clt_auto_sigma():
    doc = json.loads(run("clt", "--angle", "golden", "--series", "1:1", "--n", "2000",
                         "--m", "2000", "--seed", "4").stdout)
    res = doc["results"]
    assert not res["degenerate"]
    assert res["empirical_var"] == pytest.approx(res["sigma"] ** 2, rel=0.15)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
