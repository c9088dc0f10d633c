import json
import subprocess
import sys

import pytest

from qcluster.cli import main


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    # preset quivers cache their calibration in the working directory
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_char_examples(capsys, tmp_path):
    f = tmp_path / "a2.q"
    f.write_text("vertices 2\narrow 1 2\n")
    code, out, _ = run(capsys, "char", "--quiver", str(f), "--module", "S 2", "--prime", "3")
    assert code == 0 and out.strip() == "X^(1,-1) + X^(0,-1)"
    code, out, _ = run(capsys, "char", "--module", "I 1", "--shift", "-1")
    assert code == 0 and out.strip() == "X^(1,0)"
    code, out, _ = run(capsys, "char", "--module", "S 1", "--projective", "P 2")
    assert code == 0 and "X^" in out


def test_malformed_module_file(capsys, tmp_path):
    bad = tmp_path / "bad.m"
    bad.write_text("dim 1 1\nmap 1 1 1\n1 1\n")
    code, _, err = run(capsys, "char", "--module", str(bad))
    assert code == 2 and "line 3" in err


def test_verify_cdz(capsys, tmp_path):
    out_file = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "verify", "cdz", "--quiver", "a2", "--M", "S 1", "--N", "S 2", "--primes", "2,3,5", "--out", str(out_file))
    assert code == 0 and "3/3 checks passed" in out
    reports = [json.loads(line) for line in out_file.read_text().splitlines()]
    assert [r["primes"] for r in reports] == [[2], [3], [5]]
    assert all(r["equal"] for r in reports)


def test_verify_precondition_and_usage(capsys):
    assert run(capsys, "verify", "cdz", "--M", "S 2", "--N", "S 1")[0] == 2
    assert run(capsys, "verify", "cdz", "--primes", "2,4")[0] == 2
    assert run(capsys, "verify", "cdz", "--M", "S 1")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "nosuch"])
    assert info.value.code == 2


def test_failing_identity_exits_one(capsys):
    code, _, err = run(capsys, "verify", "cdz", "--M", "S 1", "--N", "S 2", "--primes", "3", "--convention", "sigma=-1,prefactor=q,pairing=-1")
    assert code == 1 and "first failure" in err


def test_verify_all_kronecker_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run(capsys, "verify", "all", "--quiver", "kronecker", "--primes", "2", "--out", str(a))[0] == 0
    assert run(capsys, "verify", "all", "--quiver", "kronecker", "--primes", "2", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_gr_count(capsys):
    assert run(capsys, "gr-count", "--module", "P 1", "--e", "0,1", "--prime", "5")[1].strip() == "1"
    assert run(capsys, "gr-count", "--module", "P 1", "--e", "0,0", "--prime", "5")[1].strip() == "1"
    assert run(capsys, "gr-count", "--quiver", "kronecker", "--module", "P 1", "--e", "0,1", "--prime", "3")[1].strip() == "4"


def test_calibrate_writes_cache(capsys, tmp_path):
    f = tmp_path / "a2.q"
    f.write_text("vertices 2\narrow 1 2\n")
    code, out, _ = run(capsys, "calibrate", "--primes", "2,3,5", "--quiver", str(f))
    assert code == 0 and "sigma = +1" in out and "q^[M,I] - 1" in out
    cache = json.loads((tmp_path / ".a2.q.calibration.json").read_text())
    assert cache["config"] == {"sigma": 1, "prefactor": "q", "pairing_sign": -1}


def test_interp(capsys):
    code, out, _ = run(capsys, "interp", "gr", "--quiver", "kronecker", "--module", "P 1", "--e", "0,1", "--primes", "2,3,5")
    assert code == 0 and out.strip() == "q + 1"
    code, out, _ = run(capsys, "interp", "cdz", "--M", "S 1", "--N", "S 2", "--primes", "2,3,5,7,11")
    assert code == 0 and json.loads(out)["equal"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qcluster", "char", "--module", "S 2", "--prime", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "X^(1,-1) + X^(0,-1)"
