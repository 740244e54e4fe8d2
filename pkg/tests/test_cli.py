import subprocess
import sys

import numpy as np
import pytest

from blockpinv import svd_pinv
from blockpinv.cli import main
from blockpinv.textfmt import read_matrix, write_matrix


def parse_report(text):
    out = {}
    for line in text.splitlines():
        if " = " in line:
            k, v = line.split(" = ", 1)
            out[k] = v
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, parse_report(cap.out), cap.err


def test_pinv_identity_block(capsys, data_dir, tmp_path):
    out = tmp_path / "x.txt"
    code, rep, _ = run(capsys, "pinv", "--input", data_dir / "I4.txt", "--output", out,
                       "--partition", "2,2,2,2", "--method", "block", "--check")
    assert code == 0
    np.testing.assert_allclose(read_matrix(out), np.eye(4), atol=1e-15)
    for j in range(1, 5):
        assert float(rep[f"r{j}"]) <= 1e-12
    assert rep["status"] == "ok" and rep["method"] == "block" and rep["partition"] == "2,2,2,2"
    assert "oracle_gap" in rep and "time_compute_ms" in rep and rep["warnings"] == "none"


def test_pinv_zero_direct(capsys, data_dir, tmp_path):
    out = tmp_path / "x.txt"
    code, rep, _ = run(capsys, "pinv", "--input", data_dir / "zero23.txt", "--output", out, "--method", "direct")
    assert code == 0
    X = read_matrix(out)
    assert X.shape == (3, 2) and not X.any()
    assert "r1" in rep


@pytest.mark.parametrize("method", ["block", "alt-lr"])
def test_pinv_block_vs_direct(capsys, data_dir, tmp_path, method):
    src = data_dir / "rank2_4x4.txt"
    code, rep, _ = run(capsys, "pinv", "--input", src, "--output", tmp_path / "b.txt",
                       "--partition", "2,2,2,2", "--method", method, "--check")
    assert code == 0 and float(rep["oracle_gap"]) <= 1e-9
    assert run(capsys, "pinv", "--input", src, "--output", tmp_path / "d.txt", "--method", "direct")[0] == 0
    B, D = read_matrix(tmp_path / "b.txt"), read_matrix(tmp_path / "d.txt")
    assert np.linalg.norm(B - D) <= 1e-9 * np.linalg.norm(D)


def test_pinv_seed_deterministic(capsys, data_dir, tmp_path):
    src = data_dir / "rank2_4x4.txt"
    outs = []
    for name in ("s1.txt", "s2.txt"):
        code, _, _ = run(capsys, "pinv", "--input", src, "--output", tmp_path / name,
                         "--partition", "2,2,2,2", "--seed", 17)
        assert code == 0
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]


def test_pinv_input_errors(capsys, data_dir, tmp_path):
    out = tmp_path / "x.txt"
    code, _, err = run(capsys, "pinv", "--input", data_dir / "malformed.txt", "--output", out, "--method", "direct")
    assert code == 2 and "malformed.txt:5:" in err
    code, _, err = run(capsys, "pinv", "--input", data_dir / "I4.txt", "--output", out, "--method", "block")
    assert code == 2 and "partition" in err
    code, _, err = run(capsys, "pinv", "--input", data_dir / "I4.txt", "--output", out, "--partition", "1,2,2,2")
    assert code == 2 and "partition" in err
    code, _, err = run(capsys, "pinv", "--input", data_dir / "I4.txt", "--output", out, "--partition", "0,4,2,2")
    assert code == 2
    code, _, err = run(capsys, "pinv", "--input", tmp_path / "missing.txt", "--output", out, "--method", "direct")
    assert code == 2
    assert not out.exists()


def test_pinv_verification_failure_exit(capsys, data_dir, tmp_path):
    # a negative tolerance is an input error; tol 0 makes any rounding a failure
    E = np.random.default_rng(1).standard_normal((3, 3)) + 0j
    write_matrix(tmp_path / "e.txt", E)
    code, rep, _ = run(capsys, "pinv", "--input", tmp_path / "e.txt", "--output", tmp_path / "x.txt",
                       "--partition", "1,2,1,2", "--check", "--tol", 0)
    assert code == 1 and rep["status"] == "verification-failed"
    assert run(capsys, "pinv", "--input", tmp_path / "e.txt", "--output", tmp_path / "x.txt",
               "--method", "direct", "--tol", -1)[0] == 2


@pytest.mark.parametrize("which", ["range", "corange"])
def test_projector_identity(capsys, data_dir, tmp_path, which):
    out = tmp_path / "p.txt"
    code, rep, _ = run(capsys, "projector", "--input", data_dir / "I4.txt", "--output", out,
                       "--partition", "2,2,2,2", "--which", which)
    assert code == 0
    np.testing.assert_allclose(read_matrix(out), np.eye(4), atol=1e-15)


def test_projector_e11(capsys, data_dir, tmp_path):
    out = tmp_path / "p.txt"
    code, _, _ = run(capsys, "projector", "--input", data_dir / "e11_2x2.txt", "--output", out, "--partition", "1,1,1,1")
    assert code == 0
    np.testing.assert_allclose(read_matrix(out), np.diag([1.0, 0.0]), atol=1e-15)


@pytest.mark.parametrize("which, seed", [("range", None), ("corange", None), ("range", 5), ("corange", 5)])
def test_projector_random(capsys, tmp_path, which, seed):
    rng = np.random.default_rng(2)
    E = rng.standard_normal((5, 3)) @ rng.standard_normal((3, 6)) + 0j
    write_matrix(tmp_path / "e.txt", E)
    argv = ["projector", "--input", tmp_path / "e.txt", "--output", tmp_path / "p.txt",
            "--partition", "2,3,4,2", "--which", which]
    if seed is not None:
        argv += ["--seed", seed]
    code, rep, _ = run(capsys, *argv)
    assert code == 0 and float(rep["rel_fixes_E"]) <= 1e-9
    P = read_matrix(tmp_path / "p.txt")
    want = E @ svd_pinv(E) if which == "range" else svd_pinv(E) @ E
    assert np.linalg.norm(P - want) <= 1e-9 * np.linalg.norm(want)


def test_projector_requires_partition(capsys, data_dir, tmp_path):
    assert run(capsys, "projector", "--input", data_dir / "I4.txt", "--output", tmp_path / "p.txt")[0] == 2


def test_verify_identity(capsys, data_dir):
    code, rep, _ = run(capsys, "verify", "--input", data_dir / "I4.txt", "--candidate", data_dir / "I4.txt",
                       "--classes", "1,2,3,4")
    assert code == 0 and rep["member"] == "yes"


def test_verify_zero_candidate_fails(capsys, data_dir, tmp_path):
    write_matrix(tmp_path / "z.txt", np.zeros((4, 4)))
    code, rep, _ = run(capsys, "verify", "--input", data_dir / "I4.txt", "--candidate", tmp_path / "z.txt",
                       "--classes", "1")
    assert code == 1 and rep["member"] == "no"
    # the zero matrix is a {2}-inverse of anything
    assert run(capsys, "verify", "--input", data_dir / "I4.txt", "--candidate", tmp_path / "z.txt",
               "--classes", "2")[0] == 0


def test_verify_errors(capsys, data_dir):
    code, _, err = run(capsys, "verify", "--input", data_dir / "I4.txt", "--candidate", data_dir / "zero23.txt")
    assert code == 2 and "shape" in err
    assert run(capsys, "verify", "--input", data_dir / "I4.txt", "--candidate", data_dir / "I4.txt",
               "--classes", "5")[0] == 2


def test_verify_block_output(capsys, data_dir, tmp_path):
    out = tmp_path / "x.txt"
    assert run(capsys, "pinv", "--input", data_dir / "rank2_4x4.txt", "--output", out, "--partition", "2,2,2,2")[0] == 0
    assert run(capsys, "verify", "--input", data_dir / "rank2_4x4.txt", "--candidate", out)[0] == 0


def test_module_entry_point(data_dir, tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "blockpinv", "pinv", "--input", str(data_dir / "I4.txt"),
         "--output", str(tmp_path / "x.txt"), "--partition", "2,2,2,2", "--check"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "status = ok" in proc.stdout
