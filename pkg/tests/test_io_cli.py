import json
import subprocess
import sys

import numpy as np
import pytest

from qps import channels as ch
from qps import io as qio
from qps import states
from qps.cli import main


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "qps.cli", *args], capture_output=True, text=True
    )


def test_state_json_round_trip(tmp_path):
    rho = states.random_state(1, 3, seed=4)
    dense = tmp_path / "dense.json"
    sparse = tmp_path / "char.json"
    qio.write_state(rho, dense, form="dense")
    qio.write_state(rho, sparse, form="char")
    for path in (dense, sparse):
        back = qio.read_state(path)
        assert back.d == 3 and back.n == 1
        assert np.abs(back.mat - rho.mat).max() < 1e-10
    obj = json.loads(dense.read_text())
    assert set(obj) == {"d", "n", "matrix"}
    obj = json.loads(sparse.read_text())
    assert set(obj) == {"d", "n", "char"}
    assert all(set(e) == {"p", "q", "re", "im"} for e in obj["char"])


def test_channel_json_round_trip(tmp_path):
    lam = ch.random_channel(1, 3, seed=5)
    path = tmp_path / "chan.json"
    qio.write_channel(lam, path)
    obj = json.loads(path.read_text())
    assert obj["kind"] == "choi" and obj["n_doubled"] == 2
    back = qio.read_channel(path)
    assert np.abs(back.choi.mat - lam.choi.mat).max() < 1e-10
    qio.write_channel(lam, path, form="char")
    back = qio.read_channel(path)
    assert np.abs(back.choi.mat - lam.choi.mat).max() < 1e-10


def test_cli_params():
    r = run_cli("params", "--d", "7")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["circle"]["count"] == 1
    assert rep["circle"]["classes"][0]["representative"] == [2, 2]
    assert rep["hyperbola"]["count"] == 1
    assert rep["circle"]["formula"] == 1
    r = run_cli("params", "--d", "17")
    rep = json.loads(r.stdout)
    assert rep["circle"]["count"] == rep["circle"]["formula"] == 2
    r = run_cli("params", "--d", "2")
    rep = json.loads(r.stdout)
    assert rep["circle"]["count"] == 0 and "note" in rep
    r = run_cli("params", "--d", "9")
    assert r.returncode == 2


def test_cli_clt_and_determinism():
    r1 = run_cli("clt", "--d", "7", "--st", "2,2", "--seed", "1", "--N", "6")
    assert r1.returncode == 0, r1.stderr
    lines = r1.stdout.strip().split("\n")
    assert lines[0] == "N,l2_distance,paper_bound,H_0.5,H_1.0,H_2.0,H_inf"
    assert len(lines) == 8
    r2 = run_cli("clt", "--d", "7", "--st", "2,2", "--seed", "1", "--N", "6")
    assert r2.stdout == r1.stdout
    # stabilizer-like seed path still exits 0; bad family reports usage error
    r = run_cli("clt", "--d", "5", "--family", "beam-splitter", "--seed", "1")
    assert r.returncode == 2
    assert "no (s,t) classes for d=5" in r.stderr


def test_cli_gap(tmp_path, t_state):
    path = tmp_path / "t.json"
    qio.write_state(t_state, path)
    r = run_cli("gap", str(path))
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert abs(rep["gap"] - 0.29289321881345254) < 1e-9
    assert rep["support_size"] == 3
    assert rep["tolerances"]["tol_one"] == 1e-8
    bad = tmp_path / "bad.json"
    bad.write_text('{"d": 2,\n "n": ???}')
    r = run_cli("gap", str(bad))
    assert r.returncode == 2 and "line 2" in r.stderr


def test_cli_conv(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    out = tmp_path / "out.json"
    qio.write_state(states.basis_state(0, 7), a)
    qio.write_state(states.basis_state(0, 7), b, form="char")
    code = main(["conv", "--st", "2,2", str(a), str(b), "--out", str(out)])
    assert code == 0
    res = qio.read_state(out)
    assert np.abs(res.mat - states.basis_state(0, 7).mat).max() < 1e-10


def test_cli_channel_clt(tmp_path):
    path = tmp_path / "chan.json"
    qio.write_channel(ch.random_mixed_unitary_channel(1, 7, seed=2), path)
    out = tmp_path / "traj.csv"
    code = main(["channel-clt", str(path), "--st", "2,2", "--N", "4", "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "N,choi_l2_distance,paper_bound,diamond_bound,shifted,shift_p,shift_q"
    assert len(lines) == 6
    # a channel with a nontrivial mean gets shifted and says so
    wch = ch.weyl_conjugation_channel((1, 0), 7)
    qio.write_channel(wch, path)
    code = main(["channel-clt", str(path), "--st", "2,2", "--N", "2", "--out", str(out)])
    assert code == 0
    rows = out.read_text().strip().split("\n")[1:]
    assert all(row.split(",")[4] == "1" for row in rows)


def test_cli_entropy_sweep(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main([
        "entropy-sweep", "--d", "7", "--st", "2,2", "--seed", "2", "--N", "5",
        "--alphas", "0.5,1,2,inf", "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "N,H_0.5,H_1.0,H_2.0,H_inf"
    cols = np.array([[float(v) for v in row.split(",")[1:]] for row in lines[1:]])
    assert (np.diff(cols, axis=0) > -1e-8).all()


def test_cli_verify(tmp_path):
    out = tmp_path / "verify.json"
    code = main(["verify", "--suite", "hudson", "--d", "3", "--seeds", "100", "--out", str(out)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["pass"] and rep["suite"] == "hudson"
    assert {c["name"] for c in rep["checks"]} == {
        "hudson.stabilizers_nonnegative",
        "hudson.random_pure_negative",
    }
    code = main(["verify", "--suite", "nonsense", "--out", str(out)])
    assert code == 2


def test_env_dimension_cap(tmp_path):
    import os
    import subprocess

    env = dict(os.environ, QPS_MAX_DIM="10")
    r = subprocess.run(
        [sys.executable, "-m", "qps.cli", "clt", "--d", "7", "--st", "2,2", "--seed", "1", "--N", "2"],
        capture_output=True, text=True, env=env,
    )
    assert r.returncode == 2
    assert "TooLarge" in r.stderr


def test_cli_verify_jobs(tmp_path):
    out1 = tmp_path / "v1.json"
    out2 = tmp_path / "v2.json"
    assert main(["verify", "--suite", "duality", "--d", "3", "--seeds", "4", "--out", str(out1)]) == 0
    assert main([
        "verify", "--suite", "duality", "--d", "3", "--seeds", "4", "--jobs", "2", "--out", str(out2)
    ]) == 0
    # fan-out must merge by seed index: identical checks in identical order
    r1, r2 = json.loads(out1.read_text()), json.loads(out2.read_text())
    assert r1["checks"] == r2["checks"]
    assert r1["pass"] and r2["pass"]
