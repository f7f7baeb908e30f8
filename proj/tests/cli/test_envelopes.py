"""Runs the qpsh binary and validates every envelope against schemas/envelope.json."""

import json
import os
import pathlib
import re
import subprocess

import jsonschema
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
QPSH = os.environ.get("QPSH_BIN", str(ROOT / "build" / "tools" / "qpsh"))
SCHEMA = json.loads((ROOT / "schemas" / "envelope.json").read_text())


def run(*args):
    p = subprocess.run([QPSH, *args], capture_output=True, text=True, timeout=600)
    return p.returncode, p.stdout


def envelope(*args):
    code, out = run(*args)
    env = json.loads(out)
    jsonschema.validate(env, SCHEMA)
    assert env["exit_code"] == code
    return code, env


CASES = [
    (["moore-det", "--matrix", "[[1,0,0],[0,1,0],[0,0,1]]"], 0),
    (["moore-det", "--random", "--seed", "3", "--n", "4"], 0),
    (["moore-det", "--random"], 2),
    (["hessian", "--field", "norm2", "--point", "0,0,0,0,0,0,0,0"], 0),
    (["hessian", "--field", "sqrt_norm2_eps(0.3) + x(2)", "--n", "2", "--point", "0.1,0,0,0,0,0.2,0,0"], 0),
    (["hessian", "--field", "norm2(", "--n", "2"], 2),
    (["hessian", "--n", "1", "--field", "norm2"], 2),
    (["psh-check", "--field", "logcosh_norm_eps(0.5)", "--nodes-per-axis", "2"], 0),
    (["psh-check", "--field", "-1*norm2", "--nodes-per-axis", "2"], 1),
    (["ma-pairing", "--field", "norm2", "--nodes-per-axis", "3"], 0),
    (["ma-pairing", "--field", "norm2", "--field", "sqrt_norm2_eps(0.5)", "--qmc-samples", "512"], 0),
    (["ma-pairing", "--field", "norm2", "--nodes-per-axis", "11"], 4),
    (["converge", "--nodes-per-axis", "3", "--eps-steps", "2", "--family", "sqrt_norm"], 1),
    (["cln", "--field", "norm2", "--nodes-per-axis", "2", "--sup-points", "3"], 0),
    (["cln", "--field", "0*norm2", "--nodes-per-axis", "2", "--sup-points", "2"], 3),
    (["verify", "algebra", "--seed", "1"], 0),
    (["verify", "multiplicativity", "--n", "2", "--seed", "7"], 0),
    (["verify", "adjoint", "--seed", "2", "--trials", "5"], 0),
    (["verify", "cones", "--seed", "3", "--trials", "5"], 0),
    (["verify", "delta-consistency", "--n", "3", "--seed", "4", "--trials", "5"], 0),
    (["verify", "cones"], 2),
]


@pytest.mark.parametrize("args,code", CASES, ids=[" ".join(a[:2]) + f" -> {c}" for a, c in CASES])
def test_envelope_matches_schema(args, code):
    got, env = envelope(*args)
    assert got == code
    if code == 0:
        assert env["status"] == "pass"
    if "--seed" in args:
        assert env["seed"] == int(args[args.index("--seed") + 1])


def test_byte_identical_modulo_wall_time():
    strip = lambda s: re.sub(r'"wall_time_s": [^\n]*', "", s)
    args = ["verify", "cones", "--n", "3", "--seed", "9", "--trials", "4"]
    assert strip(run(*args)[1]) == strip(run(*args)[1])
    args = ["ma-pairing", "--field", "norm2", "--qmc-samples", "256", "--threads", "1"]
    assert strip(run(*args)[1]) == strip(run(*args)[1])


def test_threads_do_not_change_results():
    a = envelope("ma-pairing", "--field", "sqrt_norm2_eps(0.2)", "--nodes-per-axis", "3", "--threads", "1")[1]
    b = envelope("ma-pairing", "--field", "sqrt_norm2_eps(0.2)", "--nodes-per-axis", "3", "--threads", "3")[1]
    assert a["results"] == b["results"]
    assert b["threads"] == 3


def test_out_path_and_csv(tmp_path):
    out, csv = tmp_path / "env.json", tmp_path / "eps.csv"
    code, stdout = run("converge", "--nodes-per-axis", "3", "--eps-steps", "3", "--out", str(out), "--csv", str(csv))
    assert stdout == ""
    env = json.loads(out.read_text())
    jsonschema.validate(env, SCHEMA)
    assert env["exit_code"] == code
    lines = csv.read_text().splitlines()
    assert lines[0] == "family,eps,pairing,error_estimate,gap,psh"
    assert len(lines) == 1 + 2 * 3


def test_usage_error_exit_two():
    code, out = run("hessian", "--no-such-flag")
    assert code == 2 and out == ""
