import json
import subprocess
import sys

import pytest

from shascope.cli import main

EX3_MIN = "-5316979,-4724275762"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariants_json(capsys):
    code, out, _ = run_cli(capsys, "invariants", "--curve", "1,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["delta_prime"] == 31
    assert doc["j"] == {"num": 6912, "den": 31}


def test_big_integers_as_strings(capsys):
    a, b = 1692602, -530052723915
    code, out, _ = run_cli(capsys, "invariants", "--curve", f"0,{a},0,{b},0")
    assert code == 0
    doc = json.loads(out)
    assert isinstance(doc["delta"], str)  # exceeds 2^53
    assert int(doc["delta"]) % 8420798017 == 0


def test_exceptional_fixture(capsys):
    code, out, _ = run_cli(capsys, "exceptional", "--curve", EX3_MIN, "--scan-bound", "100")
    assert code == 0
    doc = json.loads(out)
    assert doc["exceptional_set"] == [2, 3, 5, 7, 13, 23]


def test_ffgroup_fixture(capsys):
    code, out, _ = run_cli(capsys, "ffgroup", "--p", "7", "--ell", "5", "--curve", EX3_MIN)
    assert code == 0
    doc = json.loads(out)
    assert doc["order"] == 10
    assert doc["cyclic"] is True
    assert doc["points_by_order"]["5"] == [[1, 3], [1, 4], [5, 3], [5, 4]]


def test_divpoly_symbolic_unit(capsys):
    code, out, _ = run_cli(capsys, "divpoly", "--n", "1", "--symbolic")
    assert code == 0
    assert json.loads(out)["f"] == "1"


def test_domain_error_exit_2(capsys):
    code, _, err = run_cli(capsys, "invariants", "--curve", "0,0")
    assert code == 2
    assert err


def test_non_integer_curve_exit_2(capsys):
    code, _, _ = run_cli(capsys, "invariants", "--curve", "1.5,2")
    assert code == 2


def test_usage_error_exit_64(capsys):
    assert main(["invariants"]) == 64
    assert main(["no-such-command"]) == 64
    assert main(["reduce", "--curve", "1,1"]) == 64  # missing --p


def test_lift_fixture(capsys):
    code, out, _ = run_cli(capsys, "lift", "--p", "7", "--ell", "5", "--curve", EX3_MIN)
    assert code == 0
    doc = json.loads(out)
    assert doc["m"] == 2 and doc["bezout"] == [3, -1]
    assert doc["y_squared"] == {"num": 9, "den": 1}


def test_determinism_byte_identical():
    cmds = [
        ["invariants", "--curve", "1,1"],
        ["exceptional", "--curve", EX3_MIN, "--scan-bound", "100"],
        ["ffgroup", "--p", "7", "--ell", "5", "--curve", EX3_MIN],
        ["bad-primes", "--curve", EX3_MIN],
    ]
    for cmd in cmds:
        runs = [
            subprocess.run(
                [sys.executable, "-m", "shascope.cli", *cmd],
                capture_output=True,
                check=True,
            ).stdout
            for _ in range(2)
        ]
        assert runs[0] == runs[1]
        json.loads(runs[0])  # valid JSON


def test_budget_error_exit_3(capsys):
    # degree ceiling on the division-polynomial table
    code, _, err = run_cli(capsys, "divpoly", "--n", "60", "--curve", "1,1")
    assert code == 3
    assert err


def test_effort_flag_accepted(capsys):
    code, out, _ = run_cli(capsys, "bad-primes", "--curve", "1,1", "--effort", "5")
    assert code == 0
    assert json.loads(out)["delta_prime_factors"] == {"31": 1}
