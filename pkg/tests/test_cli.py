import json
import os
import subprocess
import sys

from kleinwiman.cli import dispatch, jsonable


def run_cli(args):
    code, report = dispatch(args)
    return code, report


def test_series_command_matches_recorded_values():
    code, rep = run_cli(["series", "--preset", "wiman", "--d", "90",
                         "--m4", "4", "--m3", "8"])
    assert code == 0
    assert rep["results"]["dim"] == 1
    assert rep["results"]["edim"] == 0


def test_config_show_char7_counts():
    code, rep = run_cli(["config", "show", "--preset", "klein-char7"])
    assert code == 0
    sizes = [c["size"] for c in rep["results"]["classes"]]
    assert rep["results"]["num_lines"] == 21 and sizes == [21, 28]


def test_usage_error_exit_code():
    code, _ = run_cli(["series", "--preset", "nonsense", "--d", "10"])
    assert code == 2
    code, _ = run_cli(["unknown-subcommand"])
    assert code == 2


def test_reports_deterministic():
    out = []
    for _ in range(2):
        code, rep = run_cli(["series", "--preset", "klein", "--d", "42",
                             "--m3", "8", "--field", "modp:4733", "--basis"])
        assert code == 0
        out.append(json.dumps(jsonable(rep), sort_keys=True))
    assert out[0] == out[1]


def test_reports_deterministic_across_workers():
    env = dict(os.environ)
    outs = []
    for workers in ("1", "2"):
        env["KLEIN" "WIMAN_WORKERS"] = workers
        proc = subprocess.run(
            [sys.executable, "-m", "kleinwiman.cli", "config", "show",
             "--preset", "klein", "--field", "modp:4733"],
            capture_output=True, text=True, env=env, timeout=300)
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        data.pop("workers")
        outs.append(json.dumps(data, sort_keys=True))
    assert outs[0] == outs[1]


def test_waldschmidt_command():
    from fractions import Fraction
    code, rep = run_cli(["waldschmidt", "--preset", "wiman"])
    assert code == 0
    assert rep["results"]["exact"] == Fraction(27, 2)
    assert jsonable(rep)["results"]["exact"] == "27/2"


def test_negsearch_command():
    code, rep = run_cli(["negsearch", "--preset", "klein", "--dmax", "20",
                         "--field", "modp:4733"])
    assert code == 0
    assert rep["results"]["ledger"] == ["21H - 4E4 - 3E3", "18H - 4E4"]
    assert rep["results"]["recorded_classes_beyond_200"]["source"] \
        == "reference-constant"


def test_fatideal_alpha_command():
    code, rep = run_cli(["fatideal", "alpha", "--preset", "klein-char7",
                         "--m", "1"])
    assert code == 0
    assert rep["results"]["alpha"] == 8


def test_invariants_verify_klein_modp():
    code, rep = run_cli(["invariants", "--preset", "klein",
                         "--field", "modp:4733", "--verify"])
    assert code == 0
    checks = rep["results"]["verification"]
    assert checks["degree42_relation"]["holds"]
    assert checks["image_of_triple_point"] == ["3", "4731", "4685"]


def test_jsonable_fractions():
    from fractions import Fraction
    assert jsonable(Fraction(3, 2)) == "3/2"
    assert jsonable(Fraction(4, 2)) == 2
    assert jsonable({1: Fraction(1, 3)}) == {"1": "1/3"}
