"""Drives the installed command line binary end to end through subprocesses."""

import json
import os
import subprocess
import sys
import tempfile

CLI = os.environ["INFOCORR_CLI"]
DATA = os.environ["INFOCORR_DATA"]

PASSES = []


def run(*args, env_extra=None, expect=0):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, env=env)
    assert proc.returncode == expect, (
        f"{args}: exit {proc.returncode}, expected {expect}\n"
        f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
    )
    return proc.stdout


def data(name):
    return os.path.join(DATA, name)


def check(name):
    PASSES.append(name)
    print(f"{name}: ok")


def test_classical_bound():
    out = json.loads(run("classical-bound", "--witness", data("witness_f1.json"),
                         "--alpha", "1", "--check"))
    assert abs(out["bound"] - 3.0) <= 1e-9, out
    assert out["claimed"]["tight"] and out["claimed"]["facet"]
    assert abs(out["cap"] - 2 / 3) <= 1e-12
    check("classical-bound")


def test_info():
    out = json.loads(run("info", "--ensemble", data("ensemble_trine.json"), "--check"))
    assert abs(out["info_bits"] - 1.0) <= 1e-4, out
    assert abs(out["guessing_probability"] - 2 / 3) <= 1e-6
    assert out["eigen_bound_tight"] is True
    assert out["gap"] <= 2.1e-7
    check("info")


def test_curve_determinism():
    args = ("curve", "--witness", data("witness_f1.json"), "--grid", "0:1:3",
            "--dim", "2", "--restarts", "4", "--seed", "7")
    first = run(*args)
    lines = first.strip().split("\n")
    assert lines[0] == "alpha,classical_bound,quantum_lower_bound,di_upper_bound"
    assert len(lines) == 4
    for line in lines[1:]:
        alpha, classical, quantum, di = map(float, line.split(","))
        assert classical - 1e-9 <= quantum <= di + 1e-7, line

    assert run(*args) == first, "rerun must be byte identical"
    assert run(*args, env_extra={"INFOCORR_WORKERS": "1"}) == first, \
        "worker count must not change results"

    with tempfile.TemporaryDirectory() as tmp:
        out_path = os.path.join(tmp, "curve.csv")
        run(*args, "--out", out_path)
        with open(out_path, encoding="utf-8") as fh:
            assert fh.read() == first
    check("curve")


def test_membership_and_di():
    member = json.loads(run("membership", "--behavior",
                            data("behavior_qubit_triple.json"), "--check"))
    di = json.loads(run("di-bound", "--behavior",
                        data("behavior_qubit_triple.json"), "--check"))
    assert di["di_min_info_bits"] <= member["min_info_bits"] + 1e-6
    assert member["min_info_bits"] <= member["hmin_bits"] + 1e-9
    assert 0 <= di["di_min_info_bits"] <= 1.585

    ceiling = json.loads(run("di-bound", "--witness", data("witness_f1.json"),
                             "--alpha", "1", "--check"))
    assert abs(ceiling["ceiling"] - 5.0) <= 1e-9, ceiling
    check("membership/di-bound")


def test_rac():
    out = json.loads(run("rac", "--n-bits", "4", "--check"))
    assert abs(out["average_score"] - 0.75) <= 1e-9
    assert abs(out["worst_case_score"] - 0.75) <= 1e-9
    assert abs(out["info_bits"] - 1.0) <= 1e-4
    check("rac")


def test_seesaw():
    with tempfile.TemporaryDirectory() as tmp:
        strategy_path = os.path.join(tmp, "strategy.json")
        out = json.loads(run("seesaw", "--witness", data("witness_f1.json"),
                             "--alpha", "0.5", "--restarts", "4", "--seed", "9",
                             "--strategy-out", strategy_path, "--check"))
        assert out["info_bits"] <= 0.5 + 1e-4
        assert out["value"] >= 1.8  # must not fall below the classical point
        with open(strategy_path, encoding="utf-8") as fh:
            strategy = json.load(fh)
        assert strategy["branches"]
    check("seesaw")


def test_vertices():
    out = json.loads(run("vertices", "--scenario", data("scenario_322.json")))
    assert out["count"] == 64
    costs = {v["cost"] for v in out["vertices"]}
    assert costs == {1 / 3, 2 / 3, 1.0}
    check("vertices")


def test_failure_modes():
    run("classical-bound", "--alpha", "1", expect=2)  # missing required option
    run("no-such-command", expect=2)

    with tempfile.TemporaryDirectory() as tmp:
        bad = os.path.join(tmp, "bad.json")
        with open(bad, "w", encoding="utf-8") as fh:
            fh.write("{ not json")
        run("classical-bound", "--witness", bad, "--alpha", "1", expect=2)

        mismatched = os.path.join(tmp, "scenario.json")
        with open(mismatched, "w", encoding="utf-8") as fh:
            json.dump({"n": 2, "l": 1, "k": 2, "prior": [0.5, 0.5]}, fh)
        # witness file disagrees with the declared scenario
        run("classical-bound", "--witness", data("witness_f1.json"),
            "--scenario", mismatched, "--alpha", "1", expect=3)

        big = os.path.join(tmp, "big.json")
        with open(big, "w", encoding="utf-8") as fh:
            json.dump({"n": 4, "l": 4, "k": 4, "prior": [0.25] * 4}, fh)
        run("vertices", "--scenario", big, expect=4)
    check("failure modes")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
    print(f"cli surface: {len(PASSES)} checks passed")


if __name__ == "__main__":
    sys.exit(main())
