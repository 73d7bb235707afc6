"""Smoke checks for the python bindings; run directly, no harness needed."""

import json
import math

import numpy as np

import infocorr as ic

PEAK = 1 + 2 * math.sqrt(2)


def close(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} vs {b} (tol {tol})"


def test_scenario_and_witness():
    sc = ic.Scenario(3, 2, 2)
    close(sc.hmin_bits, math.log2(3), 1e-12)
    assert ic.strategy_count(sc) == 1728

    f1 = ic.Witness.f1()
    assert f1.scenario.n == 3
    close(ic.classical_witness_bound(f1, 1.0), 3.0, 1e-9)
    close(ic.classical_witness_bound(f1, 0.0), 1.0, 1e-9)

    report = ic.check_inequality(f1, 1.0, 3.0)
    assert report.valid and report.tight and report.facet

    try:
        ic.Scenario(0, 1, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("invalid scenario was accepted")


def test_quantum_point():
    close(ic.analytic_f1_curve(1.0), PEAK, 1e-12)
    close(ic.analytic_f1_curve(0.0), 1.0, 1e-12)

    plus = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
    zero = np.array([[1, 0], [0, 0]], dtype=complex)
    s, c = math.sin(math.pi / 8), math.cos(math.pi / 8)
    third = np.array([[s * s, -s * c], [-s * c, c * c]], dtype=complex)
    e = ic.Ensemble([1 / 3, 1 / 3, 1 / 3], [plus, zero, third])
    close(ic.info_of_ensemble(e), 1.0, 1e-4)
    bits, tight = ic.info_eigen_bound(e)
    assert tight
    close(bits, 1.0, 1e-9)

    round_tripped = ic.Ensemble.from_json(e.to_json())
    assert np.allclose(round_tripped.states[2], third)


def test_rac():
    ensemble, povms = ic.four_bit_rac()
    assert ensemble.dim == 4 and len(ensemble.states) == 16
    p = ic.behavior_from_quantum(ensemble, povms)
    close(ic.rac_score(p, 4, "average"), 0.75, 1e-12)
    close(ic.rac_score(p, 4, "worst"), 0.75, 1e-12)
    close(ic.info_of_ensemble(ensemble), 1.0, 1e-4)

    qe, qp = ic.qubit_rac(2)
    q = ic.behavior_from_quantum(qe, qp)
    close(ic.rac_score(q, 2, "worst"), 0.5 + 0.5 / math.sqrt(2), 1e-12)


def test_behavior_bounds():
    sc = ic.Scenario(3, 2, 2)
    corr = [[-1, -1], [-1, 1], [1, 0]]
    table = [[[(1 + corr[x][y]) / 2, (1 - corr[x][y]) / 2] for y in range(2)]
             for x in range(3)]
    p = ic.Behavior(sc, table)
    f1 = ic.Witness.f1()
    close(f1.value(p), 5.0, 1e-12)
    close(ic.di_min_info(p), 1.0, 1e-9)
    assert ic.di_min_info(p) <= ic.min_info_membership(p) + 1e-6

    close(ic.di_max_witness(f1, 0.0), 1.0, 1e-9)
    curve = ic.di_info_curve(f1, [5.0])
    close(curve[0][1], 1.0, 1e-5)

    doc = json.loads(p.to_json())
    assert doc["scenario"]["n"] == 3


def test_seesaw():
    f1 = ic.Witness.f1()
    r = ic.seesaw_max_witness(f1, 1.0, dim=2, restarts=10, seed=1)
    assert r.value >= 3.8274, r.value
    assert r.info <= 1.0 + 1e-4
    strategy = json.loads(r.strategy_json())
    assert strategy["branches"]


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"{test.__name__}: ok")
    print(f"bindings {ic.__version__}: all smoke checks passed")


if __name__ == "__main__":
    main()
