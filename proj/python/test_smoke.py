"""Smoke tests for the python bindings."""

import sys

sys.path.insert(0, sys.argv[1] if len(sys.argv) > 1 else ".")

import cpds_py  # noqa: E402

G7 = """p cpds 7 7
z a b c d
e a b
e b c
e c d
e d a
e a e
e b f
e c g
"""


def test_parse_and_inspect():
    inst = cpds_py.parse_instance(G7, 2)
    assert inst.n == 7
    assert inst.m == 7
    assert inst.k == 2
    assert inst.label(0) == "a"
    assert inst.is_zero_injection(0)
    assert not inst.is_zero_injection(4)
    assert inst.degree(0) == 3


def test_monitoring():
    inst = cpds_py.parse_instance(G7, 2)
    monitored = cpds_py.monitored_set(inst, {0: [1, 3]})
    assert sorted(monitored) == list(range(7))
    assert cpds_py.is_power_dominating(inst, {0: [1, 3]})
    assert not cpds_py.is_power_dominating(inst, {4: [0]})


def test_oracle_and_solver_agree():
    inst = cpds_py.parse_instance(G7, 2)
    oracle = cpds_py.brute_force(inst)
    assert oracle["optimum"] == 1
    for model in ("FPS-IP", "EFPS-IP-OutP-Init", "BRI-IP", "JOV-IP", "FORT-IP"):
        report = cpds_py.solve(inst, model=model, time_limit=60.0)
        assert report["status"] == "optimal", report
        assert report["objective"] == 1.0, report
        assert report["verified"], report


def test_grid_and_kstar():
    grid = cpds_py.generate_grid(3, 4, zi_mode="all", seed=5)
    assert grid.n == 12
    ks = cpds_py.k_star(grid, time_limit=120.0)
    assert 0 <= ks <= 4
    report = cpds_py.solve(grid.with_capacity(ks), model="EFPS-IP-OutP-Init", time_limit=120.0)
    assert report["status"] == "optimal"


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
