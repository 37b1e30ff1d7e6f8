import bvkit


def test_bracket_and_order():
    A = bvkit.Algebra.poly(2, 2, 4)
    assert A.bracket("bv", "x1", "t1") == "1 * 1"
    assert A.bracket("bv", "t1", "x1") == "-1 * 1"
    assert A.order("bv", 3, 2, 3) == 2
    assert A.order("d/dx1", 2, 2, 3) == 1
    line = bvkit.Algebra.poly(1, 0, 8)
    assert line.order("mult(x1^3 + 1)", 2, 5, 5, unital_adjust=True) == 0


def test_normalize_round_trip():
    A = bvkit.Algebra.poly(2, 2, 5)
    for seed in range(1, 20):
        e = A.random_element(seed, 3)
        assert A.normalize(e) == e


def test_bc_states():
    bc = bvkit.Algebra.bc(4)
    assert bc.normalize("b(-2)c(1)|0>") == bc.normalize("-c(1)b(-2)|0>")
    assert bc.apply("b(-1)", "c(1)|0>") == "1 * |0>"
    assert bc.apply("b(0)", "c(1)|0>") == "0"


def test_errors_are_value_errors():
    A = bvkit.Algebra.poly(1, 1, 3)
    for bad in ["x2", "x1 +", "(x1"]:
        try:
            A.normalize(bad)
        except ValueError as e:
            assert "column" in str(e)
        else:
            raise AssertionError(bad)


def test_run_suite_reports():
    r = bvkit.run_suite("jobs: []")
    assert r["passed"] and r["exit_code"] == 0 and r["warnings"] == ["empty job list"]
    text = """
jobs:
  - name: o
    suite: check-order
    algebra: "poly(1,1,4)"
    ops: [{op: bv, r_max: 3, expect: 2}]
"""
    r = bvkit.run_suite(text, seed=3)
    assert r["passed"]
    assert r["jobs"][0]["params"]["seed"] == 3
    assert r["jobs"][0]["orders"][0]["order"] == 2
    try:
        bvkit.run_suite("jobs:\n  - {name: a, suite: nope}\n")
    except bvkit.ConfigError as e:
        assert "line 2" in str(e)
    else:
        raise AssertionError("expected ConfigError")
