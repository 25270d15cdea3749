import json

from factorspace.verify import _Tally, ci_routes_suite, graphoid_suite, hc_suite, intersection_suite, verify_suites


def test_seeded_reports_are_byte_identical():
    a = json.dumps(verify_suites(seed=3, clique_max_n=4, hc_max_n=3, trials=10), sort_keys=True)
    b = json.dumps(verify_suites(seed=3, clique_max_n=4, hc_max_n=3, trials=10), sort_keys=True)
    assert a == b
    assert json.loads(a)["all_passed"]
    assert set(json.loads(a)["summary"]["graphoid"]) == {"passed", "failed", "worst_residual"}


def test_suites_on_ternary_alphabets():
    r = intersection_suite(n=3, trials=30, seed=1, k=3)
    assert r["rank"]["failed"] == 0 and r["membership"]["failed"] == 0


def test_small_suites_pass():
    assert hc_suite(max_n=3, trials=5, seed=2)["generic"]["failed"] == 0
    assert graphoid_suite(trials=20, seed=2)["failed"] == 0
    assert ci_routes_suite(trials=50, seed=2)["failed"] == 0


def test_tally_keeps_first_failures_only():
    t = _Tally("x")
    calls = []
    for k in range(10):
        t.record(k % 2 == 0, lambda k=k: calls.append(k) or k, residual=k)
    r = t.report()
    assert (r["passed"], r["failed"]) == (5, 5)
    assert r["failures"] == [1, 3, 5, 7, 9] and calls == [1, 3, 5, 7, 9]
    assert r["worst_residual"] == "9.00000e+00"
