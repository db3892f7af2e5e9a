import json

import pytest

from mbrg.errors import NotApplicable
from mbrg.harness import (
    BUILDERS,
    CLAIM_IDS,
    Instance,
    Method,
    SuiteConfig,
    TheoremCheck,
    build_suite,
    check_bounds,
    connected_graphs,
    explore,
    run_suite,
)
from mbrg.solver import GameReport, Outcome
from mbrg.specs import build


def report(outcome, **kw):
    return GameReport(Outcome(outcome), **kw)


def test_bounds_examples():
    P4, K2, P5, P2 = (build(s) for s in ("path:4", "complete:2", "path:5", "path:2"))
    assert check_bounds(P4, P4, report("R", r_mb=8, r_mb_prime=8))
    assert check_bounds(P4, K2, report("R", r_mb=4, r_mb_prime=4))
    assert not check_bounds(P4, K2, report("R", r_mb=3, r_mb_prime=4))
    assert not check_bounds(P4, P4, report("R", r_mb=8, r_mb_prime=9))
    with pytest.raises(NotApplicable):
        check_bounds(P2, P5, report("S", s_mb=3, s_mb_prime=3))


def test_location_number_bound_applies():
    # lc(P_4) = 2 so four P_4 layers need 8 Resolver moves
    P4 = build("path:4")
    assert not check_bounds(P4, P4, report("R", r_mb=7, r_mb_prime=8))


def test_corrupted_prediction_fails_with_diff():
    inst = Instance("product:path:2∘path:5", Method.EXACT_SOLVE, {"s_mb": 4},
                    lambda: {"s_mb": 3})
    check = TheoremCheck("corrupted", "fixture", [inst])
    rep = run_suite(SuiteConfig(checks=()), checks=[check])
    assert not rep.passed
    d = rep.to_dict()["checks"][0]["instances"][0]
    assert d["pass"] is False
    assert d["diff"] == {"s_mb": {"predicted": 4, "observed": 3}}
    assert "FAIL" in rep.to_table()


def test_every_claim_has_a_check():
    suite = build_suite()
    assert [c.id for c in suite] == list(CLAIM_IDS)
    assert set(BUILDERS) == set(CLAIM_IDS)
    assert all(c.instances for c in suite)
    assert all(c.claim for c in suite)


def test_unknown_check_id():
    with pytest.raises(KeyError):
        build_suite(SuiteConfig(checks=("nope",)))


def test_strategy_instances_record_preconditions():
    for c in build_suite():
        for inst in c.instances:
            if inst.method is Method.STRATEGY_VERIFY and not inst.computed_only:
                inst.execute()
                assert "preconditions" in inst.observed, (c.id, inst.desc)
                return
    pytest.fail("no strategy instance found")


def test_report_is_deterministic():
    cfg = SuiteConfig(checks=("small-product-values", "even-block-transversals",
                              "pairing-implies-resolver"), samples=50)
    a = run_suite(cfg).to_json()
    b = run_suite(cfg).to_json()
    assert a == b
    doc = json.loads(a)
    assert doc["pass"] is True
    assert "millis" not in doc["stats"]


def test_p5_check_passes():
    rep = run_suite(SuiteConfig(checks=("p5-factor-spoiler",)))
    assert rep.passed
    exact = [i for i in rep.checks[0].instances if i.method is Method.EXACT_SOLVE]
    assert any(i.observed.get("s_mb") == 3 for i in exact)


def test_explore_empty_family():
    assert explore([], "path:7") == []


def test_explore_small_exact():
    rows = explore(["path:2"], "path:3")
    assert rows[0]["label"] == "COMPUTED"
    assert rows[0]["method"] == "EXACT_SOLVE"


def test_explore_by_strategy():
    rows = explore(["path:2"], "path:7", method="strategy", strategy="odd_path_resolver")
    assert rows[0]["outcome"] == "R"


def test_connected_graph_counts():
    assert [len(connected_graphs(n)) for n in range(2, 6)] == [1, 2, 6, 21]
