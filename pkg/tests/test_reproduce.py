import json
import random

import pytest

from rdpk3.chartring import chart_from_key
from rdpk3.reproduce import (
    CANONICITY_CHART_KEYS,
    CHECK_GROUPS,
    CheckRecord,
    RunReport,
    canonicity_trials,
    check_ghost_grid,
    check_glue,
    check_ordinarity,
    check_overlattice,
    check_point_counts,
    check_projection_rule,
    check_property_suites,
    check_witt_identities,
    known_only_tokens,
    projection_trials,
    reproduce_all,
    witt_axiom_trials,
)


def test_check_record_validation():
    rec = CheckRecord("a:b", "pass", "1", "1", "plumbing")
    assert rec.line() == "[ok  ] a:b: 1"
    with pytest.raises(ValueError):
        CheckRecord("a:b", "maybe", "1", "1", "plumbing")
    with pytest.raises(ValueError):
        CheckRecord("a:b", "pass", "1", "1", "")


def test_check_record_lines_and_json():
    fail = CheckRecord("x:y", "fail", "2", "3", "plumbing", note="why")
    assert fail.line() == "[FAIL] x:y: 2 (expected 3) [why]"
    doc = fail.as_json()
    assert doc["id"] == "x:y"
    assert doc["status"] == "fail"
    skip = CheckRecord("x:z", "skip", "-", "-", "plumbing")
    assert skip.line().startswith("[skip]")


def test_run_report_counters():
    recs = [
        CheckRecord("a", "pass", "1", "1", "plumbing"),
        CheckRecord("b", "fail", "2", "3", "plumbing"),
        CheckRecord("c", "skip", "-", "-", "plumbing"),
    ]
    rep = RunReport(command="reproduce", seed=0, records=recs, wall_time=0.5)
    assert (rep.n_pass, rep.n_fail, rep.n_skip) == (1, 1, 1)
    assert not rep.ok
    doc = rep.as_json()
    assert doc["schema"] == "rdpk3/report/1"
    assert doc["n_fail"] == 1
    assert len(doc["records"]) == 3
    text = rep.render_text()
    assert "CHECKS FAILED: 1 passed, 1 failed, 1 skipped" in text
    good = RunReport(command="reproduce", seed=0, records=recs[:1])
    assert good.ok
    assert "all checks passed" in good.render_text()


def test_ghost_grid_records():
    recs = check_ghost_grid()
    assert len(recs) == 9
    assert all(r.status == "pass" for r in recs)
    ids = {r.check_id for r in recs}
    assert "witt:ghost:p2:n4" in ids
    assert "witt:ghost:p7:n1" in ids


def test_identity_records():
    recs = check_witt_identities()
    assert len(recs) == 6
    assert all(r.status == "pass" for r in recs)
    by_id = {r.check_id: r for r in recs}
    assert "witt:identity:p5:len2:teichmuller" in by_id
    # the anchors carry the formulas being checked
    assert "a b (a + b) (a^2 + a b + b^2)" in by_id["witt:identity:p5:len2:teichmuller"].anchor


def test_projection_records():
    recs = check_projection_rule()
    assert len(recs) == 8
    assert all(r.status == "pass" for r in recs)
    assert any(r.check_id == "witt:projection:p2:n1:m3" for r in recs)


def test_point_count_records():
    recs = check_point_counts()
    assert all(r.status == "pass" for r in recs)
    by_id = {r.check_id: r for r in recs}
    assert by_id["count:elliptic:q2"].computed == "9"
    assert by_id["count:elliptic:q4"].computed == "25"
    assert by_id["count:elliptic:q8"].computed == "45"
    assert by_id["count:elliptic:height"].computed == "3"


def test_glue_records():
    recs = check_glue()
    assert len(recs) == 5
    assert all(r.status == "pass" for r in recs)
    ids = sorted(r.check_id for r in recs)
    assert ids == [
        "glue:a20:disc",
        "glue:a20:even",
        "glue:a20:index",
        "glue:a20:l2t2",
        "glue:a20:signature",
    ]


def test_ordinarity_records():
    recs = check_ordinarity()
    assert len(recs) == 2
    assert all(r.status == "pass" for r in recs)


def test_overlattice_records():
    recs = check_overlattice()
    assert all(r.status == "pass" for r in recs)
    ids = {r.check_id for r in recs}
    assert "overlattice:neg4+7+d7" in ids
    assert "overlattice:control-hyperbolic" in ids


def test_property_trials_zero_failures():
    rng = random.Random("unit:canonicity")
    ring = chart_from_key("2:E7:3")
    assert canonicity_trials(ring, 30, rng) == 0
    rng = random.Random("unit:axioms")
    assert witt_axiom_trials(3, 2, 50, rng) == 0
    rng = random.Random("unit:projection")
    assert projection_trials(40, rng) == 0


def test_property_suite_records_and_determinism():
    rep1 = check_property_suites(7, canonicity_count=5, axiom_count=10, projection_count=10)
    rep2 = check_property_suites(7, canonicity_count=5, axiom_count=10, projection_count=10)
    assert [r.as_json() for r in rep1] == [r.as_json() for r in rep2]
    assert len(rep1) == len(CANONICITY_CHART_KEYS) + 9 + 1
    assert all(r.status == "pass" for r in rep1)


def test_reproduce_filtering():
    rep = reproduce_all(only="4.3,glue")
    ids = {r.check_id for r in rep.records}
    assert any(i.startswith("frobenius:2:E8:j2") for i in ids)
    assert any(i.startswith("glue:a20") for i in ids)
    assert not any(i.startswith("witt:") for i in ids)
    assert rep.ok
    assert rep.command == "reproduce --only 4.3,glue"


def test_reproduce_alias_prefixes():
    rep = reproduce_all(only="prop4.3")
    assert all(r.check_id.startswith("frobenius:2:E8:j2") for r in rep.records)
    rep2 = reproduce_all(only="lemma6.3")
    assert all(r.check_id.startswith("overlattice") for r in rep2.records)


def test_reproduce_rejects_unknown_token():
    with pytest.raises(ValueError) as err:
        reproduce_all(only="nonsense")
    assert "known tokens" in str(err.value)
    with pytest.raises(ValueError):
        reproduce_all(only=" , ")


def test_known_tokens_cover_groups():
    toks = known_only_tokens()
    for gid, _fn, _seeded, aliases in CHECK_GROUPS:
        assert gid in toks
        for a in aliases:
            assert a in toks


def test_records_sorted_and_json_serializable():
    rep = reproduce_all(only="ghost")
    ids = [r.check_id for r in rep.records]
    assert ids == sorted(ids)
    json.dumps(rep.as_json())
