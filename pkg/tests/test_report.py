import json

import pytest
from hypothesis import given, strategies as st

from loctool.config import Caps, parse_caps
from loctool.report import Report, exit_code


def test_verdicts():
    r = Report("t")
    r.add("value", False, required=False)
    assert r.verdict == "pass" and exit_code(r) == 0
    r.add("needed", True)
    assert r.value("value") is False and r.value("needed") is True
    r.na("precondition")
    assert r.verdict == "na" and exit_code(r) == 2
    r.add("broken", False, {1, 2})
    assert r.verdict == "fail" and exit_code(r) == 1
    d = json.loads(r.finish().to_json())
    assert d["clauses"][-1]["witness"] == [1, 2]
    assert "timing_ms" in d and "timing_ms" not in r.to_dict(timing=False)
    with pytest.raises(KeyError):
        r.clause("missing")


def test_merge_prefixes_and_demotes():
    inner = Report("inner")
    inner.add("x", False)
    outer = Report("outer")
    outer.merge(inner, prefix="in ", required=False)
    assert outer.clause("in x")["verdict"] == "fail"
    assert outer.consistent


@given(st.lists(st.tuples(st.booleans(), st.booleans()), max_size=12))
def test_consistency_is_conjunction_of_required(clauses):
    r = Report("t")
    for ok, req in clauses:
        r.add("c", ok, required=req)
    assert r.consistent == all(ok for ok, req in clauses if req)


def test_caps_parsing():
    c = parse_caps("group_order=100, depth=2")
    assert c == Caps(group_order=100, depth=2)
    assert parse_caps("") == Caps()
    for bad in ("nope=1", "depth", "depth=0", "morphisms=-3", "depth=x"):
        with pytest.raises(ValueError):
            parse_caps(bad)


@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6), st.integers(1, 9), st.integers(0, 10 ** 6))
def test_caps_round_trip(g, m, d, w):
    text = f"group_order={g},morphisms={m},depth={d},words={w}"
    assert parse_caps(text) == Caps(g, m, d, w)
