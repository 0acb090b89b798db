"""Acceptance criteria 1-10; prints one pass/fail line per criterion."""
import pytest

from loctool import acceptance

_results = {}


def _outcome(i):
    if i not in _results:
        [(_, rep, secs)] = acceptance.run({i})
        _results[i] = (rep, secs)
    return _results[i]


@pytest.mark.parametrize("i", range(1, 11), ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(i, capsys):
    rep, secs = _outcome(i)
    ok = rep.verdict == "pass"
    with capsys.disabled():
        print(f"\ncriterion {i}: {'pass' if ok else 'fail'} ({acceptance.TITLES[i - 1]}, {secs:.1f}s)")
    bad = [(c["name"], c["witness"]) for c, req in zip(rep.clauses, rep.required)
           if req and c["verdict"] != "pass"]
    assert ok, bad
    assert secs <= acceptance.BUDGET_S[i - 1]
