"""Verdict objects shared by every checker."""
import json
import time

PASS, FAIL, NA = "pass", "fail", "na"


def _plain(x):
    """Make witnesses JSON friendly and deterministic."""
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


class Report:
    """Clause-by-clause verdict for one check.

    Clauses added with ``required=False`` record the truth value of a
    predicate; a false value there is information, not a failure.  Required
    clauses must pass for the report to be consistent.  A report whose
    preconditions fail is marked not-applicable.
    """

    def __init__(self, theorem):
        self.theorem = theorem
        self.clauses = []
        self.required = []
        self.applicable = True
        self._t0 = time.perf_counter()
        self.timing_ms = 0

    def add(self, name, ok, witness=None, required=True):
        if ok is None:
            verdict = NA
        else:
            verdict = PASS if ok else FAIL
        self.clauses.append({"name": name, "verdict": verdict, "witness": _plain(witness)})
        self.required.append(required)
        return bool(ok)

    def na(self, name, witness=None):
        """Record a failed precondition; the report becomes not-applicable."""
        self.applicable = False
        self.clauses.append({"name": name, "verdict": NA, "witness": _plain(witness)})
        self.required.append(False)

    def merge(self, other, prefix="", required=True):
        for c, req in zip(other.clauses, other.required):
            self.clauses.append(dict(c, name=prefix + c["name"]))
            self.required.append(req and required)
        if not other.applicable:
            self.applicable = False

    def clause(self, name):
        for c in self.clauses:
            if c["name"] == name:
                return c
        raise KeyError(name)

    def value(self, name):
        v = self.clause(name)["verdict"]
        return None if v == NA else v == PASS

    @property
    def consistent(self):
        return all(c["verdict"] == PASS for c, req in zip(self.clauses, self.required) if req)

    @property
    def verdict(self):
        if not self.consistent:
            return FAIL
        if not self.applicable:
            return NA
        return PASS

    def finish(self):
        self.timing_ms = int(round((time.perf_counter() - self._t0) * 1000))
        return self

    def to_dict(self, timing=True):
        d = {
            "theorem": self.theorem,
            "verdict": self.verdict,
            "clauses": [dict(name=c["name"], verdict=c["verdict"], witness=c["witness"]) for c in self.clauses],
            "consistent": self.consistent,
        }
        if timing:
            d["timing_ms"] = self.timing_ms
        return d

    def to_json(self, timing=True):
        return json.dumps(self.to_dict(timing), indent=2)

    def __bool__(self):
        return self.consistent and self.applicable

    def __repr__(self):
        return f"<Report {self.theorem}: {self.verdict}>"


def exit_code(report):
    return {PASS: 0, FAIL: 1, NA: 2}[report.verdict]
