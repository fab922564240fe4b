import json

import pytest

from catalog import VT
from gausspoly.diagram import parse
from gausspoly.fuzz import parity_violations, run_fuzz
from gausspoly.moves import MoveAction, r1_insert, r3_apply


@pytest.mark.parametrize("kind", ["knot", "long", "flatlong", "link"])
def test_small_fuzz_clean(kind):
    rep = run_fuzz(kind, seed=3, trials=40, steps=12)
    assert rep.ok, rep.failures[:1]
    assert sum(rep.move_counts.values()) == 40 * 12


def test_report_is_deterministic():
    a = json.dumps(run_fuzz("link", seed=5, trials=25).to_json())
    b = json.dumps(run_fuzz("link", seed=5, trials=25).to_json())
    assert a == b
    c = json.dumps(run_fuzz("link", seed=6, trials=25).to_json())
    assert a != c


def test_report_shape():
    rep = run_fuzz("knot", seed=0, trials=0)
    assert rep.to_json()["failures"] == [] and rep.ok
    assert "parity_axioms" in rep.invariants


def test_unknown_kind_or_invariant():
    with pytest.raises(ValueError):
        run_fuzz("braid")
    with pytest.raises(ValueError):
        run_fuzz("knot", invariants=["span"])


def test_broken_invariant_is_located(monkeypatch):
    from gausspoly import fuzz
    monkeypatch.setitem(fuzz.INVARIANTS["knot"], "chord_count", lambda K: K.n)
    rep = run_fuzz("knot", seed=1, trials=3, steps=10, invariants=["chord_count"], keep_traces=True)
    assert rep.failures
    f = rep.failures[0]
    # the reported step is the first move that changes the chord count
    assert f["trace"][-1]["kind"] in ("R1Insert", "R1Delete", "R2Insert", "R2Delete")
    assert parse(f["before"]).n != parse(f["after"]).n
    assert len(f["trace"]) == f["step"] + 1


def test_parity_checks_on_single_moves():
    K = r1_insert(VT, 0, 1)
    assert parity_violations(VT, K, MoveAction("R1Insert", {})) == []
    braid = parse("knot: O1+ O2+ U1+ O3+ U2+ U3+")
    after = r3_apply(braid, (1, 2, 3))
    assert parity_violations(braid, after, MoveAction("R3Swap", {"chords": [1, 2, 3]})) == []
    # a sign-violating block swap is flagged
    bad_before = parse("knot: O1+ O2+ U1+ O3- U2+ U3-")
    bad_after = parse("knot: O2+ O1+ O3- U1+ U3- U2+")
    assert parity_violations(bad_before, bad_after, MoveAction("R3Swap", {"chords": [1, 2, 3]}))
