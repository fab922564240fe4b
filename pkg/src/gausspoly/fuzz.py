"""
Randomized invariance trials.

Each trial draws a random diagram, walks it through random Reidemeister
moves and checks that every invariant of its kind came out unchanged.  On a
mismatch the walk is replayed to find the first offending move, which is
reported together with the diagrams on both sides of it.  Per-move checks
(parity axioms for knots, the coefficient-sum bounds for flat diagrams and
links) are evaluated on every intermediate diagram.

A report depends only on its parameters, so reruns are byte-identical.
"""
from __future__ import annotations

import dataclasses
import logging
import random
from collections import Counter
from typing import Callable, Iterable

from .diagram import (
    Diagram,
    FlatLongDiagram,
    KnotGaussDiagram,
    LinkGaussDiagram,
    closure,
    serialize,
)
from .generators import random_diagram
from .knot_invariants import chord_indices, f_polys, scalar_invariants, writhe_poly, affine_index_poly
from .link_invariants import fg_polys, link_scalars, linking_poly
from .longflat import flat_writhe_poly
from .moves import DEFAULT_MAX_CHORDS, MoveAction, iter_walk

log = logging.getLogger(__name__)

__all__ = ["FuzzReport", "INVARIANTS", "run_fuzz", "parity_violations"]


def _f_all(K):
    return {k: str(p) for k, p in f_polys(K).items()}


def _fg(L):
    fg = fg_polys(L)
    return fg.F, fg.G


INVARIANTS: dict[str, dict[str, Callable]] = {
    "knot": {
        "writhe_poly": writhe_poly,
        "f_k": _f_all,
        "J": lambda K: scalar_invariants(K).J,
        "Q": lambda K: scalar_invariants(K).Q,
        "affine_index_poly": affine_index_poly,
    },
    "long": {
        "closure_writhe_poly": lambda d: writhe_poly(closure(d)),
        "flat_writhe_poly": flat_writhe_poly,
    },
    "flatlong": {
        "flat_writhe_poly": flat_writhe_poly,
    },
    "link": {
        "two_lk": lambda L: link_scalars(L).two_lk,
        "span": lambda L: link_scalars(L).span,
        "linking_poly": linking_poly,
        "fg_pair": _fg,
    },
}


def parity_violations(before: KnotGaussDiagram, after: KnotGaussDiagram,
                      action: MoveAction) -> list[str]:
    """Check the parity axioms for every 2-adic parity on one move."""
    ib, ia = chord_indices(before), chord_indices(after)
    levels = range(max((abs(i) for i in list(ib.values()) + list(ia.values())), default=1).bit_length() + 1)

    def odd(ind, k):
        return ind % (2 ** (k + 1)) == 2 ** k

    problems = []
    common = set(ib) & set(ia)
    involved: set[int] = set()
    kind = action.kind
    if kind in ("R1Insert", "R1Delete"):
        (c,) = set(ia) ^ set(ib)
        involved = {c}
        ind = ia.get(c, ib.get(c))
        for k in levels:
            if odd(ind, k):
                problems.append(f"R1 chord {c} is odd at level {k}")
    elif kind in ("R2Insert", "R2Delete"):
        pair = sorted(set(ia) ^ set(ib))
        involved = set(pair)
        src = ia if kind == "R2Insert" else ib
        for k in levels:
            if odd(src[pair[0]], k) != odd(src[pair[1]], k):
                problems.append(f"R2 chords {pair} differ in parity at level {k}")
    elif kind == "R3Swap":
        involved = set(action.params["chords"])
        for k in levels:
            for c in involved:
                if odd(ib[c], k) != odd(ia[c], k):
                    problems.append(f"R3 chord {c} changes parity at level {k}")
        # the triangle count rule only holds for the Gaussian parity; at
        # higher levels indices like (2, 1, 3) put a single chord in class 1
        n_odd = sum(odd(ia[c], 0) for c in involved)
        if n_odd not in (0, 2):
            problems.append(f"R3 triangle has {n_odd} odd chords")
    for c in common - involved:
        for k in levels:
            if odd(ib[c], k) != odd(ia[c], k):
                problems.append(f"uninvolved chord {c} changes parity at level {k}")
    return problems


def _s_bound(d: Diagram) -> tuple[int, int] | None:
    """(coefficient mass, crossing budget) for the orbit bounds, or None."""
    if isinstance(d, FlatLongDiagram):
        return flat_writhe_poly(d).coeff_abs_sum(), d.n
    if isinstance(d, LinkGaussDiagram):
        fg = fg_polys(d)
        return fg.F.coeff_abs_sum() + fg.G.coeff_abs_sum(), len(d.bridges())
    return None


def _render(value) -> object:
    if hasattr(value, "to_json"):
        return str(value)
    if isinstance(value, tuple):
        return [_render(v) for v in value]
    return value


@dataclasses.dataclass
class FuzzReport:
    seed: int
    kind: str
    trials: int
    steps: int
    max_chords: int
    invariants: list[str]
    failures: list[dict] = dataclasses.field(default_factory=list)
    traces: list[list[MoveAction]] = dataclasses.field(default_factory=list, repr=False)
    move_counts: Counter = dataclasses.field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "kind": self.kind,
            "trials": self.trials,
            "steps": self.steps,
            "max_chords": self.max_chords,
            "invariants": list(self.invariants),
            "move_counts": dict(sorted(self.move_counts.items())),
            "failures": self.failures,
        }


def run_fuzz(kind: str = "knot", seed: int = 0, trials: int = 100, steps: int = 20,
             max_chords: int = DEFAULT_MAX_CHORDS, invariants: Iterable[str] | None = None,
             start_chords: int = 8, keep_traces: bool = False) -> FuzzReport:
    """Run ``trials`` independent random walks and collect invariance failures."""
    if kind not in INVARIANTS:
        raise ValueError(f"unknown kind {kind!r}; choose from {sorted(INVARIANTS)}")
    table = INVARIANTS[kind]
    names = list(table) if invariants is None else list(invariants)
    extra = {"parity_axioms"} if kind == "knot" else {"s_bound"} if kind in ("flatlong", "link") else set()
    unknown = set(names) - set(table) - extra
    if unknown:
        raise ValueError(f"unknown invariants for {kind}: {sorted(unknown)}")
    if invariants is None:
        names += sorted(extra)
    report = FuzzReport(seed, kind, trials, steps, max_chords, names)

    for trial in range(trials):
        rng = random.Random(f"{seed}/{trial}")
        start = random_diagram(kind, rng, rng.randint(0, min(start_chords, max_chords)))
        walk_seed = rng.getrandbits(64)
        states = [start]
        trace = []
        for action, d in iter_walk(start, walk_seed, steps, max_chords):
            trace.append(action)
            states.append(d)
            report.move_counts[action.kind] += 1
        if keep_traces:
            report.traces.append(trace)
        report.failures.extend(_check_trial(trial, kind, table, names, states, trace))
    log.info("fuzz %s seed=%s: %d trials, %d failures", kind, seed, trials, len(report.failures))
    return report


def _failure(trial, name, states, trace, step, expected=None, got=None, detail=None) -> dict:
    out = {
        "trial": trial,
        "invariant": name,
        "step": step,
        "start": serialize(states[0]),
        "trace": [a.to_json() for a in trace[:step + 1]],
        "before": serialize(states[step]),
        "after": serialize(states[step + 1]),
    }
    if detail is not None:
        out["detail"] = detail
    if expected is not None or got is not None:
        out["expected"] = _render(expected)
        out["got"] = _render(got)
    return out


def _check_trial(trial, kind, table, names, states, trace) -> list[dict]:
    failures = []
    for name in names:
        if name in table:
            fn = table[name]
            first, last = fn(states[0]), fn(states[-1])
            if first == last:
                continue
            prev = first
            for step in range(len(trace)):
                cur = fn(states[step + 1])
                if cur != prev:
                    failures.append(_failure(trial, name, states, trace, step, prev, cur))
                    break
                prev = cur
        elif name == "parity_axioms":
            for step, action in enumerate(trace):
                problems = parity_violations(states[step], states[step + 1], action)
                if problems:
                    failures.append(_failure(trial, name, states, trace, step, detail=problems))
                    break
        elif name == "s_bound":
            mass, _ = _s_bound(states[0])
            for step in range(len(trace) + 1):
                budget = _s_bound(states[step])[1]
                if mass > budget:
                    failures.append(_failure(trial, name, states, trace, max(step - 1, 0),
                                             detail=f"s = {mass} exceeds {budget} crossings"))
                    break
    return failures
