"""
Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.  Every comparison is exact.
"""
from __future__ import annotations

import functools
import itertools
import json
import random
import sys

import pytest

from catalog import LF2, MIX, NAMED, T3, VHOPF, VT, recording, round_trips, unique
from gausspoly.diagram import (
    closure,
    concat,
    connected_sum,
    descending,
    forget,
    inverse,
    mirror,
    resolve,
)
from gausspoly.fuzz import run_fuzz
from gausspoly.generators import random_flat, random_knot, random_link, torus_link
from gausspoly.knot_invariants import (
    affine_index_poly,
    chord_index,
    f_poly,
    f_polys,
    scalar_invariants,
    segment_labels_lambda,
    segment_labels_mu,
    writhe_poly,
)
from gausspoly.laurent import LaurentPoly, poly_shift_equivalent
from gausspoly.link_invariants import coloring, fg_raw, link_scalars, linking_poly
from gausspoly.longflat import flat_writhe_poly
from gausspoly.moves import r1_insert, r2_insert, switch_crossing

T = LaurentPoly({1: 1})
RECORDED: list = []


class Failed(Exception):
    pass


def check(cond, msg):
    if not cond:
        raise Failed(msg)


# -- shared samples (fixed seeds) -------------------------------------------


@functools.cache
def knots_1000():
    rng = random.Random("acceptance/knots")
    return [random_knot(rng, rng.randint(0, 12)) for _ in range(1000)]


@functools.cache
def flats_100():
    rng = random.Random("acceptance/flats")
    out = [random_flat(rng, 8) for _ in range(10)]
    out += [random_flat(rng, rng.randint(0, 8)) for _ in range(90)]
    return out


@functools.cache
def links_200():
    rng = random.Random("acceptance/links")
    return [random_link(rng, rng.randint(0, 8)) for _ in range(200)]


@functools.cache
def fuzz(kind, trials):
    return run_fuzz(kind, seed=2024, trials=trials, steps=20)


def index_oracles(K, c):
    """Index from the lambda and mu labelings."""
    lam, mu = segment_labels_lambda(K), segment_labels_mu(K)
    size = len(K.tokens)
    ch = K.chords[c]
    t_in, h_in = (ch.tail - 1) % size, (ch.head - 1) % size
    return lam[h_in] - lam[t_in] - ch.sign, mu[t_in] - mu[h_in] - ch.sign


def identity_holds(K):
    return writhe_poly(K) == (affine_index_poly(K) + scalar_invariants(K).Q) * T


# -- criteria -----------------------------------------------------------------


def c01_virtual_trefoil():
    check(writhe_poly(VT) == LaurentPoly({2: 1, 0: 1}), "writhe_poly(VT)")
    check(affine_index_poly(VT) == LaurentPoly({1: 1, 0: -2, -1: 1}), "affine_index_poly(VT)")
    s = scalar_invariants(VT)
    check((s.Q, s.J) == (2, 2), f"Q, J = {s.Q}, {s.J}")
    check(f_poly(VT, 0) == LaurentPoly({2: 1, 0: 1}), "f_0(VT)")
    check(all(k == 0 for k in f_polys(VT)), "f_k(VT) nonzero for some k >= 1")
    for c in VT.chords:
        check(index_oracles(VT, c) == (chord_index(VT, c),) * 2, f"index formulas on chord {c}")
    check(identity_holds(VT), "W = (P + Q) t on VT")
    return "W = t^2 + 1, P = t - 2 + t^-1, Q = J = 2"


def c02_classical_vanishing():
    for K in (T3, mirror(T3)):
        s = scalar_invariants(K)
        check(writhe_poly(K) == 0 and affine_index_poly(K) == 0, f"nonzero polynomial on {K}")
        check(s.Q == 0 and s.J == 0, f"Q, J = {s.Q}, {s.J} on {K}")
    return "trefoil and mirror: W = P = 0, Q = J = 0"


def c03_identity_on_random_knots():
    knots = knots_1000()
    bad = [K for K in knots if not identity_holds(K)]
    check(not bad, f"{len(bad)} counterexamples, first {bad[:1]}")
    return f"{len(knots)} knots, up to {max(K.n for K in knots)} chords"


def c04_index_formulas():
    chords = 0
    for K in knots_1000():
        lam, mu = segment_labels_lambda(K), segment_labels_mu(K)
        check(all(a + b == K.writhe for a, b in zip(lam, mu)), f"lambda + mu != wr on {K}")
        for c in K.chords:
            direct = chord_index(K, c)
            check(index_oracles(K, c) == (direct, direct), f"chord {c} of {K}")
            chords += 1
    return f"{chords} chords agree three ways"


def c05_move_invariance():
    knot, link = fuzz("knot", 1000), fuzz("link", 500)
    for rep in (knot, link):
        check(rep.ok, f"{rep.kind}: {len(rep.failures)} failures, first {json.dumps(rep.failures[:1])}")
    check("parity_axioms" in knot.invariants, "parity checks not run")
    moves = sum(knot.move_counts.values()) + sum(link.move_counts.values())
    r3 = knot.move_counts["R3Swap"] + link.move_counts["R3Swap"]
    return f"1000 knot + 500 link trials, {moves} moves ({r3} R3)"


def c06_symmetry_laws():
    knots = knots_1000()[:200]
    for K in knots:
        W, f0 = writhe_poly(K), f_poly(K, 0)
        check(writhe_poly(inverse(K)) == W.invert_variable().shift(2), f"inverse law on {K}")
        check(writhe_poly(mirror(K)) == -W.invert_variable().shift(2), f"mirror law on {K}")
        check(f_poly(inverse(K), 0) == f0.invert_variable().shift(2), f"f_0 inverse law on {K}")
        check(f_poly(mirror(K), 0) == -f0.invert_variable().shift(2), f"f_0 mirror law on {K}")
    rng = random.Random("acceptance/sums")
    sums = 0
    for _ in range(20):
        a, b = random_knot(rng, rng.randint(1, 5)), random_knot(rng, rng.randint(1, 5))
        for c1, c2 in itertools.product(range(len(a.tokens)), range(len(b.tokens))):
            s = connected_sum(a, c1, b, c2)
            check(writhe_poly(s) == writhe_poly(a) + writhe_poly(b), f"additivity {a} # {b} at {c1},{c2}")
            check(f_poly(s, 0) == f_poly(a, 0) + f_poly(b, 0), f"f_0 additivity at {c1},{c2}")
            sums += 1
    return f"200 knots, {sums} connected sums"


def c07_flat_resolutions():
    total = 0
    for d in flats_100():
        ids = list(d.chords)
        expected = flat_writhe_poly(d)
        for bits in itertools.product((False, True), repeat=len(ids)):
            r = resolve(d, dict(zip(ids, bits)))
            check(flat_writhe_poly(forget(r)) == expected, f"resolution {bits} of {d}")
            total += 1
    check(flat_writhe_poly(LF2) == LaurentPoly({1: 1, -1: 1}), "LF2")
    return f"{total} resolutions of 100 diagrams; LF2 gives t + t^-1"


def c08_descending_closure():
    for d in flats_100():
        W = flat_writhe_poly(d)
        check(W == writhe_poly(closure(descending(d))).shift(-1), f"closure relation on {d}")
        check(flat_writhe_poly(inverse(d)) == -W, f"inverse law on {d}")
    return "100 diagrams"


def c09_additivity_and_bound():
    rng = random.Random("acceptance/concat")
    for _ in range(50):
        a, b = random_flat(rng, rng.randint(0, 6)), random_flat(rng, rng.randint(0, 6))
        check(flat_writhe_poly(concat(a, b)) == flat_writhe_poly(a) + flat_writhe_poly(b),
              f"additivity on {a}, {b}")
    rep = fuzz("flatlong", 300)
    check(rep.ok, f"flat fuzz failures, first {json.dumps(rep.failures[:1])}")
    check("s_bound" in rep.invariants, "bound not checked")
    return "50 concatenations; bound held on 300 flat orbits"


def c10_colorability():
    zero = nonzero = 0
    for L in links_200():
        span = link_scalars(L).span
        col = coloring(L)
        check((col is not None) == (span == 0), f"coloring vs span on {L}")
        if col is not None:
            check(col[0].defect == 0 and col[1].defect == 0, f"coloring not closed on {L}")
        zero += span == 0
        nonzero += span != 0
    check(zero and nonzero, f"branches: span 0 x{zero}, span > 0 x{nonzero}")
    check(coloring(VHOPF) is None, "VHOPF colorable")
    return f"span 0: {zero}, span > 0: {nonzero}"


def _self_move(L, rng):
    """One random self-chord insertion or self-crossing switch."""
    comp = rng.randrange(2)
    size = len(L.components[comp])
    op = rng.randrange(3)
    if op == 0 or (op == 2 and not L.self_chords()):
        return r1_insert(L, (comp + 1, rng.randrange(size + 1)), rng.choice((1, -1)),
                         rng.choice(("tailFirst", "headFirst")))
    if op == 1:
        g1, g2 = rng.randrange(size + 1), rng.randrange(size + 1)
        return r2_insert(L, (comp + 1, g1), (comp + 1, g2), rng.choice((1, -1)),
                         rng.choice(("parallel", "crossed")), rng.random() < 0.5)
    return switch_crossing(L, rng.choice(sorted(L.self_chords())))


def c11_torus_links():
    rng = random.Random("acceptance/torus")
    for n in range(1, 6):
        L = torus_link(n)
        check(linking_poly(L) == n * n, f"n = {n}: {linking_poly(L)}")
        for step in range(100):
            L = _self_move(L, rng)
            check(linking_poly(L) == n * n, f"n = {n} after {step + 1} self moves: {L}")
    return "n = 1..5, 100 self moves each"


def c12_link_identities():
    for L in links_200():
        s = link_scalars(L)
        F, G = fg_raw(L)
        check(F.eval_at_one() + G.eval_at_one() == s.two_lk, f"F(1) + G(1) on {L}")
        check(abs(F.eval_at_one() - G.eval_at_one()) == s.span, f"|F(1) - G(1)| on {L}")
    rep = fuzz("link", 500)
    check(rep.ok and "s_bound" in rep.invariants, "bound failed on a link orbit")
    for L in links_200()[:100]:
        F, G = fg_raw(L)
        lp = linking_poly(L)
        Fi, Gi = fg_raw(inverse(L))
        check(poly_shift_equivalent(F.invert_variable(), Fi) is not None, f"F of reverse on {L}")
        check(poly_shift_equivalent(G.invert_variable(), Gi) is not None, f"G of reverse on {L}")
        check(linking_poly(inverse(L)) == lp.invert_variable(), f"linking_poly of reverse on {L}")
        Fm, Gm = fg_raw(mirror(L))
        check(poly_shift_equivalent(-G.invert_variable(), Fm) is not None, f"F of mirror on {L}")
        check(poly_shift_equivalent(-F.invert_variable(), Gm) is not None, f"G of mirror on {L}")
        check(linking_poly(mirror(L)) == lp.invert_variable(), f"linking_poly of mirror on {L}")
    return "200 links; bound on 500 orbits; symmetry on 100 links"


def c13_mix():
    s = link_scalars(MIX)
    check((s.two_lk, s.span) == (0, 2), f"2lk, span = {s.two_lk}, {s.span}")
    check(linking_poly(MIX) == LaurentPoly({0: -1}, 2), f"linking_poly = {linking_poly(MIX)}")
    return "lk = 0, span = 2, linking_poly = -1 mod t^2 - 1"


def c14_round_trip_and_reproducibility():
    pool = unique(list(NAMED.values()) + RECORDED)
    bad = [d for d in pool if not round_trips(d)]
    check(not bad, f"{len(bad)} diagrams fail to round-trip, first {bad[:1]}")
    for kind in ("knot", "link", "flatlong"):
        a = json.dumps(run_fuzz(kind, seed=77, trials=30).to_json())
        b = json.dumps(run_fuzz(kind, seed=77, trials=30).to_json())
        check(a == b, f"{kind} fuzz report differs between runs")
    return f"{len(pool)} distinct diagrams round-trip; reports byte-identical"


CRITERIA = [
    (1, "VT fixed values", c01_virtual_trefoil),
    (2, "classical vanishing", c02_classical_vanishing),
    (3, "W = (P + Q) t on random knots", c03_identity_on_random_knots),
    (4, "index formulas agree", c04_index_formulas),
    (5, "move invariance and parity axioms", c05_move_invariance),
    (6, "inverse, mirror, connected sum laws", c06_symmetry_laws),
    (7, "flat polynomial independent of resolution", c07_flat_resolutions),
    (8, "descending closure and flat inverse", c08_descending_closure),
    (9, "flat additivity and coefficient bound", c09_additivity_and_bound),
    (10, "colorability iff span 0", c10_colorability),
    (11, "torus link linking polynomial", c11_torus_links),
    (12, "link evaluation identities, bound, symmetry", c12_link_identities),
    (13, "MIX fixed values", c13_mix),
    (14, "round trips and reproducible reports", c14_round_trip_and_reproducibility),
]


def run_criterion(number, title, fn):
    with recording() as seen:
        try:
            detail = fn()
            ok = True
        except Failed as exc:
            detail, ok = str(exc), False
    RECORDED.extend(seen)
    print(f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title} ({detail})", flush=True)
    return ok, detail


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    with capsys.disabled():
        print()
        ok, detail = run_criterion(number, title, fn)
    assert ok, detail


if __name__ == "__main__":
    results = [run_criterion(*c)[0] for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
