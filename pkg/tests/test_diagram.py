import itertools
import random

import pytest

from catalog import E3, HOPF, K1R, LF2, MIX, NAMED, T3, VHOPF, VT, round_trips
from gausspoly.diagram import (
    Chord,
    FlatLongDiagram,
    KnotGaussDiagram,
    LinkGaussDiagram,
    LongGaussDiagram,
    canonical,
    closure,
    concat,
    connected_sum,
    descending,
    forget,
    inverse,
    linked,
    mirror,
    parse,
    rebase,
    relabel,
    resolve,
    serialize,
)
from gausspoly.errors import IndexOutOfRange, InvalidChoice, InvalidDiagram, KindMismatch, ParseError, UnknownChord
from gausspoly.generators import random_diagram


@pytest.mark.parametrize("name", sorted(NAMED))
def test_named_round_trip(name):
    assert round_trips(NAMED[name])


@pytest.mark.parametrize("kind", ["knot", "long", "flatlong", "link"])
def test_random_round_trip(kind):
    rng = random.Random(kind)
    for _ in range(100):
        assert round_trips(random_diagram(kind, rng, rng.randint(0, 9)))


def test_parse_shapes():
    assert isinstance(VT, KnotGaussDiagram) and VT.n == 2 and VT.writhe == 2
    assert isinstance(LF2, FlatLongDiagram)
    assert isinstance(parse("long: O1+ U1+"), LongGaussDiagram)
    assert isinstance(VHOPF, LinkGaussDiagram)
    assert VHOPF.chords[1].tail == (0, 0) and VHOPF.chords[1].is_bridge
    assert serialize(HOPF) == "link: O1+ U2+ / U1+ O2+"
    assert serialize(parse("knot:")) == "knot:"


@pytest.mark.parametrize("text, err", [
    ("knot: O1+ O1+", InvalidDiagram),
    ("knot: O1+ U1-", InvalidDiagram),
    ("knot: O1+", InvalidDiagram),
    ("knot: X1+ U1+", ParseError),
    ("knot O1+ U1+", ParseError),
    ("braid: O1+ U1+", ParseError),
    ("link: O1+ U1+", ParseError),
    ("knot: O1+ / U1+", ParseError),
    ("knot: O0+ U0+", ParseError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse(text)


def test_invalid_message():
    with pytest.raises(InvalidDiagram, match="id 1 has two O tokens"):
        parse("knot: O1+ O1+")


def test_canonical_forms():
    assert serialize(canonical(inverse(VT))) == "knot: O1+ O2+ U1+ U2+"
    assert serialize(canonical(mirror(VT))) == "knot: O1- O2- U1- U2-"
    assert serialize(relabel(parse("knot: O7+ O3+ U7+ U3+"))) == "knot: O1+ O2+ U1+ U2+"
    for k in range(len(E3.tokens)):
        assert canonical(rebase(E3, k)) == canonical(E3)


def test_inverse_and_mirror():
    assert serialize(inverse(VT)) == "knot: U2+ U1+ O2+ O1+"
    assert serialize(mirror(VT)) == "knot: U1- U2- O1- O2-"
    assert serialize(mirror(T3)) == "knot: U1- O2- U3- O1- U2- O3-"
    rng = random.Random(3)
    for kind in ("knot", "long", "flatlong", "link"):
        for _ in range(30):
            d = random_diagram(kind, rng, rng.randint(0, 7))
            assert inverse(inverse(d)) == d
            assert mirror(mirror(d)) == d


def test_inverse_flat_representatives():
    inv = inverse(LF2)
    assert inv.chords == {1: Chord(3, 1, 1), 2: Chord(2, 0, 1)}


def test_connected_sum():
    s = connected_sum(VT, 0, VT, 0)
    assert s.n == 4
    assert serialize(s) == "knot: O1+ O4+ U3+ U4+ O3+ O2+ U1+ U2+"
    kk = connected_sum(K1R, 1, K1R, 0)
    assert kk.n == 2
    with pytest.raises(IndexOutOfRange):
        connected_sum(VT, 9, VT, 0)


def test_concat_closure_forget():
    assert concat(LF2, LF2).n == 4
    assert closure(parse("long: O1+ O2+ U1+ U2+")) == VT
    assert closure(parse("long: O1+ U1+")) == K1R
    assert forget(parse("long: O1+ O2+ U1+ U2+")) == LF2
    assert closure(descending(LF2)) == VT
    with pytest.raises(KindMismatch):
        closure(VT)
    with pytest.raises(KindMismatch):
        concat(LF2, parse("long: O1+ U1+"))


def test_resolve_and_descending():
    assert serialize(descending(LF2)) == "long: O1+ O2+ U1+ U2+"
    d = descending(inverse(LF2))
    assert d.chords == {1: Chord(1, 3, -1), 2: Chord(0, 2, -1)}
    for a, b in itertools.product(["asRepresented", "flipped"], repeat=2):
        r = resolve(LF2, {1: a, 2: b})
        assert forget(r) == LF2
    assert serialize(resolve(LF2, {1: "flipped", 2: "asRepresented"})) == "long: U1- O2+ O1- U2+"
    with pytest.raises(InvalidChoice):
        resolve(LF2, {1: "flipped"})
    with pytest.raises(InvalidChoice):
        resolve(LF2, {1: "sideways", 2: "flipped"})


def test_flat_equality_ignores_representatives():
    a = parse("flatlong: O1+ O2+ U1+ U2+")
    b = parse("flatlong: U1- O2+ O1- U2+")
    assert a == b and hash(a) == hash(b)
    assert parse("long: O1+ O2+ U1+ U2+") != parse("long: U1- O2+ O1- U2+")


def test_linked_and_chords():
    assert linked(VT, 1, 2)
    assert not linked(parse("knot: O1+ U1+ O2+ U2+"), 1, 2)
    with pytest.raises(ValueError):
        linked(VT, 1, 1)
    with pytest.raises(UnknownChord):
        VT.chord(5)
    assert set(MIX.bridges()) == {1, 2} and not MIX.self_chords()
