"""
Gauss diagrams of virtual knots, long knots, long flat knots and
two-component links.

A diagram is an immutable sequence of endpoint tokens.  Each chord appears
twice: once as its tail ``O`` (the over-passing preimage) and once as its
head ``U`` (the under-passing preimage); both tokens carry the crossing sign.
Virtual crossings leave no trace, so the token sequence *is* the diagram.

Text form, one code per diagram::

    knot: O1+ O2+ U1+ U2+
    long: O1+ U1+
    flatlong: O1+ O2+ U1+ U2+
    link: O1+ U2+ / U1+ O2+

Position conventions used throughout the package:

* positions are 0-based indices into a token sequence;
* "segment i" of a closed circle is the arc immediately after position i;
* a *gap* ``g`` is an insertion point before position ``g`` (``0 <= g <= len``).
"""
from __future__ import annotations

import dataclasses
import re
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .errors import IndexOutOfRange, InvalidChoice, InvalidDiagram, KindMismatch, ParseError, UnknownChord

__all__ = [
    "Token",
    "Chord",
    "LinkChord",
    "KnotGaussDiagram",
    "LongGaussDiagram",
    "FlatLongDiagram",
    "LinkGaussDiagram",
    "Diagram",
    "parse",
    "serialize",
    "canonical",
    "to_json",
    "inverse",
    "mirror",
    "rebase",
    "connected_sum",
    "concat",
    "closure",
    "forget",
    "descending",
    "resolve",
    "linked",
    "relabel",
]


class Token(NamedTuple):
    chord: int
    over: bool  # True for a tail (O), False for a head (U)
    sign: int

    def __str__(self) -> str:
        return f"{'O' if self.over else 'U'}{self.chord}{'+' if self.sign > 0 else '-'}"

    def flipped(self) -> Token:
        return Token(self.chord, not self.over, -self.sign)


class Chord(NamedTuple):
    tail: int
    head: int
    sign: int


class LinkChord(NamedTuple):
    tail: tuple[int, int]  # (component index 0/1, position)
    head: tuple[int, int]
    sign: int

    @property
    def is_bridge(self) -> bool:
        return self.tail[0] != self.head[0]


def _check_tokens(tokens: Iterable[Token]) -> None:
    seen: dict[int, list[Token]] = {}
    for tok in tokens:
        if not isinstance(tok.chord, int) or tok.chord < 1:
            raise InvalidDiagram(f"chord id must be a positive integer, got {tok.chord!r}")
        if tok.sign not in (1, -1):
            raise InvalidDiagram(f"id {tok.chord} has invalid sign {tok.sign!r}")
        seen.setdefault(tok.chord, []).append(tok)
    for cid, toks in seen.items():
        if len(toks) != 2:
            raise InvalidDiagram(f"id {cid} occurs {len(toks)} times (expected 2)")
        a, b = toks
        if a.over == b.over:
            raise InvalidDiagram(f"id {cid} has two {'O' if a.over else 'U'} tokens")
        if a.sign != b.sign:
            raise InvalidDiagram(f"id {cid} has mismatched signs")


def _as_tokens(seq: Iterable) -> tuple[Token, ...]:
    return tuple(t if isinstance(t, Token) else Token(*t) for t in seq)


@dataclasses.dataclass(frozen=True)
class _SingleCode:
    """Shared machinery for diagrams drawn on a single circle or line."""

    tokens: tuple[Token, ...]
    kind = "?"
    cyclic = False

    def __post_init__(self):
        object.__setattr__(self, "tokens", _as_tokens(self.tokens))
        _check_tokens(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def n(self) -> int:
        """Number of chords."""
        return len(self.tokens) // 2

    @cached_property
    def chords(self) -> dict[int, Chord]:
        tails, heads, signs = {}, {}, {}
        for pos, tok in enumerate(self.tokens):
            (tails if tok.over else heads)[tok.chord] = pos
            signs[tok.chord] = tok.sign
        return {c: Chord(tails[c], heads[c], signs[c]) for c in sorted(signs)}

    def chord(self, c: int) -> Chord:
        try:
            return self.chords[c]
        except KeyError:
            raise UnknownChord(f"no chord with id {c}") from None

    @property
    def writhe(self) -> int:
        return sum(ch.sign for ch in self.chords.values())

    def max_id(self) -> int:
        return max(self.chords, default=0)

    def __str__(self) -> str:
        return serialize(self)


@dataclasses.dataclass(frozen=True)
class KnotGaussDiagram(_SingleCode):
    """Signed directed chords on an oriented circle read from a base point."""

    kind = "knot"
    cyclic = True


@dataclasses.dataclass(frozen=True)
class LongGaussDiagram(_SingleCode):
    """Signed directed chords on an oriented line, left to right."""

    kind = "long"


@dataclasses.dataclass(frozen=True, eq=False)
class FlatLongDiagram(_SingleCode):
    """A long flat virtual knot, stored as one of its overlying long diagrams.

    Every chord is a flip class: the representative ``(tail, head, sign)``
    and ``(head, tail, -sign)`` describe the same flat crossing.  Equality
    and hashing ignore the choice of representatives.
    """

    kind = "flatlong"

    def _class_key(self) -> tuple[Token, ...]:
        out = []
        for tok in self.tokens:
            ch = self.chords[tok.chord]
            out.append(tok if ch.tail < ch.head else tok.flipped())
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FlatLongDiagram):
            return NotImplemented
        return self._class_key() == other._class_key()

    def __hash__(self) -> int:
        return hash(("flatlong", self._class_key()))

    def representatives(self) -> dict[int, Chord]:
        return self.chords


@dataclasses.dataclass(frozen=True)
class LinkGaussDiagram:
    """Two oriented circles carrying self-chords and bridges.

    Component indices are 0 and 1 internally; the public API and the text
    form speak of components 1 and 2.
    """

    components: tuple[tuple[Token, ...], tuple[Token, ...]]
    kind = "link"
    cyclic = True

    def __post_init__(self):
        comps = tuple(_as_tokens(c) for c in self.components)
        if len(comps) != 2:
            raise InvalidDiagram(f"a link diagram needs exactly 2 components, got {len(comps)}")
        object.__setattr__(self, "components", comps)
        _check_tokens(comps[0] + comps[1])

    @property
    def n(self) -> int:
        return (len(self.components[0]) + len(self.components[1])) // 2

    @cached_property
    def chords(self) -> dict[int, LinkChord]:
        tails, heads, signs = {}, {}, {}
        for ci, comp in enumerate(self.components):
            for pos, tok in enumerate(comp):
                (tails if tok.over else heads)[tok.chord] = (ci, pos)
                signs[tok.chord] = tok.sign
        return {c: LinkChord(tails[c], heads[c], signs[c]) for c in sorted(signs)}

    def chord(self, c: int) -> LinkChord:
        try:
            return self.chords[c]
        except KeyError:
            raise UnknownChord(f"no chord with id {c}") from None

    def bridges(self) -> dict[int, LinkChord]:
        return {c: ch for c, ch in self.chords.items() if ch.is_bridge}

    def self_chords(self) -> dict[int, LinkChord]:
        return {c: ch for c, ch in self.chords.items() if not ch.is_bridge}

    def max_id(self) -> int:
        return max(self.chords, default=0)

    def __str__(self) -> str:
        return serialize(self)


Diagram = Union[KnotGaussDiagram, LongGaussDiagram, FlatLongDiagram, LinkGaussDiagram]

_KINDS = {
    "knot": KnotGaussDiagram,
    "long": LongGaussDiagram,
    "flatlong": FlatLongDiagram,
}
_TOKEN_RE = re.compile(r"([OU])(\d+)([+-])")


def _parse_tokens(text: str) -> list[Token]:
    out = []
    for word in text.split():
        m = _TOKEN_RE.fullmatch(word)
        if not m:
            raise ParseError(f"bad token {word!r}")
        role, cid, sign = m.groups()
        if int(cid) < 1:
            raise ParseError(f"chord id must be >= 1 in {word!r}")
        out.append(Token(int(cid), role == "O", 1 if sign == "+" else -1))
    return out


def parse(text: str) -> Diagram:
    """Parse a Gauss code such as ``"knot: O1+ O2+ U1+ U2+"``."""
    if ":" not in text:
        raise ParseError(f"missing ':' after the diagram kind in {text!r}")
    kind, body = text.split(":", 1)
    kind = kind.strip()
    if kind == "link":
        parts = body.split("/")
        if len(parts) != 2:
            raise ParseError("a link code needs exactly one '/' between its components")
        return LinkGaussDiagram(tuple(_parse_tokens(p) for p in parts))
    if kind not in _KINDS:
        raise ParseError(f"unknown diagram kind {kind!r}")
    if "/" in body:
        raise ParseError("'/' is only allowed in link codes")
    return _KINDS[kind](tuple(_parse_tokens(body)))


def serialize(d: Diagram) -> str:
    if isinstance(d, LinkGaussDiagram):
        words = [str(t) for t in d.components[0]] + ["/"] + [str(t) for t in d.components[1]]
    else:
        words = [str(t) for t in d.tokens]
    return f"{d.kind}:" + "".join(" " + w for w in words)


def to_json(d: Diagram) -> dict:
    """Plain-data dump of a diagram (endpoints, signs, flat representatives)."""
    def ends(seq):
        return [[t.chord, "O" if t.over else "U"] for t in seq]

    signs = {str(c): ch.sign for c, ch in d.chords.items()}
    if isinstance(d, LinkGaussDiagram):
        return {"kind": "link", "components": [ends(c) for c in d.components], "signs": signs}
    out = {"kind": d.kind, "endpoints": ends(d.tokens), "signs": signs}
    if isinstance(d, FlatLongDiagram):
        out["chords"] = [[c, ch.tail, ch.head, ch.sign] for c, ch in d.chords.items()]
    return out


# -- relabeling and canonical forms ---------------------------------------


def _relabel_map(seqs: Iterable[Sequence[Token]]) -> dict[int, int]:
    mapping: dict[int, int] = {}
    for seq in seqs:
        for tok in seq:
            if tok.chord not in mapping:
                mapping[tok.chord] = len(mapping) + 1
    return mapping


def _apply_map(seq: Sequence[Token], mapping: Mapping[int, int]) -> tuple[Token, ...]:
    return tuple(Token(mapping[t.chord], t.over, t.sign) for t in seq)


def relabel(d: Diagram) -> Diagram:
    """Renumber chords 1, 2, ... in order of first appearance."""
    if isinstance(d, LinkGaussDiagram):
        m = _relabel_map(d.components)
        return LinkGaussDiagram(tuple(_apply_map(c, m) for c in d.components))
    return type(d)(_apply_map(d.tokens, _relabel_map([d.tokens])))


def _token_key(seq: Sequence[Token]) -> tuple:
    return tuple((0 if t.over else 1, t.chord, 0 if t.sign > 0 else 1) for t in seq)


def _rotations(seq: tuple[Token, ...]) -> list[tuple[Token, ...]]:
    if not seq:
        return [seq]
    return [seq[k:] + seq[:k] for k in range(len(seq))]


def canonical(d: Diagram) -> Diagram:
    """Canonical representative used for comparison and CLI output.

    Knots and link components are rotated to the base point giving the
    lexicographically least relabeled code; long diagrams are only
    relabeled; flat diagrams additionally take the tail-first representative
    of every chord.
    """
    if isinstance(d, KnotGaussDiagram):
        best = min((_apply_map(r, _relabel_map([r])) for r in _rotations(d.tokens)), key=_token_key)
        return KnotGaussDiagram(best)
    if isinstance(d, LinkGaussDiagram):
        best = None
        for r1 in _rotations(d.components[0]):
            for r2 in _rotations(d.components[1]):
                m = _relabel_map([r1, r2])
                cand = (_apply_map(r1, m), _apply_map(r2, m))
                key = (_token_key(cand[0]), _token_key(cand[1]))
                if best is None or key < best[0]:
                    best = (key, cand)
        return LinkGaussDiagram(best[1])
    if isinstance(d, FlatLongDiagram):
        return relabel(FlatLongDiagram(d._class_key()))
    return relabel(d)


# -- structural transforms ------------------------------------------------


def inverse(d: Diagram) -> Diagram:
    """Reverse the orientation of every strand (roles and signs kept)."""
    if isinstance(d, LinkGaussDiagram):
        return LinkGaussDiagram(tuple(tuple(reversed(c)) for c in d.components))
    return type(d)(tuple(reversed(d.tokens)))


def mirror(d: Diagram) -> Diagram:
    """Switch every classical crossing: swap tail/head and negate the sign."""
    if isinstance(d, LinkGaussDiagram):
        return LinkGaussDiagram(tuple(tuple(t.flipped() for t in c) for c in d.components))
    return type(d)(tuple(t.flipped() for t in d.tokens))


def rebase(d: Diagram, k: int, comp: int = 1) -> Diagram:
    """Move the base point so that old position ``k`` becomes position 0.

    Only meaningful on closed strands: knots, or component ``comp`` of a link.
    """
    if isinstance(d, LinkGaussDiagram):
        comps = list(d.components)
        seq = comps[comp - 1]
        if seq:
            k %= len(seq)
            comps[comp - 1] = seq[k:] + seq[:k]
        return LinkGaussDiagram(tuple(comps))
    if not isinstance(d, KnotGaussDiagram):
        raise KindMismatch(f"cannot rebase a {d.kind} diagram")
    if not d.tokens:
        return d
    k %= len(d.tokens)
    return KnotGaussDiagram(d.tokens[k:] + d.tokens[:k])


def _offset_ids(seq: Sequence[Token], offset: int) -> tuple[Token, ...]:
    return tuple(Token(t.chord + offset, t.over, t.sign) for t in seq)


def _segment_count(seq: Sequence) -> int:
    return max(len(seq), 1)


def connected_sum(k1: KnotGaussDiagram, cut1: int, k2: KnotGaussDiagram, cut2: int) -> KnotGaussDiagram:
    """Open ``k2`` at its segment ``cut2`` and splice it into segment ``cut1`` of ``k1``.

    Chords of ``k2`` are renumbered above the ids of ``k1``.
    """
    for k, cut in ((k1, cut1), (k2, cut2)):
        if not 0 <= cut < _segment_count(k.tokens):
            raise IndexOutOfRange(f"segment {cut} out of range for {serialize(k)!r}")
    opened = rebase(k2, cut2 + 1).tokens if k2.tokens else ()
    opened = _offset_ids(opened, k1.max_id())
    at = min(cut1 + 1, len(k1.tokens))
    return KnotGaussDiagram(k1.tokens[:at] + opened + k1.tokens[at:])


def concat(d1, d2):
    """Glue the right end of ``d1`` to the left end of ``d2`` (long or flat)."""
    if type(d1) is not type(d2) or not isinstance(d1, (LongGaussDiagram, FlatLongDiagram)):
        raise KindMismatch("concat needs two long or two flat long diagrams")
    return type(d1)(d1.tokens + _offset_ids(d2.tokens, d1.max_id()))


def closure(d: LongGaussDiagram) -> KnotGaussDiagram:
    if not isinstance(d, LongGaussDiagram):
        raise KindMismatch(f"closure needs a long diagram, got {d.kind}")
    return KnotGaussDiagram(d.tokens)


def forget(d: LongGaussDiagram) -> FlatLongDiagram:
    if not isinstance(d, LongGaussDiagram):
        raise KindMismatch(f"forget needs a long diagram, got {d.kind}")
    return FlatLongDiagram(d.tokens)


def _flip_some(tokens: Sequence[Token], which: set[int]) -> tuple[Token, ...]:
    return tuple(t.flipped() if t.chord in which else t for t in tokens)


def descending(d: FlatLongDiagram) -> LongGaussDiagram:
    """Resolve every flat crossing so that it is passed over first."""
    if not isinstance(d, FlatLongDiagram):
        raise KindMismatch(f"descending needs a flat long diagram, got {d.kind}")
    backwards = {c for c, ch in d.chords.items() if ch.tail > ch.head}
    return LongGaussDiagram(_flip_some(d.tokens, backwards))


_FLIPPED = {"flipped": True, "asRepresented": False, True: True, False: False}


def resolve(d: FlatLongDiagram, choice: Mapping[int, object]) -> LongGaussDiagram:
    """Instantiate each flat chord as its stored representative or its flip.

    ``choice`` maps every chord id to ``"asRepresented"``/``"flipped"``
    (booleans are accepted, ``True`` meaning flipped).
    """
    if not isinstance(d, FlatLongDiagram):
        raise KindMismatch(f"resolve needs a flat long diagram, got {d.kind}")
    ids = set(d.chords)
    if set(choice) != ids:
        missing, extra = ids - set(choice), set(choice) - ids
        raise InvalidChoice(f"choice must cover exactly the chords; missing {sorted(missing)}, "
                            f"unknown {sorted(extra)}")
    which = set()
    for c, v in choice.items():
        try:
            if _FLIPPED[v]:
                which.add(c)
        except (KeyError, TypeError):
            raise InvalidChoice(f"bad choice {v!r} for chord {c}") from None
    return LongGaussDiagram(_flip_some(d.tokens, which))


def linked(d: Diagram, c1: int, c2: int) -> bool:
    """True iff exactly one endpoint of ``c2`` lies strictly between the endpoints of ``c1``."""
    if c1 == c2:
        raise ValueError("linked() needs two distinct chords")
    a, b = d.chord(c1), d.chord(c2)
    if isinstance(d, LinkGaussDiagram):
        comps = {a.tail[0], a.head[0], b.tail[0], b.head[0]}
        if len(comps) != 1:
            raise ValueError("linked() on a link only compares self-chords of one component")
        a = Chord(a.tail[1], a.head[1], a.sign)
        b = Chord(b.tail[1], b.head[1], b.sign)
    lo, hi = sorted((a.tail, a.head))
    inside = (lo < b.tail < hi) + (lo < b.head < hi)
    return inside == 1
