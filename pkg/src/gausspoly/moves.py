"""
Reidemeister moves on Gauss diagrams and a seeded random walk over them.

Virtual moves act trivially on Gauss diagrams, so a move here is one of

* ``R1Insert``/``R1Delete``: a chord whose two endpoints are adjacent;
* ``R2Insert``/``R2Delete``: two chords of opposite sign with adjacent tails
  and adjacent heads (``parallel`` keeps the head order, ``crossed``
  reverses it);
* ``R3Swap``: three chords whose six endpoints form three adjacent blocks,
  transposed inside every block;
* ``SwitchCrossing``: swap tail/head of one chord and negate its sign (not an
  isotopy; used for flat diagrams and for self-chords of links);
* ``Rebase``: move the base point of a closed strand.

Places are *gaps*: gap ``g`` of a strand is the spot just before position
``g`` (``0 <= g <= len``).  On a link a gap is a pair ``(component, g)``.

R3 recognition.  In a triangle the top strand carries two tails, the bottom
strand two heads and the middle strand one of each; call the chords TM, TB
and MB.  Let ``eT = +1`` when TM comes before TB along the top strand,
``eM = +1`` when TM comes before MB along the middle strand and ``eB = +1``
when TB comes before MB along the bottom strand.  Three straight strands
realize exactly the sign patterns with::

    w(TM) w(TB) = eM eB        w(TM) w(MB) = eT eB

and :func:`r3_apply` only accepts triangles satisfying both.  Without this
sign condition a block swap can change chord indices, so it would not be a
Reidemeister move.
"""
from __future__ import annotations

import dataclasses
import itertools
import random
from typing import Any, Iterator, Sequence

from .diagram import (
    Diagram,
    FlatLongDiagram,
    LinkGaussDiagram,
    Token,
    rebase,
)
from .errors import (
    IndexOutOfRange,
    NotIsolated,
    PatternNotApplicable,
    PatternNotFound,
)

__all__ = [
    "MoveAction",
    "r1_insert",
    "r1_delete",
    "r2_insert",
    "r2_delete",
    "r3_apply",
    "r3_candidates",
    "switch_crossing",
    "rebase_move",
    "apply",
    "replay",
    "random_walk",
    "iter_walk",
    "walk_states",
    "DEFAULT_MAX_CHORDS",
]

DEFAULT_MAX_CHORDS = 24

Addr = tuple[int, int]  # (strand index, position)


@dataclasses.dataclass(frozen=True)
class MoveAction:
    kind: str
    params: dict[str, Any] = dataclasses.field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, **self.params}

    @classmethod
    def from_json(cls, obj: dict) -> MoveAction:
        obj = dict(obj)
        kind = obj.pop("kind")
        return cls(kind, obj)

    def __hash__(self):
        return hash((self.kind, repr(sorted(self.params.items()))))


# -- strand helpers ---------------------------------------------------------


def _strands(d: Diagram) -> list[tuple[Token, ...]]:
    if isinstance(d, LinkGaussDiagram):
        return list(d.components)
    return [d.tokens]


def _rebuild(d: Diagram, strands: Sequence[Sequence[Token]]) -> Diagram:
    if isinstance(d, LinkGaussDiagram):
        return LinkGaussDiagram(tuple(tuple(s) for s in strands))
    return type(d)(tuple(strands[0]))


def _gap(d: Diagram, seg) -> tuple[int, int]:
    """Normalize a gap argument to ``(strand index, g)``."""
    strands = _strands(d)
    if isinstance(d, LinkGaussDiagram):
        try:
            comp, g = seg
        except (TypeError, ValueError):
            raise IndexOutOfRange(f"a link gap is a (component, gap) pair, got {seg!r}") from None
        if comp not in (1, 2):
            raise IndexOutOfRange(f"component must be 1 or 2, got {comp}")
        s = comp - 1
    else:
        s, g = 0, seg
    if not isinstance(g, int) or not 0 <= g <= len(strands[s]):
        raise IndexOutOfRange(f"gap {g} out of range 0..{len(strands[s])}")
    return s, g


def _gap_json(d: Diagram, s: int, g: int):
    return [s + 1, g] if isinstance(d, LinkGaussDiagram) else g


def _next(d: Diagram, strands, addr: Addr) -> Addr | None:
    s, p = addr
    if p + 1 < len(strands[s]):
        return s, p + 1
    if d.cyclic and len(strands[s]) > 1:
        return s, 0
    return None


def _addresses(d: Diagram, c: int) -> tuple[Addr, Addr, int]:
    """(tail address, head address, sign) of chord ``c``."""
    ch = d.chord(c)
    if isinstance(d, LinkGaussDiagram):
        return ch.tail, ch.head, ch.sign
    return (0, ch.tail), (0, ch.head), ch.sign


def _adjacent(d, strands, a: Addr, b: Addr) -> bool:
    return _next(d, strands, a) == b or _next(d, strands, b) == a


def _insert_blocks(seq: Sequence[Token], blocks: dict[int, list[Token]]) -> list[Token]:
    out: list[Token] = []
    for i in range(len(seq) + 1):
        out.extend(blocks.get(i, ()))
        if i < len(seq):
            out.append(seq[i])
    return out


def _remove_chords(d: Diagram, ids: set[int]) -> Diagram:
    return _rebuild(d, [[t for t in s if t.chord not in ids] for s in _strands(d)])


# -- Reidemeister I ---------------------------------------------------------


def r1_insert(d: Diagram, seg, sign: int, order: str = "tailFirst") -> Diagram:
    """Add a kink: a new chord whose endpoints sit next to each other at ``seg``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if order not in ("tailFirst", "headFirst"):
        raise ValueError("order must be 'tailFirst' or 'headFirst'")
    s, g = _gap(d, seg)
    c = d.max_id() + 1
    pair = [Token(c, True, sign), Token(c, False, sign)]
    if order == "headFirst":
        pair.reverse()
    strands = _strands(d)
    strands[s] = _insert_blocks(strands[s], {g: pair})
    return _rebuild(d, strands)


def r1_delete(d: Diagram, c: int) -> Diagram:
    tail, head, _ = _addresses(d, c)
    if not _adjacent(d, _strands(d), tail, head):
        raise NotIsolated(f"chord {c} does not have adjacent endpoints")
    return _remove_chords(d, {c})


def r1_candidates(d: Diagram) -> list[int]:
    strands = _strands(d)
    out = []
    for c in d.chords:
        tail, head, _ = _addresses(d, c)
        if _adjacent(d, strands, tail, head):
            out.append(c)
    return out


# -- Reidemeister II --------------------------------------------------------


def r2_insert(d: Diagram, seg1, seg2, sign: int, pattern: str = "parallel",
              heads_first: bool = False) -> Diagram:
    """Add chords ``c1`` (sign ``sign``) and ``c2`` (sign ``-sign``).

    Tails go to ``seg1`` in the order c1, c2; heads go to ``seg2`` in the
    order c1, c2 (``parallel``) or c2, c1 (``crossed``).  When both gaps are
    the same place the tail block comes first unless ``heads_first``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if pattern not in ("parallel", "crossed"):
        raise ValueError("pattern must be 'parallel' or 'crossed'")
    s1, g1 = _gap(d, seg1)
    s2, g2 = _gap(d, seg2)
    c1 = d.max_id() + 1
    c2 = c1 + 1
    tails = [Token(c1, True, sign), Token(c2, True, -sign)]
    heads = [Token(c1, False, sign), Token(c2, False, -sign)]
    if pattern == "crossed":
        heads.reverse()
    strands = _strands(d)
    if (s1, g1) == (s2, g2):
        block = heads + tails if heads_first else tails + heads
        strands[s1] = _insert_blocks(strands[s1], {g1: block})
    elif s1 == s2:
        strands[s1] = _insert_blocks(strands[s1], {g1: tails, g2: heads})
    else:
        strands[s1] = _insert_blocks(strands[s1], {g1: tails})
        strands[s2] = _insert_blocks(strands[s2], {g2: heads})
    return _rebuild(d, strands)


def _is_r2_pair(d: Diagram, strands, a: int, b: int) -> bool:
    ta, ha, wa = _addresses(d, a)
    tb, hb, wb = _addresses(d, b)
    return wa == -wb and _adjacent(d, strands, ta, tb) and _adjacent(d, strands, ha, hb)


def r2_delete(d: Diagram, c1: int, c2: int) -> Diagram:
    if c1 == c2:
        raise PatternNotFound("R2 needs two distinct chords")
    if not _is_r2_pair(d, _strands(d), c1, c2):
        raise PatternNotFound(f"chords {c1}, {c2} do not form a removable bigon")
    return _remove_chords(d, {c1, c2})


def r2_candidates(d: Diagram) -> list[tuple[int, int]]:
    strands = _strands(d)
    out = []
    tails = {}
    for c in d.chords:
        tails[c] = _addresses(d, c)[0]
    at_tail = {addr: c for c, addr in tails.items()}
    for c, addr in tails.items():
        nxt = _next(d, strands, addr)
        other = at_tail.get(nxt)
        if other is not None and other != c and _is_r2_pair(d, strands, c, other):
            out.append((c, other))
    return out


# -- Reidemeister III -------------------------------------------------------


def _block_matchings(d: Diagram, strands, ends: dict[Addr, int]) -> Iterator[list[tuple[Addr, Addr]]]:
    pairs = []
    for a in sorted(ends):
        b = _next(d, strands, a)
        if b in ends and ends[b] != ends[a]:
            pairs.append((a, b))
    for combo in itertools.combinations(pairs, 3):
        used = {x for p in combo for x in p}
        if len(used) == 6:
            yield list(combo)


def _triangle_ok(d: Diagram, strands, blocks: list[tuple[Addr, Addr]]) -> bool:
    """Hierarchy and sign test for three blocks (see module docstring)."""
    def tok(addr):
        return strands[addr[0]][addr[1]]

    by_tails = {}
    for blk in blocks:
        chords = {tok(x).chord for x in blk}
        if len(chords) != 2:
            return False
        by_tails.setdefault(sum(tok(x).over for x in blk), []).append(blk)
    if sorted(by_tails) != [0, 1, 2] or any(len(v) != 1 for v in by_tails.values()):
        return False
    top, mid, bot = by_tails[2][0], by_tails[1][0], by_tails[0][0]
    top_ids = {tok(x).chord for x in top}
    mid_ids = {tok(x).chord for x in mid}
    bot_ids = {tok(x).chord for x in bot}
    tm, tb, mb = top_ids & mid_ids, top_ids & bot_ids, mid_ids & bot_ids
    if not (len(tm) == len(tb) == len(mb) == 1):
        return False
    tm, tb, mb = tm.pop(), tb.pop(), mb.pop()
    e_top = 1 if tok(top[0]).chord == tm else -1
    e_mid = 1 if tok(mid[0]).chord == tm else -1
    e_bot = 1 if tok(bot[0]).chord == tb else -1
    w = {c: tok(x).sign for blk in blocks for x in blk for c in [tok(x).chord]}
    return w[tm] * w[tb] == e_mid * e_bot and w[tm] * w[mb] == e_top * e_bot


def _find_triangle(d: Diagram, triple: Sequence[int]):
    ids = set(triple)
    if len(ids) != 3:
        raise PatternNotApplicable("R3 needs three distinct chords")
    strands = _strands(d)
    ends: dict[Addr, int] = {}
    for c in ids:
        tail, head, _ = _addresses(d, c)
        ends[tail] = c
        ends[head] = c
    for blocks in _block_matchings(d, strands, ends):
        if _triangle_ok(d, strands, blocks):
            return blocks
    return None


def _swap_blocks(d: Diagram, blocks) -> Diagram:
    strands = [list(s) for s in _strands(d)]
    for (s1, p1), (s2, p2) in blocks:
        strands[s1][p1], strands[s2][p2] = strands[s2][p2], strands[s1][p1]
    return _rebuild(d, strands)


def r3_apply(d: Diagram, triple: Sequence[int], blocks=None) -> Diagram:
    """Perform the triangle move on ``triple``.

    ``blocks`` optionally pins the three blocks by their first addresses
    (``(strand index, position)``); otherwise the first valid block
    structure found is used.
    """
    for c in triple:
        d.chord(c)
    strands = _strands(d)
    if blocks is None:
        found = _find_triangle(d, triple)
        if found is None:
            raise PatternNotApplicable(f"chords {tuple(triple)} do not form an R3 triangle")
    else:
        found = []
        for start in blocks:
            start = tuple(start)
            nxt = _next(d, strands, start)
            if nxt is None:
                raise PatternNotApplicable(f"no block starts at {start}")
            found.append((start, nxt))
        chords = {strands[s][p].chord for blk in found for s, p in blk}
        if chords != set(triple) or len({x for b in found for x in b}) != 6 \
                or not _triangle_ok(d, strands, found):
            raise PatternNotApplicable(f"blocks {blocks} are not an R3 triangle on {tuple(triple)}")
    return _swap_blocks(d, found)


def r3_candidates(d: Diagram) -> list[tuple[tuple[int, int, int], tuple[Addr, Addr, Addr]]]:
    """Every applicable triangle as ``(chord triple, block starts)``."""
    strands = _strands(d)
    blocks_by_pair: dict[frozenset, list[tuple[Addr, Addr]]] = {}
    for s, seq in enumerate(strands):
        for p in range(len(seq)):
            q = _next(d, strands, (s, p))
            if q is None:
                continue
            a, b = seq[p].chord, strands[q[0]][q[1]].chord
            if a != b:
                blocks_by_pair.setdefault(frozenset((a, b)), []).append(((s, p), q))
    found = {}
    for pair, blks in blocks_by_pair.items():
        x, y = sorted(pair)
        for z in d.chords:
            if z in pair:
                continue
            for b1 in blks:
                for b2 in blocks_by_pair.get(frozenset((x, z)), ()):
                    for b3 in blocks_by_pair.get(frozenset((y, z)), ()):
                        combo = [b1, b2, b3]
                        if len({a for blk in combo for a in blk}) != 6:
                            continue
                        if _triangle_ok(d, strands, combo):
                            key = tuple(sorted(blk[0] for blk in combo))
                            found[key] = tuple(sorted((x, y, z)))
    return [(triple, key) for key, triple in sorted(found.items())]


# -- other actions ----------------------------------------------------------


def switch_crossing(d: Diagram, c: int) -> Diagram:
    d.chord(c)
    return _rebuild(d, [[t.flipped() if t.chord == c else t for t in s] for s in _strands(d)])


def rebase_move(d: Diagram, k: int, comp: int = 1) -> Diagram:
    return rebase(d, k, comp)


def apply(d: Diagram, action: MoveAction) -> Diagram:
    p = action.params
    kind = action.kind
    if kind == "R1Insert":
        return r1_insert(d, _seg_arg(p["seg"]), p["sign"], p["order"])
    if kind == "R1Delete":
        return r1_delete(d, p["chord"])
    if kind == "R2Insert":
        return r2_insert(d, _seg_arg(p["seg1"]), _seg_arg(p["seg2"]), p["sign"], p["pattern"],
                         p.get("heads_first", False))
    if kind == "R2Delete":
        return r2_delete(d, *p["chords"])
    if kind == "R3Swap":
        return r3_apply(d, p["chords"], p.get("blocks"))
    if kind == "SwitchCrossing":
        return switch_crossing(d, p["chord"])
    if kind == "Rebase":
        return rebase_move(d, p["k"], p.get("comp", 1))
    raise ValueError(f"unknown move kind {kind!r}")


def _seg_arg(seg):
    return tuple(seg) if isinstance(seg, list) else seg


def replay(d: Diagram, trace: Sequence[MoveAction]) -> Diagram:
    for action in trace:
        d = apply(d, action)
    return d


def walk_states(d: Diagram, trace: Sequence[MoveAction]) -> list[Diagram]:
    """``[d, d1, ..., dn]``: the diagram after every prefix of ``trace``."""
    states = [d]
    for action in trace:
        states.append(apply(states[-1], action))
    return states


# -- random walk ------------------------------------------------------------


def _default_switches(d: Diagram) -> bool:
    return isinstance(d, (FlatLongDiagram, LinkGaussDiagram))


def _switchable(d: Diagram) -> list[int]:
    if isinstance(d, LinkGaussDiagram):
        return list(d.self_chords())
    return list(d.chords)


def _random_gap(d: Diagram, rng: random.Random) -> tuple[int, int]:
    strands = _strands(d)
    s = rng.randrange(len(strands))
    return s, rng.randrange(len(strands[s]) + 1)


def _propose(d: Diagram, rng: random.Random, max_chords: int, switches: bool) -> MoveAction:
    n = d.n
    fill = n / max_chords if max_chords else 1.0
    r1s, r2s, r3s = r1_candidates(d), r2_candidates(d), r3_candidates(d)
    options: list[tuple[str, float]] = []
    if n + 1 <= max_chords:
        options.append(("R1Insert", 2.0 * (1 - fill) + 0.2))
    if n + 2 <= max_chords:
        options.append(("R2Insert", 3.0 * (1 - fill) + 0.2))
    if r1s:
        options.append(("R1Delete", 0.3 + 3.0 * fill))
    if r2s:
        options.append(("R2Delete", 0.3 + 3.0 * fill))
    if r3s:
        options.append(("R3Swap", 3.0))
    if switches and _switchable(d):
        options.append(("SwitchCrossing", 1.0))
    if d.cyclic and n > 0:
        options.append(("Rebase", 0.7))
    if not options:
        return MoveAction("R1Insert", {"seg": _gap_json(d, 0, 0), "sign": 1, "order": "tailFirst"})
    kinds, weights = zip(*options)
    kind = rng.choices(kinds, weights)[0]

    if kind == "R1Insert":
        s, g = _random_gap(d, rng)
        return MoveAction(kind, {"seg": _gap_json(d, s, g), "sign": rng.choice((1, -1)),
                                 "order": rng.choice(("tailFirst", "headFirst"))})
    if kind == "R2Insert":
        s1, g1 = _random_gap(d, rng)
        if r1s and rng.random() < 0.4:
            # heads between the ends of a kink: sets up an R3 triangle
            x = rng.choice(r1s)
            tail, head, w = _addresses(d, x)
            first = tail if _next(d, _strands(d), tail) == head else head
            s2, g2 = first[0], first[1] + 1
            sign = w if first == tail else -w
            pattern = "parallel"
        else:
            s2, g2 = _random_gap(d, rng)
            sign = rng.choice((1, -1))
            pattern = rng.choice(("parallel", "crossed"))
        params = {"seg1": _gap_json(d, s1, g1), "seg2": _gap_json(d, s2, g2),
                  "sign": sign, "pattern": pattern}
        if (s1, g1) == (s2, g2):
            params["heads_first"] = rng.random() < 0.5
        return MoveAction(kind, params)
    if kind == "R1Delete":
        return MoveAction(kind, {"chord": rng.choice(r1s)})
    if kind == "R2Delete":
        return MoveAction(kind, {"chords": list(rng.choice(r2s))})
    if kind == "R3Swap":
        triple, starts = rng.choice(r3s)
        return MoveAction(kind, {"chords": list(triple), "blocks": [list(a) for a in starts]})
    if kind == "SwitchCrossing":
        return MoveAction(kind, {"chord": rng.choice(_switchable(d))})
    # Rebase
    if isinstance(d, LinkGaussDiagram):
        comp = rng.choice([i + 1 for i, c in enumerate(d.components) if c])
        return MoveAction(kind, {"k": rng.randrange(len(d.components[comp - 1])), "comp": comp})
    return MoveAction(kind, {"k": rng.randrange(len(d.tokens))})


def iter_walk(d: Diagram, seed: int | str, steps: int, max_chords: int = DEFAULT_MAX_CHORDS,
              switches: bool | None = None) -> Iterator[tuple[MoveAction, Diagram]]:
    """Yield ``(action, diagram after action)`` for each step of a random walk."""
    rng = random.Random(seed)
    if switches is None:
        switches = _default_switches(d)
    for _ in range(steps):
        action = _propose(d, rng, max_chords, switches)
        d = apply(d, action)
        yield action, d


def random_walk(d: Diagram, seed: int | str, steps: int, max_chords: int = DEFAULT_MAX_CHORDS,
                switches: bool | None = None) -> tuple[Diagram, list[MoveAction]]:
    """Apply ``steps`` randomly chosen applicable moves; deterministic in ``seed``.

    Crossing switches are allowed by default on flat diagrams (any chord) and
    links (self-chords only), never on knots or long knots.
    """
    trace = []
    for action, d in iter_walk(d, seed, steps, max_chords, switches):
        trace.append(action)
    return d, trace
