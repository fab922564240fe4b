"""Seeded random Gauss diagrams and a few standard families."""
from __future__ import annotations

import random

from .diagram import FlatLongDiagram, KnotGaussDiagram, LinkGaussDiagram, LongGaussDiagram, Token

__all__ = [
    "random_tokens",
    "random_knot",
    "random_long",
    "random_flat",
    "random_link",
    "random_diagram",
    "torus_link",
]


def random_tokens(rng: random.Random, n: int) -> list[Token]:
    toks = []
    for c in range(1, n + 1):
        w = rng.choice((1, -1))
        toks += [Token(c, True, w), Token(c, False, w)]
    rng.shuffle(toks)
    return toks


def random_knot(rng: random.Random, n: int) -> KnotGaussDiagram:
    return KnotGaussDiagram(tuple(random_tokens(rng, n)))


def random_long(rng: random.Random, n: int) -> LongGaussDiagram:
    return LongGaussDiagram(tuple(random_tokens(rng, n)))


def random_flat(rng: random.Random, n: int) -> FlatLongDiagram:
    return FlatLongDiagram(tuple(random_tokens(rng, n)))


def random_link(rng: random.Random, n: int, bridge_prob: float = 0.5) -> LinkGaussDiagram:
    """``n`` chords, each a bridge with probability ``bridge_prob``."""
    comps: list[list[Token]] = [[], []]
    for c in range(1, n + 1):
        w = rng.choice((1, -1))
        if rng.random() < bridge_prob:
            src = rng.randrange(2)
            comps[src].append(Token(c, True, w))
            comps[1 - src].append(Token(c, False, w))
        else:
            side = rng.randrange(2)
            comps[side] += [Token(c, True, w), Token(c, False, w)]
    for comp in comps:
        rng.shuffle(comp)
    return LinkGaussDiagram((tuple(comps[0]), tuple(comps[1])))


def random_diagram(kind: str, rng: random.Random, n: int):
    return {
        "knot": random_knot,
        "long": random_long,
        "flatlong": random_flat,
        "link": random_link,
    }[kind](rng, n)


def torus_link(n: int, sign: int = 1) -> LinkGaussDiagram:
    """Closure of the two-strand braid ``sigma_1^(2n)`` (linking number ``sign * n``).

    The strand in the first braid position passes over, so component 1 is
    over at the odd crossings and component 2 at the even ones.
    """
    comp1, comp2 = [], []
    for k in range(1, 2 * n + 1):
        over_first = k % 2 == 1
        comp1.append(Token(k, over_first, sign))
        comp2.append(Token(k, not over_first, sign))
    return LinkGaussDiagram((tuple(comp1), tuple(comp2)))
