"""
Writhe polynomial of long flat virtual knots.

A flat chord is evaluated through any representative ``(tail, head, w)``:

* ``o(c)`` is +1 when the tail lies left of the head;
* ``I(c)`` counts chords with exactly one endpoint strictly between the two
  endpoints of ``c``, ``+w`` for a tail there and ``-w`` for a head;
* the polynomial is ``sum o(c) w(c) t^I(c)`` over chords with ``I(c) != 0``.

``I`` and ``sigma = o * w`` are unchanged by flipping any representative, so
the polynomial depends only on the flat diagram.
"""
from __future__ import annotations

import dataclasses
from typing import Union

from .diagram import FlatLongDiagram, LongGaussDiagram
from .laurent import LaurentPoly

__all__ = [
    "FlatChordData",
    "flat_orientation_sign",
    "flat_index",
    "flat_chord_data",
    "flat_writhe_poly",
    "flat_report",
]

LineDiagram = Union[FlatLongDiagram, LongGaussDiagram]


@dataclasses.dataclass(frozen=True)
class FlatChordData:
    o: int
    I: int
    sigma: int


def flat_orientation_sign(d: LineDiagram, c: int) -> int:
    ch = d.chord(c)
    return 1 if ch.tail < ch.head else -1


def flat_index(d: LineDiagram, c: int) -> int:
    ch = d.chord(c)
    lo, hi = sorted((ch.tail, ch.head))
    inside: dict[int, int] = {}
    for tok in d.tokens[lo + 1:hi]:
        if tok.chord in inside:
            del inside[tok.chord]
        else:
            inside[tok.chord] = tok.sign if tok.over else -tok.sign
    return sum(inside.values())


def flat_chord_data(d: LineDiagram) -> dict[int, FlatChordData]:
    out = {}
    for c, ch in d.chords.items():
        o = flat_orientation_sign(d, c)
        out[c] = FlatChordData(o, flat_index(d, c), o * ch.sign)
    return out


def flat_writhe_poly(d: LineDiagram) -> LaurentPoly:
    """Writhe polynomial of the flat knot underlying ``d``.

    >>> from gausspoly.diagram import parse
    >>> str(flat_writhe_poly(parse("flatlong: O1+ O2+ U1+ U2+")))
    't + t^-1'
    """
    return LaurentPoly((v.I, v.sigma) for v in flat_chord_data(d).values() if v.I != 0)


def flat_report(d: LineDiagram) -> dict:
    p = flat_writhe_poly(d)
    return {
        "flat_writhe_poly": p.to_json(),
        "s": p.coeff_abs_sum(),
        "per_chord": [
            {"id": c, "o": v.o, "I": v.I, "sigma": v.sigma}
            for c, v in flat_chord_data(d).items()
        ],
    }
