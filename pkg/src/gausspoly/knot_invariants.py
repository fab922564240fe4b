"""
Chord-index invariants of virtual knot diagrams.

For a chord ``c`` the index ``Ind(c)`` is the signed count of chords that
cross it: a chord whose tail lies on the open arc running from the tail of
``c`` to the head of ``c`` counts ``+w``, one whose head lies there counts
``-w``.  Everything else here is built from it:

* ``N(c) = Ind(c) + 1``;
* ``c`` is in the k-th odd class when ``Ind(c)`` has 2-adic valuation ``k``;
* ``f_k(t)`` sums ``w(c) t^N(c)`` over the k-th odd class, and the writhe
  polynomial ``W(t)`` sums it over all chords of nonzero index;
* ``P(t)``, the affine index polynomial, is ``sum w(c) (t^weight(c) - 1)``
  with weights read off an integer arc labeling.

All values are independent of the base point of the circle.
"""
from __future__ import annotations

import dataclasses

from .diagram import KnotGaussDiagram
from .laurent import LaurentPoly

__all__ = [
    "KnotScalars",
    "segment_labels_lambda",
    "segment_labels_mu",
    "chord_index",
    "chord_indices",
    "n_value",
    "parity_class",
    "parity_classes",
    "f_poly",
    "f_polys",
    "writhe_poly",
    "scalar_invariants",
    "affine_index_poly",
    "crossing_weights",
    "knot_report",
]


@dataclasses.dataclass(frozen=True)
class KnotScalars:
    wr: int
    J: int
    Q: int


def _start_label(K: KnotGaussDiagram, head_first: bool) -> int:
    # label of the segment entering position 0
    return sum(ch.sign for ch in K.chords.values() if (ch.head < ch.tail) == head_first)


def _labels(K: KnotGaussDiagram, head_first: bool) -> list[int]:
    step = 1 if head_first else -1
    label = _start_label(K, head_first)
    out = []
    for tok in K.tokens:
        label += step * tok.sign if tok.over else -step * tok.sign
        out.append(label)
    return out


def segment_labels_lambda(K: KnotGaussDiagram) -> list[int]:
    """Label of the segment after each position: the total sign of chords whose
    head is reached before their tail when walking from that segment.

    >>> from gausspoly.diagram import parse
    >>> segment_labels_lambda(parse("knot: O1+ O2+ U1+ U2+"))
    [1, 2, 1, 0]
    """
    return _labels(K, head_first=True)


def segment_labels_mu(K: KnotGaussDiagram) -> list[int]:
    """Complementary labeling: chords whose tail is reached first.

    Pointwise ``lambda + mu`` equals the writhe of the diagram.
    """
    return _labels(K, head_first=False)


def _index_of(K: KnotGaussDiagram, c: int) -> int:
    ch = K.chord(c)
    size = len(K.tokens)
    inside: dict[int, int] = {}
    pos = (ch.tail + 1) % size
    while pos != ch.head:
        tok = K.tokens[pos]
        if tok.chord in inside:
            # both endpoints on the arc: the chord does not cross c
            del inside[tok.chord]
        else:
            inside[tok.chord] = tok.sign if tok.over else -tok.sign
        pos = (pos + 1) % size
    return sum(inside.values())


def chord_index(K: KnotGaussDiagram, c: int) -> int:
    """Index of chord ``c`` by direct count over crossing chords.

    >>> from gausspoly.diagram import parse
    >>> vt = parse("knot: O1+ O2+ U1+ U2+")
    >>> chord_index(vt, 1), chord_index(vt, 2)
    (1, -1)
    """
    return _index_of(K, c)


def chord_indices(K: KnotGaussDiagram) -> dict[int, int]:
    return {c: _index_of(K, c) for c in K.chords}


def n_value(K: KnotGaussDiagram, c: int) -> int:
    return chord_index(K, c) + 1


def _valuation(x: int) -> int | None:
    if x == 0:
        return None
    return (x & -x).bit_length() - 1


def parity_class(K: KnotGaussDiagram, c: int) -> int | None:
    """The ``k`` with ``Ind(c) = 2^k (mod 2^(k+1))``, or ``None`` when the index is 0."""
    return _valuation(chord_index(K, c))


def parity_classes(K: KnotGaussDiagram) -> dict[int, int | None]:
    return {c: _valuation(i) for c, i in chord_indices(K).items()}


def f_polys(K: KnotGaussDiagram) -> dict[int, LaurentPoly]:
    """All nonzero ``f_k``, keyed by ``k``."""
    out: dict[int, LaurentPoly] = {}
    for c, ind in chord_indices(K).items():
        k = _valuation(ind)
        if k is None:
            continue
        out[k] = out.get(k, LaurentPoly()) + LaurentPoly.monomial(K.chords[c].sign, ind + 1)
    return {k: p for k, p in sorted(out.items()) if p}


def f_poly(K: KnotGaussDiagram, k: int) -> LaurentPoly:
    if k < 0:
        raise ValueError("parity level k must be non-negative")
    return f_polys(K).get(k, LaurentPoly())


def writhe_poly(K: KnotGaussDiagram) -> LaurentPoly:
    """``sum w(c) t^(Ind(c)+1)`` over chords of nonzero index.

    Cross-checked against the sum of all ``f_k``.

    >>> from gausspoly.diagram import parse
    >>> str(writhe_poly(parse("knot: O1+ O2+ U1+ U2+")))
    't^2 + 1'
    """
    indices = chord_indices(K)
    direct = LaurentPoly(
        (ind + 1, K.chords[c].sign) for c, ind in indices.items() if ind != 0)
    summed = sum(f_polys(K).values(), LaurentPoly())
    assert direct == summed, f"writhe polynomial disagrees with sum of f_k on {K}"
    return direct


def scalar_invariants(K: KnotGaussDiagram) -> KnotScalars:
    indices = chord_indices(K)
    wr = K.writhe
    J = sum(K.chords[c].sign for c, i in indices.items() if i % 2)
    Q = sum(K.chords[c].sign for c, i in indices.items() if i != 0)
    return KnotScalars(wr, J, Q)


def _segment_into(pos: int, size: int) -> int:
    # label index of the segment that ends at ``pos``
    return (pos - 1) % size


def crossing_weights(K: KnotGaussDiagram) -> dict[int, int]:
    """Arc-labeling weight of every chord, read from the mu labeling."""
    mu = segment_labels_mu(K)
    size = len(K.tokens)
    return {
        c: mu[_segment_into(ch.tail, size)] - mu[_segment_into(ch.head, size)] - ch.sign
        for c, ch in K.chords.items()
    }


def affine_index_poly(K: KnotGaussDiagram) -> LaurentPoly:
    """Affine index polynomial ``sum w(c) (t^weight(c) - 1)``.

    The weights come from the arc labeling; the result is checked against
    ``sum w(c) t^Ind(c) - wr`` since weight and index agree chord by chord.
    """
    weights = crossing_weights(K)
    poly = LaurentPoly((weights[c], ch.sign) for c, ch in K.chords.items()) - K.writhe
    via_index = LaurentPoly(
        (ind, K.chords[c].sign) for c, ind in chord_indices(K).items()) - K.writhe
    assert poly == via_index, f"affine index weights disagree with chord indices on {K}"
    return poly


def knot_report(K: KnotGaussDiagram) -> dict:
    """JSON-ready invariant report."""
    s = scalar_invariants(K)
    return {
        "wr": s.wr,
        "J": s.J,
        "Q": s.Q,
        "writhe_poly": writhe_poly(K).to_json(),
        "affine_index_poly": affine_index_poly(K).to_json(),
        "f": {str(k): p.to_json() for k, p in f_polys(K).items()},
    }
