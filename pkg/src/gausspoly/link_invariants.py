"""
Linking invariants of two-component virtual link diagrams.

Only bridges (chords joining the two circles) enter the linking data:
``r+/r-`` count positive/negative bridges running from component 1 to
component 2 and ``l+/l-`` those running back.  Then

* ``2 lk = r+ - r- + l+ - l-`` and ``span = |r+ - r- - l+ + l-|``;
* each circle is labeled on its universal cover: starting from 0 on the
  segment entering position 0, passing a tail of sign w adds w and passing
  a head subtracts w (self-chord endpoints included);
* a bridge gets ``N = label(into head) - label(into tail) - w`` in Z/span;
* ``F`` sums ``w t^N`` over bridges 1 -> 2, ``G`` over bridges 2 -> 1, and the
  linking polynomial is ``F * G`` in Z[t]/(t^span - 1).

``F`` and ``G`` are only defined up to ``(F t^k, G t^-k)``; :func:`fg_polys`
returns a canonical member of that orbit, the product needs no choice.
"""
from __future__ import annotations

import dataclasses

from .diagram import LinkGaussDiagram
from .errors import NotABridge
from .laurent import LaurentPoly

__all__ = [
    "LinkScalars",
    "ComponentLabeling",
    "FGPair",
    "link_scalars",
    "component_labels",
    "coloring",
    "bridge_n_value",
    "fg_raw",
    "fg_polys",
    "linking_poly",
    "format_lk",
    "link_report",
]


@dataclasses.dataclass(frozen=True)
class LinkScalars:
    two_lk: int
    span: int
    bridge_count: int


@dataclasses.dataclass(frozen=True)
class ComponentLabeling:
    labels: tuple[int, ...]  # label of the segment after each position
    defect: int              # net change over one full traversal

    def into(self, pos: int) -> int:
        """Label of the segment entering ``pos`` on the base lift."""
        return self.labels[pos - 1] if pos > 0 else 0


@dataclasses.dataclass(frozen=True)
class FGPair:
    F: LaurentPoly
    G: LaurentPoly
    canonical_shift: int


def link_scalars(L: LinkGaussDiagram) -> LinkScalars:
    forward = backward = 0
    bridges = L.bridges()
    for ch in bridges.values():
        if ch.tail[0] == 0:
            forward += ch.sign
        else:
            backward += ch.sign
    return LinkScalars(forward + backward, abs(forward - backward), len(bridges))


def component_labels(L: LinkGaussDiagram, comp: int) -> ComponentLabeling:
    """Universal-cover labels of component ``comp`` (1 or 2)."""
    if comp not in (1, 2):
        raise ValueError(f"component must be 1 or 2, got {comp}")
    label = 0
    out = []
    for tok in L.components[comp - 1]:
        label += tok.sign if tok.over else -tok.sign
        out.append(label)
    return ComponentLabeling(tuple(out), label)


def coloring(L: LinkGaussDiagram) -> tuple[ComponentLabeling, ComponentLabeling] | None:
    """A closed integer labeling of both circles, or None when the span is nonzero."""
    pair = component_labels(L, 1), component_labels(L, 2)
    if pair[0].defect or pair[1].defect:
        return None
    return pair


def _n_values(L: LinkGaussDiagram, span: int) -> dict[int, int]:
    labs = component_labels(L, 1), component_labels(L, 2)
    out = {}
    for c, ch in L.bridges().items():
        n = labs[ch.head[0]].into(ch.head[1]) - labs[ch.tail[0]].into(ch.tail[1]) - ch.sign
        out[c] = n % span if span else n
    return out


def bridge_n_value(L: LinkGaussDiagram, c: int) -> int:
    """Exponent attached to bridge ``c``; a residue mod span when span >= 1."""
    ch = L.chord(c)
    if not ch.is_bridge:
        raise NotABridge(f"chord {c} is a self-chord")
    return _n_values(L, link_scalars(L).span)[c]


def fg_raw(L: LinkGaussDiagram) -> tuple[LaurentPoly, LaurentPoly]:
    """``(F, G)`` for the base-point labeling, before canonicalization."""
    span = link_scalars(L).span
    nvals = _n_values(L, span)
    bridges = L.bridges()
    F = LaurentPoly(((nvals[c], ch.sign) for c, ch in bridges.items() if ch.tail[0] == 0), span)
    G = LaurentPoly(((nvals[c], ch.sign) for c, ch in bridges.items() if ch.tail[0] == 1), span)
    return F, G


def _canonical_shift(F: LaurentPoly, G: LaurentPoly) -> int:
    m = F.modulus
    if m == 0:
        if F:
            return -F.min_exponent()
        if G:
            return G.min_exponent()
        return 0
    return min(range(m), key=lambda k: (F.shift(k).dense(), G.shift(-k).dense()))


def fg_polys(L: LinkGaussDiagram) -> FGPair:
    """Canonical representative ``(F t^k, G t^-k)``.

    With span 0 the shift puts the lowest exponent of F at 0 (of G if F
    vanishes); with span >= 1 it minimizes F's coefficient vector, then G's.
    """
    F, G = fg_raw(L)
    k = _canonical_shift(F, G)
    return FGPair(F.shift(k), G.shift(-k), k)


def linking_poly(L: LinkGaussDiagram) -> LaurentPoly:
    F, G = fg_raw(L)
    return F * G


def format_lk(two_lk: int) -> str:
    return str(two_lk // 2) if two_lk % 2 == 0 else f"{two_lk}/2"


def link_report(L: LinkGaussDiagram) -> dict:
    s = link_scalars(L)
    fg = fg_polys(L)
    return {
        "lk": s.two_lk // 2 if s.two_lk % 2 == 0 else format_lk(s.two_lk),
        "two_lk": s.two_lk,
        "span": s.span,
        "bridge_count": s.bridge_count,
        "F": fg.F.to_json(),
        "G": fg.G.to_json(),
        "canonical_shift": fg.canonical_shift,
        "linking_poly": linking_poly(L).to_json(),
    }
