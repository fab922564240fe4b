"""
Sparse integer Laurent polynomials in one variable ``t``.

A :class:`LaurentPoly` carries a ``modulus`` m.  With m = 0 it is an element
of Z[t, t^-1]; with m >= 1 exponents live in Z/m, i.e. the polynomial is an
element of Z[t]/(t^m - 1).  Coefficients are Python ints, so they never
overflow.  Values are immutable and stored canonically (exponents reduced,
sorted, no zero coefficients), which makes ``==`` a structural comparison.

>>> p = LaurentPoly({2: 1, 0: 1})
>>> str(p)
't^2 + 1'
>>> str(p.invert_variable())
'1 + t^-2'
>>> str(LaurentPoly({1: 1}, modulus=2) * LaurentPoly({1: -1}, modulus=2))
'-1'
"""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping

from .errors import ModulusMismatch

__all__ = [
    "LaurentPoly",
    "reduce",
    "poly_add",
    "poly_mul",
    "poly_invert_variable",
    "poly_shift",
    "poly_eval_at_one",
    "poly_coeff_abs_sum",
    "poly_shift_equivalent",
]


def _normalize(pairs: Iterable[tuple[int, int]], modulus: int) -> tuple[tuple[int, int], ...]:
    acc: dict[int, int] = defaultdict(int)
    for e, c in pairs:
        if modulus:
            e %= modulus
        acc[int(e)] += int(c)
    return tuple(sorted((e, c) for e, c in acc.items() if c != 0))


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("modulus", "_terms")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None,
                 modulus: int = 0):
        if modulus < 0:
            raise ValueError(f"modulus must be non-negative, got {modulus}")
        if terms is None:
            pairs: Iterable[tuple[int, int]] = ()
        elif isinstance(terms, Mapping):
            pairs = terms.items()
        else:
            pairs = terms
        object.__setattr__(self, "modulus", int(modulus))
        object.__setattr__(self, "_terms", _normalize(pairs, modulus))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def zero(cls, modulus: int = 0) -> LaurentPoly:
        return cls(None, modulus)

    @classmethod
    def monomial(cls, coeff: int, exponent: int, modulus: int = 0) -> LaurentPoly:
        return cls(((exponent, coeff),), modulus)

    @classmethod
    def constant(cls, c: int, modulus: int = 0) -> LaurentPoly:
        return cls(((0, c),), modulus)

    @property
    def terms(self) -> dict[int, int]:
        """A fresh ``{exponent: coefficient}`` dict."""
        return dict(self._terms)

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def coeff(self, exponent: int) -> int:
        if self.modulus:
            exponent %= self.modulus
        for e, c in self._terms:
            if e == exponent:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def min_exponent(self) -> int | None:
        return self._terms[0][0] if self._terms else None

    def max_exponent(self) -> int | None:
        return self._terms[-1][0] if self._terms else None

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.modulus)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.modulus == other.modulus and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.modulus, self._terms))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.modulus)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.modulus != self.modulus:
            raise ModulusMismatch(
                f"cannot combine polynomials with moduli {self.modulus} and {other.modulus}")
        return other

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentPoly(self._terms + other._terms, self.modulus)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(((e, -c) for e, c in self._terms), self.modulus)

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentPoly(
            ((e1 + e2, c1 * c2) for e1, c1 in self._terms for e2, c2 in other._terms),
            self.modulus,
        )

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t**k``."""
        return LaurentPoly(((e + k, c) for e, c in self._terms), self.modulus)

    def invert_variable(self) -> LaurentPoly:
        """Substitute ``t -> t**-1``."""
        return LaurentPoly(((-e, c) for e, c in self._terms), self.modulus)

    def eval_at_one(self) -> int:
        return sum(c for _, c in self._terms)

    def coeff_abs_sum(self) -> int:
        return sum(abs(c) for _, c in self._terms)

    def dense(self) -> list[int]:
        """Coefficients of t^0 .. t^(m-1); only meaningful for m >= 1."""
        if not self.modulus:
            raise ValueError("dense vector is only defined for a cyclic modulus")
        out = [0] * self.modulus
        for e, c in self._terms:
            out[e] = c
        return out

    # -- rendering --------------------------------------------------------

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "terms": [[e, c] for e, c in self._terms]}

    @classmethod
    def from_json(cls, obj: Mapping) -> LaurentPoly:
        return cls(((int(e), int(c)) for e, c in obj["terms"]), int(obj["modulus"]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            mono = "" if e == 0 else "t" if e == 1 else f"t^{e}"
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        mod = f", modulus={self.modulus}" if self.modulus else ""
        return f"LaurentPoly('{self}'{mod})"


def reduce(p: LaurentPoly, modulus: int) -> LaurentPoly:
    """Fold the exponents of a modulus-0 polynomial into Z/modulus."""
    if p.modulus not in (0, modulus):
        raise ModulusMismatch(f"cannot reduce modulus {p.modulus} to {modulus}")
    return LaurentPoly(p.items(), modulus)


def poly_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def poly_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def poly_invert_variable(p: LaurentPoly) -> LaurentPoly:
    return p.invert_variable()


def poly_shift(p: LaurentPoly, k: int) -> LaurentPoly:
    return p.shift(k)


def poly_eval_at_one(p: LaurentPoly) -> int:
    return p.eval_at_one()


def poly_coeff_abs_sum(p: LaurentPoly) -> int:
    return p.coeff_abs_sum()


def poly_shift_equivalent(p: LaurentPoly, q: LaurentPoly) -> int | None:
    """Return some ``k`` with ``q == p * t**k``, or ``None``.

    For a cyclic modulus the returned ``k`` is the least residue that works.
    """
    if p.modulus != q.modulus:
        raise ModulusMismatch(f"moduli differ: {p.modulus} vs {q.modulus}")
    if p.is_zero() or q.is_zero():
        return 0 if p.is_zero() and q.is_zero() else None
    if len(p) != len(q):
        return None
    if p.modulus:
        for k in range(p.modulus):
            if p.shift(k) == q:
                return k
        return None
    k = q.min_exponent() - p.min_exponent()
    return k if p.shift(k) == q else None
