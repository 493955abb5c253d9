"""Sparse Laurent polynomials over GF(p^k) with the order-of-vanishing
valuation.

The ring F_q[x, 1/x] is exact: every operation manipulates a finite term map
{exponent: coefficient}, the zero element is the empty map, and the valuation
of a nonzero element is its minimum exponent. There is no precision model.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

from .finite_field import FieldSpec, FqElem
from .ordered_group import OrderedValue

# exponents stay within machine-integer range even after Frobenius scaling
MAX_EXPONENT = 2**62


class ExponentRangeError(ValueError):
    """An operation would push an exponent past the machine-integer guard."""


def _check_exponent(e: int) -> int:
    if abs(e) > MAX_EXPONENT:
        raise ExponentRangeError(f"exponent {e} exceeds |e| <= 2^62 guard")
    return e


CoeffLike = Union[int, FqElem]


class LaurentPoly:
    """A Laurent polynomial in canonical form: no zero coefficients stored."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms: Mapping[int, CoeffLike] | None = None):
        clean: dict[int, FqElem] = {}
        for e, c in (terms or {}).items():
            if isinstance(c, int):
                c = field.element(c)
            elif c.field != field:
                raise ValueError("coefficient from a different field")
            if not c.is_zero:
                clean[_check_exponent(int(e))] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec) -> "LaurentPoly":
        return cls(field, {})

    @classmethod
    def one(cls, field: FieldSpec) -> "LaurentPoly":
        return cls(field, {0: field.one()})

    @classmethod
    def x(cls, field: FieldSpec, e: int = 1) -> "LaurentPoly":
        return cls(field, {e: field.one()})

    # -- predicates -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check_field(self, other: "LaurentPoly") -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field, tuple(sorted((e, c.coeffs) for e, c in self.terms.items()))))

    # -- ring arithmetic ------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_field(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return LaurentPoly(self.field, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_field(other)
        out: dict[int, FqElem] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _check_exponent(e1 + e2)
                c = c1 * c2
                s = out.get(e)
                out[e] = c if s is None else s + c
        return LaurentPoly(self.field, out)

    def scale(self, c: CoeffLike) -> "LaurentPoly":
        if isinstance(c, int):
            c = self.field.element(c)
        return LaurentPoly(self.field, {e: a * c for e, a in self.terms.items()})

    # -- valuation and Frobenius ----------------------------------------------

    def valuation(self) -> OrderedValue:
        """Minimum exponent carrying a nonzero coefficient; infinity for 0."""
        if not self.terms:
            return OrderedValue.infinity(1)
        return OrderedValue(min(self.terms))

    def frobenius_pow(self, i: int) -> "LaurentPoly":
        """The p^i-th power, computed term by term: in characteristic p,
        (sum c_e x^e)^(p^i) = sum c_e^(p^i) x^(e * p^i)."""
        if i < 0:
            raise ValueError("Frobenius exponent must be >= 0")
        if i == 0:
            return self
        scale = self.field.p**i
        out = {}
        for e, c in self.terms.items():
            out[_check_exponent(e * scale)] = c.pow_p(i)
        return LaurentPoly(self.field, out)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> list:
        """Sorted list of [exponent, coefficient-vector] pairs."""
        return [[e, list(self.terms[e].coeffs)] for e in sorted(self.terms)]

    @classmethod
    def from_json(cls, field: FieldSpec, data: Iterable) -> "LaurentPoly":
        return cls(field, {int(e): field.element(c) for e, c in data})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            cs = repr(c)
            if self.field.k > 1 and ("+" in cs or "*" in cs):
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            else:
                xe = "x" if e == 1 else f"x^{e}"
                parts.append(xe if cs == "1" else f"{cs}*{xe}")
        return " + ".join(parts)


def monomial(c: FqElem, e: int) -> LaurentPoly:
    """The single-term element c * x^e (zero if c is zero)."""
    return LaurentPoly(c.field, {e: c})
