"""Totally ordered abelian value groups: Z^n under lexicographic order.

Values carry a fixed rank per context; an infinity marker compares strictly
greater than every finite value and absorbs addition.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union


class RankMismatchError(ValueError):
    """Values of different rank were combined."""


CoordsLike = Union[int, Iterable[int]]


class OrderedValue:
    """An element of Z^n with lexicographic order, or the infinity marker."""

    __slots__ = ("coords", "is_infinity")

    def __init__(self, coords: CoordsLike = 0, is_infinity: bool = False):
        if isinstance(coords, int):
            coords = (coords,)
        coords = tuple(int(c) for c in coords)
        if not coords:
            raise ValueError("rank must be at least 1")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "is_infinity", bool(is_infinity))

    def __setattr__(self, name, value):
        raise AttributeError("OrderedValue is immutable")

    @classmethod
    def zero(cls, rank: int = 1) -> "OrderedValue":
        return cls((0,) * rank)

    @classmethod
    def unit_last(cls, rank: int = 1) -> "OrderedValue":
        """The unit vector in the last coordinate; never divisible by any p >= 2."""
        return cls((0,) * (rank - 1) + (1,))

    @classmethod
    def infinity(cls, rank: int = 1) -> "OrderedValue":
        return cls((0,) * rank, is_infinity=True)

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def is_finite(self) -> bool:
        return not self.is_infinity

    def _check_rank(self, other: "OrderedValue") -> None:
        if not isinstance(other, OrderedValue):
            raise TypeError(f"expected OrderedValue, got {type(other).__name__}")
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs rank {other.rank}")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "OrderedValue") -> "OrderedValue":
        self._check_rank(other)
        if self.is_infinity or other.is_infinity:
            return OrderedValue.infinity(self.rank)
        return OrderedValue(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "OrderedValue":
        if self.is_infinity:
            raise ValueError("cannot negate infinity")
        return OrderedValue(tuple(-c for c in self.coords))

    def __sub__(self, other: "OrderedValue") -> "OrderedValue":
        self._check_rank(other)
        if other.is_infinity:
            raise ValueError("cannot subtract infinity")
        if self.is_infinity:
            return OrderedValue.infinity(self.rank)
        return OrderedValue(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, n: int) -> "OrderedValue":
        if not isinstance(n, int):
            return NotImplemented
        if self.is_infinity:
            if n < 1:
                raise ValueError("n * infinity requires n >= 1")
            return OrderedValue.infinity(self.rank)
        return OrderedValue(tuple(n * c for c in self.coords))

    __rmul__ = __mul__

    # -- order --------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderedValue):
            return NotImplemented
        if self.rank != other.rank:
            return False
        if self.is_infinity or other.is_infinity:
            return self.is_infinity == other.is_infinity
        return self.coords == other.coords

    def __hash__(self) -> int:
        if self.is_infinity:
            return hash(("inf", self.rank))
        return hash(self.coords)

    def __lt__(self, other: "OrderedValue") -> bool:
        return compare(self, other) < 0

    def __le__(self, other: "OrderedValue") -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: "OrderedValue") -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: "OrderedValue") -> bool:
        return compare(self, other) >= 0

    def __repr__(self) -> str:
        if self.is_infinity:
            return "OrderedValue(inf)"
        return f"OrderedValue({list(self.coords)})"

    # -- serialization ------------------------------------------------------

    def to_json(self):
        """Integer array, or the string ``"inf"`` for infinity."""
        if self.is_infinity:
            return "inf"
        return list(self.coords)

    @classmethod
    def from_json(cls, data, rank: int = 1) -> "OrderedValue":
        if data == "inf":
            return cls.infinity(rank)
        return cls(data)


def compare(a: OrderedValue, b: OrderedValue) -> int:
    """Total order on a value group: -1, 0 or +1. Infinity is maximal."""
    a._check_rank(b)
    if a.is_infinity and b.is_infinity:
        return 0
    if a.is_infinity:
        return 1
    if b.is_infinity:
        return -1
    if a.coords < b.coords:
        return -1
    if a.coords > b.coords:
        return 1
    return 0


def element_below(gamma: OrderedValue) -> OrderedValue:
    """A value strictly below ``gamma``: subtract 1 from the last coordinate."""
    if gamma.is_infinity:
        raise ValueError("element_below requires a finite value")
    coords = list(gamma.coords)
    coords[-1] -= 1
    return OrderedValue(coords)


def uniform_bound(
    pairs: Sequence[tuple[OrderedValue, int]], rank: int = 1
) -> OrderedValue:
    """A bound gamma0 = min{gamma_1, ..., gamma_r, 0} such that every
    gamma < gamma0 satisfies n_i * gamma < gamma_i for all i.

    ``rank`` is only consulted when ``pairs`` is empty (the bound is then 0).
    """
    if pairs:
        rank = pairs[0][0].rank
    best = OrderedValue.zero(rank)
    for gamma_i, n_i in pairs:
        if gamma_i.is_infinity:
            raise ValueError("uniform_bound requires finite values")
        if gamma_i.rank != rank:
            raise RankMismatchError(f"rank {gamma_i.rank} vs rank {rank}")
        if n_i < 1:
            raise ValueError(f"multipliers must be positive, got {n_i}")
        if gamma_i < best:
            best = gamma_i
    return best


def in_coset(gamma: OrderedValue, alpha0: OrderedValue, p: int) -> bool:
    """True iff gamma lies in alpha0 + p*Z^n, i.e. every coordinate of
    gamma - alpha0 is divisible by p."""
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    if gamma.is_infinity or alpha0.is_infinity:
        raise ValueError("in_coset requires finite values")
    diff = gamma - alpha0
    return all(c % p == 0 for c in diff.coords)


def descending_nondivisible(
    alpha0: OrderedValue, gamma0: OrderedValue, p: int, count: int
) -> list[OrderedValue]:
    """A strictly decreasing sequence gamma_1 > ... > gamma_count, all below
    ``gamma0`` and none in the coset alpha0 + p*Z^n.

    Deterministic construction: with a0 the last-coordinate unit (never
    p-divisible), take delta_0 = uniform_bound([(gamma0 - alpha0 - a0, p)]) and
    gamma_i = alpha0 + a0 + p * (delta_0 - i * a0).
    """
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    if gamma0.is_infinity or alpha0.is_infinity:
        raise ValueError("descending_nondivisible requires finite values")
    alpha0._check_rank(gamma0)
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")

    a0 = OrderedValue.unit_last(alpha0.rank)
    delta0 = uniform_bound([(gamma0 - alpha0 - a0, p)])
    out = []
    for i in range(1, count + 1):
        delta_i = delta0 - i * a0
        out.append(alpha0 + a0 + p * delta_i)

    # Postconditions are cheap; check them on every call.
    for i, g in enumerate(out):
        assert g < gamma0, "sequence member not below the bound"
        assert not in_coset(g, alpha0, p), "sequence member fell in the coset"
        if i > 0:
            assert g < out[i - 1], "sequence not strictly decreasing"
    return out
