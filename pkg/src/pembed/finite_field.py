"""Exact arithmetic in GF(p^k), elements as coefficient vectors mod an
explicit irreducible modulus.

The default modulus for each (p, k) is the first monic irreducible of degree
k when non-leading coefficient vectors are enumerated as base-p integers, so
field construction is reproducible without external tables.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence, Union

Q_CAP = 3**8  # desk-scale cap on field size


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- dense polynomial helpers over Z/p (coefficient lists, low degree first) --


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)

def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a by monic b."""
    r = [c % p for c in a]
    _poly_trim(r)
    db = len(b) - 1
    while len(r) - 1 >= db:
        lead = r[-1]
        shift = len(r) - 1 - db
        for i in range(db + 1):
            r[shift + i] = (r[shift + i] - lead * b[i]) % p
        _poly_trim(r)
    return r


def _monic_polys(p: int, degree: int) -> Iterator[list[int]]:
    """All monic polynomials of the given degree, in base-p encoding order."""
    for n in range(p**degree):
        coeffs = []
        m = n
        for _ in range(degree):
            coeffs.append(m % p)
            m //= p
        yield coeffs + [1]


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of lower degree (>= 1)."""
    k = len(modulus) - 1
    for d in range(1, k):
        for cand in _monic_polys(p, d):
            if not _poly_mod(modulus, cand, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """The lexicographically smallest monic irreducible of degree k over F_p
    (non-leading coefficients enumerated as base-p integers, ascending)."""
    for cand in _monic_polys(p, k):
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise RuntimeError(f"no irreducible of degree {k} over F_{p}")  # unreachable


class FieldSpec:
    """The field GF(p^k) with a fixed monic irreducible modulus of degree k."""

    __slots__ = ("p", "k", "modulus")

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        if p**k > Q_CAP:
            raise ValueError(f"field size {p}^{k} exceeds cap {Q_CAP}")
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if k >= 2 and not _is_irreducible(modulus, p):
                raise ValueError(f"modulus {list(modulus)} is reducible over F_{p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "modulus", tuple(modulus))

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    @property
    def q(self) -> int:
        return self.p**self.k

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k})"

    # -- element constructors ------------------------------------------------

    def element(self, coeffs: Union[int, Iterable[int]]) -> "FqElem":
        """Build an element from an int (prime-field scalar) or a coefficient
        vector in the power basis of the generator."""
        if isinstance(coeffs, int):
            vec = (coeffs % self.p,) + (0,) * (self.k - 1)
            return FqElem(self, vec)
        vec = tuple(int(c) % self.p for c in coeffs)
        if len(vec) > self.k:
            raise ValueError(f"coefficient vector longer than degree {self.k}")
        vec = vec + (0,) * (self.k - len(vec))
        return FqElem(self, vec)

    def zero(self) -> "FqElem":
        return self.element(0)

    def one(self) -> "FqElem":
        return self.element(1)

    def gen(self) -> "FqElem":
        """The residue class of T, a root of the modulus (for k >= 2)."""
        if self.k == 1:
            return self.one()
        return self.element((0, 1))

    def from_index(self, n: int) -> "FqElem":
        """Element number n, 0 <= n < q, digits of n base p as coefficients."""
        if not 0 <= n < self.q:
            raise ValueError(f"index {n} out of range for field of size {self.q}")
        coeffs = []
        for _ in range(self.k):
            coeffs.append(n % self.p)
            n //= self.p
        return FqElem(self, tuple(coeffs))

    def elements(self) -> Iterator["FqElem"]:
        for n in range(self.q):
            yield self.from_index(n)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        return cls(int(data["p"]), int(data["k"]), data.get("modulus"))


class FqElem:
    """Element of GF(p^k): coefficient vector of length k, reduced mod p."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: tuple[int, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("FqElem is immutable")

    def _check_field(self, other: "FqElem") -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __add__(self, other: "FqElem") -> "FqElem":
        self._check_field(other)
        p = self.field.p
        return FqElem(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "FqElem":
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other: "FqElem") -> "FqElem":
        return self + (-other)

    def __mul__(self, other: "FqElem") -> "FqElem":
        self._check_field(other)
        f = self.field
        prod = _poly_mul(self.coeffs, other.coeffs, f.p)
        red = _poly_mod(prod, f.modulus, f.p)
        return f.element(red)

    def __pow__(self, n: int) -> "FqElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FqElem":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.field.q - 2)

    def pow_p(self, i: int = 1) -> "FqElem":
        """The p^i-th power (i-fold Frobenius); exact and cheap because the
        exponent reduces mod q - 1 on nonzero elements."""
        if i < 0:
            raise ValueError("Frobenius exponent must be >= 0")
        if self.is_zero:
            return self
        qm1 = self.field.q - 1
        exp = pow(self.field.p, i, qm1) if qm1 > 1 else 1
        if exp == 0:
            exp = qm1  # p^i = multiple of q-1 only when the reduction wrapped
        return self**exp

    def to_index(self) -> int:
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.field.p + c
        return n

    def __repr__(self) -> str:
        if self.field.k == 1:
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                gi = "g" if i == 1 else f"g^{i}"
                parts.append(gi if c == 1 else f"{c}*{gi}")
        return "+".join(parts) if parts else "0"
