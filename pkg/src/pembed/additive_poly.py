"""Additive polynomials f(T) = b0*T + b1*T^p + ... + bm*T^(p^m) over the
Laurent ring, and the valuation machinery built on them.

The central facts implemented here, all exact:

* below a computable threshold, the valuation of f(a1) is determined by a1
  alone: v(f(a1)) = v(bm) + p^m * v(a1);
* hence any element whose valuation is low enough and avoids the coset
  v(bm) + p*Z cannot lie in the image f(A) -- a checkable one-sided
  certificate of non-membership;
* stacking such elements with strictly decreasing, non-coset valuations
  yields arbitrarily many elements that are pairwise distinct modulo f(A).

A brute-force search over bounded-support preimages serves as the
independent oracle for the certificate route, and for constant-coefficient f
the kernel {x | f(x) = 0} is computed inside a finite extension field by
exact linear algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from . import linalg
from .errors import CapExceededError
from .finite_field import FieldSpec, FqElem
from .ordered_group import OrderedValue, element_below, descending_nondivisible, in_coset
from .valued_ring import LaurentPoly, monomial

BRUTE_FORCE_CAP = 10**7

CoeffLike = Union[int, FqElem, LaurentPoly]


class AdditivePoly:
    """A p-polynomial with Laurent-polynomial coefficients (b0, ..., bm).

    The coefficient vector is trimmed so the leading coefficient is nonzero
    whenever the polynomial is nonzero; ``m`` is the Frobenius degree.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Sequence[CoeffLike]):
        lifted = []
        for b in coeffs:
            if isinstance(b, (int, FqElem)):
                b = LaurentPoly(field, {0: b})
            elif b.field != field:
                raise ValueError("coefficient from a different field")
            lifted.append(b)
        while len(lifted) > 1 and lifted[-1].is_zero:
            lifted.pop()
        if not lifted:
            lifted = [LaurentPoly.zero(field)]
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(lifted))

    def __setattr__(self, name, value):
        raise AttributeError("AdditivePoly is immutable")

    @property
    def m(self) -> int:
        return len(self.coeffs) - 1

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def leading(self) -> LaurentPoly:
        return self.coeffs[-1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AdditivePoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        parts = []
        for i, b in enumerate(self.coeffs):
            if b.is_zero:
                continue
            te = "T" if i == 0 else f"T^{self.p**i}"
            bs = repr(b)
            parts.append(te if bs == "1" else f"({bs})*{te}")
        return " + ".join(parts) if parts else "0"

    # -- evaluation and composition -------------------------------------------

    def eval(self, a: LaurentPoly) -> LaurentPoly:
        """Exact evaluation: sum of b_i * a^(p^i)."""
        if a.field != self.field:
            raise ValueError("argument from a different field")
        acc = LaurentPoly.zero(self.field)
        for i, b in enumerate(self.coeffs):
            if b.is_zero:
                continue
            acc = acc + b * a.frobenius_pow(i)
        return acc

    __call__ = eval

    def compose(self, other: "AdditivePoly") -> "AdditivePoly":
        """self after other: eval(compose, a) == eval(self, eval(other, a)).

        Twisted (Ore) coefficient rule: c_k = sum over i+j=k of
        self_i * other_j^(p^i).
        """
        if other.field != self.field:
            raise ValueError("composition across fields")
        out = [LaurentPoly.zero(self.field) for _ in range(self.m + other.m + 1)]
        for i, bi in enumerate(self.coeffs):
            if bi.is_zero:
                continue
            for j, gj in enumerate(other.coeffs):
                if gj.is_zero:
                    continue
                out[i + j] = out[i + j] + bi * gj.frobenius_pow(i)
        return AdditivePoly(self.field, out)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        d = self.field.to_json()
        d["coeffs"] = [b.to_json() for b in self.coeffs]
        return d

    @classmethod
    def from_json(cls, data: dict) -> "AdditivePoly":
        field = FieldSpec.from_json(data)
        return cls(field, [LaurentPoly.from_json(field, t) for t in data["coeffs"]])


@dataclass(frozen=True)
class Threshold:
    """Valuation threshold data for an additive polynomial.

    Below ``alpha`` the term of Frobenius degree m dominates every other term
    of f(a1); ``gamma0`` (one below ``beta``) is the image-side threshold:
    any a = f(a1) with v(a) < gamma0 forces v(a) = vbm + p^m * v(a1).
    All three are None when f has a single term, in which case the identity
    holds with no restriction.
    """

    alpha: Optional[OrderedValue]
    beta: Optional[OrderedValue]
    gamma0: Optional[OrderedValue]
    vbm: OrderedValue
    p: int
    m: int

    @property
    def unbounded(self) -> bool:
        return self.alpha is None

    def admits(self, v: OrderedValue) -> bool:
        """True iff an image element of valuation v is inside the regime
        where the valuation identity is forced."""
        return self.gamma0 is None or v < self.gamma0

    def to_json(self) -> dict:
        opt = lambda x: None if x is None else x.to_json()
        return {
            "alpha": opt(self.alpha),
            "beta": opt(self.beta),
            "gamma0": opt(self.gamma0),
            "vbm": self.vbm.to_json(),
            "p": self.p,
            "m": self.m,
        }


def low_val_threshold(f: AdditivePoly) -> Threshold:
    """Compute the threshold in closed form over Z.

    alpha is the largest value such that every gamma < alpha satisfies
    (p^m - p^i) * gamma < v(b_i) - v(b_m) for each i < m with b_i nonzero
    (zero coefficients impose no constraint); beta = min over nonzero b_i of
    v(b_i) + alpha * p^i; gamma0 is one below beta.
    """
    if f.m < 1:
        raise ValueError("threshold needs Frobenius degree m >= 1")
    if f.leading.is_zero:
        raise ValueError("leading coefficient must be nonzero")
    p, m = f.p, f.m
    vbm = f.leading.valuation()
    vb = [b.valuation() for b in f.coeffs]

    alpha: Optional[int] = None
    for i in range(m):
        if f.coeffs[i].is_zero:
            continue
        c = p**m - p**i
        d = vb[i].coords[0] - vbm.coords[0]
        # largest gamma with c*gamma < d is (d-1)//c; alpha_i is one above
        cand = (d - 1) // c + 1
        alpha = cand if alpha is None else min(alpha, cand)

    if alpha is None:
        return Threshold(None, None, None, vbm, p, m)

    beta = min(
        vb[i].coords[0] + alpha * p**i
        for i in range(m + 1)
        if not f.coeffs[i].is_zero
    )
    beta_v = OrderedValue(beta)
    return Threshold(OrderedValue(alpha), beta_v, element_below(beta_v), vbm, p, m)


def predict_image_valuation(f: AdditivePoly, va1: OrderedValue) -> OrderedValue:
    """The forced valuation v(bm) + p^m * v(a1) of f(a1) in the low regime."""
    if va1.is_infinity:
        raise ValueError("predict_image_valuation requires a finite valuation")
    return f.leading.valuation() + (f.p**f.m) * va1


@dataclass(frozen=True)
class NonMembershipCertificate:
    """Witness that ``element`` is not in the image f(A).

    Replay data: the element, its valuation, the threshold used, and the
    coordinates of v(element) - v(bm) reduced mod p (not all zero, so the
    valuation avoids the coset v(bm) + p*Z that every low-valuation image
    element must occupy).
    """

    element: LaurentPoly
    valuation: OrderedValue
    threshold: Threshold
    residues: tuple[int, ...]

    def verify(self, f: Optional[AdditivePoly] = None) -> bool:
        """Replay the criterion on the stored data; optionally recompute the
        threshold from ``f`` and require it to match."""
        t = self.threshold
        if f is not None and low_val_threshold(f) != t:
            return False
        if self.element.valuation() != self.valuation:
            return False
        if not t.admits(self.valuation):
            return False
        diff = self.valuation - t.vbm
        if tuple(c % t.p for c in diff.coords) != self.residues:
            return False
        return any(self.residues)

    def to_json(self) -> dict:
        return {
            "element": self.element.to_json(),
            "valuation": self.valuation.to_json(),
            "threshold": self.threshold.to_json(),
            "residues": list(self.residues),
        }


def certify_not_in_image(
    f: AdditivePoly, a: LaurentPoly
) -> Optional[NonMembershipCertificate]:
    """Certificate that a is not in f(A), or None (inconclusive).

    The criterion is one-sided: None never asserts membership. It applies
    exactly when v(a) is below the threshold and outside v(bm) + p*Z.
    """
    if a.is_zero:
        raise ValueError("a = 0 is always in the image (f(0) = 0)")
    if a.field != f.field:
        raise ValueError("element from a different field")
    t = low_val_threshold(f)
    va = a.valuation()
    if not t.admits(va):
        return None
    if in_coset(va, t.vbm, t.p):
        return None
    residues = tuple(c % t.p for c in (va - t.vbm).coords)
    return NonMembershipCertificate(a, va, t, residues)


def coset_witnesses(f: AdditivePoly, count: int) -> list[LaurentPoly]:
    """``count`` elements pairwise distinct modulo f(A).

    Witnesses are monomials x^e with unit coefficient; the exponents form a
    strictly decreasing sequence below the threshold, none congruent to
    v(bm) mod p, so every pairwise difference (valuation = the smaller
    exponent) carries a non-membership certificate. Verified on every call.
    """
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    t = low_val_threshold(f)
    start = t.gamma0 if t.gamma0 is not None else OrderedValue.zero(1)
    exps = descending_nondivisible(t.vbm, start, t.p, count)
    witnesses = [monomial(f.field.one(), e.coords[0]) for e in exps]
    for i in range(count):
        for j in range(i + 1, count):
            cert = certify_not_in_image(f, witnesses[i] - witnesses[j])
            assert cert is not None and cert.verify(), "witness pair failed to certify"
    return witnesses


def pairwise_certificates(
    f: AdditivePoly, witnesses: Sequence[LaurentPoly]
) -> list[tuple[int, int, NonMembershipCertificate]]:
    """Certificates for all pairwise differences of a witness list."""
    out = []
    for i in range(len(witnesses)):
        for j in range(i + 1, len(witnesses)):
            cert = certify_not_in_image(f, witnesses[i] - witnesses[j])
            if cert is None:
                raise ValueError(f"pair ({i}, {j}) is not certifiable")
            out.append((i, j, cert))
    return out


def brute_force_in_image(
    f: AdditivePoly, a: LaurentPoly, support_bound: int
) -> Optional[LaurentPoly]:
    """Exhaustively search for a1 with support in [-E, E] and f(a1) = a.

    Returns the first match in the canonical candidate order (dense
    coefficient vectors on [-E, E], each coefficient enumerated by its
    base-p index, exponents ascending), or None if no preimage exists within
    the bound. None is not a non-membership proof by itself.
    """
    if support_bound < 0:
        raise ValueError("support bound must be >= 0")
    if a.field != f.field:
        raise ValueError("element from a different field")
    field = f.field
    width = 2 * support_bound + 1
    if field.q**width > BRUTE_FORCE_CAP:
        raise CapExceededError(
            f"search space {field.q}^{width} exceeds cap {BRUTE_FORCE_CAP}"
        )
    exps = range(-support_bound, support_bound + 1)
    # images of c * x^e for every coefficient index and exponent
    images = {
        (e, n): f.eval(monomial(field.from_index(n), e))
        for e in exps
        for n in range(field.q)
    }
    for choice in itertools.product(range(field.q), repeat=width):
        acc = LaurentPoly.zero(field)
        for e, n in zip(exps, choice):
            if n:
                acc = acc + images[(e, n)]
        if acc == a:
            return LaurentPoly(
                field, {e: field.from_index(n) for e, n in zip(exps, choice) if n}
            )
    return None


@dataclass(frozen=True)
class KernelPoints:
    """F_p-basis of {x in F_(p^(k*k')) | f(x) = 0} for constant-coefficient f.

    ``embedding_root`` is the chosen root of the base field's modulus inside
    the extension, fixing the embedding under which f was transported.
    """

    field: FieldSpec
    basis: tuple[FqElem, ...]
    embedding_root: FqElem

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "basis": [list(b.coeffs) for b in self.basis],
            "embedding_root": list(self.embedding_root.coeffs),
            "dimension": self.dimension,
        }


def kernel_points(f: AdditivePoly, ext_degree: int) -> KernelPoints:
    """Kernel of f acting on the degree-``ext_degree`` extension of its
    coefficient field, as an independent F_p-spanning set.

    Requires every coefficient to be constant (a scalar, degree-0 Laurent
    term). f is then an F_p-linear operator on the extension, viewed as a
    k*k'-dimensional F_p-space, and the kernel falls out of exact
    elimination. Its dimension never exceeds m.
    """
    if ext_degree < 1:
        raise ValueError("extension degree must be >= 1")
    consts = []
    for b in f.coeffs:
        if b.is_zero:
            consts.append(f.field.zero())
        elif set(b.terms) == {0}:
            consts.append(b.terms[0])
        else:
            raise ValueError("kernel_points requires constant coefficients")

    p, k = f.field.p, f.field.k
    big = FieldSpec(p, k * ext_degree)  # cap enforced by FieldSpec

    # embed the coefficient field: send its generator to the smallest root
    # of its modulus inside the extension
    root = None
    for cand in big.elements():
        acc = big.zero()
        power = big.one()
        for c in f.field.modulus:
            acc = acc + big.element(c) * power
            power = power * cand
        if acc.is_zero:
            root = cand
            break
    assert root is not None, "base modulus has a root in every multiple-degree extension"

    def embed(x: FqElem) -> FqElem:
        acc = big.zero()
        power = big.one()
        for c in x.coeffs:
            acc = acc + big.element(c) * power
            power = power * root
        return acc

    big_coeffs = [embed(c) for c in consts]

    def apply(x: FqElem) -> FqElem:
        acc = big.zero()
        for i, b in enumerate(big_coeffs):
            if not b.is_zero:
                acc = acc + b * x.pow_p(i)
        return acc

    dim = big.k
    mat = np.zeros((dim, dim), dtype=np.int64)
    for j in range(dim):
        basis_j = big.element([0] * j + [1])
        mat[:, j] = apply(basis_j).coeffs
    null = linalg.nullspace(mat, p)

    basis = tuple(big.element(list(row)) for row in null)
    assert len(basis) <= f.m, "kernel dimension exceeded the Frobenius degree"
    for b in basis:
        assert apply(b).is_zero, "claimed kernel vector not annihilated"
    return KernelPoints(big, basis, root)
