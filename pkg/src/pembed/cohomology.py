"""Group cohomology H^1(Pi, P) for a finite group acting linearly on an
elementary abelian module P = (Z/p)^r, by exact linear algebra over Z/p.

A 1-cocycle (crossed homomorphism) is a map c: Pi -> P with
c(st) = c(s) + s.c(t); it is stored flat as a vector of length |Pi|*r with
c(s) in block s. Z^1 is the nullspace of the full pairwise constraint
system, B^1 is spanned by the principal maps s -> s.v - v, and H^1 = Z^1/B^1
with lexicographically minimal coset representatives. A brute-force
enumeration of all maps Pi -> P doubles as an independent oracle on tiny
instances.

The module layer also identifies the kernel of an epimorphism as such a
module: basis, discrete-log coordinates, and the conjugation action induced
on it by a covered group (well-definedness checked representative by
representative).
"""

from __future__ import annotations

import itertools
from typing import Optional

import numpy as np

from . import linalg
from .errors import CapExceededError
from .groups import FiniteGroup, PGroupAction

H1_CAP = 2000
ORACLE_CAP = 10**6
REPS_CAP = 4096


class KernelModule:
    """An elementary abelian subgroup P = (Z/p)^r of an ambient group, with
    a deterministic basis and discrete-log coordinates for every element.

    The basis is greedy: scanning elements by ambient index, adjoin each one
    outside the span of those already chosen. For the trivial subgroup, p is
    None and r = 0.
    """

    __slots__ = ("group", "elements", "p", "r", "basis", "coords", "element_of")

    def __init__(self, group: FiniteGroup, elements):
        elements = tuple(sorted(set(int(a) for a in elements)))
        if group.identity not in elements:
            raise ValueError("subgroup must contain the identity")
        elem_set = set(elements)
        for a in elements:
            for b in elements:
                if group.mul(a, b) not in elem_set:
                    raise ValueError("element set is not closed under multiplication")
                if group.mul(a, b) != group.mul(b, a):
                    raise ValueError("kernel module must be abelian")

        if len(elements) == 1:
            p: Optional[int] = None
            r = 0
            basis: tuple[int, ...] = ()
            coords = {group.identity: ()}
        else:
            orders = {group.element_order(a) for a in elements if a != group.identity}
            if len(orders) != 1:
                raise ValueError("kernel module must have exponent p")
            p = orders.pop()
            size = len(elements)
            r = 0
            while size % p == 0 and size > 1:
                size //= p
                r += 1
            if size != 1 or not _is_prime(p):
                raise ValueError("kernel module must be elementary abelian of prime exponent")

            basis_list: list[int] = []
            span = {group.identity}
            for a in elements:
                if a not in span:
                    basis_list.append(a)
                    span = set(group.subgroup_generated(basis_list))
            basis = tuple(basis_list)
            if len(basis) != r:
                raise ValueError("independent generating set has the wrong size")

            coords = {}
            for vec in itertools.product(range(p), repeat=r):
                el = group.identity
                for b, c in zip(basis, vec):
                    for _ in range(c):
                        el = group.mul(el, b)
                coords[el] = vec
            if len(coords) != len(elements):
                raise ValueError("basis does not enumerate the subgroup freely")

        object.__setattr__(self, "group", group)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(
            self, "element_of", {v: k for k, v in coords.items()}
        )

    def __setattr__(self, name, value):
        raise AttributeError("KernelModule is immutable")

    def vec(self, element: int) -> np.ndarray:
        return np.array(self.coords[element], dtype=np.int64)

    def of_vec(self, vec) -> int:
        key = tuple(int(v) % self.p for v in vec) if self.p else ()
        return self.element_of[key]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def kernel_module(group: FiniteGroup, elements) -> KernelModule:
    return KernelModule(group, elements)


def module_and_action(problem) -> tuple[KernelModule, PGroupAction]:
    """The kernel P of an embedding problem as a module, together with the
    action of Pi on it: s acts by conjugation by any gamma representing
    alpha(s) under f. Independence of the representative is verified on
    every fiber element.
    """
    km = kernel_module(problem.gamma, problem.kernel_elements)
    pi, gamma = problem.pi, problem.gamma
    p = km.p if km.p is not None else 2
    r = km.r
    mats = np.zeros((pi.order, r, r), dtype=np.int64)
    for s in pi.elements():
        target = problem.alpha(s)
        fiber = [g for g in gamma.elements() if problem.f(g) == target]
        assert fiber, "alpha(s) not covered; f is not onto"
        mat_s = None
        for g in fiber:
            mat = np.zeros((r, r), dtype=np.int64)
            for j, b in enumerate(km.basis):
                conj = gamma.mul(gamma.mul(g, b), gamma.inv(g))
                if conj not in km.coords:
                    raise ValueError("kernel is not preserved by conjugation")
                mat[:, j] = km.coords[conj]
            if mat_s is None:
                mat_s = mat
            elif not np.array_equal(mat_s, mat):
                raise ValueError("conjugation action depends on the representative")
        mats[s] = mat_s
    return km, PGroupAction(pi, p, r, mats)


def action_from_problem(problem) -> PGroupAction:
    """The induced action of Pi on P = ker(f), via alpha."""
    return module_and_action(problem)[1]


class CocycleSpace:
    """Z^1, B^1 and H^1 for one (group, module, action) triple."""

    __slots__ = (
        "group", "p", "r", "action",
        "z_basis", "b_rref", "b_pivots",
        "dim_z", "dim_b", "dim_h1", "size_h1", "representatives",
    )

    def __init__(self, group, p, r, action, z_basis, b_rref, b_pivots):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "z_basis", z_basis)
        object.__setattr__(self, "b_rref", b_rref)
        object.__setattr__(self, "b_pivots", b_pivots)
        dim_z = z_basis.shape[0]
        dim_b = b_rref.shape[0]
        object.__setattr__(self, "dim_z", dim_z)
        object.__setattr__(self, "dim_b", dim_b)
        object.__setattr__(self, "dim_h1", dim_z - dim_b)
        object.__setattr__(self, "size_h1", p ** (dim_z - dim_b))
        object.__setattr__(self, "representatives", self._build_reps())

    def __setattr__(self, name, value):
        raise AttributeError("CocycleSpace is immutable")

    def _build_reps(self):
        if self.size_h1 > REPS_CAP:
            return None
        if self.dim_h1 == 0:
            return (tuple([0] * (self.group.order * self.r)),)
        reduced = np.array([self.reduce(z) for z in self.z_basis], dtype=np.int64)
        h_basis, h_pivots = linalg.rref(reduced, self.p)
        h_basis = h_basis[: len(h_pivots)]
        assert h_basis.shape[0] == self.dim_h1, "quotient basis has wrong rank"
        reps = []
        for coeffs in itertools.product(range(self.p), repeat=self.dim_h1):
            vec = (np.array(coeffs, dtype=np.int64) @ h_basis) % self.p
            reps.append(tuple(int(v) for v in vec))
        assert len(set(reps)) == self.size_h1
        return tuple(sorted(reps))

    def is_cocycle(self, vec) -> bool:
        """Exhaustive check of c(st) = c(s) + s.c(t) over all pairs."""
        n, r, p = self.group.order, self.r, self.p
        if r == 0:
            return len(np.asarray(vec).reshape(-1)) == 0
        c = np.asarray(vec, dtype=np.int64).reshape(n, r) % p
        mats = self.action.matrices
        table = self.group.table
        for s in range(n):
            rhs = (c[s][None, :] + (mats[s] @ c.T).T) % p
            if not np.array_equal(c[table[s]], rhs):
                return False
        return True

    def reduce(self, vec) -> np.ndarray:
        """Canonical (lexicographically minimal) representative of the
        cohomology class of a cocycle."""
        return linalg.reduce_vector(
            np.asarray(vec, dtype=np.int64), self.b_rref, self.b_pivots, self.p
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "dim_z1": self.dim_z,
            "dim_b1": self.dim_b,
            "dim_h1": self.dim_h1,
            "size_h1": self.size_h1,
            "z_basis": [[int(v) for v in row] for row in self.z_basis],
            "b_basis": [[int(v) for v in row] for row in self.b_rref],
            "representatives": None
            if self.representatives is None
            else [list(rep) for rep in self.representatives],
        }


def h1(pi: FiniteGroup, p: int, r: int, action: PGroupAction) -> CocycleSpace:
    """Solve the full pairwise cocycle system and quotient by coboundaries."""
    if action.group != pi or action.p != p or action.r != r:
        raise ValueError("action does not match the group and module")
    n = pi.order
    cols = n * r
    if cols > H1_CAP:
        raise CapExceededError(f"system size {cols} exceeds cap {H1_CAP}")

    if r == 0:
        empty = np.zeros((0, 0), dtype=np.int64)
        return CocycleSpace(pi, p, 0, action, empty, empty, [])

    mats = action.matrices
    table = pi.table

    def pair_rows(s: int) -> np.ndarray:
        # r rows per t: c(st) - c(s) - rho(s) c(t) = 0
        block = np.zeros((n * r, cols), dtype=np.int64)
        for t in range(n):
            st = table[s, t]
            rows = slice(t * r, (t + 1) * r)
            block[rows, st * r : (st + 1) * r] += np.eye(r, dtype=np.int64)
            block[rows, s * r : (s + 1) * r] -= np.eye(r, dtype=np.int64)
            block[rows, t * r : (t + 1) * r] -= mats[s]
        return block % p

    if n * n * r * cols <= 3 * 10**7:
        system = np.vstack([pair_rows(s) for s in range(n)])
        z_basis = linalg.nullspace(system, p)
    else:
        # accumulate the row space incrementally to bound memory
        basis = np.zeros((0, cols), dtype=np.int64)
        for s in range(n):
            stacked = np.vstack([basis, pair_rows(s)])
            red, pivots = linalg.rref(stacked, p)
            basis = red[: len(pivots)]
        z_basis = linalg.nullspace(basis, p)

    cob = np.zeros((r, cols), dtype=np.int64)
    for j in range(r):
        for s in range(n):
            cob[j, s * r : (s + 1) * r] = mats[s][:, j]
            cob[j, s * r + j] -= 1
    cob %= p
    b_rref, b_pivots = linalg.rref(cob, p)
    b_rref = b_rref[: len(b_pivots)]

    space = CocycleSpace(pi, p, r, action, z_basis, b_rref, b_pivots)

    # sanity: coboundaries are cocycles, and every cocycle kills the identity
    for row in b_rref:
        assert space.is_cocycle(row), "coboundary failed the cocycle identity"
    e = pi.identity
    for row in z_basis:
        assert not row[e * r : (e + 1) * r].any(), "cocycle nonzero at identity"
        assert space.is_cocycle(row)
    return space


def enumerate_cocycles_oracle(
    pi: FiniteGroup, p: int, r: int, action: PGroupAction
) -> list[tuple[int, ...]]:
    """Every map Pi -> (Z/p)^r satisfying the cocycle identity, found by
    testing all p^(|Pi|*r) candidates. Independent of the linear-algebra
    route; capped to tiny instances.
    """
    if action.group != pi or action.p != p or action.r != r:
        raise ValueError("action does not match the group and module")
    n = pi.order
    cols = n * r
    total = p**cols
    if total > ORACLE_CAP:
        raise CapExceededError(f"oracle space {p}^{cols} exceeds cap {ORACLE_CAP}")
    if cols == 0:
        return [()]

    idx = np.arange(total, dtype=np.int64)
    cand = np.zeros((total, cols), dtype=np.int64)
    for j in range(cols):
        cand[:, j] = idx // p**j % p

    mask = np.ones(total, dtype=bool)
    table = pi.table
    mats = action.matrices
    for s in range(n):
        for t in range(n):
            st = int(table[s, t])
            lhs = cand[:, st * r : (st + 1) * r]
            rhs = (
                cand[:, s * r : (s + 1) * r]
                + cand[:, t * r : (t + 1) * r] @ mats[s].T
            ) % p
            mask &= (lhs == rhs).all(axis=1)
    return [tuple(int(v) for v in cand[i]) for i in np.nonzero(mask)[0]]
