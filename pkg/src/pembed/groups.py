"""Finite groups as explicit multiplication tables, at desk scale.

Groups are numpy index tables validated exhaustively at construction
(associativity, identity, inverses); homomorphisms are full element maps
checked on every pair. On top of these sit the two product constructions
used by the embedding machinery: the semidirect product P x| G for a linear
action of G on P = (Z/p)^r, and the n-fold fiber power of an epimorphism
f: Gamma -> G (tuples with a common image under f).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapExceededError

GROUP_ORDER_CAP = 200
HOM_SEARCH_CAP = 10**7


class FiniteGroup:
    """A group given by its full multiplication table over indices 0..n-1."""

    __slots__ = ("table", "labels", "identity", "_inverses")

    def __init__(self, table, labels: Optional[Sequence[str]] = None):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError("multiplication table must be square")
        n = table.shape[0]
        if n < 1:
            raise ValueError("group must have at least one element")
        if n > GROUP_ORDER_CAP:
            raise CapExceededError(f"group order {n} exceeds cap {GROUP_ORDER_CAP}")
        if table.min() < 0 or table.max() >= n:
            raise ValueError("table entries must be element indices")

        identity = None
        idx = np.arange(n)
        for e in range(n):
            if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
                identity = e
                break
        if identity is None:
            raise ValueError("table has no identity element")

        inverses = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.nonzero(table[a] == identity)[0]
            if len(hits) == 0 or table[hits[0], a] != identity:
                raise ValueError(f"element {a} has no two-sided inverse")
            inverses[a] = hits[0]

        for a in range(n):
            # (a*b)*c vs a*(b*c) for all b, c at once
            if not np.array_equal(table[table[a]], table[a][table]):
                raise ValueError("table is not associative")

        if labels is None:
            labels = [str(i) for i in range(n)]
        labels = tuple(str(l) for l in labels)
        if len(labels) != n:
            raise ValueError("label count must match order")

        table.setflags(write=False)
        inverses.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "_inverses", inverses)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inverses[a])

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    __hash__ = None

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def subgroup_generated(self, gens: Iterable[int]) -> tuple[int, ...]:
        """Closure of gens under multiplication (sorted element indices)."""
        span = {self.identity}
        frontier = [self.identity]
        gens = sorted(set(int(g) for g in gens))
        for g in gens:
            if g not in span:
                span.add(g)
                frontier.append(g)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in span:
                    span.add(y)
                    frontier.append(y)
        return tuple(sorted(span))

    def generating_set(self) -> list[int]:
        """Greedy generating set: repeatedly adjoin the smallest-index
        element outside the generated subgroup. Deterministic."""
        gens: list[int] = []
        span = {self.identity}
        while len(span) < self.order:
            nxt = min(a for a in self.elements() if a not in span)
            gens.append(nxt)
            span = set(self.subgroup_generated(gens))
        return gens

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "table": [int(v) for v in self.table.reshape(-1)],
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        n = int(data["order"])
        table = np.array(data["table"], dtype=np.int64).reshape(n, n)
        return cls(table, data.get("labels"))


# -- constructors ---------------------------------------------------------------


def trivial() -> FiniteGroup:
    return FiniteGroup([[0]], labels=["e"])


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(table, labels=[str(i) for i in range(n)])


def symmetric_elements(n: int) -> list[tuple[int, ...]]:
    """All permutations of 0..n-1 in lexicographic one-line order."""
    return sorted(itertools.permutations(range(n)))


def perm_parity(perm: Sequence[int]) -> int:
    """0 for even, 1 for odd permutations."""
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return inv % 2


def symmetric(n: int) -> FiniteGroup:
    """S_n on 0..n-1; element order is lexicographic in one-line notation;
    composition is (s*t)(x) = s(t(x))."""
    if not 1 <= n <= 5:
        raise ValueError("symmetric(n) supports 1 <= n <= 5")
    perms = symmetric_elements(n)
    index = {p: i for i, p in enumerate(perms)}
    order = len(perms)
    table = np.zeros((order, order), dtype=np.int64)
    for i, s in enumerate(perms):
        for j, t in enumerate(perms):
            table[i, j] = index[tuple(s[t[x]] for x in range(n))]
    labels = ["".join(map(str, p)) for p in perms]
    return FiniteGroup(table, labels=labels)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Componentwise product; index (a, b) -> a * |H| + b."""
    nh = h.order
    order = g.order * nh
    if order > GROUP_ORDER_CAP:
        raise CapExceededError(f"product order {order} exceeds cap {GROUP_ORDER_CAP}")
    table = np.zeros((order, order), dtype=np.int64)
    for a in g.elements():
        for b in h.elements():
            table[a * nh + b] = (g.table[a][:, None] * nh + h.table[b][None, :]).reshape(-1)
    labels = [f"({g.labels[a]},{h.labels[b]})" for a in g.elements() for b in h.elements()]
    return FiniteGroup(table, labels=labels)


def ea_vector(p: int, r: int, idx: int) -> np.ndarray:
    """Digits of idx base p, least significant first: the vector of element
    number idx in elementary_abelian(p, r)."""
    out = np.zeros(r, dtype=np.int64)
    for j in range(r):
        out[j] = idx % p
        idx //= p
    return out


def ea_index(p: int, vec: Sequence[int]) -> int:
    return int(sum((int(v) % p) * p**j for j, v in enumerate(vec)))


def elementary_abelian(p: int, r: int) -> FiniteGroup:
    """(Z/p)^r; element index sum v_j * p^j."""
    if p < 2:
        raise ValueError("p must be at least 2")
    if r < 0:
        raise ValueError("rank must be >= 0")
    order = p**r
    if order > GROUP_ORDER_CAP:
        raise CapExceededError(f"group order {order} exceeds cap {GROUP_ORDER_CAP}")
    vecs = [ea_vector(p, r, i) for i in range(order)]
    table = np.zeros((order, order), dtype=np.int64)
    for i, v in enumerate(vecs):
        for j, w in enumerate(vecs):
            table[i, j] = ea_index(p, (v + w) % p)
    labels = ["(" + ",".join(map(str, v)) + ")" for v in vecs]
    return FiniteGroup(table, labels=labels)


def from_table(table, labels: Optional[Sequence[str]] = None) -> FiniteGroup:
    return FiniteGroup(table, labels)


# -- homomorphisms ----------------------------------------------------------------


class GroupHom:
    """A homomorphism stored as a full element map, verified on all pairs."""

    __slots__ = ("domain", "codomain", "mapping")

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, mapping):
        m = np.array([int(v) for v in mapping], dtype=np.int64)
        if m.shape != (domain.order,):
            raise ValueError("map must assign an image to every element")
        if m.min() < 0 or m.max() >= codomain.order:
            raise ValueError("map values must be codomain indices")
        lhs = m[domain.table]
        rhs = codomain.table[m][:, m]
        if not np.array_equal(lhs, rhs):
            raise ValueError("map does not respect the group law")
        m.setflags(write=False)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "mapping", m)

    def __setattr__(self, name, value):
        raise AttributeError("GroupHom is immutable")

    def __call__(self, a: int) -> int:
        return int(self.mapping[a])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and np.array_equal(self.mapping, other.mapping)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"GroupHom({self.domain.order} -> {self.codomain.order}, {list(self.mapping)})"

    def kernel_elements(self) -> tuple[int, ...]:
        return tuple(int(a) for a in np.nonzero(self.mapping == self.codomain.identity)[0])

    def image_elements(self) -> tuple[int, ...]:
        return tuple(sorted(set(int(v) for v in self.mapping)))

    def is_epi(self) -> bool:
        return len(set(int(v) for v in self.mapping)) == self.codomain.order

    def is_iso(self) -> bool:
        return self.domain.order == self.codomain.order and self.is_epi()

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if other.codomain != self.domain:
            raise ValueError("composition domains do not match")
        return GroupHom(other.domain, self.codomain, self.mapping[other.mapping])

    def to_json(self) -> dict:
        return {"map": [int(v) for v in self.mapping]}


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, np.arange(g.order))


def trivial_hom(domain: FiniteGroup, codomain: FiniteGroup) -> GroupHom:
    return GroupHom(domain, codomain, [codomain.identity] * domain.order)


@dataclass(frozen=True)
class HomAnalysis:
    kernel: tuple[int, ...]
    image: tuple[int, ...]
    is_epi: bool
    is_iso: bool


def hom_analysis(h: GroupHom) -> HomAnalysis:
    return HomAnalysis(h.kernel_elements(), h.image_elements(), h.is_epi(), h.is_iso())


def generator_words(group: FiniteGroup, gens: Sequence[int]):
    """BFS spanning data over positive words in gens: returns (visit order,
    parent, generator index) so that element = parent * gens[index].

    Requires gens to generate the whole group.
    """
    n = group.order
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    order = [group.identity]
    seen = {group.identity}
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for gi, g in enumerate(gens):
            y = group.mul(x, g)
            if y not in seen:
                seen.add(y)
                parent[y] = x
                via[y] = gi
                order.append(y)
    if len(order) != n:
        raise ValueError("generators do not generate the group")
    return order, parent, via


def extend_map(
    domain: FiniteGroup,
    codomain: FiniteGroup,
    words,
    images: Sequence[int],
) -> np.ndarray:
    """Extend generator images along the BFS word data to a full map
    (not necessarily a homomorphism; callers verify)."""
    order, parent, via = words
    m = np.zeros(domain.order, dtype=np.int64)
    m[domain.identity] = codomain.identity
    for x in order[1:]:
        m[x] = codomain.table[m[parent[x]], images[via[x]]]
    return m


def is_hom_map(domain: FiniteGroup, codomain: FiniteGroup, m: np.ndarray) -> bool:
    return np.array_equal(m[domain.table], codomain.table[m][:, m])


def all_homs(domain: FiniteGroup, codomain: FiniteGroup) -> list[GroupHom]:
    """Every homomorphism domain -> codomain, by exhaustive search over
    generator images; deterministic lexicographic order."""
    gens = domain.generating_set()
    if not gens:
        return [trivial_hom(domain, codomain)]
    if codomain.order ** len(gens) > HOM_SEARCH_CAP:
        raise CapExceededError(
            f"search space {codomain.order}^{len(gens)} exceeds cap {HOM_SEARCH_CAP}"
        )
    words = generator_words(domain, gens)
    out = []
    for images in itertools.product(codomain.elements(), repeat=len(gens)):
        m = extend_map(domain, codomain, words, images)
        if is_hom_map(domain, codomain, m):
            out.append(GroupHom(domain, codomain, m))
    return out


# -- linear actions and products ---------------------------------------------------


class PGroupAction:
    """An action of a finite group on P = (Z/p)^r by invertible matrices."""

    __slots__ = ("group", "p", "r", "matrices")

    def __init__(self, group: FiniteGroup, p: int, r: int, matrices):
        if p < 2:
            raise ValueError("p must be at least 2")
        if r < 0:
            raise ValueError("rank must be >= 0")
        mats = np.array(matrices, dtype=np.int64) % p
        if mats.shape != (group.order, r, r):
            raise ValueError(f"need one {r}x{r} matrix per group element")
        if r > 0:
            if not np.array_equal(mats[group.identity], np.eye(r, dtype=np.int64)):
                raise ValueError("identity must act as the identity matrix")
            for g in group.elements():
                prod = np.einsum("ij,njk->nik", mats[g], mats) % p
                if not np.array_equal(prod, mats[group.table[g]]):
                    raise ValueError("matrices do not respect the group law")
        mats.setflags(write=False)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "matrices", mats)

    def __setattr__(self, name, value):
        raise AttributeError("PGroupAction is immutable")

    @classmethod
    def trivial(cls, group: FiniteGroup, p: int, r: int) -> "PGroupAction":
        mats = np.broadcast_to(np.eye(r, dtype=np.int64), (group.order, r, r))
        return cls(group, p, r, np.array(mats))

    def apply(self, g: int, vec) -> np.ndarray:
        return (self.matrices[g] @ np.asarray(vec, dtype=np.int64)) % self.p

    def module_group(self) -> FiniteGroup:
        return elementary_abelian(self.p, self.r)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "matrices": [[[int(v) for v in row] for row in m] for m in self.matrices],
        }


def semidirect(
    p_group: FiniteGroup, g_group: FiniteGroup, action: PGroupAction
) -> tuple[FiniteGroup, GroupHom, GroupHom, GroupHom]:
    """P x| G for a linear action of G on P = (Z/p)^r.

    Returns (Gamma, iota: P -> Gamma, pi: Gamma -> G, section: G -> Gamma)
    with pi * iota trivial, pi * section = id, iota(P) = ker(pi). Element
    (v, g) has index v_idx * |G| + g_idx; (v,g)(w,h) = (v + g.w, gh).
    """
    if action.group != g_group:
        raise ValueError("action must be an action of G")
    if p_group != action.module_group():
        raise ValueError("P must be the elementary abelian module of the action")
    p, r = action.p, action.r
    ng = g_group.order
    order = p_group.order * ng
    if order > GROUP_ORDER_CAP:
        raise CapExceededError(f"semidirect order {order} exceeds cap {GROUP_ORDER_CAP}")
    vecs = [ea_vector(p, r, i) for i in range(p_group.order)]
    table = np.zeros((order, order), dtype=np.int64)
    labels = []
    for vi in range(p_group.order):
        for g in range(ng):
            labels.append(f"({p_group.labels[vi]},{g_group.labels[g]})")
            for wi in range(p_group.order):
                tw = ea_index(p, (vecs[vi] + action.apply(g, vecs[wi])) % p)
                row = tw * ng + g_group.table[g]
                table[vi * ng + g, wi * ng : wi * ng + ng] = row
    gamma = FiniteGroup(table, labels=labels)

    e_g = g_group.identity
    iota = GroupHom(p_group, gamma, [vi * ng + e_g for vi in range(p_group.order)])
    pi = GroupHom(gamma, g_group, [i % ng for i in range(order)])
    section = GroupHom(g_group, gamma, list(range(ng)))

    assert all(pi(iota(v)) == e_g for v in p_group.elements())
    assert all(pi(section(g)) == g for g in g_group.elements())
    assert set(iota.mapping) == set(pi.kernel_elements())
    return gamma, iota, pi, section


def fiber_power(
    f: GroupHom, n: int
) -> tuple[FiniteGroup, GroupHom, list[GroupHom]]:
    """The subgroup of Gamma^n of tuples with a common image under f.

    Returns (group, f_n, [pr_1..pr_n]); elements are ordered by sorted tuple,
    multiplication is componentwise, f_n maps a tuple to f(first component).
    """
    if n < 1:
        raise ValueError("fiber power needs n >= 1")
    if not f.is_epi():
        raise ValueError("fiber power needs an epimorphism")
    gamma, g_group = f.domain, f.codomain
    kernel_size = len(f.kernel_elements())
    order = kernel_size**n * g_group.order
    if order > GROUP_ORDER_CAP:
        raise CapExceededError(f"fiber power order {order} exceeds cap {GROUP_ORDER_CAP}")

    fibers = {
        g: [x for x in gamma.elements() if f(x) == g] for g in g_group.elements()
    }
    tuples = sorted(
        t for g in g_group.elements() for t in itertools.product(fibers[g], repeat=n)
    )
    assert len(tuples) == order
    index = {t: i for i, t in enumerate(tuples)}

    table = np.zeros((order, order), dtype=np.int64)
    for i, s in enumerate(tuples):
        for j, t in enumerate(tuples):
            table[i, j] = index[tuple(gamma.mul(a, b) for a, b in zip(s, t))]
    labels = ["(" + ",".join(gamma.labels[a] for a in t) + ")" for t in tuples]
    group = FiniteGroup(table, labels=labels)

    f_n = GroupHom(group, g_group, [f(t[0]) for t in tuples])
    projections = [
        GroupHom(group, gamma, [t[i] for t in tuples]) for i in range(n)
    ]
    for pr in projections:
        assert np.array_equal(f.mapping[pr.mapping], f_n.mapping)
    return group, f_n, projections
