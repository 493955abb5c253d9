"""Finite embedding problems E = (alpha: Pi -> G, f: Gamma -> G).

A weak solution is a homomorphism beta: Pi -> Gamma with f . beta = alpha;
it is proper when surjective. Solutions are enumerated exhaustively over
generator images (restricted to the fibers of f, which is complete since
any solution must map a generator into the fiber over its alpha-image),
classified modulo conjugation by elements of the kernel P = ker(f), and
checked against H^1(Pi, P): picking any solution theta, the difference map
s -> beta(s) * theta(s)^(-1) lands in P, is a 1-cocycle for the induced
action, and induces a bijection between solution classes and cohomology
classes.

On top of that sit the fiber-power constructions: E_n replaces Gamma by the
n-fold fiber power, a proper solution of E_n projects to n weak solutions
of E that are pairwise inequivalent, and the semidirect-product pipeline
packages the whole chain into a report giving |H^1| >= n evidence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import cohomology
from .errors import CapExceededError
from .groups import (
    FiniteGroup,
    GroupHom,
    PGroupAction,
    elementary_abelian,
    extend_map,
    fiber_power,
    generator_words,
    identity_hom,
    is_hom_map,
    semidirect,
)

SOLUTION_SEARCH_CAP = 10**7
CROSS_CHECK_CAP = 10**4


@dataclass(frozen=True)
class EmbeddingProblem:
    """Validated problem data: two epimorphisms onto a shared G, with the
    kernel of f and derived flags."""

    alpha: GroupHom
    f: GroupHom
    pi: FiniteGroup
    gamma: FiniteGroup
    g: FiniteGroup
    kernel_elements: tuple[int, ...]
    is_split: bool
    is_p_problem: bool
    p: Optional[int]
    r: Optional[int]

    @property
    def kernel_order(self) -> int:
        return len(self.kernel_elements)

    def to_json(self) -> dict:
        return {
            "pi": self.pi.to_json(),
            "gamma": self.gamma.to_json(),
            "g": self.g.to_json(),
            "alpha": [int(v) for v in self.alpha.mapping],
            "f": [int(v) for v in self.f.mapping],
            "kernel_order": self.kernel_order,
            "is_split": self.is_split,
            "is_p_problem": self.is_p_problem,
            "p": self.p,
            "r": self.r,
        }


def _prime_power(n: int) -> tuple[Optional[int], Optional[int]]:
    """(p, r) with n = p^r for prime p, else (None, None)."""
    if n < 2:
        return None, None
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        p = n
    r = 0
    while n % p == 0:
        n //= p
        r += 1
    return (p, r) if n == 1 else (None, None)


def _fiber_search(
    alpha: GroupHom, f: GroupHom, first_only: bool = False
) -> list[GroupHom]:
    """All homs beta with f . beta = alpha, enumerated lexicographically in
    generator images drawn from the fibers of f."""
    pi, gamma = alpha.domain, f.domain
    gens = pi.generating_set()
    if gamma.order ** len(gens) > SOLUTION_SEARCH_CAP:
        raise CapExceededError(
            f"search space {gamma.order}^{len(gens)} exceeds cap {SOLUTION_SEARCH_CAP}"
        )
    words = generator_words(pi, gens)
    fibers = [
        [x for x in gamma.elements() if f(x) == alpha(gen)] for gen in gens
    ]
    out = []
    alpha_map = alpha.mapping
    f_map = f.mapping
    for images in itertools.product(*fibers):
        m = extend_map(pi, gamma, words, images)
        if not np.array_equal(f_map[m], alpha_map):
            continue
        if not is_hom_map(pi, gamma, m):
            continue
        out.append(GroupHom(pi, gamma, m))
        if first_only:
            break
    return out


def make_problem(alpha: GroupHom, f: GroupHom) -> EmbeddingProblem:
    """Validate and package an embedding problem."""
    if alpha.codomain != f.codomain:
        raise ValueError("alpha and f must share a codomain")
    if not alpha.is_epi():
        raise ValueError("alpha must be surjective")
    if not f.is_epi():
        raise ValueError("f must be surjective")
    g = alpha.codomain
    kernel = f.kernel_elements()
    p, r = _prime_power(len(kernel))
    is_p = len(kernel) == 1 or p is not None
    sections = _fiber_search(identity_hom(g), f, first_only=True)
    return EmbeddingProblem(
        alpha=alpha,
        f=f,
        pi=alpha.domain,
        gamma=f.domain,
        g=g,
        kernel_elements=kernel,
        is_split=bool(sections),
        is_p_problem=is_p,
        p=p,
        r=r if p is not None else (0 if len(kernel) == 1 else None),
    )


def weak_solutions(problem: EmbeddingProblem) -> list[GroupHom]:
    """Every homomorphism beta: Pi -> Gamma with f . beta = alpha, in
    deterministic lexicographic order of generator images."""
    return _fiber_search(problem.alpha, problem.f)


@dataclass(frozen=True)
class SolutionClassification:
    """Weak solutions partitioned by conjugation with kernel elements."""

    solutions: tuple[GroupHom, ...]
    proper: tuple[bool, ...]
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def to_json(self) -> dict:
        return {
            "num_solutions": len(self.solutions),
            "solutions": [[int(v) for v in s.mapping] for s in self.solutions],
            "proper": list(self.proper),
            "classes": [list(c) for c in self.classes],
            "representatives": list(self.representatives),
        }


def _conjugate_map(gamma: FiniteGroup, q: int, mapping: np.ndarray) -> np.ndarray:
    qinv = gamma.inv(q)
    return gamma.table[q, gamma.table[mapping, qinv]]


def classify_solutions(problem: EmbeddingProblem) -> SolutionClassification:
    """Partition weak solutions into inn(P)-equivalence classes; the class
    representative is the earliest solution in enumeration order."""
    sols = weak_solutions(problem)
    gamma = problem.gamma
    index = {tuple(int(v) for v in b.mapping): i for i, b in enumerate(sols)}
    proper = tuple(b.is_epi() for b in sols)

    assigned = [-1] * len(sols)
    classes: list[tuple[int, ...]] = []
    for i, beta in enumerate(sols):
        if assigned[i] >= 0:
            continue
        orbit = set()
        for q in problem.kernel_elements:
            conj = tuple(int(v) for v in _conjugate_map(gamma, q, beta.mapping))
            assert conj in index, "conjugate of a weak solution must be one"
            orbit.add(index[conj])
        cls = tuple(sorted(orbit))
        for j in cls:
            assigned[j] = len(classes)
        classes.append(cls)

    for cls in classes:
        flags = {proper[j] for j in cls}
        assert len(flags) == 1, "properness must be constant on a class"
    return SolutionClassification(
        solutions=tuple(sols),
        proper=proper,
        classes=tuple(classes),
        representatives=tuple(cls[0] for cls in classes),
    )


@dataclass(frozen=True)
class TorsorReport:
    """Outcome of comparing solution classes with H^1(Pi, P)."""

    num_solutions: int
    num_classes: int
    h1_size: int
    dim_z: int
    dim_b: int
    dim_h1: int
    cocycles_ok: bool
    well_defined: bool
    injective: bool
    surjective: bool
    sizes_equal: bool
    ok: bool
    assignments: tuple[tuple[int, tuple[int, ...]], ...]
    theta_mapping: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "num_solutions": self.num_solutions,
            "num_classes": self.num_classes,
            "h1_size": self.h1_size,
            "dim_z1": self.dim_z,
            "dim_b1": self.dim_b,
            "dim_h1": self.dim_h1,
            "cocycles_ok": self.cocycles_ok,
            "well_defined": self.well_defined,
            "injective": self.injective,
            "surjective": self.surjective,
            "sizes_equal": self.sizes_equal,
            "ok": self.ok,
            "assignments": [
                {"class": c, "h1_representative": list(rep)} for c, rep in self.assignments
            ],
            "theta": list(self.theta_mapping),
        }


def torsor_check(
    problem: EmbeddingProblem, theta: Optional[GroupHom] = None
) -> TorsorReport:
    """Verify that solution classes form a torsor mirror of H^1(Pi, P):
    difference maps against a base solution theta are cocycles, constant on
    classes, and hit each cohomology class exactly once."""
    classification = classify_solutions(problem)
    sols = classification.solutions
    if not sols:
        raise ValueError("problem has no weak solution")
    km, action = cohomology.module_and_action(problem)
    p_eff = km.p if km.p is not None else 2
    space = cohomology.h1(problem.pi, p_eff, km.r, action)

    if theta is None:
        theta = sols[0]
    else:
        if theta.domain != problem.pi or theta.codomain != problem.gamma:
            raise ValueError("theta must map Pi to Gamma")
        if not np.array_equal(problem.f.mapping[theta.mapping], problem.alpha.mapping):
            raise ValueError("theta is not a weak solution")

    gamma = problem.gamma
    n, r = problem.pi.order, km.r
    theta_inv = np.array([gamma.inv(int(v)) for v in theta.mapping], dtype=np.int64)

    def difference_vector(beta: GroupHom) -> np.ndarray:
        vec = np.zeros(n * r, dtype=np.int64)
        for s in range(n):
            q = gamma.mul(beta(s), int(theta_inv[s]))
            if q not in km.coords:
                raise ValueError("difference map left the kernel")
            vec[s * r : (s + 1) * r] = km.coords[q]
        return vec

    diffs = [difference_vector(b) for b in sols]
    cocycles_ok = all(space.is_cocycle(d) for d in diffs)

    reduced = [tuple(int(v) for v in space.reduce(d)) for d in diffs]
    well_defined = all(
        len({reduced[j] for j in cls}) == 1 for cls in classification.classes
    )
    class_reps = [reduced[cls[0]] for cls in classification.classes]
    injective = len(set(class_reps)) == len(class_reps)
    if space.representatives is not None:
        surjective = set(class_reps) == set(space.representatives)
    else:
        surjective = len(set(class_reps)) == space.size_h1
    sizes_equal = classification.num_classes == space.size_h1
    ok = cocycles_ok and well_defined and injective and surjective and sizes_equal

    return TorsorReport(
        num_solutions=len(sols),
        num_classes=classification.num_classes,
        h1_size=space.size_h1,
        dim_z=space.dim_z,
        dim_b=space.dim_b,
        dim_h1=space.dim_h1,
        cocycles_ok=cocycles_ok,
        well_defined=well_defined,
        injective=injective,
        surjective=surjective,
        sizes_equal=sizes_equal,
        ok=ok,
        assignments=tuple(
            (c, rep) for c, rep in enumerate(class_reps)
        ),
        theta_mapping=tuple(int(v) for v in theta.mapping),
    )


def fiber_problem(problem: EmbeddingProblem, n: int) -> EmbeddingProblem:
    """The problem E_n with Gamma replaced by its n-fold fiber power over G;
    its kernel is P^n."""
    group, f_n, _ = fiber_power(problem.f, n)
    result = make_problem(problem.alpha, f_n)
    assert result.kernel_order == problem.kernel_order**n
    return result


@dataclass(frozen=True)
class ProjectionReport:
    """The n projected solutions of the base problem, with the pairwise
    inequivalence verdict."""

    projections: tuple[GroupHom, ...]
    proper: tuple[bool, ...]
    pairwise_inequivalent: bool
    equivalent_pairs: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "num_projections": len(self.projections),
            "projections": [[int(v) for v in b.mapping] for b in self.projections],
            "proper": list(self.proper),
            "pairwise_inequivalent": self.pairwise_inequivalent,
            "equivalent_pairs": [list(p) for p in self.equivalent_pairs],
        }


def projection_solutions(
    problem: EmbeddingProblem, n: int, beta: GroupHom
) -> ProjectionReport:
    """Compose a proper solution of E_n with the n projections; each result
    is a weak solution of E, and no kernel element conjugates one into
    another (checked exhaustively)."""
    if problem.kernel_order <= 1:
        raise ValueError("construction needs a nontrivial kernel")
    group, f_n, projections = fiber_power(problem.f, n)
    if beta.domain != problem.pi or beta.codomain != group:
        raise ValueError("beta must map Pi to the fiber power")
    if not np.array_equal(f_n.mapping[beta.mapping], problem.alpha.mapping):
        raise ValueError("beta is not a weak solution of the fiber problem")
    if not beta.is_epi():
        raise ValueError("beta must be proper")

    projected = tuple(pr.compose(beta) for pr in projections)
    for b in projected:
        assert np.array_equal(
            problem.f.mapping[b.mapping], problem.alpha.mapping
        ), "projection is not a weak solution"
    proper = tuple(b.is_epi() for b in projected)

    gamma = problem.gamma
    equivalent = []
    for i in range(n):
        for j in range(i + 1, n):
            for q in problem.kernel_elements:
                conj = _conjugate_map(gamma, q, projected[i].mapping)
                if np.array_equal(conj, projected[j].mapping):
                    equivalent.append((i, j))
                    break
    return ProjectionReport(
        projections=projected,
        proper=proper,
        pairwise_inequivalent=not equivalent,
        equivalent_pairs=tuple(equivalent),
    )


@dataclass(frozen=True)
class DominationReport:
    """Finite-scale cohomology-growth evidence for one (G, P, action, n).

    Everything here is a statement about the specific finite groups built
    for the run; growth in n is reported as the verified inequality
    |H^1| >= n, never as an infinitude claim.
    """

    g_order: int
    p: int
    r: int
    n: int
    gamma_order: int
    fiber_order: int
    h1_size: int
    dim_h1: int
    pairwise_inequivalent: bool
    projections_proper: tuple[bool, ...]
    h1_at_least_n: bool
    verdict: bool
    ws_classes: Optional[int]
    ws_matches_h1: Optional[bool]
    banner: str = "finite-scale analogue: evidence is the verified bound |H1| >= n"
    assumption: str = "profinite hypothesis cd_p <= 1 is out of scope and not checked"

    def to_json(self) -> dict:
        return {
            "g_order": self.g_order,
            "p": self.p,
            "r": self.r,
            "n": self.n,
            "gamma_order": self.gamma_order,
            "fiber_order": self.fiber_order,
            "h1_size": self.h1_size,
            "dim_h1": self.dim_h1,
            "pairwise_inequivalent": self.pairwise_inequivalent,
            "projections_proper": list(self.projections_proper),
            "h1_at_least_n": self.h1_at_least_n,
            "verdict": self.verdict,
            "ws_classes": self.ws_classes,
            "ws_matches_h1": self.ws_matches_h1,
            "banner": self.banner,
            "assumption": self.assumption,
        }


def domination_evidence(
    g_group: FiniteGroup,
    p: int,
    r: int,
    action: PGroupAction,
    n: int,
    ws_cross_check: str = "auto",
) -> DominationReport:
    """Build Gamma = P x| G, take Pi to be the n-fold fiber power of
    Gamma -> G with alpha = f_n, project the identity solution, and compare
    the resulting n pairwise-inequivalent solutions with an independently
    computed |H^1(Pi, P)|."""
    if r < 1:
        raise ValueError("P must be nontrivial")
    if n < 1:
        raise ValueError("n must be >= 1")
    p_group = elementary_abelian(p, r)
    gamma, _, pi_hom, _ = semidirect(p_group, g_group, action)
    group, f_n, _ = fiber_power(pi_hom, n)

    problem = make_problem(f_n, pi_hom)
    beta = identity_hom(group)
    projections = projection_solutions(problem, n, beta)

    km, induced = cohomology.module_and_action(problem)
    assert km.p == p and km.r == r, "kernel module must match (p, r)"
    space = cohomology.h1(group, p, r, induced)

    ws_classes = None
    ws_matches = None
    do_check = ws_cross_check == "always" or (
        ws_cross_check == "auto"
        and problem.kernel_order ** len(group.generating_set()) <= CROSS_CHECK_CAP
    )
    if do_check:
        ws_classes = classify_solutions(problem).num_classes
        ws_matches = ws_classes == space.size_h1

    return DominationReport(
        g_order=g_group.order,
        p=p,
        r=r,
        n=n,
        gamma_order=gamma.order,
        fiber_order=group.order,
        h1_size=space.size_h1,
        dim_h1=space.dim_h1,
        pairwise_inequivalent=projections.pairwise_inequivalent,
        projections_proper=projections.proper,
        h1_at_least_n=space.size_h1 >= n,
        verdict=space.size_h1 >= n and projections.pairwise_inequivalent,
        ws_classes=ws_classes,
        ws_matches_h1=ws_matches,
    )
