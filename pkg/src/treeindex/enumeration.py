"""Isomorph-free generation of trees with a prescribed degree sequence and
exhaustive extremal search over such classes.

Generation strategy: split the degree sequence into its internal part
(entries >= 2, say k of them) and the leaf count.  Every tree with the
given degrees arises from a tree on k vertices (the internal skeleton)
whose vertices receive the internal degrees with non-negative slack, the
slack being filled with pendant vertices.  Internal skeletons stay tiny
(k <= 10 for n <= 22), so enumerating all free trees on k vertices and
deduplicating the decorated results by canonical form is cheap and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Iterator

from .spectral import spectral_radius
from .trees import (
    CanonicalForm,
    DegreeSequence,
    Tree,
    TreeError,
    arms,
    canonical_form,
    is_caterpillar,
    tree_from_edges,
)

__all__ = [
    "free_trees",
    "enumerate_trees",
    "enumerate_semiregular",
    "MinimizerObservations",
    "SearchReport",
    "find_minimizers",
    "find_maximizers",
    "tied_minimizer_examples",
    "TIED_MINIMIZER_CLASS",
]

DEFAULT_MAX_N = 22
DEFAULT_TIE_TOL = 1e-9
_STAGE2_TIE = 1e-12


# ---------------------------------------------------------------------------
# free-tree generation (internal skeletons)

@lru_cache(maxsize=None)
def _rooted_trees(k: int) -> tuple[tuple, ...]:
    """All rooted trees on k vertices as canonical nested tuples whose
    children are sorted."""
    if k == 1:
        return ((),)
    out: set[tuple] = set()
    for parts in _partitions(k - 1):
        groups: dict[int, int] = {}
        for p in parts:
            groups[p] = groups.get(p, 0) + 1
        choices = [
            list(combinations_with_replacement(_rooted_trees(size), count))
            for size, count in sorted(groups.items())
        ]
        for pick in product(*choices):
            kids: list[tuple] = []
            for group in pick:
                kids.extend(group)
            out.add(tuple(sorted(kids)))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _partitions(total: int) -> tuple[tuple[int, ...], ...]:
    if total == 0:
        return ((),)
    out = []
    def rec(remaining: int, cap: int, acc: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(acc)
            return
        for part in range(min(remaining, cap), 0, -1):
            rec(remaining - part, part, acc + (part,))
    rec(total, total, ())
    return tuple(out)


def _code_to_tree(code: tuple) -> Tree:
    edges: list[tuple[int, int]] = []
    counter = [0]

    def build(node: tuple, parent: int) -> None:
        me = counter[0]
        counter[0] += 1
        if parent >= 0:
            edges.append((parent, me))
        for child in node:
            build(child, me)

    build(code, -1)
    return tree_from_edges(counter[0], edges)


@lru_cache(maxsize=None)
def free_trees(k: int) -> tuple[Tree, ...]:
    """All non-isomorphic trees on k vertices, sorted by canonical code."""
    if k < 1:
        raise TreeError("free_trees needs k >= 1")
    seen: dict[CanonicalForm, Tree] = {}
    for code in _rooted_trees(k):
        t = _code_to_tree(code)
        seen.setdefault(canonical_form(t), t)
    return tuple(t for _, t in sorted(seen.items(), key=lambda kv: kv[0].sort_key()))


# ---------------------------------------------------------------------------
# degree-sequence enumeration

def _degree_assignments(skeleton: Tree, internal: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Distinct ways to hand the internal degree multiset to the skeleton
    vertices such that every vertex keeps non-negative pendant slack."""
    k = skeleton.vertex_count
    values = sorted(set(internal), reverse=True)
    counts = {v: internal.count(v) for v in values}
    assignment = [0] * k

    def rec(v: int) -> Iterator[tuple[int, ...]]:
        if v == k:
            yield tuple(assignment)
            return
        for value in values:
            if counts[value] == 0 or value < skeleton.degree(v):
                continue
            counts[value] -= 1
            assignment[v] = value
            yield from rec(v + 1)
            counts[value] += 1
        assignment[v] = 0

    yield from rec(0)


def enumerate_trees(pi: DegreeSequence) -> Iterator[Tree]:
    """Every tree with degree sequence pi exactly once up to isomorphism,
    in ascending canonical-code order."""
    if not pi.is_tree_realizable():
        raise TreeError(f"degree sequence {pi.compact()} is not realizable as a tree")
    if pi.degrees == (0,):
        yield tree_from_edges(1, [])
        return
    if pi.n == 2:
        yield tree_from_edges(2, [(0, 1)])
        return
    internal = tuple(x for x in pi.degrees if x >= 2)
    k = len(internal)
    leaves = pi.n - k
    found: dict[CanonicalForm, Tree] = {}
    for skeleton in free_trees(k):
        for assignment in _degree_assignments(skeleton, internal):
            edges = list(skeleton.edges())
            nxt = k
            for v in range(k):
                for _ in range(assignment[v] - skeleton.degree(v)):
                    edges.append((v, nxt))
                    nxt += 1
            assert nxt == k + leaves
            t = tree_from_edges(pi.n, edges)
            found.setdefault(canonical_form(t), t)
    for _, t in sorted(found.items(), key=lambda kv: kv[0].sort_key()):
        yield t


def enumerate_semiregular(d: int, n: int) -> Iterator[Tree]:
    """Trees on n vertices whose non-pendant vertices all have degree d."""
    return enumerate_trees(DegreeSequence.semiregular(d, n))


# ---------------------------------------------------------------------------
# extremal search

@dataclass(frozen=True)
class MinimizerObservations:
    """Shape flags recorded per extremal tree.

    buds_have_max_branch_degree: along every arm (proper-branch trunk, or
    half-trunk of a caterpillar read from the center), the bud attains the
    largest vertex degree.  trunk_degrees_monotone: the degrees along every
    arm are monotone from the hub outward.
    """

    is_caterpillar: bool
    buds_have_max_branch_degree: bool
    trunk_degrees_monotone: bool


def _observe(t: Tree) -> MinimizerObservations:
    cat = is_caterpillar(t)
    buds_max = True
    monotone = True
    for arm in arms(t):
        degs = [t.degree(v) for v in arm]
        if degs[-1] < max(degs):
            buds_max = False
        up = all(a <= b for a, b in zip(degs, degs[1:]))
        down = all(a >= b for a, b in zip(degs, degs[1:]))
        if not (up or down):
            monotone = False
    return MinimizerObservations(
        is_caterpillar=cat,
        buds_have_max_branch_degree=buds_max,
        trunk_degrees_monotone=monotone,
    )


@dataclass(frozen=True)
class SearchReport:
    """Outcome of an exhaustive extremal search over one degree-sequence
    class.  `gap_to_runner_up` is the raw index gap between the extremal
    value and the closest non-extremal tree (None when every tree in the
    class is extremal)."""

    pi: DegreeSequence
    tree_count: int
    min_mu: float
    minimizers: tuple[Tree, ...]
    minimizer_codes: tuple[CanonicalForm, ...]
    all_caterpillars: bool
    unique: bool
    observations: tuple[MinimizerObservations, ...]
    gap_to_runner_up: float | None

    def to_json(self) -> str:
        import json

        obj = {
            "pi": self.pi.compact(),
            "tree_count": self.tree_count,
            "min_mu": float(f"{self.min_mu:.17g}"),
            "minimizer_count": len(self.minimizers),
            "unique": self.unique,
            "all_caterpillars": self.all_caterpillars,
            "gap_to_runner_up": None
            if self.gap_to_runner_up is None
            else float(f"{self.gap_to_runner_up:.17g}"),
            "minimizers": [
                {
                    "canonical_code": code.code,
                    "edges": [list(e) for e in t.edges()],
                    "is_caterpillar": obs.is_caterpillar,
                    "buds_max_degree": obs.buds_have_max_branch_degree,
                    "trunk_monotone": obs.trunk_degrees_monotone,
                }
                for t, code, obs in zip(self.minimizers, self.minimizer_codes, self.observations)
            ],
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))

    def to_csv(self, mus: tuple[float, ...] | None = None) -> str:
        lines = ["canonical_code,mu,is_caterpillar,buds_max_degree,trunk_monotone"]
        for idx, (code, obs) in enumerate(zip(self.minimizer_codes, self.observations)):
            mu = self.min_mu if mus is None else mus[idx]
            lines.append(
                "%s,%.17g,%s,%s,%s"
                % (
                    code.code,
                    mu,
                    obs.is_caterpillar,
                    obs.buds_have_max_branch_degree,
                    obs.trunk_degrees_monotone,
                )
            )
        return "\n".join(lines) + "\n"


def _stage1_mu(t: Tree) -> float:
    return spectral_radius(t).mu


def _stage2_mu(t: Tree) -> float:
    return spectral_radius(t, tol=1e-14, max_iter=20_000, extended=True).mu


def _class_spectra(pi: DegreeSequence, max_n: int, jobs: int) -> tuple[list[Tree], list[float]]:
    if not pi.is_tree_realizable():
        raise TreeError(f"degree sequence {pi.compact()} is not realizable as a tree")
    if pi.n > max_n:
        raise TreeError(
            f"class has n={pi.n} > {max_n}; raise max_n explicitly for larger runs"
        )
    trees = list(enumerate_trees(pi))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            mus = list(pool.map(_stage1_mu, trees, chunksize=8))
    else:
        mus = [_stage1_mu(t) for t in trees]
    return trees, mus


def _extremal_report(
    pi: DegreeSequence,
    trees: list[Tree],
    mus: list[float],
    tie_tol: float,
    sign: int,
) -> SearchReport:
    """Two-stage extremal selection; sign=+1 minimizes, sign=-1 maximizes."""
    keyed = [sign * m for m in mus]
    best = min(keyed)
    candidates = [i for i, m in enumerate(keyed) if m <= best + tie_tol]
    if len(candidates) < len(trees):
        runner = min(m for i, m in enumerate(keyed) if i not in set(candidates))
        gap = runner - best
    else:
        gap = None
    if len(candidates) > 1:
        stage2 = {i: sign * _stage2_mu(trees[i]) for i in candidates}
        best2 = min(stage2.values())
        chosen = [i for i in candidates if stage2[i] <= best2 + _STAGE2_TIE]
        extremal_value = sign * best2
    else:
        chosen = candidates
        extremal_value = sign * keyed[candidates[0]]
    chosen_trees = tuple(trees[i] for i in chosen)
    codes = tuple(canonical_form(t) for t in chosen_trees)
    obs = tuple(_observe(t) for t in chosen_trees)
    return SearchReport(
        pi=pi,
        tree_count=len(trees),
        min_mu=float(extremal_value),
        minimizers=chosen_trees,
        minimizer_codes=codes,
        all_caterpillars=all(o.is_caterpillar for o in obs),
        unique=len(chosen_trees) == 1,
        observations=obs,
        gap_to_runner_up=gap,
    )


def find_minimizers(
    pi: DegreeSequence,
    tie_tol: float = DEFAULT_TIE_TOL,
    max_n: int = DEFAULT_MAX_N,
    jobs: int = 1,
) -> SearchReport:
    """Exhaustive index minimization over the class of trees with degree
    sequence pi.

    Trees within tie_tol of the stage-one minimum are re-resolved in
    extended precision; survivors are reported as tied minimizers.
    """
    trees, mus = _class_spectra(pi, max_n, jobs)
    return _extremal_report(pi, trees, mus, tie_tol, sign=+1)


def find_maximizers(
    pi: DegreeSequence,
    tie_tol: float = DEFAULT_TIE_TOL,
    max_n: int = DEFAULT_MAX_N,
    jobs: int = 1,
) -> tuple[Tree, ...]:
    """Index-maximizing trees of the class, for cross-checking the search
    machinery from the opposite extreme."""
    trees, mus = _class_spectra(pi, max_n, jobs)
    report = _extremal_report(pi, trees, mus, tie_tol, sign=-1)
    return report.minimizers


# ---------------------------------------------------------------------------
# reference class with tied, partly non-caterpillar minimizers

TIED_MINIMIZER_CLASS = DegreeSequence.parse("4^4,3^2,2,1^12")


def tied_minimizer_examples() -> tuple[Tree, Tree, Tree]:
    """Three pairwise non-isomorphic trees with degree sequence
    (4^4, 3^2, 2, 1^12) whose index is exactly sqrt(6).

    The first is not a caterpillar, so extremal trees of a fixed degree
    sequence need not be caterpillars and need not be unique.  The third
    has non-monotone degrees along its trunk.
    """
    symmetric_fork = tree_from_edges(
        19,
        [(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6),
         (3, 7), (3, 8), (3, 9), (4, 10), (4, 11), (4, 12),
         (5, 13), (5, 14), (5, 15), (6, 16), (6, 17), (6, 18)],
    )
    # caterpillars on trunk 0..6 with pendant loads (3,2,1,0,1,2,3) and
    # (3,1,2,0,1,2,3); trunk degrees (4,4,3,2,3,4,4) and (4,3,4,2,3,4,4).
    cat_a = tree_from_edges(
        19,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6),
         (0, 7), (0, 8), (0, 9), (1, 10), (1, 11), (2, 12),
         (4, 13), (5, 14), (5, 15), (6, 16), (6, 17), (6, 18)],
    )
    cat_b = tree_from_edges(
        19,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6),
         (0, 7), (0, 8), (0, 9), (1, 10), (2, 11), (2, 12),
         (4, 13), (5, 14), (5, 15), (6, 16), (6, 17), (6, 18)],
    )
    return symmetric_fork, cat_a, cat_b
