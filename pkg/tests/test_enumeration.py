"""Generator soundness and extremal search, cross-checked against known
free-tree counts and a brute-force labeled enumeration."""

import math
from itertools import product

import numpy as np
import pytest

from treeindex.enumeration import (
    TIED_MINIMIZER_CLASS,
    enumerate_semiregular,
    enumerate_trees,
    find_maximizers,
    find_minimizers,
    free_trees,
    tied_minimizer_examples,
)
from treeindex.spectral import adjacency_matrix, spectral_radius
from treeindex.trees import (
    DegreeSequence,
    TreeError,
    canonical_form,
    is_caterpillar,
    make_caterpillar,
    make_star,
    tree_from_edges,
)

# number of non-isomorphic trees on 1..10 vertices
FREE_TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


def prufer_tree(seq, n):
    """Labeled tree on n vertices from one length n-2 sequence."""
    import heapq

    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return tree_from_edges(n, edges)


def brute_force_classes(n):
    """All non-isomorphic trees on n vertices via labeled enumeration,
    grouped by degree sequence."""
    classes = {}
    if n == 1:
        classes[(0,)] = {canonical_form(tree_from_edges(1, []))}
        return classes
    if n == 2:
        classes[(1, 1)] = {canonical_form(tree_from_edges(2, [(0, 1)]))}
        return classes
    for seq in product(range(n), repeat=n - 2):
        t = prufer_tree(list(seq), n)
        key = tuple(sorted(t.degrees(), reverse=True))
        classes.setdefault(key, set()).add(canonical_form(t))
    return classes


def all_tree_degree_sequences(n):
    """Every realizable tree degree sequence on n vertices."""
    if n == 1:
        return [DegreeSequence((0,))]
    out = []

    def rec(remaining, slots, cap, acc):
        if slots == 0:
            if remaining == 0:
                out.append(DegreeSequence(tuple(acc)))
            return
        lo = math.ceil(remaining / slots)
        for d in range(min(cap, remaining - (slots - 1)), 0, -1):
            if d * slots < remaining:
                break
            rec(remaining - d, slots - 1, d, acc + [d])

    rec(2 * (n - 1), n, n - 1, [])
    return out


class TestFreeTrees:
    def test_known_counts(self):
        assert [len(free_trees(k)) for k in range(1, 11)] == FREE_TREE_COUNTS

    def test_trees_on_five_vertices(self):
        codes = {canonical_form(t) for t in free_trees(5)}
        explicit = {
            canonical_form(tree_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])),
            canonical_form(make_star(4)),
            canonical_form(tree_from_edges(5, [(0, 1), (1, 2), (1, 3), (2, 4)])),
        }
        assert codes == explicit


class TestEnumerateTrees:
    def test_single_edge_class(self):
        trees = list(enumerate_trees(DegreeSequence.parse("1,1")))
        assert len(trees) == 1 and trees[0].edges() == ((0, 1),)

    def test_one_vertex_class(self):
        trees = list(enumerate_trees(DegreeSequence((0,))))
        assert len(trees) == 1 and trees[0].vertex_count == 1

    def test_semiregular_class_sizes(self):
        assert len(list(enumerate_semiregular(3, 8))) == 1
        assert len(list(enumerate_semiregular(3, 10))) == 2
        assert len(list(enumerate_semiregular(3, 12))) == 2

    def test_class_3_10_contents(self):
        cat, spider = None, None
        for t in enumerate_semiregular(3, 10):
            if is_caterpillar(t):
                cat = t
            else:
                spider = t
        assert cat is not None and spider is not None
        assert canonical_form(cat) == canonical_form(make_caterpillar(3, 10))

    def test_empty_class_rejected(self):
        with pytest.raises(TreeError):
            list(enumerate_semiregular(3, 7))

    def test_unrealizable_rejected(self):
        with pytest.raises(TreeError):
            list(enumerate_trees(DegreeSequence.parse("3,3,1")))

    def test_small_mixed_class_by_hand(self):
        # internal degrees (3,2,2) on skeleton P_3: the leaf either pads the
        # middle or an end, giving exactly two non-isomorphic trees
        trees = list(enumerate_trees(DegreeSequence.parse("3,2,2,1,1,1")))
        assert len(trees) == 2

    def test_reference_class_contains_examples(self):
        codes = {canonical_form(t) for t in enumerate_trees(TIED_MINIMIZER_CLASS)}
        for t in tied_minimizer_examples():
            assert canonical_form(t) in codes

    def test_stream_deterministic_sorted_no_duplicates(self):
        pi = DegreeSequence.semiregular(3, 14)
        first = [canonical_form(t) for t in enumerate_trees(pi)]
        second = [canonical_form(t) for t in enumerate_trees(pi)]
        assert first == second
        assert len(set(first)) == len(first)
        assert first == sorted(first, key=lambda c: c.sort_key())

    def test_degree_sequences_respected(self):
        pi = TIED_MINIMIZER_CLASS
        for t in enumerate_trees(pi):
            assert DegreeSequence.of_tree(t) == pi

    def test_against_labeled_brute_force(self):
        for n in range(1, 8):
            expected = brute_force_classes(n)
            for pi in all_tree_degree_sequences(n):
                got = {canonical_form(t) for t in enumerate_trees(pi)}
                assert got == expected.get(pi.degrees, set()), (n, pi.degrees)

    def test_completeness_against_free_tree_counts(self):
        for n in range(1, 9):
            total = sum(
                len(list(enumerate_trees(pi))) for pi in all_tree_degree_sequences(n)
            )
            assert total == FREE_TREE_COUNTS[n - 1]


class TestFindMinimizers:
    def test_unique_caterpillar_in_semiregular_class(self):
        report = find_minimizers(DegreeSequence.semiregular(3, 16))
        assert report.unique and report.all_caterpillars
        assert report.minimizer_codes[0] == canonical_form(make_caterpillar(3, 16))
        assert report.gap_to_runner_up > 1e-9

    def test_single_edge_class(self):
        report = find_minimizers(DegreeSequence.parse("1,1"))
        assert report.tree_count == 1
        assert report.min_mu == pytest.approx(1.0, abs=1e-12)
        assert report.gap_to_runner_up is None

    def test_scale_guard(self):
        big = DegreeSequence.parse("22," + ",".join(["1"] * 22))
        with pytest.raises(TreeError):
            find_minimizers(big)
        report = find_minimizers(big, max_n=25)
        assert report.min_mu == pytest.approx(math.sqrt(22), abs=1e-10)

    def test_parallel_matches_serial(self):
        pi = DegreeSequence.semiregular(3, 14)
        serial = find_minimizers(pi)
        parallel = find_minimizers(pi, jobs=2)
        assert serial.minimizer_codes == parallel.minimizer_codes
        assert serial.min_mu == pytest.approx(parallel.min_mu, abs=1e-14)

    def test_report_serialization(self):
        report = find_minimizers(DegreeSequence.semiregular(3, 12))
        text = report.to_json()
        assert '"unique":true' in text
        csv = report.to_csv()
        assert csv.splitlines()[0] == "canonical_code,mu,is_caterpillar,buds_max_degree,trunk_monotone"
        assert len(csv.splitlines()) == 2


class TestFindMaximizers:
    def test_star_class(self):
        maxis = find_maximizers(DegreeSequence.parse("4,1,1,1,1"))
        assert len(maxis) == 1
        assert canonical_form(maxis[0]) == canonical_form(make_star(4))
        assert spectral_radius(maxis[0]).mu == pytest.approx(2.0, abs=1e-10)

    def test_spider_maximizes_its_class(self):
        maxis = find_maximizers(DegreeSequence.semiregular(3, 10))
        assert len(maxis) == 1
        assert not is_caterpillar(maxis[0])

    def test_single_edge(self):
        maxis = find_maximizers(DegreeSequence.parse("1,1"))
        assert len(maxis) == 1 and maxis[0].vertex_count == 2


class TestTiedMinimizerExamples:
    def test_examples_are_pairwise_non_isomorphic(self):
        codes = [canonical_form(t) for t in tied_minimizer_examples()]
        assert len(set(codes)) == 3

    def test_examples_have_the_class_degree_sequence(self):
        for t in tied_minimizer_examples():
            assert DegreeSequence.of_tree(t) == TIED_MINIMIZER_CLASS

    def test_examples_index_is_sqrt6_by_oracle(self):
        for t in tied_minimizer_examples():
            mu = float(np.linalg.eigvalsh(adjacency_matrix(t))[-1])
            assert abs(mu * mu - 6.0) <= 1e-9

    def test_first_example_is_not_a_caterpillar(self):
        fork, cat_a, cat_b = tied_minimizer_examples()
        assert not is_caterpillar(fork)
        assert is_caterpillar(cat_a) and is_caterpillar(cat_b)
