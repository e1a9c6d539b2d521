"""Structure, families, branches, and canonical forms."""

import random

import pytest

from treeindex.trees import (
    DegreeSequence,
    Tree,
    TreeError,
    arms,
    branch,
    branch_bud,
    branching_points,
    buds,
    canonical_form,
    canonical_order,
    is_caterpillar,
    is_semiregular,
    isomorphism_map,
    make_caterpillar,
    make_path,
    make_star,
    nonpendant_degree,
    proper_branches,
    semiregular_degree,
    tree_from_edges,
    tree_from_json,
    tree_to_dot,
    tree_to_json,
    trunk_path,
)

K1 = tree_from_edges(1, [])
K2 = tree_from_edges(2, [(0, 1)])
SPIDER_10 = tree_from_edges(
    10, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)]
)
# 19-vertex tree with degree sequence (4^4,3^2,2,1^12): two branching points,
# each carrying two bud branches of four pendants' worth
FORK_19 = tree_from_edges(
    19,
    [(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6),
     (3, 7), (3, 8), (3, 9), (4, 10), (4, 11), (4, 12),
     (5, 13), (5, 14), (5, 15), (6, 16), (6, 17), (6, 18)],
)


def leaf_counts_along_trunk(t):
    return [sum(1 for u in t.neighbors(v) if t.degree(u) == 1) for v in trunk_path(t)]


class TestTreeValidation:
    def test_rejects_cycle(self):
        with pytest.raises(TreeError):
            tree_from_edges(3, [(0, 1), (1, 2), (2, 0)])

    def test_rejects_disconnected(self):
        with pytest.raises(TreeError):
            tree_from_edges(4, [(0, 1), (2, 3), (0, 1)])

    def test_rejects_self_loop(self):
        with pytest.raises(TreeError):
            Tree(((0,),))

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(TreeError):
            Tree(((1,), (), (1,)))

    def test_edge_count_and_degree_sum(self):
        for t in (K1, K2, make_path(7), make_star(5), make_caterpillar(3, 12)):
            n = t.vertex_count
            assert len(t.edges()) == n - 1
            assert sum(t.degrees()) == 2 * (n - 1)

    def test_immutability(self):
        with pytest.raises(AttributeError):
            K2.adjacency = ((1,), (0,))


class TestCaterpillarFamily:
    def test_3_8_trunk_and_leaf_counts(self):
        t = make_caterpillar(3, 8)
        assert len(trunk_path(t)) == 3
        assert leaf_counts_along_trunk(t) == [2, 1, 2]
        assert is_semiregular(t, 3)
        assert is_caterpillar(t)

    def test_4_14_trunk_and_leaf_counts(self):
        t = make_caterpillar(4, 14)
        assert len(trunk_path(t)) == 4
        assert leaf_counts_along_trunk(t) == [3, 2, 2, 3]

    def test_empty_class_rejected(self):
        with pytest.raises(TreeError):
            make_caterpillar(3, 7)

    def test_k0_and_k1(self):
        assert make_caterpillar(3, 2) == K2
        star = make_caterpillar(4, 5)
        assert sorted(star.degrees(), reverse=True) == [4, 1, 1, 1, 1]

    def test_deterministic(self):
        assert make_caterpillar(3, 14) == make_caterpillar(3, 14)


class TestSemiregularAndCaterpillarPredicates:
    def test_constructed_caterpillar_is_semiregular(self):
        assert is_semiregular(make_caterpillar(3, 8), 3)

    def test_path_is_not_3_semiregular(self):
        assert not is_semiregular(make_path(4), 3)

    def test_star_is_semiregular(self):
        assert is_semiregular(make_star(4), 4)

    def test_semiregular_degree(self):
        assert semiregular_degree(make_caterpillar(5, 14)) == 5
        assert semiregular_degree(FORK_19) is None
        assert semiregular_degree(K2) is None

    def test_caterpillar_predicate(self):
        assert is_caterpillar(make_caterpillar(4, 14))
        assert not is_caterpillar(FORK_19)
        assert is_caterpillar(make_star(6))
        assert is_caterpillar(K1)
        assert is_caterpillar(K2)


class TestPendantStructure:
    def test_nonpendant_degree_on_caterpillar(self):
        t = make_caterpillar(3, 8)
        trunk = trunk_path(t)
        assert nonpendant_degree(t, trunk[0]) == 1  # a bud
        assert nonpendant_degree(t, trunk[1]) == 2

    def test_nonpendant_degree_at_branching(self):
        assert nonpendant_degree(FORK_19, 0) == 3

    def test_caterpillar_has_no_branching_points(self):
        t = make_caterpillar(3, 12)
        assert branching_points(t) == ()
        trunk = trunk_path(t)
        assert set(buds(t)) == {trunk[0], trunk[-1]}

    def test_fork_19_buds_and_branching(self):
        assert branching_points(FORK_19) == (0, 2)
        assert buds(FORK_19) == (3, 4, 5, 6)

    def test_k2_has_neither(self):
        assert buds(K2) == ()
        assert branching_points(K2) == ()


class TestBranches:
    def test_branch_length_on_c310(self):
        t = make_caterpillar(3, 10)
        trunk = trunk_path(t)
        b = branch(t, trunk[1], trunk[2])
        assert b.length == 3
        assert trunk[1] in b.vertices and trunk[3] in b.vertices

    def test_branch_length_additivity(self):
        t = make_caterpillar(3, 10)
        k = len(trunk_path(t))
        trunk = trunk_path(t)
        fwd = branch(t, trunk[1], trunk[2])
        bwd = branch(t, trunk[2], trunk[1])
        assert fwd.length + bwd.length == k + 2

    def test_branch_requires_adjacency(self):
        t = make_caterpillar(3, 10)
        trunk = trunk_path(t)
        with pytest.raises(TreeError):
            branch(t, trunk[0], trunk[2])

    def test_proper_branches_of_fork(self):
        pbs = proper_branches(FORK_19, 0)
        assert len(pbs) == 2
        assert sorted(b.length for b in pbs) == [2, 2]

    def test_proper_branches_of_spider(self):
        pbs = proper_branches(SPIDER_10, 0)
        assert len(pbs) == 3
        assert all(b.length == 2 for b in pbs)
        assert sorted(branch_bud(SPIDER_10, b) for b in pbs) == [1, 2, 3]

    def test_proper_branches_need_branching_point(self):
        with pytest.raises(TreeError):
            proper_branches(make_caterpillar(3, 10), 0)

    def test_bud_has_single_nonpendant_neighbor(self):
        for v in buds(FORK_19):
            pendant_nbrs = sum(1 for u in FORK_19.neighbors(v) if FORK_19.degree(u) == 1)
            assert pendant_nbrs == FORK_19.degree(v) - 1


class TestArms:
    def test_caterpillar_arms_split_at_center(self):
        t = make_caterpillar(3, 12)  # trunk of 5
        left, right = arms(t)
        trunk = trunk_path(t)
        assert left[0] == right[0] == trunk[2]
        assert left[-1] == trunk[0] and right[-1] == trunk[-1]

    def test_branching_arms(self):
        assert len(arms(FORK_19)) == 4
        for arm in arms(FORK_19):
            assert len(arm) == 2

    def test_degenerate_arms(self):
        assert arms(make_star(5)) == []
        assert arms(K2) == []


class TestDegreeSequence:
    def test_parse_compact_and_expanded(self):
        a = DegreeSequence.parse("4^4,3^2,2,1^12")
        b = DegreeSequence.parse("4,4,4,4,3,3,2,1,1,1,1,1,1,1,1,1,1,1,1")
        assert a == b
        assert a.compact() == "4^4,3^2,2,1^12"

    def test_realizability(self):
        assert DegreeSequence.parse("1,1").is_tree_realizable()
        assert not DegreeSequence.parse("3,3,1").is_tree_realizable()
        assert DegreeSequence((0,)).is_tree_realizable()

    def test_semiregular_class_sequence(self):
        pi = DegreeSequence.semiregular(3, 8)
        assert pi.degrees == (3, 3, 3, 1, 1, 1, 1, 1)
        with pytest.raises(TreeError):
            DegreeSequence.semiregular(3, 7)

    def test_of_tree(self):
        assert DegreeSequence.of_tree(FORK_19).compact() == "4^4,3^2,2,1^12"

    def test_rejects_increasing(self):
        with pytest.raises(TreeError):
            DegreeSequence((1, 2))


class TestCanonicalForm:
    def test_relabeling_invariance(self):
        rng = random.Random(7)
        for base in (make_caterpillar(3, 8), SPIDER_10, FORK_19, make_path(9)):
            code = canonical_form(base)
            n = base.vertex_count
            for _ in range(25):
                perm = list(range(n))
                rng.shuffle(perm)
                relabeled = tree_from_edges(n, [(perm[u], perm[v]) for u, v in base.edges()])
                assert canonical_form(relabeled) == code

    def test_distinguishes_caterpillar_from_spider(self):
        assert canonical_form(make_caterpillar(3, 10)) != canonical_form(SPIDER_10)

    def test_k1_minimal_code(self):
        k1_code = canonical_form(K1)
        assert k1_code.code == "()"
        for other in (K2, make_path(5), SPIDER_10):
            assert k1_code < canonical_form(other)

    def test_different_degree_multisets_differ(self):
        rng = random.Random(11)
        trees = [make_path(8), make_star(7), make_caterpillar(3, 8), SPIDER_10,
                 make_caterpillar(3, 10), FORK_19]
        for i in range(len(trees)):
            for j in range(i + 1, len(trees)):
                if sorted(trees[i].degrees()) != sorted(trees[j].degrees()):
                    assert canonical_form(trees[i]) != canonical_form(trees[j])

    def test_isomorphism_map_is_an_isomorphism(self):
        rng = random.Random(3)
        n = FORK_19.vertex_count
        perm = list(range(n))
        rng.shuffle(perm)
        other = tree_from_edges(n, [(perm[u], perm[v]) for u, v in FORK_19.edges()])
        phi = isomorphism_map(FORK_19, other)
        assert phi is not None
        mapped = {tuple(sorted((phi[u], phi[v]))) for u, v in FORK_19.edges()}
        assert mapped == set(other.edges())

    def test_isomorphism_map_none_for_different_trees(self):
        assert isomorphism_map(make_caterpillar(3, 10), SPIDER_10) is None

    def test_canonical_order_covers_all_vertices(self):
        order = canonical_order(FORK_19)
        assert sorted(order) == list(range(19))


class TestSerialization:
    def test_json_round_trip(self):
        for t in (K1, K2, make_caterpillar(3, 8), FORK_19):
            assert tree_from_json(tree_to_json(t)) == t

    def test_json_byte_deterministic(self):
        t = make_caterpillar(4, 14)
        assert tree_to_json(t) == tree_to_json(make_caterpillar(4, 14))

    def test_json_format_shape(self):
        assert tree_to_json(K2) == '{"n":2,"edges":[[0,1]]}'

    def test_json_rejects_garbage(self):
        with pytest.raises(TreeError):
            tree_from_json("")
        with pytest.raises(TreeError):
            tree_from_json('{"n":2}')
        with pytest.raises(TreeError):
            tree_from_json('{"n":3,"edges":[[0,1]]}')

    def test_dot_deterministic_and_complete(self):
        text = tree_to_dot(make_path(3))
        assert text == "graph T {\n  0;\n  1;\n  2;\n  0 -- 1;\n  1 -- 2;\n}\n"

    def test_path_query(self):
        t = make_caterpillar(3, 10)
        trunk = trunk_path(t)
        p = t.path(trunk[0], trunk[3])
        assert p == trunk
