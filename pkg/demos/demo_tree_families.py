#!/usr/bin/env python3
"""Tour of the tree structures: families, pendant structure, branches,
canonical forms, and the serialization formats."""

from treeindex import (
    DegreeSequence,
    branch,
    branching_points,
    buds,
    canonical_form,
    is_caterpillar,
    is_semiregular,
    make_caterpillar,
    nonpendant_degree,
    proper_branches,
    tree_from_edges,
    tree_to_dot,
    tree_to_json,
    trunk_path,
)

print("=== semiregular caterpillars ===")
for d, n in ((3, 8), (4, 14)):
    t = make_caterpillar(d, n)
    trunk = trunk_path(t)
    loads = [sum(1 for u in t.neighbors(v) if t.degree(u) == 1) for v in trunk]
    print(f"C(d={d}, n={n}): trunk {trunk}, pendant loads {loads}")
    print(f"  semiregular: {is_semiregular(t, d)}, caterpillar: {is_caterpillar(t)}")

print()
print("=== a tree with branching points ===")
# one branching point (vertex 0) with three two-vertex proper branches
spider = tree_from_edges(
    10, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)]
)
print("degree sequence:", DegreeSequence.of_tree(spider).compact())
print("branching points:", branching_points(spider), " buds:", buds(spider))
print("non-pendant degree of the hub:", nonpendant_degree(spider, 0))
for b in proper_branches(spider, 0):
    print(f"  proper branch through {b.gateway}: {sorted(b.vertices)} length {b.length}")

print()
print("=== branch lengths add up across a cut ===")
c310 = make_caterpillar(3, 10)
trunk = trunk_path(c310)
fwd = branch(c310, trunk[1], trunk[2])
bwd = branch(c310, trunk[2], trunk[1])
print(f"l(B_12) = {fwd.length}, l(B_21) = {bwd.length}, trunk+2 = {len(trunk) + 2}")

print()
print("=== canonical forms identify isomorphic trees ===")
relabeled = tree_from_edges(10, [(9 - u, 9 - v) for u, v in c310.edges()])
print("caterpillar == relabeled caterpillar:",
      canonical_form(c310) == canonical_form(relabeled))
print("caterpillar == spider:", canonical_form(c310) == canonical_form(spider))

print()
print("=== byte-deterministic exports ===")
print(tree_to_json(make_caterpillar(3, 8)))
print(tree_to_dot(make_caterpillar(3, 4)), end="")
