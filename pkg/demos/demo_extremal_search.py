#!/usr/bin/env python3
"""Exhaustive extremal search: within a semiregular class the caterpillar
is the unique index minimizer, but for mixed degree sequences the
minimizers can be tied and need not be caterpillars."""

from treeindex import (
    DegreeSequence,
    TIED_MINIMIZER_CLASS,
    canonical_form,
    find_maximizers,
    find_minimizers,
    is_caterpillar,
    spectral_radius,
    tied_minimizer_examples,
)

print("=== semiregular classes: the caterpillar wins, uniquely ===")
for d, n in ((3, 14), (3, 18), (4, 14), (5, 18)):
    report = find_minimizers(DegreeSequence.semiregular(d, n))
    gap = "n/a (single tree)" if report.gap_to_runner_up is None else f"{report.gap_to_runner_up:.3e}"
    print(f"d={d} n={n}: {report.tree_count:3d} trees, unique={report.unique}, "
          f"all caterpillars={report.all_caterpillars}, gap to runner-up={gap}")

print()
print(f"=== mixed degrees: {TIED_MINIMIZER_CLASS.compact()} ===")
report = find_minimizers(TIED_MINIMIZER_CLASS)
print(f"trees examined: {report.tree_count}")
print(f"minimal index : {report.min_mu:.12f}  (min_mu^2 = {report.min_mu**2:.12f}, "
      f"sqrt(6)^2 = 6)")
print(f"tied minimizers: {len(report.minimizers)}  unique: {report.unique}")
print(f"all caterpillars: {report.all_caterpillars}")
print("per-minimizer shape flags:")
for code, obs in zip(report.minimizer_codes, report.observations):
    print(f"  caterpillar={str(obs.is_caterpillar):5}  "
          f"buds_max_degree={str(obs.buds_have_max_branch_degree):5}  "
          f"trunk_monotone={str(obs.trunk_degrees_monotone):5}")

print()
print("three reference minimizers (index exactly sqrt(6)):")
for t in tied_minimizer_examples():
    mu = spectral_radius(t).mu
    print(f"  mu = {mu:.15f}  caterpillar = {is_caterpillar(t)}")
print("all three appear in the search result:",
      set(report.minimizer_codes) >= {canonical_form(t) for t in tied_minimizer_examples()})

print()
print("=== the opposite extreme, as a sanity check ===")
maxis = find_maximizers(DegreeSequence.semiregular(3, 10))
print("index maximizer of the 2-element class on 10 vertices is the "
      f"non-caterpillar: {not is_caterpillar(maxis[0])}")
star = find_maximizers(DegreeSequence.parse("4,1,1,1,1"))[0]
print(f"star class: maximizer has mu = {spectral_radius(star).mu:.9f} = sqrt(4)")
