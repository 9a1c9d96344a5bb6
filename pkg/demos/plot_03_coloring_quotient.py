"""
Coloring a telescope and collapsing it
======================================

Block coloring gives intersecting faces distinct color patterns; a random
second coloring, repaired by resampling, separates the remaining disjoint
pairs. Merging vertices of equal color then keeps the torsion.
"""

from twotorsion import (
    RefineConfig,
    bad_event_pairs,
    block_coloring,
    build_telescope,
    homology,
    pattern_complex,
    refine,
    verify_quotient_torsion,
)

T = build_telescope(2, 6)
X = T.complex
c = block_coloring(T)
print("X(2,6):", X.num_vertices, "vertices,", len(c.palette), "block colors")
print("disjoint edge pairs sharing a pattern:", len(bad_event_pairs(X, c, 1)))

# Default palette size for the second coloring
res = refine(X, c, cfg=RefineConfig(seed=0))
print(f"refined: q={res.q} L={res.L} resamples={res.resamples} "
      f"palette {len(res.coloring.palette)} <= {res.palette_bound}")

# At this size the default palette exceeds n, so nothing is merged.
# A deliberately tiny second palette shows an actual collapse.
small = refine(X, c, cfg=RefineConfig(seed=0, second_palette=2))
Y = pattern_complex(X, small.coloring)
print(f"q=2: {small.resamples} resamples, quotient has {Y.num_vertices} vertices")
# Collapsing can create free classes; only the torsion part is promised.
print("H_1(X) =", homology(X, [1]).describe(1), " H_1(Y) =", homology(Y, [1]).describe(1))
print("torsion preserved:", verify_quotient_torsion(X, small.coloring))
