"""
Homology of the six-vertex projective plane
===========================================

Build the nine-triangle building block, find which of its two empty
triangles plays the role of the generator, and fill one in to get RP^2.
"""

from twotorsion import build_p2, build_telescope, homology, is_homologous
from twotorsion.complex import simplex_boundary_chain

# The block is a Moebius band on six vertices: H_1 is free of rank one.
block = build_p2()
X = block.complex
h = homology(X)
print("P(2) f-vector:", X.f_vector())
print("P(2) H_1 =", h.describe(1))

# The b-triangle winds twice around the band, so [b] = +-2[a].
a = simplex_boundary_chain(X, block.a_sphere)
b = simplex_boundary_chain(X, block.b_sphere)
twice = any(is_homologous(X, 1, b, [s * 2 * x for x in a]) for s in (1, -1))
print("a-sphere", block.a_sphere, "b-sphere", block.b_sphere, "[b] = +-2[a]:", twice)

# Filling the b-triangle kills 2[a]; the result is the minimal RP^2.
rp2 = build_telescope(2, 1).complex
h = homology(rp2)
print("RP^2 f-vector:", rp2.f_vector())
for k in h.dims:
    print(f"  H_{k} = {h.describe(k)}")
