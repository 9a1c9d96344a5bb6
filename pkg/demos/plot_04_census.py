"""
Every abelian group of order 2^e
================================

One complex per partition of e, each certified by its torsion, and the
growth of the number of such groups.
"""

from twotorsion import asymptotic_report, run_census

rep = run_census(2, 6)
print(f"order 2^{rep.e}: {rep.group_count} groups, certificates distinct: "
      f"{rep.distinctness_certified}")
for entry in rep.realized:
    print(f"  {str(entry.group):34s} {entry.num_vertices:3d} vertices  torsion {entry.torsion}")

# log2 pi(2^d) against 2^(d/2): the ratio keeps climbing
print("\n d  digits of pi(2^d)    log2   ratio   25d")
for row in asymptotic_report(16):
    print(f"{row.d:2d} {len(str(row.groups)):18d} {row.log2_groups:7.2f} {row.ratio:7.3f} {row.vertices:5d}")
