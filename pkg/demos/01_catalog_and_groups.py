"""
Polytopes and their rotation groups
===================================

Build every catalog polytope, close its rotation group from a few
generators and check the count against orbit-stabilizer: the group
splits into one coset per edge, each the size of an edge stabilizer.
"""

from sumsquares.polytopes import CONTROLS, DEFAULT_CATALOG, build
from sumsquares.symmetry import decompose_edges, symmetry_group

print(f"{'polytope':18s} {'N':>2s} {'V':>4s} {'E':>4s} {'|G|':>6s} {'k':>4s}  orbits")
for name in DEFAULT_CATALOG + CONTROLS:
    p = build(name)
    g = symmetry_group(p)
    d = decompose_edges(p, g)
    print(f"{name:18s} {p.ambient_dim:2d} {p.vertex_count:4d} {p.edge_count:4d} "
          f"{g.order:6d} {d.stabilizer_order:4d}  {d.orbit_sizes}")

# For the transitive entries k * E == |G|; the cuboids fall apart into
# several orbits and the identity no longer holds.
