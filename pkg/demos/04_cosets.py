"""
Group sum versus edge sum
=========================

Averaging ||P_S(R e)||^2 over the whole group visits every edge exactly
k times, where k is the order of the edge stabilizer. Both sides are
computed independently here for the cube and a random plane.
"""

from sumsquares.numeric import random_subspace
from sumsquares.polytopes import build
from sumsquares.projection import group_average
from sumsquares.symmetry import decompose_edges, symmetry_group

p = build("cube")
g = symmetry_group(p)
d = decompose_edges(p, g)
print("stabilizer order k =", d.stabilizer_order, " coset sizes:", sorted({len(c) for c in d.cosets.values()}))

s = random_subspace(3, 2, 42)
ga = group_average(p, s, g, decomp=d)
print(f"sum over G      : {ga.group_sum:.12f}")
print(f"k * sum over E  : {ga.coset_sum:.12f}")
print(f"|G| * M / N     : {ga.target:.12f}")
