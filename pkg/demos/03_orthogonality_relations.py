"""
Orthogonality relations for the icosahedral group
=================================================

The 60 rotations of the icosahedron act irreducibly on R^3, so their
matrix entries, viewed as functions on the group, are orthogonal with
squared norm 60 / 3 = 20. Summing squared edge coordinates over the
group then gives the same value along every unit direction.
"""

import numpy as np

from sumsquares.numeric import random_unit_vector, rotation_2d
from sumsquares.polytopes import build
from sumsquares.representation import (
    character_norm,
    edge_basis,
    verify_schur,
    verify_sos2,
    verify_sos3,
    verify_unitary,
)
from sumsquares.symmetry import close_group, symmetry_group

p = build("icosahedron")
g = symmetry_group(p)
print("unitarity defect:", verify_unitary(g))
print("character norm:  ", character_norm(g))
rep = verify_schur(g)
print("orthogonality relations, worst deviation:", rep.max_abs_deviation, "at", rep.worst_indices)

basis = edge_basis(p, 0)
print("edge-adapted axis sums deviation:", verify_sos2(g, p, 0, basis))
print("worst over 1000 random directions:",
      max(verify_sos3(g, p, 0, random_unit_vector(3, s)) for s in range(1000)))

# %%
# The quarter-turn group of the square is the boundary case: no real line
# is invariant, yet over the complex numbers it splits, its character norm
# is 2, and the off-diagonal relations fail. The directional sums still
# come out right, which is all the projection law needs.

c4 = close_group([rotation_2d(np.pi / 2)])
print("C4 character norm:", character_norm(c4))
print("C4 full relations deviation:", verify_schur(c4, require_irreducible=False).max_abs_deviation)
sq = build("square")
print("square directional sums deviation:",
      max(verify_sos3(c4, sq, 0, random_unit_vector(2, s)) for s in range(100)))
