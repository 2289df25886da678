"""
Counting planar rational curves in P^3
======================================

N_d(r, s, theta) is the number of rational degree-d curves lying in a plane,
meeting r general lines and passing through s general points, with the plane
further constrained by a^theta.  It vanishes unless r + 2s + theta = 3d + 2.
"""

from planargw.gw_table import MemoTable, expected_codim, full_table, n_planar, reduce_point_insertion

memo = MemoTable()

# The headline number: planar cubics meeting 11 general lines.
print("N_3(11,0,0) =", n_planar((3, 11, 0, 0), memo))

# Conics meeting 8 lines: the classical 92.
print("N_2(8,0,0)  =", n_planar((2, 8, 0, 0), memo))

# Dimension count for the moduli of degree-3 maps with 11 markings.
print("virtual dimension, d=3, n=11:", expected_codim(3, 11))

# A full table up to degree 3.
for key, value in full_table(3, memo):
    if value:
        print(f"N_{key.d}({key.r},{key.s},{key.theta}) = {value}")

# A point condition can be traded for line conditions using H^3 = aH^2 - a^2H + a^3.
key = (3, 5, 3, 0)
print(n_planar(key, memo), "==", reduce_point_insertion(key, memo))

# The memo table can be written to disk and reloaded.
memo.save("/tmp/planar_gw_demo.json")
print(len(MemoTable.load("/tmp/planar_gw_demo.json")), "cached values")
