"""
Cross-check against Kontsevich's formula
========================================

Three general points already fix the plane.  The remaining 3d - 4 lines meet
that plane in 3d - 4 points, so N_d(3d-4, 3, 0) must equal the number K_d of
rational plane curves of degree d through 3d - 1 points.
"""

from planargw.gw_table import n_planar
from planargw.p2_oracle import kontsevich

for d in range(2, 8):
    n, k = n_planar((d, 3 * d - 4, 3, 0)), kontsevich(d)
    print(f"d={d}:  N_d(3d-4,3,0) = {n}   K_d = {k}   {'ok' if n == k else 'MISMATCH'}")
