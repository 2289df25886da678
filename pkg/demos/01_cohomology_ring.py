"""
The cohomology ring of the universal plane
==========================================

E is the space of pairs (plane, point in that plane) in P^3.  Its rational
cohomology is generated by a (pulled back from the space of planes) and H
(pulled back from P^3), subject to a^4 = 0 and H^3 = a H^2 - a^2 H + a^3.
"""

from planargw.cohom_ring import BASIS, CohClass, H, A, T03, diagonal, dual_basis, integrate, pairing_tensor, reduce

# Monomials are reduced to the basis a^i H^j with i <= 3, j <= 2.
print("H^3      =", T03)
print("H^4      =", reduce([(0, 4, 1)]))
print("a^2 H^3  =", reduce([(2, 3, 1)]))

# Integration picks out the point class a^3 H^2.
print("int a^3 H^2 =", integrate(A ** 3 * H ** 2))
print("int H^5     =", integrate(H ** 5))

# The Poincare pairing only couples complementary degrees.
g = pairing_tensor()
for u in BASIS:
    row = " ".join(f"{int(g.at(u, v)):2d}" for v in BASIS)
    print(f"T{u[0]}{u[1]}: {row}")

# Dual basis, and a check that it really is dual.
for (i, j), dual in zip(BASIS, dual_basis()):
    print(f"dual of T{i}{j}:", dual)
assert all(integrate(CohClass.basis(*u) * dual) == (u == v)
           for u in BASIS for v, dual in zip(BASIS, dual_basis()))

# The diagonal class coincides with the inverse pairing matrix.
assert diagonal().delta == g.ginv
print("diagonal class agrees with g^-1")
