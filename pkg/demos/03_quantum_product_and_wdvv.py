"""
Quantum product and the WDVV equation
=====================================

The three-point invariants deform the cup product on H^*(E); q keeps track of
curve degree.  Associativity of the deformed product is the WDVV equation,
and one coefficient of it is exactly the recursion for N_d(r, s, theta).
"""

from itertools import product

from planargw.cohom_ring import BASIS, CohClass
from planargw.qh_series import (QuantumElement, associativity_defect, quantum_product, unit, wdvv1_surviving_terms,
                                wdvv1_terms, wdvv_failures)

D = 3
h2 = QuantumElement.of(CohClass.basis(0, 2), D)
sq = quantum_product(h2, h2, D)
for d, part in enumerate(sq.components):
    print(f"q^{d} part of H^2 * H^2:", part)

# T00 stays the unit after deformation.
x = QuantumElement.of(CohClass.basis(2, 1), D)
assert quantum_product(unit(D), x, D) == x

# Associativity on every triple of basis classes.
bad = [t for t in product(BASIS, repeat=3) if associativity_defect(*t, D)]
print("associativity failures:", bad)

# The same statement in WDVV form, on all 12^4 index tuples.
print("WDVV failures:", wdvv_failures(D))

# Which terms survive in WDVV at (H, H | H^2, H^2), derived from the diagonal class.
print("discrepancies from the expected shape:", wdvv1_surviving_terms())

# Reading off one coefficient reproduces the cubic count.
print(wdvv1_terms(3, 11, 0, 0))
