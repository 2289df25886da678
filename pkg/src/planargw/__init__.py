"""Exact genus-0 Gromov-Witten invariants of planar curves in P^3.

Main entry points::

    >>> from planargw import n_planar, kontsevich
    >>> n_planar((3, 11, 0, 0))
    Fraction(12960, 1)
    >>> kontsevich(4)
    620
"""
from .cohom_ring import (CohClass, DiagonalTensor, PairingTensor, diagonal, dual_basis, integrate, mul,
                         pairing_tensor, reduce)
from .gw_table import (GWKey, MemoTable, binomial, expected_codim, full_table, gw_invariant, n_planar,
                       reduce_point_insertion)
from .p2_oracle import kontsevich
from .qh_series import (NovikovSeries, QuantumElement, phi3_classical, phi3_quantum, quantum_product,
                        wdvv1_coefficient_identity, wdvv_pairing_check)

__all__ = [
    "CohClass", "DiagonalTensor", "PairingTensor", "diagonal", "dual_basis", "integrate", "mul",
    "pairing_tensor", "reduce",
    "GWKey", "MemoTable", "binomial", "expected_codim", "full_table", "gw_invariant", "n_planar",
    "reduce_point_insertion",
    "kontsevich",
    "NovikovSeries", "QuantumElement", "phi3_classical", "phi3_quantum", "quantum_product",
    "wdvv1_coefficient_identity", "wdvv_pairing_check",
]
