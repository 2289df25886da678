"""The invariant suite run by ``planar-gw verify``.

Each check returns a record ``{"check": name, "ok": bool, ...}``; nothing
stops at the first failure.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable

from . import cohom_ring as ring
from .gw_table import (INITIAL_ONES, MemoTable, balanced_keys, expand_point_insertions, n_planar,
                       reduce_point_insertion)
from .p2_oracle import kontsevich
from .qh_series import (QuantumElement, associativity_defect, phi3_classical, quantum_product, unit,
                        wdvv1_surviving_terms, wdvv1_terms, wdvv_failures)


def _record(name: str, failures: list, **extra) -> dict:
    rec = {"check": name, "ok": not failures, **extra}
    if failures:
        rec["failures"] = [str(f) for f in failures[:10]]
        rec["failure_count"] = len(failures)
    return rec


def check_ring() -> list[dict]:
    out = []
    nil = [name for name, raw in (("H^4", [(0, 4, 1)]), ("a^4", [(4, 0, 1)])) if ring.reduce(raw)]
    out.append(_record("ring.nilpotence", nil))

    duals = ring.dual_basis()
    bad = [(u, v) for (u, x), (v, y) in product(enumerate(ring.BASIS), enumerate(duals))
           if ring.pairing(ring.CohClass.basis(*x), y) != (u == v)]
    out.append(_record("ring.duality", bad))

    try:
        ring.diagonal()
        diag_bad = []
    except ring.RingKernelError as e:
        diag_bad = [str(e)]
    out.append(_record("ring.diagonal", diag_bad))

    h, h2 = ring.H, ring.CohClass.basis(0, 2)
    table_bad = []
    for i, j in ring.BASIS:
        t = ring.CohClass.basis(i, j)
        want = (int((i, j) in ((3, 0), (2, 1))), int((i, j) == (2, 0)), 0)
        got = (phi3_classical(h, h, t), phi3_classical(h, h2, t), phi3_classical(h2, h2, t))
        if got != want:
            table_bad.append(((i, j), got, want))
    out.append(_record("ring.classical_table", table_bad))
    return out


def check_table(d_max: int, memo: MemoTable) -> list[dict]:
    out = []
    initial = [(d, r, s, t) for d in range(1, d_max + 1) for r in range(3) for s in range(6) for t in range(6)
               if n_planar((d, r, s, t), memo) != ((d, r, s, t) in INITIAL_ONES)]
    out.append(_record("gw.initial_conditions", initial))

    vanish = []
    for d in range(1, d_max + 1):
        for r, s, t in product(range(3 * d + 3), range(6), range(6)):
            if r + 2 * s + t != 3 * d + 2 or s > 3 or t > 3 or s + t >= 4:
                if n_planar((d, r, s, t), memo):
                    vanish.append((d, r, s, t))
    out.append(_record("gw.vanishing", vanish))

    keys = balanced_keys(d_max)
    route = [k for k in keys if k.s >= 1 and n_planar(k, memo) != reduce_point_insertion(k, memo)]
    route += [k for k in keys if k.s >= 1 and n_planar(k, memo) != expand_point_insertions(k, memo)]
    out.append(_record("gw.route_consistency", route))

    integral = [k for k in keys if Fraction(n_planar(k, memo)).denominator != 1]
    out.append(_record("gw.integrality", integral))
    return out


def check_oracle(d_max: int, memo: MemoTable) -> list[dict]:
    bad = [(d, n_planar((d, 3 * d - 4, 3, 0), memo), kontsevich(d)) for d in range(2, d_max + 1)
           if n_planar((d, 3 * d - 4, 3, 0), memo) != kontsevich(d)]
    return [_record("oracle.kontsevich", bad)]


def check_quantum(d_max: int, memo: MemoTable) -> list[dict]:
    one = unit(d_max)
    unit_bad = []
    for i, j in ring.BASIS:
        x = QuantumElement.of(ring.CohClass.basis(i, j), d_max)
        if quantum_product(one, x, d_max, memo) != x or quantum_product(x, one, d_max, memo) != x:
            unit_bad.append((i, j))
    assoc_bad = [(u, v, w) for u, v, w in product(ring.BASIS, repeat=3)
                 if associativity_defect(u, v, w, d_max, memo)]
    return [_record("quantum.unit", unit_bad), _record("quantum.associativity", assoc_bad)]


def check_wdvv(d_max: int, memo: MemoTable) -> list[dict]:
    out = [_record("wdvv.pairing", wdvv_failures(d_max, memo)),
           _record("wdvv1.surviving_terms", wdvv1_surviving_terms())]
    out += [wdvv1_terms(*k, memo) for k in balanced_keys(d_max) if k.r >= 3]
    return out


def check_cache(memo: MemoTable) -> list[dict]:
    return [_record("cache.recompute", memo.verify(), entries=len(memo))]


SUITES: list[tuple[str, Callable]] = [
    ("ring", lambda d, m: check_ring()),
    ("table", check_table),
    ("oracle", check_oracle),
    ("quantum", check_quantum),
    ("wdvv", check_wdvv),
]


def run_all(d_max: int, memo: MemoTable, cached: bool = False) -> list[dict]:
    records = []
    if cached:
        records += check_cache(memo)
    for _, suite in SUITES:
        records += suite(d_max, memo)
    return records
