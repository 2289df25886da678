"""Quantum product on ``H^*(E)`` and the WDVV checks behind the recursion.

Curve degree is tracked by a formal Novikov variable ``q`` (standing in for
``exp(t01)``).  Three-point functions are taken at the origin of the other
deformation directions, so the quantum product here is the small one.

The second half of the module rebuilds the four generating series that enter
the coefficient form of WDVV after the substitution ``t_ij -> u^i t_0j``, in
the reduced variables ``(q, t02, t03, u)``.  Their extracted coefficients
must reproduce the recursion used by :func:`planargw.gw_table.n_planar`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterable, Mapping

from .cohom_ring import BASIS, RANK, CohClass, diagonal, index, integrate, mul, pairing_tensor
from .exact import ONE, ZERO, format_rational
from .gw_table import GWKey, MemoTable, balanced_keys, default_memo, gw_invariant, n_planar

Index = tuple[int, int]


def phi3_classical(u: CohClass, v: CohClass, w: CohClass) -> Fraction:
    """Degree-0 three-point function ``int_E u v w``."""
    return integrate(mul(mul(u, v), w))


def phi3_quantum(u: Index, v: Index, w: Index, d: int, memo: MemoTable | None = None) -> Fraction:
    """``<T_u, T_v, T_w>_d`` for ``d >= 1`` on basis classes ``T_ij = a^i H^j``.

    Any insertion with no ``H`` factor is a pullback from the base, so the
    invariant vanishes; otherwise the base exponents add up.
    """
    if d < 1:
        raise ValueError("phi3_quantum needs d >= 1; use phi3_classical for d = 0")
    if 0 in (u[1], v[1], w[1]):
        return ZERO
    return gw_invariant(d, u[0] + v[0] + w[0], [u[1], v[1], w[1]], memo)


def three_point(u: Index, v: Index, w: Index, d: int, memo: MemoTable | None = None) -> Fraction:
    if d == 0:
        return phi3_classical(CohClass.basis(*u), CohClass.basis(*v), CohClass.basis(*w))
    return phi3_quantum(u, v, w, d, memo)


@lru_cache(maxsize=8)
def _phi_tensor(d_max: int, memo: MemoTable) -> tuple:
    """``phi[d][a][b][c]`` over flat indices, ``0 <= d <= d_max``."""
    out = []
    for d in range(d_max + 1):
        t = [[[ZERO] * RANK for _ in range(RANK)] for _ in range(RANK)]
        for a, b, c in product(range(RANK), repeat=3):
            if a <= b <= c:
                val = three_point(BASIS[a], BASIS[b], BASIS[c], d, memo)
                for x, y, z in {(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)}:
                    t[x][y][z] = val
        out.append(t)
    return tuple(out)


@lru_cache(maxsize=8)
def _raised(d_max: int, memo: MemoTable) -> tuple:
    """``m[d][a][b][f] = sum_e phi[d][a][b][e] g^{ef}``, the structure constants."""
    phi = _phi_tensor(d_max, memo)
    ginv = pairing_tensor().ginv
    out = []
    for d in range(d_max + 1):
        m = [[None] * RANK for _ in range(RANK)]
        for a in range(RANK):
            for b in range(RANK):
                row = phi[d][a][b]
                nz = [(e, x) for e, x in enumerate(row) if x]
                m[a][b] = tuple(sum((x * ginv[e][f] for e, x in nz), ZERO) for f in range(RANK))
        out.append(m)
    return tuple(out)


@dataclass(frozen=True)
class QuantumElement:
    """Element of ``H^*(E) (x) Q[q]/(q^{d_max+1})``; ``components[d]`` is the ``q^d`` part."""

    components: tuple[CohClass, ...]

    @classmethod
    def of(cls, x: CohClass, d_max: int = 0) -> QuantumElement:
        return cls((x,) + (CohClass.zero(),) * d_max)

    @classmethod
    def from_mapping(cls, parts: Mapping[int, CohClass], d_max: int) -> QuantumElement:
        return cls(tuple(parts.get(d, CohClass.zero()) for d in range(d_max + 1)))

    @property
    def d_max(self) -> int:
        return len(self.components) - 1

    def __getitem__(self, d: int) -> CohClass:
        if 0 <= d < len(self.components):
            return self.components[d]
        return CohClass.zero()

    def __add__(self, other: QuantumElement) -> QuantumElement:
        n = max(len(self.components), len(other.components))
        return QuantumElement(tuple(self[d] + other[d] for d in range(n)))

    def __sub__(self, other: QuantumElement) -> QuantumElement:
        n = max(len(self.components), len(other.components))
        return QuantumElement(tuple(self[d] - other[d] for d in range(n)))

    def scale(self, c) -> QuantumElement:
        return QuantumElement(tuple(x.scale(c) for x in self.components))

    def __bool__(self) -> bool:
        return any(self.components)

    def __mul__(self, other: QuantumElement) -> QuantumElement:
        return quantum_product(self, other, max(self.d_max, other.d_max))


def unit(d_max: int = 0) -> QuantumElement:
    return QuantumElement.of(CohClass.basis(0, 0), d_max)


def quantum_product(x: QuantumElement, y: QuantumElement, d_max: int,
                    memo: MemoTable | None = None) -> QuantumElement:
    """``T_u * T_v = sum_d q^d sum_{e,f} Phi^d_{uve} g^{ef} T_f``, extended bilinearly, mod ``q^{d_max+1}``."""
    if d_max < 0:
        raise ValueError("d_max must be >= 0")
    m = _raised(d_max, memo or default_memo())
    acc = [[ZERO] * RANK for _ in range(d_max + 1)]
    for da, xa in enumerate(x.components[:d_max + 1]):
        xs = [(index(i, j), c) for i, j, c in xa.terms()]
        if not xs:
            continue
        for db, yb in enumerate(y.components[:d_max + 1 - da]):
            for k, l, c2 in yb.terms():
                b = index(k, l)
                for a, c1 in xs:
                    c = c1 * c2
                    for d in range(d_max + 1 - da - db):
                        row = m[d][a][b]
                        tgt = acc[da + db + d]
                        for f, v in enumerate(row):
                            if v:
                                tgt[f] += c * v
    return QuantumElement(tuple(CohClass.from_flat(r) for r in acc))


def associativity_defect(u: Index, v: Index, w: Index, d_max: int,
                         memo: MemoTable | None = None) -> QuantumElement:
    """``(T_u * T_v) * T_w - T_u * (T_v * T_w)``."""
    tu, tv, tw = (QuantumElement.of(CohClass.basis(*i), d_max) for i in (u, v, w))
    left = quantum_product(quantum_product(tu, tv, d_max, memo), tw, d_max, memo)
    right = quantum_product(tu, quantum_product(tv, tw, d_max, memo), d_max, memo)
    return left - right


def _wdvv_sides(a: int, b: int, c: int, e: int, d_max: int, memo: MemoTable):
    """q-coefficients of ``sum Phi_{ab.} g Phi_{.ce}`` and ``sum Phi_{ac.} g Phi_{.be}``."""
    phi = _phi_tensor(d_max, memo)
    m = _raised(d_max, memo)
    lhs, rhs = [], []
    for n in range(d_max + 1):
        left = right = ZERO
        for d1 in range(n + 1):
            d2 = n - d1
            p2 = phi[d2]
            mab, mac = m[d1][a][b], m[d1][a][c]
            for f in range(RANK):
                if mab[f]:
                    left += mab[f] * p2[f][c][e]
                if mac[f]:
                    right += mac[f] * p2[f][b][e]
        lhs.append(left)
        rhs.append(right)
    return lhs, rhs


def wdvv_pairing_check(i: Index, j: Index, k: Index, l: Index, d_max: int,
                       memo: MemoTable | None = None) -> bool:
    """Whether ``sum Phi_ije g^ef Phi_fkl == sum Phi_ike g^ef Phi_fjl`` in every q-degree up to ``d_max``."""
    lhs, rhs = _wdvv_sides(index(*i), index(*j), index(*k), index(*l), d_max, memo or default_memo())
    return lhs == rhs


def wdvv_failures(d_max: int, memo: MemoTable | None = None) -> list[tuple[Index, Index, Index, Index]]:
    """Every basis 4-tuple on which the WDVV equation fails up to ``d_max``."""
    memo = memo or default_memo()
    bad = []
    for a, b, c, e in product(range(RANK), repeat=4):
        lhs, rhs = _wdvv_sides(a, b, c, e, d_max, memo)
        if lhs != rhs:
            bad.append((BASIS[a], BASIS[b], BASIS[c], BASIS[e]))
    return bad


# --- which terms of WDVV survive ------------------------------------------


def _sorted_triple(*xs: Index) -> tuple[Index, ...]:
    return tuple(sorted(xs))


@dataclass
class WDVVExpansion:
    """One side ``sum_{e,f} Phi_{ab e} g^{ef} Phi_{f cd}`` split into classical and quantum parts.

    ``linear`` maps a quantum three-derivative (sorted index triple) to its
    coefficient; ``quadratic`` maps an ordered pair of triples to the
    coefficient of their product.
    """

    constant: Fraction = ZERO
    linear: dict = field(default_factory=dict)
    quadratic: dict = field(default_factory=dict)

    def _bump(self, table: dict, key, c: Fraction):
        v = table.get(key, ZERO) + c
        if v:
            table[key] = v
        else:
            table.pop(key, None)


def _quantum_can_be_nonzero(*xs: Index) -> bool:
    # no t_{i0} variables in the d > 0 part
    return all(j != 0 for _, j in xs)


def wdvv_expansion(a: Index, b: Index, c: Index, d: Index) -> WDVVExpansion:
    """Expand ``sum_{e,f} Phi_{a b e} g^{ef} Phi_{f c d}`` with ``Phi = Phi_0 + Phi_q``.

    ``Phi_0`` is evaluated with the classical cup product; the ``g^{ef}`` are
    read from the diagonal class.
    """
    delta = diagonal()
    out = WDVVExpansion()
    cls = lambda x: CohClass.basis(*x)  # noqa: E731
    for e, f in product(BASIS, repeat=2):
        g = delta.at(e, f)
        if not g:
            continue
        left0 = phi3_classical(cls(a), cls(b), cls(e))
        right0 = phi3_classical(cls(f), cls(c), cls(d))
        out.constant += g * left0 * right0
        if left0 and _quantum_can_be_nonzero(f, c, d):
            out._bump(out.linear, _sorted_triple(f, c, d), g * left0)
        if right0 and _quantum_can_be_nonzero(a, b, e):
            out._bump(out.linear, _sorted_triple(a, b, e), g * right0)
        if _quantum_can_be_nonzero(a, b, e) and _quantum_can_be_nonzero(f, c, d):
            out._bump(out.quadratic, (e, f), g)
    return out


def wdvv1_surviving_terms() -> list[str]:
    """Compare the derived expansion of WDVV at ``(01, 01 | 02, 02)`` with the expected shape.

    Expected: classical parts cancel; the linear terms are
    ``Phi_{02,02,02}`` on the left and ``2 (Phi_{01,02,12} - Phi_{01,02,21})``
    on the right; the quadratic terms pair ``(i,1)`` with ``(3-i,1)`` with
    coefficient 1 on both sides.  Returns the list of differences (empty when
    everything matches).
    """
    h, h2 = (0, 1), (0, 2)
    left = wdvv_expansion(h, h, h2, h2)
    right = wdvv_expansion(h, h2, h, h2)
    expect_quadratic = {((i, 1), (3 - i, 1)): ONE for i in range(4)}
    expected = [
        ("lhs constant", left.constant, ZERO),
        ("rhs constant", right.constant, ZERO),
        ("lhs linear", left.linear, {_sorted_triple(h2, h2, h2): ONE}),
        ("rhs linear", right.linear, {_sorted_triple(h, h2, (1, 2)): Fraction(2),
                                      _sorted_triple(h, h2, (2, 1)): Fraction(-2)}),
        ("lhs quadratic", left.quadratic, expect_quadratic),
        ("rhs quadratic", right.quadratic, expect_quadratic),
    ]
    return [f"{name}: derived {got!r}, expected {want!r}" for name, got, want in expected if got != want]


# --- reduced generating series --------------------------------------------

Monomial = tuple[int, int, int, int]  # (q-degree, t02, t03, u)


@dataclass(frozen=True)
class NovikovSeries:
    """Truncated series in ``q, t02, t03, u`` with exact coefficients.

    Coefficients are stored plain (no factorial normalisation). Monomials
    beyond ``bounds = (d_max, p_max, s_max, u_max)`` are dropped.
    """

    bounds: tuple[int, int, int, int]
    coeffs: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {m: Fraction(c) for m, c in self.coeffs.items() if c and self._inside(m)}
        object.__setattr__(self, "coeffs", clean)

    def _inside(self, m: Monomial) -> bool:
        return all(0 <= x <= b for x, b in zip(m, self.bounds))

    @classmethod
    def from_terms(cls, bounds, terms: Iterable[tuple[Monomial, Fraction]]) -> NovikovSeries:
        acc: dict[Monomial, Fraction] = {}
        for m, c in terms:
            acc[m] = acc.get(m, ZERO) + c
        return cls(tuple(bounds), acc)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.coeffs.get(tuple(m), ZERO)

    def _check(self, other: NovikovSeries):
        if self.bounds != other.bounds:
            raise ValueError(f"incompatible bounds {self.bounds} vs {other.bounds}")

    def __add__(self, other: NovikovSeries) -> NovikovSeries:
        self._check(other)
        return NovikovSeries.from_terms(self.bounds, [*self.coeffs.items(), *other.coeffs.items()])

    def __neg__(self) -> NovikovSeries:
        return NovikovSeries(self.bounds, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: NovikovSeries) -> NovikovSeries:
        return self + (-other)

    def scale(self, c) -> NovikovSeries:
        return NovikovSeries(self.bounds, {m: c * v for m, v in self.coeffs.items()})

    def __rmul__(self, c) -> NovikovSeries:
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, NovikovSeries):
            return self.scale(other)
        self._check(other)
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                if self._inside(m):
                    acc[m] = acc.get(m, ZERO) + c1 * c2
        return NovikovSeries(self.bounds, acc)

    def shift_u(self, k: int) -> NovikovSeries:
        """Multiply by ``u^k``; monomials pushed to a negative u-power are dropped."""
        return NovikovSeries(self.bounds, {(d, p, s, t + k): c for (d, p, s, t), c in self.coeffs.items()})

    def restrict(self, bounds) -> NovikovSeries:
        return NovikovSeries(tuple(bounds), self.coeffs)

    def divided_coefficient(self, d: int, p: int, s: int, theta: int) -> Fraction:
        """Coefficient of ``q^d t02^p/p! t03^s/s! u^theta``."""
        return self.coefficient((d, p, s, theta)) * factorial(p) * factorial(s)


def generating_series(bounds, memo: MemoTable, degree_weight: int, t02_drop: int,
                      u_drop: int) -> NovikovSeries:
    """``sum d^w N_d(r,s,theta) q^d t02^(r-k)/(r-k)! t03^s/s! u^(theta-j)``.

    ``k = t02_drop`` and ``j = u_drop`` count the derivatives taken along
    ``t02`` and the base weight they remove.  Terms with a negative exponent
    are absent.
    """
    d_max = bounds[0]
    terms = []
    for key in balanced_keys(d_max):
        d, r, s, theta = key
        p, t = r - t02_drop, theta - u_drop
        if p < 0 or t < 0:
            continue
        val = n_planar(key, memo)
        if val:
            terms.append(((d, p, s, t), Fraction(d ** degree_weight * val, factorial(p) * factorial(s))))
    return NovikovSeries.from_terms(bounds, terms)


@dataclass(frozen=True)
class WDVV1Series:
    """The four pieces of the coefficient-level WDVV identity.

    ``s222 + s1122 == 2 * s1212_1221 + s1212`` coefficientwise.
    """

    s222: NovikovSeries
    s1122: NovikovSeries
    s1212_1221: NovikovSeries
    s1212: NovikovSeries


def build_wdvv1_series(d_max: int, p_max: int, memo: MemoTable | None = None) -> WDVV1Series:
    memo = memo or default_memo()
    # u up to 6 so products survive the u^-3 shift for theta <= 3
    bounds = (d_max, p_max, 3, 6)

    # Degree weight = number of H-type (divisor) insertions among the three
    # derivative slots; t02 drop = number of t02 slots; u drop = base weight
    # of the slots that are not summed over i + k = 3.
    def gen(w, k, j):
        return generating_series(bounds, memo, w, k, j)

    s222 = gen(0, 3, 0)
    # Phi_{01,01,i1} against Phi_{k1,02,02}, i + k = 3
    s1122 = (gen(3, 0, 0) * gen(1, 2, 0)).shift_u(-3)
    s1212_1221 = gen(1, 2, 1) - gen(2, 1, 2)
    # Phi_{01,02,i1} against Phi_{k1,01,02}
    s1212 = (gen(2, 1, 0) * gen(2, 1, 0)).shift_u(-3)
    return WDVV1Series(s222, s1122, s1212_1221, s1212)


@lru_cache(maxsize=16)
def _series_for_degree(d: int, memo: MemoTable) -> WDVV1Series:
    return build_wdvv1_series(d, max(3 * d - 1, 0), memo)


def wdvv1_terms(d: int, r: int, s: int, theta: int, memo: MemoTable | None = None) -> dict:
    """Extract both sides of the WDVV coefficient identity at ``(d, r, s, theta)``.

    ``lhs`` is the coefficient read from the triple-``t02`` piece, i.e.
    ``N_d(r,s,theta)``; ``rhs`` is what the other three pieces force it to be.
    """
    key = GWKey(d, r, s, theta).validate()
    if not key.balanced:
        raise ValueError(f"key {tuple(key)} is not balanced")
    if r < 3:
        raise ValueError("the coefficient identity needs r >= 3")
    if s > 3 or theta > 3:
        raise ValueError("s and theta must be at most 3")
    series = _series_for_degree(d, memo or default_memo())
    p = r - 3
    ext = lambda x: x.divided_coefficient(d, p, s, theta)  # noqa: E731
    lhs = ext(series.s222)
    rhs = 2 * ext(series.s1212_1221) + ext(series.s1212) - ext(series.s1122)
    return {"check": "wdvv1", "d": d, "r": r, "s": s, "theta": theta,
            "ok": lhs == rhs, "lhs": format_rational(lhs), "rhs": format_rational(rhs)}


def wdvv1_coefficient_identity(d: int, r: int, s: int, theta: int, memo: MemoTable | None = None) -> bool:
    return wdvv1_terms(d, r, s, theta, memo)["ok"]
