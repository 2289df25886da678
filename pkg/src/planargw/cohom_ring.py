"""Cohomology ring of the universal plane ``E -> G(3,4)``.

The ring is ``Q[a, H] / (a^4, H^3 - a H^2 + a^2 H - a^3)`` with basis
``T_ij = a^i H^j`` for ``0 <= i <= 3`` and ``0 <= j <= 2``.  Classes are kept
as a dense 4x3 grid of exact rationals; the flat basis index of ``T_ij`` is
``3*i + j``.

``E`` has complex dimension 5, and the point class is ``a^3 H^2``, so
``integrate`` reads off that single coefficient.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exact import ONE, ZERO, format_rational, identity, inverse, matmul

A_MAX = 3
H_MAX = 2
DIM = 5
BASIS: tuple[tuple[int, int], ...] = tuple((i, j) for i in range(A_MAX + 1) for j in range(H_MAX + 1))
RANK = len(BASIS)


class RingKernelError(RuntimeError):
    """An internal identity of the ring failed; indicates a bug, not bad input."""


def index(i: int, j: int) -> int:
    return 3 * i + j


def basis_label(i: int, j: int) -> str:
    return f"T{i}{j}"


@dataclass(frozen=True)
class CohClass:
    """Element of ``H^*(E, Q)``; ``coeff[i][j]`` multiplies ``a^i H^j``."""

    coeff: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.coeff) != A_MAX + 1 or any(len(row) != H_MAX + 1 for row in self.coeff):
            raise ValueError("CohClass needs a 4x3 coefficient grid")

    @classmethod
    def zero(cls) -> CohClass:
        return cls(tuple((ZERO,) * (H_MAX + 1) for _ in range(A_MAX + 1)))

    @classmethod
    def basis(cls, i: int, j: int) -> CohClass:
        """``T_ij``; indices outside the grid give the zero class."""
        if not (0 <= i <= A_MAX and 0 <= j <= H_MAX):
            return cls.zero()
        return cls(tuple(tuple(ONE if (p, q) == (i, j) else ZERO for q in range(H_MAX + 1))
                         for p in range(A_MAX + 1)))

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence[Fraction | int]]) -> CohClass:
        return cls(tuple(tuple(Fraction(x) for x in row) for row in grid))

    @classmethod
    def from_flat(cls, values: Sequence[Fraction | int]) -> CohClass:
        if len(values) != RANK:
            raise ValueError(f"expected {RANK} coefficients, got {len(values)}")
        return cls.from_grid([values[3 * i:3 * i + 3] for i in range(A_MAX + 1)])

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(c for row in self.coeff for c in row)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i <= A_MAX and 0 <= j <= H_MAX):
            return ZERO
        return self.coeff[i][j]

    def terms(self) -> Iterable[tuple[int, int, Fraction]]:
        """Nonzero ``(i, j, coefficient)`` triples."""
        for i, j in BASIS:
            c = self.coeff[i][j]
            if c:
                yield i, j, c

    def __bool__(self) -> bool:
        return any(c for row in self.coeff for c in row)

    def __add__(self, other: CohClass) -> CohClass:
        if not isinstance(other, CohClass):
            return NotImplemented
        return CohClass(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.coeff, other.coeff)))

    def __neg__(self) -> CohClass:
        return CohClass(tuple(tuple(-x for x in r) for r in self.coeff))

    def __sub__(self, other: CohClass) -> CohClass:
        if not isinstance(other, CohClass):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Fraction | int) -> CohClass:
        c = Fraction(c)
        return CohClass(tuple(tuple(c * x for x in r) for r in self.coeff))

    def __mul__(self, other):
        if isinstance(other, CohClass):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> CohClass:
        out = CohClass.basis(0, 0)
        for _ in range(n):
            out = mul(out, self)
        return out

    def degrees(self) -> set[int]:
        """Complex degrees ``i + j`` carrying a nonzero coefficient."""
        return {i + j for i, j, _ in self.terms()}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def to_json(self) -> dict:
        return {"coeff": [[format_rational(c) for c in row] for row in self.coeff]}

    def __repr__(self) -> str:
        parts = [f"{format_rational(c)}*{basis_label(i, j)}" for i, j, c in self.terms()]
        return "CohClass(" + (" + ".join(parts) if parts else "0") + ")"


def reduce(raw: Iterable[tuple[int, int, Fraction | int]]) -> CohClass:
    """Normal form of a polynomial given as ``(a-exponent, H-exponent, coefficient)`` terms.

    ``H^3`` is rewritten as ``a H^2 - a^2 H + a^3`` until every H-exponent is at
    most 2, and monomials with ``a^4`` are dropped.
    """
    pending: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    for i, j, c in raw:
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent in monomial a^{i} H^{j}")
        if i <= A_MAX:
            pending[i, j] += Fraction(c)
    grid = [[ZERO] * (H_MAX + 1) for _ in range(A_MAX + 1)]
    # Highest H-power first so coefficients merge before they branch.
    while pending:
        j_top = max(j for _, j in pending)
        for i, j in [k for k in pending if k[1] == j_top]:
            c = pending.pop((i, j))
            if not c:
                continue
            if j <= H_MAX:
                grid[i][j] += c
                continue
            for di, sign in ((1, 1), (2, -1), (3, 1)):
                if i + di <= A_MAX:
                    pending[i + di, j - di] += sign * c
    return CohClass.from_grid(grid)


def mul(x: CohClass, y: CohClass) -> CohClass:
    """Cup product."""
    return reduce((i + k, j + l, c * e) for i, j, c in x.terms() for k, l, e in y.terms())


def integrate(x: CohClass) -> Fraction:
    """``int_E x``: the coefficient of the point class ``a^3 H^2``."""
    return x.coeff[A_MAX][H_MAX]


def pairing(x: CohClass, y: CohClass) -> Fraction:
    return integrate(mul(x, y))


UNIT = CohClass.basis(0, 0)
A = CohClass.basis(1, 0)
H = CohClass.basis(0, 1)
POINT = CohClass.basis(3, 2)
T03 = reduce([(0, 3, 1)])


@dataclass(frozen=True)
class PairingTensor:
    """Poincare pairing ``g`` on the basis and its exact inverse, flat-indexed."""

    g: tuple[tuple[Fraction, ...], ...]
    ginv: tuple[tuple[Fraction, ...], ...]

    def at(self, u: tuple[int, int], v: tuple[int, int]) -> Fraction:
        return self.g[index(*u)][index(*v)]

    def inv_at(self, u: tuple[int, int], v: tuple[int, int]) -> Fraction:
        return self.ginv[index(*u)][index(*v)]

    def to_json(self) -> dict:
        return {
            "g": [[format_rational(c) for c in row] for row in self.g],
            "ginv": [[format_rational(c) for c in row] for row in self.ginv],
        }


@dataclass(frozen=True)
class DiagonalTensor:
    """``delta[u][v]`` is the coefficient of ``T_u (x) T_v`` in the diagonal class."""

    delta: tuple[tuple[Fraction, ...], ...]

    def at(self, u: tuple[int, int], v: tuple[int, int]) -> Fraction:
        return self.delta[index(*u)][index(*v)]

    def to_json(self) -> dict:
        return {"delta": [[format_rational(c) for c in row] for row in self.delta]}


@lru_cache(maxsize=None)
def pairing_tensor() -> PairingTensor:
    basis = [CohClass.basis(i, j) for i, j in BASIS]
    g = [[pairing(x, y) for y in basis] for x in basis]
    try:
        ginv = inverse(g)
    except ZeroDivisionError:
        raise RingKernelError("Poincare pairing is degenerate") from None
    if matmul(g, ginv) != identity(RANK):
        raise RingKernelError("g * ginv is not the identity")
    return PairingTensor(tuple(map(tuple, g)), tuple(map(tuple, ginv)))


def dual_class(i: int, j: int) -> CohClass:
    """``T^{ij} = T_{3-i,2-j} - T_{4-i,1-j} + T_{5-i,-j}`` with out-of-grid terms zero."""
    return (CohClass.basis(3 - i, 2 - j)
            - CohClass.basis(4 - i, 1 - j)
            + CohClass.basis(5 - i, -j))


def dual_basis() -> list[CohClass]:
    """Dual basis in flat order: ``pairing(T_u, dual_basis()[v]) == (u == v)``."""
    return [dual_class(i, j) for i, j in BASIS]


def _diagonal_closed_form() -> list[list[Fraction]]:
    delta = [[ZERO] * RANK for _ in range(RANK)]

    def add(u, v, c):
        (i, j), (k, l) = u, v
        if 0 <= k <= A_MAX and 0 <= l <= H_MAX:
            delta[index(i, j)][index(k, l)] += c

    for i in range(4):
        for j in range(3):
            add((i, j), (3 - i, 2 - j), 1)
    for i in range(1, 4):
        for j in range(2):
            add((i, j), (4 - i, 1 - j), -1)
    add((2, 0), (3, 0), 1)
    add((3, 0), (2, 0), 1)
    return delta


@lru_cache(maxsize=None)
def diagonal() -> DiagonalTensor:
    """Diagonal class of ``E x E`` from its closed form, checked against ``g^{-1}``."""
    delta = _diagonal_closed_form()
    ginv = pairing_tensor().ginv
    for u in range(RANK):
        for v in range(RANK):
            if delta[u][v] != ginv[u][v]:
                raise RingKernelError(
                    f"diagonal closed form disagrees with g^-1 at {BASIS[u]},{BASIS[v]}: "
                    f"{delta[u][v]} != {ginv[u][v]}")
    return DiagonalTensor(tuple(map(tuple, delta)))


def ring_report() -> dict:
    """JSON-ready dump of the pairing, its inverse, dual basis and diagonal."""
    return {
        "basis": [basis_label(i, j) for i, j in BASIS],
        "pairing": pairing_tensor().to_json(),
        "dual_basis": {basis_label(i, j): dual_class(i, j).to_json() for i, j in BASIS},
        "diagonal": diagonal().to_json(),
    }
