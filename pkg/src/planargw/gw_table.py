"""Genus-0 planar invariants ``N_d(r, s, theta)`` of ``P^3``.

``N_d(r, s, theta)`` counts rational degree-``d`` curves lying in a plane,
meeting ``r`` general lines and ``s`` general points, with the extra base
condition ``a^theta`` on the plane.  Values come from the WDVV recursion with
its five initial conditions; everything is exact.
"""
from __future__ import annotations

import json
import os
import threading
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple

from .exact import ZERO, format_rational

CACHE_SCHEMA = "planar-gw-memo-v1"

# (d, r, s, theta) with value 1; all other keys with r <= 2 vanish.
INITIAL_ONES = frozenset({(1, 0, 2, 1), (1, 2, 1, 1), (1, 1, 1, 2), (1, 2, 0, 3), (2, 2, 3, 0)})


class CacheIntegrityError(RuntimeError):
    """A cached value disagrees with the recursion or violates a vanishing rule."""


class GWKey(NamedTuple):
    d: int
    r: int
    s: int
    theta: int

    def validate(self) -> GWKey:
        if any(not isinstance(x, int) or isinstance(x, bool) for x in self):
            raise TypeError(f"key components must be integers: {tuple(self)}")
        if self.d < 1:
            raise ValueError(f"curve degree must be positive, got d={self.d}")
        if min(self.r, self.s, self.theta) < 0:
            raise ValueError(f"negative component in key {tuple(self)}")
        return self

    @property
    def balanced(self) -> bool:
        return self.r + 2 * self.s + self.theta == expected_codim(self.d, 0)

    def __str__(self) -> str:
        return f"{self.d},{self.r},{self.s},{self.theta}"

    @classmethod
    def parse(cls, text: str) -> GWKey:
        parts = text.split(",")
        if len(parts) != 4:
            raise ValueError(f"malformed key {text!r}")
        return cls(*(int(p) for p in parts))


def expected_codim(d: int, n: int) -> int:
    """Virtual dimension ``3d + 2 + n`` of genus-0 planar maps with ``n`` markings.

    Specialises ``c_1(T_F).beta + (dim F - 3)(1 - g) + n + dim B`` to
    ``F = P^2``, ``B = G(3,4)``, ``g = 0``.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    c1_beta, dim_f, dim_b, g = 3 * d, 2, 3, 0
    return c1_beta + (dim_f - 3) * (1 - g) + n + dim_b


def binomial(n: int, k: int) -> int:
    """``C(n, k)``, zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


class MemoTable:
    """Write-once store of computed ``N`` values keyed by :class:`GWKey`.

    Readers need no lock; writers are serialised, and a second write of a
    different value for the same key raises :class:`CacheIntegrityError`.
    """

    def __init__(self):
        self._values: dict[GWKey, Fraction] = {}
        self._lock = threading.Lock()
        self.loaded: set[GWKey] = set()

    def __contains__(self, key) -> bool:
        return key in self._values

    def __len__(self) -> int:
        return len(self._values)

    def get(self, key: GWKey) -> Fraction | None:
        return self._values.get(key)

    def put(self, key: GWKey, value: Fraction) -> Fraction:
        value = Fraction(value)
        with self._lock:
            old = self._values.get(key)
            if old is not None and old != value:
                raise CacheIntegrityError(f"conflicting values for N{tuple(key)}: {old} vs {value}")
            self._values[key] = value
        return value

    def items(self) -> list[tuple[GWKey, Fraction]]:
        return sorted(self._values.items())

    def to_json(self) -> dict:
        return {"schema": CACHE_SCHEMA,
                "values": {str(k): format_rational(v) for k, v in self.items()}}

    def save(self, path: str | os.PathLike) -> None:
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8") as f:
            json.dump(self.to_json(), f, indent=1, sort_keys=True)
            f.write("\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> MemoTable:
        """Read a cache file, rejecting entries that break a structural rule."""
        with open(path, encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise CacheIntegrityError(f"{path}: not valid JSON ({e})") from None
        if not isinstance(data, dict) or data.get("schema") != CACHE_SCHEMA:
            raise CacheIntegrityError(f"{path}: expected schema {CACHE_SCHEMA!r}")
        memo = cls()
        for k, v in data.get("values", {}).items():
            try:
                key = GWKey.parse(k).validate()
                value = Fraction(int(v))
            except (ValueError, TypeError):
                raise CacheIntegrityError(f"{path}: bad entry {k!r}: {v!r}") from None
            rule = _rule_value(key)
            if rule is not None and rule != value:
                raise CacheIntegrityError(f"{path}: N{tuple(key)} = {value} contradicts the "
                                          f"initial/vanishing rules (expected {rule})")
            memo.put(key, value)
            memo.loaded.add(key)
        return memo

    def verify(self) -> list[GWKey]:
        """Recompute every stored entry in a fresh table; return the keys that differ."""
        fresh = MemoTable()
        return [k for k, v in self.items() if n_planar(k, fresh) != v]


_default_memo = MemoTable()


def default_memo() -> MemoTable:
    return _default_memo


def _rule_value(key: GWKey) -> Fraction | None:
    """Value fixed by balance, bounds or initial conditions; ``None`` if the recursion is needed."""
    d, r, s, theta = key
    if not key.balanced or s > 3 or theta > 3:
        return ZERO
    if r <= 2:
        return Fraction(int(tuple(key) in INITIAL_ONES))
    return None


def n_planar(key: GWKey | tuple, memo: MemoTable | None = None) -> Fraction:
    """``N_d(r, s, theta)``.

    Rules apply in order: unbalanced keys vanish, ``s > 3`` or ``theta > 3``
    vanish, ``r <= 2`` is read from the initial table, and ``r >= 3`` uses the
    recursion

        N_d(r,s,t) = 2d N_d(r-1,s,t+1) - 2d^2 N_d(r-2,s,t+2)
                     + sum (d1^2 d2^2 C(r-3,r1-1) - d1^3 d2 C(r-3,r1)) C(s,s1)
                           N_d1(r1,s1,t1) N_d2(r2,s2,t2)

    over ``d1 + d2 = d``, ``r1 + r2 = r - 1``, ``s1 + s2 = s``,
    ``t1 + t2 = t + 3`` with ``d1, d2 >= 1``.
    """
    key = GWKey(*key).validate()
    if memo is None:
        memo = _default_memo
    return _n(key, memo)


def _n(key: GWKey, memo: MemoTable) -> Fraction:
    cached = memo.get(key)
    if cached is not None:
        return cached
    fixed = _rule_value(key)
    if fixed is not None:
        if key.balanced:
            memo.put(key, fixed)
        return fixed

    d, r, s, theta = key
    total = 2 * d * _n(GWKey(d, r - 1, s, theta + 1), memo)
    total -= 2 * d * d * _n(GWKey(d, r - 2, s, theta + 2), memo)
    for d1 in range(1, d):
        d2 = d - d1
        for r1 in range(r):
            r2 = r - 1 - r1
            weight = d1 * d1 * d2 * d2 * binomial(r - 3, r1 - 1) - d1 ** 3 * d2 * binomial(r - 3, r1)
            if not weight:
                continue
            for s1 in range(s + 1):
                # theta_i > 3 summands vanish through the bound rule
                for t1 in range(theta + 4):
                    left = _n(GWKey(d1, r1, s1, t1), memo)
                    if not left:
                        continue
                    right = _n(GWKey(d2, r2, s - s1, theta + 3 - t1), memo)
                    total += weight * binomial(s, s1) * left * right
    return memo.put(key, Fraction(total))


def reduce_point_insertion(key: GWKey | tuple, memo: MemoTable | None = None) -> Fraction:
    """Trade one point condition for ``H^3 = a H^2 - a^2 H + a^3``.

    ``N_d(r,s,t) = N_d(r+1, s-1, t+1) - d N_d(r, s-1, t+2)``: the ``a H^2`` term
    becomes a line condition, ``a^2 H`` contributes ``d`` by the divisor axiom,
    and the pure base class ``a^3`` dies by the string axiom.
    """
    d, r, s, theta = key = GWKey(*key).validate()
    if s < 1:
        raise ValueError("reduce_point_insertion needs at least one point condition")
    if memo is None:
        memo = _default_memo
    return (n_planar((d, r + 1, s - 1, theta + 1), memo)
            - d * n_planar((d, r, s - 1, theta + 2), memo))


def expand_point_insertions(key: GWKey | tuple, memo: MemoTable | None = None) -> Fraction:
    """Apply :func:`reduce_point_insertion` until no point conditions remain.

    Only ``s = 0`` values are ever looked up, so this is a second route to any
    ``N`` with ``s > 0``.
    """
    d, r, s, theta = key = GWKey(*key).validate()
    if memo is None:
        memo = _default_memo
    terms = {(r, theta): Fraction(1)}
    for _ in range(s):
        nxt: dict[tuple[int, int], Fraction] = {}
        for (rr, tt), c in terms.items():
            nxt[rr + 1, tt + 1] = nxt.get((rr + 1, tt + 1), ZERO) + c
            nxt[rr, tt + 2] = nxt.get((rr, tt + 2), ZERO) - d * c
        terms = nxt
    return sum((c * n_planar((d, rr, 0, tt), memo) for (rr, tt), c in terms.items()), ZERO)


def gw_invariant(d: int, theta_total: int, insertions: Iterable[int],
                 memo: MemoTable | None = None) -> Fraction:
    """``<a^t1 H^m1, ..., a^tn H^mn>_d`` with all base exponents summed into ``theta_total``.

    By the divisor axiom each ``H`` insertion contributes a factor ``d``, so the
    result is ``d^k N_d(r, s, theta_total)`` with ``k, r, s`` the numbers of
    ``m = 1, 2, 3``.  An ``m = 0`` insertion is a pullback from the base and
    the invariant vanishes (string axiom, ``d >= 1``).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if theta_total < 0:
        raise ValueError("theta_total must be >= 0")
    counts = [0, 0, 0, 0]
    for m in insertions:
        if m not in (0, 1, 2, 3):
            raise ValueError(f"insertion exponent must be in 0..3, got {m}")
        counts[m] += 1
    if counts[0]:
        return ZERO
    k, r, s = counts[1], counts[2], counts[3]
    return d ** k * n_planar((d, r, s, theta_total), memo)


def balanced_keys(d_max: int) -> list[GWKey]:
    """All balanced keys with ``d <= d_max``, ``s <= 3``, ``theta <= 3``, sorted by ``(d, s, theta)``."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    keys = []
    for d in range(1, d_max + 1):
        for s in range(4):
            for theta in range(4):
                r = expected_codim(d, 0) - 2 * s - theta
                if r >= 0:
                    keys.append(GWKey(d, r, s, theta))
    return keys


def full_table(d_max: int, memo: MemoTable | None = None) -> list[tuple[GWKey, Fraction]]:
    return [(key, n_planar(key, memo)) for key in balanced_keys(d_max)]
