"""Truncated q-expansions of Siegel units on the exact 1/(12N) grid.

A series is a sparse map from integer keys k to rational coefficients,
where k encodes the exponent k/(12*level).  The leading exponent of a
single unit times 12N is 6g^2 - 6gN + N^2, always an integer, so the grid
is exact and no floating point appears anywhere.  Each series carries a
validity bound `trunc_key`: coefficients are exact (and stored) only for
keys strictly below it.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .siegel import UnitProduct

__all__ = [
    "QSeries",
    "expand_unit",
    "expand_product",
    "series_mul",
    "series_pow",
    "rescale",
    "to_level",
    "series_equal",
    "unit_lead_key",
]


@dataclass(frozen=True)
class QSeries:
    level: int
    coeffs: tuple[tuple[int, Fraction], ...]  # sorted (key, coefficient) pairs
    trunc_key: int

    @staticmethod
    def make(level: int, coeffs, trunc_key: int) -> "QSeries":
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        kept = sorted((int(k), Fraction(c)) for k, c in items if c and k < trunc_key)
        return QSeries(level, tuple(kept), trunc_key)

    @property
    def grid(self) -> int:
        return 12 * self.level

    @property
    def lead_key(self) -> int:
        if not self.coeffs:
            raise ValueError("series has no stored terms below its truncation")
        return self.coeffs[0][0]

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def is_one(self) -> bool:
        """True when the series is 1 + O(q^trunc)."""
        return self.coeffs == ((0, Fraction(1)),)

    def __str__(self) -> str:
        if not self.coeffs:
            return f"O(q^({Fraction(self.trunc_key, self.grid)}))"
        parts = []
        for k, c in self.coeffs[:6]:
            e = Fraction(k, self.grid)
            parts.append(f"{c}*q^({e})" if e else f"{c}")
        if len(self.coeffs) > 6:
            parts.append("...")
        return " + ".join(parts)


def _poly_mul(a: dict, b: dict, depth: int) -> dict:
    """Truncated product of integer-offset polynomials (int or Fraction
    coefficients; ints stay ints)."""
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i + j
            if k < depth:
                v = out.get(k)
                out[k] = x * y if v is None else v + x * y
    return {k: v for k, v in out.items() if v}


def _poly_pow(a: dict, e: int, depth: int) -> dict:
    result = {0: 1}
    base = dict(a)
    while e:
        if e & 1:
            result = _poly_mul(result, base, depth)
        e >>= 1
        if e:
            base = _poly_mul(base, base, depth)
    return result


def _poly_inv(a: dict, depth: int) -> dict:
    c0 = a.get(0)
    if not c0:
        raise ZeroDivisionError("cannot invert a series with zero constant term")
    if c0 == 1:
        inv0 = 1
    elif c0 == -1:
        inv0 = -1
    else:
        inv0 = Fraction(1, c0) if isinstance(c0, int) else 1 / c0
    out = {0: inv0}
    tail = sorted((k, v) for k, v in a.items() if k > 0)
    for d in range(1, depth):
        acc = 0
        for k, v in tail:
            if k > d:
                break
            coeff = out.get(d - k)
            if coeff:
                acc += v * coeff
        if acc:
            out[d] = -acc * inv0
    return out


def unit_lead_key(N: int, g: int) -> int:
    """12N times the leading exponent N*B2(g/N)/2, for 1 <= g <= N-1."""
    g %= N
    if g == 0:
        raise ValueError(f"index 0 is not a valid Siegel-unit index mod {N}")
    return 6 * g * g - 6 * g * N + N * N


def _unit_poly(N: int, g: int, depth: int) -> dict[int, int]:
    """Product part of the unit expansion, exact for integer exponents < depth."""
    poly = {0: 1}
    n = 1
    while True:
        lo, hi = (n - 1) * N + g, n * N - g
        if lo >= depth and hi >= depth:
            break
        for m in (lo, hi):
            if m < depth:
                poly = _poly_mul(poly, {0: 1, m: -1}, depth)
        n += 1
    return poly


def expand_unit(N: int, g: int, T: int = 8) -> QSeries:
    """Expansion of a single Siegel unit, exact below exponent T.

    Leading coefficient is 1 (constants are normalized away).
    """
    if T < 1:
        raise ValueError(f"truncation must be >= 1, got {T}")
    g %= N
    if g == 0:
        raise ValueError(f"index 0 is not a valid Siegel-unit index mod {N}")
    grid = 12 * N
    lead = unit_lead_key(N, g)
    trunc = T * grid
    depth = max(0, -((lead - trunc) // grid))  # ceil((trunc - lead) / grid)
    poly = _unit_poly(N, g, depth)
    return QSeries.make(N, {lead + grid * j: c for j, c in poly.items()}, trunc)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Truncated product; validity is propagated exactly."""
    if a.level != b.level:
        raise ValueError("cannot multiply series of different levels")
    trunc = min(a.trunc_key + b.lead_key, b.trunc_key + a.lead_key)
    out: dict[int, Fraction] = {}
    for i, x in a.coeffs:
        for j, y in b.coeffs:
            k = i + j
            if k < trunc:
                out[k] = out.get(k, Fraction(0)) + x * y
    return QSeries.make(a.level, out, trunc)


def _series_inv(a: QSeries) -> QSeries:
    lead = a.lead_key
    step_keys = [k - lead for k, _ in a.coeffs if k != lead]
    step = gcd(*step_keys) if step_keys else a.grid
    offs = {(k - lead) // step: c for k, c in a.coeffs}
    depth = max(1, -((lead - a.trunc_key) // step))
    inv_offs = _poly_inv(offs, depth)
    trunc = a.trunc_key - 2 * lead
    return QSeries.make(a.level, {-lead + step * j: c for j, c in inv_offs.items()}, trunc)


def series_pow(a: QSeries, e: int) -> QSeries:
    """Integer power; negative exponents invert at the leading term."""
    if e == 0:
        return QSeries.make(a.level, {0: 1}, a.trunc_key - a.lead_key)
    base = a if e > 0 else _series_inv(a)
    result = base
    for _ in range(abs(e) - 1):
        result = series_mul(result, base)
    return result


def rescale(a: QSeries, d: int) -> QSeries:
    """Substitute tau -> d*tau: level becomes d*level, keys scale by d^2."""
    if d < 1:
        raise ValueError(f"scale must be >= 1, got {d}")
    if d == 1:
        return a
    return QSeries(
        a.level * d,
        tuple((k * d * d, c) for k, c in a.coeffs),
        a.trunc_key * d * d,
    )


def to_level(a: QSeries, level: int) -> QSeries:
    """Reinterpret the same function on the finer 1/(12*level) grid."""
    if level % a.level:
        raise ValueError(f"{level} is not a multiple of level {a.level}")
    r = level // a.level
    return QSeries(level, tuple((k * r, c) for k, c in a.coeffs), a.trunc_key * r)


def series_equal(a: QSeries, b: QSeries) -> bool:
    """Equality of all coefficients below the common validity bound."""
    if a.level != b.level:
        raise ValueError("cannot compare series of different levels")
    bound = min(a.trunc_key, b.trunc_key)
    da = {k: c for k, c in a.coeffs if k < bound}
    db = {k: c for k, c in b.coeffs if k < bound}
    return da == db


def expand_product(u: UnitProduct, T: int = 8) -> QSeries:
    """Expansion of a unit product, exact below exponent T.

    Numerator and denominator polynomials are expanded to the depth implied
    by the total leading exponent, so cancellation never costs precision.
    """
    N = u.level
    grid = 12 * N
    trunc = T * grid
    if not u:
        return QSeries.make(N, {0: 1}, trunc)
    lead = sum(e * unit_lead_key(N, h) for h, e in u.items())
    depth = max(0, -((lead - trunc) // grid))  # integral q-powers needed
    if depth == 0:
        return QSeries.make(N, {}, trunc)  # everything beyond the truncation
    num = {0: 1}
    den = {0: 1}
    for h, e in u.items():
        poly = _unit_poly(N, h, depth)
        if e > 0:
            num = _poly_mul(num, _poly_pow(poly, e, depth), depth)
        else:
            den = _poly_mul(den, _poly_pow(poly, -e, depth), depth)
    full = _poly_mul(num, _poly_inv(den, depth), depth)
    return QSeries.make(N, {lead + grid * j: c for j, c in full.items()}, trunc)
