"""Siegel-unit products, cusp orders, and membership predicates.

Units are tracked modulo nonzero scalars throughout: a product of Siegel
units is just a sparse exponent vector over the representative indices
h = 1, ..., floor(N/2) at a fixed level N.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .numtheory import b2, euler_phi, factorize, is_prime

__all__ = [
    "LevelContext",
    "UnitProduct",
    "CuspDivisor",
    "normalize_index",
    "lower_level_embed",
    "order_at_cusp",
    "divisor",
    "is_gamma1_modular",
    "orbit",
    "orbit_condition_holds",
    "render_product",
]


def normalize_index(N: int, g: int) -> int:
    """Representative of +-g (mod N) in [1, floor(N/2)].

    >>> normalize_index(13, 15)
    2
    >>> normalize_index(13, 12)
    1
    """
    g %= N
    if g == 0:
        raise ValueError(f"index 0 is not a valid Siegel-unit index mod {N}")
    return min(g, N - g)


def lower_level_embed(M: int, g: int, d: int) -> int:
    """Index at level d*M of a level-M unit evaluated at d*tau.

    >>> lower_level_embed(12, 1, 3)
    3
    """
    if d < 1:
        raise ValueError(f"scale must be >= 1, got {d}")
    if g % M == 0:
        raise ValueError(f"index 0 is not a valid Siegel-unit index mod {M}")
    return normalize_index(d * M, g * d)


def cusp_list(N: int) -> list[int]:
    """Numerators a of the width-one cusps a/N: coprime to N, 1 <= a <= N/2."""
    return [a for a in range(1, N // 2 + 1) if gcd(a, N) == 1]


def genus_x1(N: int) -> int:
    """Genus of X_1(N) for N >= 5 (no elliptic points in this range)."""
    if N < 5:
        raise ValueError(f"genus formula implemented for N >= 5, got {N}")
    from .numtheory import divisors, euler_phi, factorize

    index2 = N * N
    for p, _ in factorize(N):
        index2 = index2 // (p * p) * (p * p - 1)
    cusps = sum(euler_phi(d) * euler_phi(N // d) for d in divisors(N)) // 2
    g = Fraction(index2, 24) - Fraction(cusps, 2) + 1
    assert g.denominator == 1
    return int(g)


def unit_indices(N: int) -> list[int]:
    """Representative Siegel-unit indices 1, ..., floor(N/2)."""
    return list(range(1, N // 2 + 1))


@dataclass(frozen=True)
class LevelContext:
    """Level N with its factorization, cusp numerators, and unit indices."""

    N: int
    factorization: tuple[tuple[int, int], ...]
    cusps: tuple[int, ...]
    indices: tuple[int, ...]

    @classmethod
    def of(cls, N: int) -> "LevelContext":
        return _level_context(N)

    @property
    def num_cusps(self) -> int:
        return len(self.cusps)


@lru_cache(maxsize=None)
def _level_context(N: int) -> LevelContext:
    if N < 5:
        raise ValueError(f"level must be >= 5, got {N}")
    ctx = LevelContext(
        N=N,
        factorization=tuple(factorize(N)),
        cusps=tuple(cusp_list(N)),
        indices=tuple(unit_indices(N)),
    )
    assert len(ctx.cusps) == euler_phi(N) // 2
    assert len(ctx.indices) == (N - 1 + 1) // 2
    return ctx


class UnitProduct:
    """Sparse exponent vector over Siegel-unit indices at a fixed level.

    Immutable value type; indices are always normalized and zero exponents
    are dropped, so two equal products compare equal.
    """

    __slots__ = ("level", "_exps")

    def __init__(self, level: int, exponents=None):
        if level < 2:
            raise ValueError(f"level must be >= 2, got {level}")
        self.level = level
        exps: dict[int, int] = {}
        if exponents:
            items = exponents.items() if hasattr(exponents, "items") else exponents
            for g, e in items:
                h = normalize_index(level, g)
                e = int(e)
                if e:
                    exps[h] = exps.get(h, 0) + e
        self._exps = {h: e for h, e in sorted(exps.items()) if e}

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self._exps)

    def items(self):
        return self._exps.items()

    def __bool__(self) -> bool:
        return bool(self._exps)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UnitProduct)
            and self.level == other.level
            and self._exps == other._exps
        )

    def __hash__(self) -> int:
        return hash((self.level, tuple(self._exps.items())))

    def __mul__(self, other: "UnitProduct") -> "UnitProduct":
        if self.level != other.level:
            raise ValueError("cannot multiply products of different levels")
        exps = dict(self._exps)
        for h, e in other._exps.items():
            exps[h] = exps.get(h, 0) + e
        return UnitProduct(self.level, exps)

    def __pow__(self, e: int) -> "UnitProduct":
        return UnitProduct(self.level, {h: k * e for h, k in self._exps.items()})

    def inverse(self) -> "UnitProduct":
        return self**-1

    def __truediv__(self, other: "UnitProduct") -> "UnitProduct":
        return self * other.inverse()

    def __repr__(self) -> str:
        return f"UnitProduct({self.level}, {self._exps})"

    def __str__(self) -> str:
        return render_product(self._exps)


@dataclass(frozen=True)
class CuspDivisor:
    """Exact orders at the width-one cusps, in LevelContext (ascending) order."""

    level: int
    orders: tuple[Fraction, ...]

    @property
    def degree(self) -> Fraction:
        return sum(self.orders, Fraction(0))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.orders)

    def __add__(self, other: "CuspDivisor") -> "CuspDivisor":
        if self.level != other.level:
            raise ValueError("cannot add divisors of different levels")
        return CuspDivisor(self.level, tuple(x + y for x, y in zip(self.orders, other.orders)))


def order_at_cusp(N: int, g: int, a: int, c: int | None = None) -> Fraction:
    """Order of the unit with index g at the cusp a/c of X_1(N).

    Defaults to the width-one cusps c = N, where the order is
    (N/2) * B2(a*g/N).

    >>> order_at_cusp(13, 1, 1)
    Fraction(97, 156)
    """
    if g % N == 0:
        raise ValueError(f"index 0 is not a valid Siegel-unit index mod {N}")
    if c is None:
        c = N
    if gcd(a, c) != 1:
        raise ValueError(f"cusp {a}/{c} is not in lowest terms")
    w = gcd(c, N)
    return Fraction(w, 2) * b2(Fraction(a * g, w))


def divisor(u: UnitProduct) -> CuspDivisor:
    """Divisor of a unit product on the width-one cusps (exact orders)."""
    N = u.level
    ctx = LevelContext.of(N)
    half_n = Fraction(N, 2)
    orders = []
    for a in ctx.cusps:
        total = Fraction(0)
        for h, e in u.items():
            total += e * half_n * b2(Fraction(a * h, N))
        orders.append(total)
    return CuspDivisor(N, tuple(orders))


def is_gamma1_modular(u: UnitProduct) -> bool:
    """Congruence test for modularity of the product on Gamma_1(N).

    Uses the stored representatives h as exponents' indices.  For odd N the
    parity conditions are dropped and the quadratic condition is mod N.
    """
    N = u.level
    s0 = sum(u._exps.values())
    if s0 % 12:
        return False
    s2 = sum(h * h * e for h, e in u.items())
    if N % 2:
        return s2 % N == 0
    s1 = sum(h * e for h, e in u.items())
    return s1 % 2 == 0 and s2 % (2 * N) == 0


def orbit(N: int, a: int, K: int) -> frozenset[int]:
    """Orbit of a under shifts by N/K, as normalized indices mod +-1.

    Members that land on the zero class are dropped (they are not valid
    unit indices).

    >>> sorted(orbit(21, 1, 3))
    [1, 6, 8]
    """
    if K < 1 or N % K:
        raise ValueError(f"K must divide N, got K={K}, N={N}")
    step = N // K
    out = set()
    for k in range(K):
        g = (a + k * step) % N
        if g:
            out.add(normalize_index(N, g))
    return frozenset(out)


def orbit_condition_holds(u: UnitProduct) -> bool:
    """Orbit-sum test for divisor support on the width-one cusps.

    For every prime p | N and every index class a, the exponents summed
    over the orbit {a + k*N/p} must vanish.  Defined for composite N only;
    for a prime power the test is still meaningful but advisory (orders
    can stay fractional).
    """
    N = u.level
    if is_prime(N):
        raise ValueError("orbit condition is undefined for prime level")
    exps = u._exps
    for p, _ in factorize(N):
        seen: set[int] = set()
        for h in range(1, N // 2 + 1):
            if h in seen:
                continue
            orb = orbit(N, h, p)
            seen.update(orb)
            if sum(exps.get(g, 0) for g in orb) != 0:
                return False
    return True


def _factor_str(h: int, e: int, level: int | None, scale: int) -> str:
    s = f"E{h}"
    if level is not None:
        s += f"^({level})"
    if scale != 1:
        s += f"({scale}t)"
    if abs(e) != 1:
        if level is not None or scale != 1:
            s += f"^{abs(e)}"
        else:
            s += f"^{abs(e)}"
    return s


def render_product(exponents, level: int | None = None, scale: int = 1) -> str:
    """Render an exponent map in E-notation, e.g. "E1*E3^4/(E6^5)".

    When `level`/`scale` are given the factors carry the sub-level and
    argument markers, e.g. "E1^(12)(3t)/(E5^(12)(3t))".
    """
    items = sorted(exponents.items() if hasattr(exponents, "items") else exponents)
    num = [_factor_str(h, e, level, scale) for h, e in items if e > 0]
    den = [_factor_str(h, e, level, scale) for h, e in items if e < 0]
    if not num and not den:
        return "1"
    head = "*".join(num) if num else "1"
    if den:
        return head + "/(" + "*".join(den) + ")"
    return head
