"""Explicit generating sets of the width-one-cusp modular-unit groups.

For every level N >= 5 the construction returns exactly phi(N)/2 - 1
multiplicatively independent unit products, dispatched over four branches:
prime, odd prime power, power of two, squarefree composite, and general
composite.  Elements coming from a lower level M (scaled by d = N/M) keep
their level-M exponent vector for display while the level-N vector drives
all divisor arithmetic.
"""

from dataclasses import dataclass, field
from itertools import product
from math import gcd, prod

from .numtheory import (
    crt_pair,
    divisors,
    euler_phi,
    factorize,
    inv_mod,
    is_prime,
    moebius,
    order_in_units_mod_pm1,
    generator_mod_pm1,
)
from .siegel import UnitProduct, normalize_index, render_product

__all__ = [
    "BasisElement",
    "basis",
    "basis_prime",
    "basis_odd_prime_power",
    "basis_two_power",
    "basis_squarefree",
    "basis_general",
    "mobius_product",
    "orbit_alternating_product",
]


@dataclass(frozen=True)
class BasisElement:
    """One generator, with the sub-level data it was assembled from."""

    unit: UnitProduct
    branch: str
    sublevel: int
    scale: int
    sub_exponents: tuple[tuple[int, int], ...]
    params: tuple[tuple[str, int], ...] = field(default=())

    @property
    def display(self) -> str:
        if self.scale == 1:
            return render_product(dict(self.sub_exponents))
        return render_product(dict(self.sub_exponents), level=self.sublevel, scale=self.scale)

    def __str__(self) -> str:
        return self.display


def _combine(level: int, pairs) -> dict[int, int]:
    exps: dict[int, int] = {}
    for g, e in pairs:
        h = normalize_index(level, g)
        exps[h] = exps.get(h, 0) + e
    return {h: e for h, e in exps.items() if e}


def _element(N: int, M: int, sub_exps: dict[int, int], branch: str, **params) -> BasisElement:
    d = N // M
    unit = UnitProduct(N, [(h * d, e) for h, e in sub_exps.items()])
    return BasisElement(
        unit=unit,
        branch=branch,
        sublevel=M,
        scale=d,
        sub_exponents=tuple(sorted(sub_exps.items())),
        params=tuple(sorted(params.items())),
    )


def _resolve_generator(q: int, generator: int | None) -> int:
    if generator is None:
        return generator_mod_pm1(q)
    if gcd(generator, q) != 1 or order_in_units_mod_pm1(generator, q) != euler_phi(q) // 2:
        raise ValueError(f"{generator} does not generate (Z/{q}Z)^x/+-1")
    return generator


def basis_prime(p: int, generator: int | None = None) -> list[BasisElement]:
    """Generators at an odd prime level p >= 5: (p-1)/2 - 1 elements."""
    if not is_prime(p) or p < 5:
        raise ValueError(f"prime branch requires a prime >= 5, got {p}")
    a = _resolve_generator(p, generator)
    b = normalize_index(p, inv_mod(a, p))
    bsq = b * b
    n = (p - 1) // 2
    out = []
    for i in range(1, n - 1):
        exps = _combine(
            p,
            [
                (pow(a, i - 1, p), 1),
                (pow(a, i + 1, p), bsq),
                (pow(a, i, p), -(1 + bsq)),
            ],
        )
        out.append(_element(p, p, exps, "prime", i=i))
    exps = _combine(p, [(bsq, p), (b, -p)])
    out.append(_element(p, p, exps, "prime", i=n - 1))
    return out


def _phi_half(p: int, ell: int) -> int:
    return 1 if ell == 0 else euler_phi(p**ell) // 2


def basis_odd_prime_power(p: int, k: int, generator: int | None = None) -> list[BasisElement]:
    """Generators at level p^k (p odd, k >= 2): phi(p^k)/2 - 1 elements.

    A band of quotients at level p^k, a p-th-power pivot, then one band of
    scaled quotients per lower level p^ell down to ell = 1.
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"odd-prime-power branch requires odd prime p, got {p}")
    if k < 2:
        raise ValueError(f"odd-prime-power branch requires k >= 2, got {k}")
    N = p**k
    a = _resolve_generator(N, generator)
    b = normalize_index(p, inv_mod(a, p))
    bsq = b * b
    phi = [_phi_half(p, ell) for ell in range(k + 1)]
    out = []
    for i in range(1, phi[k] - phi[k - 1]):
        exps = _combine(
            N,
            [
                (pow(a, i - 1, N), 1),
                (pow(a, i + phi[k - 1], N), bsq),
                (pow(a, i + phi[k - 1] - 1, N), -1),
                (pow(a, i, N), -bsq),
            ],
        )
        out.append(_element(N, N, exps, "odd-prime-power", i=i))
    i = phi[k] - phi[k - 1]
    exps = _combine(N, [(pow(a, i - 1, N), p), (pow(a, i + phi[k - 1] - 1, N), -p)])
    out.append(_element(N, N, exps, "odd-prime-power", i=i))
    for ell in range(k - 1, 0, -1):
        M = p**ell
        shift = phi[ell - 1]
        for i in range(phi[k] - phi[ell] + 1, phi[k] - shift + 1):
            sub = _combine(
                M,
                [(pow(a, i - 1, M), 1), (pow(a, i + shift - 1, M), -1)],
            )
            out.append(_element(N, M, sub, "odd-prime-power", i=i))
    assert len(out) == phi[k] - 1
    return out


def basis_two_power(k: int, generator: int | None = None) -> list[BasisElement]:
    """Generators at level 2^k (k >= 3): 2^(k-2) - 1 elements.

    Same band layout as the odd case with the quotient exponent replaced
    by 1, a squared pivot, and lower levels stopping at 8.
    """
    if k < 3:
        raise ValueError(f"two-power branch requires k >= 3, got {k}")
    N = 2**k
    a = _resolve_generator(N, generator)
    phi = {ell: 2 ** (ell - 2) for ell in range(2, k + 1)}
    out = []
    for i in range(1, phi[k] - phi[k - 1]):
        exps = _combine(
            N,
            [
                (pow(a, i - 1, N), 1),
                (pow(a, i + phi[k - 1], N), 1),
                (pow(a, i, N), -1),
                (pow(a, i + phi[k - 1] - 1, N), -1),
            ],
        )
        out.append(_element(N, N, exps, "two-power", i=i))
    i = phi[k] - phi[k - 1]
    exps = _combine(N, [(pow(a, i - 1, N), 2), (pow(a, i + phi[k - 1] - 1, N), -2)])
    out.append(_element(N, N, exps, "two-power", i=i))
    for ell in range(k - 1, 2, -1):
        M = 2**ell
        shift = phi[ell - 1]
        for i in range(phi[k] - phi[ell] + 1, phi[k] - shift + 1):
            sub = _combine(
                M,
                [(pow(a, i - 1, M), 1), (pow(a, i + shift - 1, M), -1)],
            )
            out.append(_element(N, M, sub, "two-power", i=i))
    assert len(out) == phi[k] - 1
    return out


def _index_at(M: int, g: int, k: int) -> int:
    """Unique index in [1, M/2] that is 0 mod k and +-g mod M/k."""
    x = crt_pair(0, k, g % (M // k), M // k)
    return normalize_index(M, x)


def mobius_product(M: int, g: int) -> dict[int, int]:
    """Moebius-weighted product isolating the coprime index class of g.

    Exponent map of prod over squarefree-compatible divisors k of the
    unsquared part of M (k != M) of E_{g(k)}^mu(k).  For squarefree M this
    runs over all proper divisors.
    """
    if gcd(g, M) != 1:
        raise ValueError(f"index {g} is not coprime to {M}")
    unsquared = prod(p for p, e in factorize(M) if e == 1)
    exps: dict[int, int] = {}
    for k in divisors(unsquared):
        if k == M:
            continue
        mu = moebius(k)
        idx = _index_at(M, g, k)
        exps[idx] = exps.get(idx, 0) + mu
    return {h: e for h, e in exps.items() if e}


def basis_squarefree(N: int, generator: int | None = None) -> list[BasisElement]:
    """Generators at squarefree composite N: consecutive quotients of the
    Moebius products over the ascending coprime list."""
    fac = factorize(N)
    if len(fac) < 2 or any(e > 1 for _, e in fac):
        raise ValueError(f"squarefree branch requires squarefree composite N, got {N}")
    if generator is not None:
        raise ValueError("generator override only applies to prime-power levels")
    S = [g for g in range(1, N // 2 + 1) if gcd(g, N) == 1]
    out = []
    for g1, g2 in zip(S, S[1:]):
        exps = dict(mobius_product(N, g1))
        for h, e in mobius_product(N, g2).items():
            exps[h] = exps.get(h, 0) - e
        exps = {h: e for h, e in exps.items() if e}
        out.append(_element(N, N, exps, "squarefree", g=g1))
    assert len(out) == euler_phi(N) // 2 - 1
    return out


def orbit_alternating_product(M: int, g: int, shifts: tuple[int, ...]) -> dict[int, int]:
    """Inclusion-exclusion over orbit translates at the squared primes of M.

    For squared primes p_1 < ... < p_l of M and shift amounts m_i, the
    exponent map of
    prod over (n_1..n_l) in {0,1}^l of F_{g + sum n_i m_i M/p_i}^((-1)^sum n_i),
    with F the Moebius product.
    """
    squared = [p for p, e in factorize(M) if e >= 2]
    if len(shifts) != len(squared):
        raise ValueError(f"expected {len(squared)} shifts for M={M}, got {len(shifts)}")
    exps: dict[int, int] = {}
    for choice in product((0, 1), repeat=len(squared)):
        h = g + sum(n * m * (M // p) for n, m, p in zip(choice, shifts, squared))
        sign = -1 if sum(choice) % 2 else 1
        for idx, e in mobius_product(M, h).items():
            exps[idx] = exps.get(idx, 0) + sign * e
    return {h: e for h, e in exps.items() if e}


def _general_subbasis(M: int) -> list[tuple[dict[int, int], tuple[tuple[str, int], ...]]]:
    """Exponent maps of the level-M block of the composite construction."""
    fac = factorize(M)
    squared = [p for p, e in fac if e >= 2]
    if not squared:  # M is the radical: reuse the squarefree generators
        return [(dict(el.sub_exponents), el.params) for el in basis_squarefree(M)]
    P = prod(squared)
    bound = M // (2 * P)
    out = []
    for g in range(1, bound + 1):
        if gcd(g, M) != 1:
            continue
        for shifts in product(*(range(1, p) for p in squared)):
            exps = orbit_alternating_product(M, g, shifts)
            params = tuple([("g", g)] + [(f"m{i+1}", m) for i, m in enumerate(shifts)])
            out.append((exps, params))
    return out


def basis_general(N: int, generator: int | None = None) -> list[BasisElement]:
    """Generators at non-squarefree composite N with >= 2 prime factors.

    Union over the divisors M of N that are multiples of the radical of a
    level-M block, each scaled by d = N/M.
    """
    fac = factorize(N)
    if len(fac) < 2 or all(e == 1 for _, e in fac):
        raise ValueError(f"general branch requires non-squarefree composite N, got {N}")
    if generator is not None:
        raise ValueError("generator override only applies to prime-power levels")
    L = prod(p for p, _ in fac)
    out = []
    for M in divisors(N):
        if M % L:
            continue
        for exps, params in _general_subbasis(M):
            out.append(_element(N, M, exps, "general", **dict(params)))
    assert len(out) == euler_phi(N) // 2 - 1, (N, len(out))
    return out


def basis(N: int, generator: int | None = None) -> list[BasisElement]:
    """Generating set of size phi(N)/2 - 1 at any level N >= 5."""
    if N < 5:
        raise ValueError(f"level must be >= 5, got {N}")
    fac = factorize(N)
    if len(fac) == 1:
        p, k = fac[0]
        if k == 1:
            return basis_prime(p, generator)
        if p == 2:
            return basis_two_power(k, generator)
        return basis_odd_prime_power(p, k, generator)
    if all(e == 1 for _, e in fac):
        return basis_squarefree(N, generator)
    return basis_general(N, generator)
