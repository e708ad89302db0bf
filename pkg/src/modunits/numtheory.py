"""Elementary number-theoretic utilities shared by the other modules.

Everything here is exact: integers are arbitrary precision and rational
values are `fractions.Fraction` (always in lowest terms, denominator >= 1).
"""

from fractions import Fraction
from math import gcd, isqrt

Rational = Fraction

#: second Bernoulli polynomial constant term
_ONE_SIXTH = Fraction(1, 6)


def factorize(n: int) -> list[tuple[int, int]]:
    """Factor n >= 2 by trial division.

    Returns [(p, e), ...] with primes ascending and prod(p**e) == n.

    >>> factorize(42)
    [(2, 1), (3, 1), (7, 1)]
    >>> factorize(32)
    [(2, 5)]
    """
    if n < 2:
        raise ValueError(f"factorize requires n >= 2, got {n}")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for p in range(3, isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, ascending."""
    if n < 1:
        raise ValueError(f"divisors requires n >= 1, got {n}")
    out = [1]
    for p, e in factorize(n) if n > 1 else []:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def radical(n: int) -> int:
    """Product of the distinct primes dividing n."""
    if n == 1:
        return 1
    r = 1
    for p, _ in factorize(n):
        r *= p
    return r


def euler_phi(n: int) -> int:
    """Euler totient.

    >>> euler_phi(27)
    18
    """
    if n < 1:
        raise ValueError(f"euler_phi requires n >= 1, got {n}")
    if n == 1:
        return 1
    phi = 1
    for p, e in factorize(n):
        phi *= p ** (e - 1) * (p - 1)
    return phi


def moebius(n: int) -> int:
    """Moebius function: (-1)^k on squarefree n with k prime factors, else 0."""
    if n < 1:
        raise ValueError(f"moebius requires n >= 1, got {n}")
    if n == 1:
        return 1
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def inv_mod(a: int, n: int) -> int:
    """Multiplicative inverse of a modulo n, in [1, n-1].

    >>> inv_mod(7, 13)
    2
    """
    if n < 1:
        raise ValueError(f"inv_mod requires modulus >= 1, got {n}")
    if gcd(a, n) != 1:
        raise ValueError(f"inv_mod({a}, {n}): arguments are not coprime")
    if n == 1:
        return 0
    return pow(a, -1, n)


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Solve x = r1 (mod m1), x = r2 (mod m2) for coprime m1, m2."""
    if gcd(m1, m2) != 1:
        raise ValueError(f"crt_pair moduli are not coprime: {m1}, {m2}")
    x = r1 + m1 * ((r2 - r1) * inv_mod(m1, m2) % m2)
    return x % (m1 * m2)


def b2(x: Fraction | int) -> Fraction:
    """Second Bernoulli function {x}^2 - {x} + 1/6, periodic with period 1.

    >>> b2(0)
    Fraction(1, 6)
    >>> b2(Fraction(-1, 4)) == b2(Fraction(3, 4))
    True
    """
    x = Fraction(x)
    frac = x - (x.numerator // x.denominator)
    return frac * frac - frac + _ONE_SIXTH


def order_in_units_mod_pm1(a: int, m: int) -> int:
    """Least t >= 1 with a^t = +-1 (mod m); t = 1 when m <= 2.

    This is the order of a in the quotient group (Z/mZ)^x / {+-1}.
    """
    if m < 1:
        raise ValueError(f"order_in_units_mod_pm1 requires m >= 1, got {m}")
    if gcd(a, m) != 1:
        raise ValueError(f"order_in_units_mod_pm1({a}, {m}): not coprime")
    if m <= 2:
        return 1
    t = 1
    x = a % m
    while x != 1 and x != m - 1:
        x = x * a % m
        t += 1
    return t


def _prime_power_base(q: int) -> tuple[int, int]:
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    return fac[0]


def generator_mod_pm1(q: int) -> int:
    """Smallest a >= 2 generating the cyclic group (Z/qZ)^x / {+-1}.

    Defined for odd prime powers and for 2^k with k >= 3; the group is
    trivial or non-cyclic otherwise.

    >>> generator_mod_pm1(27)
    2
    >>> generator_mod_pm1(32)
    3
    """
    if q in (1, 2, 4):
        raise ValueError(f"(Z/{q}Z)^x/+-1 has no generator convention here")
    p, k = _prime_power_base(q)
    if p == 2 and k < 3:
        raise ValueError(f"generator_mod_pm1 requires 2^k with k >= 3, got {q}")
    target = euler_phi(q) // 2
    for a in range(2, q):
        if gcd(a, q) == 1 and order_in_units_mod_pm1(a, q) == target:
            return a
    raise AssertionError(f"no generator found for q={q}")  # cyclic, cannot happen


def primitive_root(q: int) -> int:
    """Smallest primitive root modulo an odd prime power q (or q in {2, 4})."""
    if q in (2, 4):
        return q - 1
    p, _ = _prime_power_base(q)
    if p == 2:
        raise ValueError(f"(Z/{q}Z)^x is not cyclic")
    phi = euler_phi(q)
    prime_divs = [r for r, _ in factorize(phi)]
    for a in range(2, q):
        if gcd(a, q) != 1:
            continue
        if all(pow(a, phi // r, q) != 1 for r in prime_divs):
            return a
    raise AssertionError(f"no primitive root found for q={q}")
