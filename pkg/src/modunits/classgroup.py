"""Divisor matrices, class numbers by two independent routes, and group
structure of the cuspidal divisor class groups.

The lattice route computes the index of the basis-divisor sublattice; the
analytic route multiplies the Euler-type prefactor by the Bernoulli-matrix
determinant.  Their exact agreement for every level is the system's
primary self-check.
"""

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .basis import BasisElement, basis
from .bernoulli import nonprincipal_quarter_product, yu_prefactor
from .numtheory import factorize, is_prime
from .siegel import LevelContext, divisor, is_gamma1_modular, orbit_condition_holds
from .zlinalg import (
    hnf,
    lattice_index,
    smith_invariants_bounded,
    snf_with_transforms,
)

__all__ = [
    "ConsistencyError",
    "DegenerateRankError",
    "GroupStructure",
    "ClassGroupReport",
    "divisor_matrix",
    "class_number_lattice",
    "class_number_yu",
    "structure",
    "analyze",
    "p_primary",
    "primary_notation",
    "generators",
    "class_coordinates",
    "is_principal",
    "conjecture_report",
    "ConjectureReport",
    "IRREGULAR_PRIMES",
]


class ConsistencyError(RuntimeError):
    """The two class-number routes (or the group order) disagree."""


class DegenerateRankError(RuntimeError):
    """Basis divisors are linearly dependent; the construction is broken."""


@dataclass(frozen=True)
class GroupStructure:
    """Finite abelian group as an ascending divisibility chain (entries >= 2)."""

    invariants: tuple[int, ...]

    def __post_init__(self):
        for d, e in zip(self.invariants, self.invariants[1:]):
            if e % d:
                raise ValueError(f"invariants {self.invariants} violate divisibility")
        if any(d < 2 for d in self.invariants):
            raise ValueError("invariants must all be >= 2")

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariants) <= 1

    def __str__(self) -> str:
        return "[" + ", ".join(str(d) for d in self.invariants) + "]"


@dataclass(frozen=True)
class ClassGroupReport:
    """Everything computed for one level, with per-stage timings."""

    N: int
    generator: int | None
    h_lattice: int
    h_yu: int
    structure: GroupStructure
    basis: tuple[BasisElement, ...]
    matrix: tuple[tuple[int, ...], ...]
    timings: tuple[tuple[str, float], ...]

    @property
    def class_number(self) -> int:
        return self.h_lattice

    @property
    def generators(self) -> list[tuple[list[int], int]]:
        """Generator divisors with orders, computed on first access."""
        return generators(self.N, self.generator)


def _divisor_rows(N: int, generator: int | None) -> tuple[tuple[BasisElement, ...], list[list[int]]]:
    elements = tuple(basis(N, generator))
    composite = not is_prime(N)
    rows = []
    for el in elements:
        if not is_gamma1_modular(el.unit):
            raise ConsistencyError(f"{el.display} fails the modularity congruences at N={N}")
        if composite and not orbit_condition_holds(el.unit):
            raise ConsistencyError(f"{el.display} violates the orbit condition at N={N}")
        div = divisor(el.unit)
        if not div.is_integral():
            raise ConsistencyError(f"{el.display} has a non-integral divisor at N={N}")
        if div.degree != 0:
            raise ConsistencyError(f"{el.display} has divisor of nonzero degree at N={N}")
        rows.append([int(x) for x in div.orders])
    return elements, rows


def divisor_matrix(N: int, generator: int | None = None) -> list[list[int]]:
    """(phi/2 - 1) x (phi/2) integer matrix of basis divisors, ascending cusps."""
    return [list(r) for r in analyze(N, generator).matrix]


def class_number_lattice(N: int, generator: int | None = None) -> int:
    """Index of the basis-divisor sublattice in the degree-0 cusp lattice."""
    return analyze(N, generator).h_lattice


def class_number_yu(N: int) -> int:
    """Class number by the analytic formula; exact, no characters involved."""
    return _class_number_yu(N)


@lru_cache(maxsize=None)
def _class_number_yu(N: int) -> int:
    if N < 5:
        raise ValueError(f"class number requires N >= 5, got {N}")
    h = yu_prefactor(N) * nonprincipal_quarter_product(N)
    if h.denominator != 1 or h <= 0:
        raise ConsistencyError(f"analytic class number for N={N} is not a positive integer: {h}")
    return int(h)


@lru_cache(maxsize=None)
def analyze(N: int, generator: int | None = None) -> ClassGroupReport:
    """Full pipeline for one level, cross-checking every route."""
    if N < 5:
        raise ValueError(f"analyze requires N >= 5, got {N}")
    timings = []
    t0 = time.perf_counter()
    elements, rows = _divisor_rows(N, generator)
    timings.append(("basis+divisors", time.perf_counter() - t0))

    n = LevelContext.of(N).num_cusps
    t0 = time.perf_counter()
    h_lat = lattice_index(rows, size=n)
    timings.append(("lattice", time.perf_counter() - t0))
    if h_lat == 0:
        raise DegenerateRankError(f"basis divisors at N={N} are linearly dependent")

    t0 = time.perf_counter()
    h_yu = _class_number_yu(N)
    timings.append(("analytic", time.perf_counter() - t0))
    if h_lat != h_yu:
        raise ConsistencyError(f"N={N}: lattice index {h_lat} != analytic class number {h_yu}")

    t0 = time.perf_counter()
    if rows:
        # the class number annihilates the quotient, so the Smith reduction
        # can balance all entries mod h_yu
        coords = _partial_sum_coords(rows)
        invariants = [d for d in smith_invariants_bounded(coords, h_yu) if d != 1]
    else:
        invariants = []
    timings.append(("smith", time.perf_counter() - t0))
    st = GroupStructure(tuple(invariants))
    if st.order != h_yu:
        raise ConsistencyError(f"N={N}: group order {st.order} != class number {h_yu}")

    return ClassGroupReport(
        N=N,
        generator=generator,
        h_lattice=h_lat,
        h_yu=h_yu,
        structure=st,
        basis=elements,
        matrix=tuple(tuple(r) for r in rows),
        timings=tuple(timings),
    )


def structure(N: int, generator: int | None = None) -> GroupStructure:
    """Elementary divisor chain of the cuspidal divisor class group."""
    return analyze(N, generator).structure


def p_primary(N: int, p: int) -> dict[int, int]:
    """Multiset {exponent e: multiplicity} of the p-power parts p^e > 1."""
    out: dict[int, int] = {}
    for d in structure(N).invariants:
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        if e:
            out[e] = out.get(e, 0) + 1
    return dict(sorted(out.items()))


def primary_notation(parts: dict[int, int], p: int) -> str:
    """Render a p-primary multiset like (2)(2^2)^3(2^3); (1) when empty."""
    if not parts:
        return "(1)"
    out = []
    for e, mult in sorted(parts.items()):
        base = f"({p})" if e == 1 else f"({p}^{e})"
        out.append(base + (f"^{mult}" if mult > 1 else ""))
    return "".join(out)


def _partial_sum_coords(rows: list[list[int]]) -> list[list[int]]:
    """Coordinates of degree-0 rows in the difference-vector basis."""
    out = []
    for row in rows:
        acc, coords = 0, []
        for x in row[:-1]:
            acc += x
            coords.append(acc)
        out.append(coords)
    return out


@lru_cache(maxsize=None)
def _quotient_data(N: int, generator: int | None = None):
    """Smith data of the coordinate matrix: (diagonal, V, V^{-1})."""
    report = analyze(N, generator)
    coords = _partial_sum_coords([list(r) for r in report.matrix])
    if not coords:
        return (), (), ()
    S, _, V = snf_with_transforms(coords)
    diag = tuple(S[i][i] for i in range(len(S)))
    if any(d == 0 for d in diag):
        raise DegenerateRankError(f"coordinate matrix at N={N} is rank-deficient")
    H, U = hnf(V)
    assert all(H[i][j] == (1 if i == j else 0) for i in range(len(H)) for j in range(len(H)))
    return diag, tuple(tuple(r) for r in V), tuple(tuple(r) for r in U)


def _coords_to_divisor(coords: list[int]) -> list[int]:
    div = []
    prev = 0
    for x in coords:
        div.append(x - prev)
        prev = x
    div.append(-prev)
    return div


def generators(N: int, generator: int | None = None) -> list[tuple[list[int], int]]:
    """Degree-0 divisors generating the class group, with their orders.

    Returns one (divisor, order) pair per nontrivial invariant, divisors in
    ascending-cusp coordinates.
    """
    diag, _, vinv = _quotient_data(N, generator)
    out = []
    for i, d in enumerate(diag):
        if d > 1:
            out.append((_coords_to_divisor(list(vinv[i])), d))
    return out


def class_coordinates(N: int, div: list[int], generator: int | None = None) -> list[tuple[int, int]]:
    """Coordinates of a degree-0 divisor in the class group: (residue, modulus) pairs."""
    n = LevelContext.of(N).num_cusps
    if len(div) != n:
        raise ValueError(f"divisor must have {n} entries, got {len(div)}")
    if sum(div) != 0:
        raise ValueError("divisor must have degree 0")
    diag, V, _ = _quotient_data(N, generator)
    acc, coords = 0, []
    for x in div[:-1]:
        acc += x
        coords.append(acc)
    out = []
    for j, d in enumerate(diag):
        y = sum(coords[i] * V[i][j] for i in range(len(coords)))
        out.append((y % d, d))
    return out


def is_principal(N: int, div: list[int], generator: int | None = None) -> bool:
    """Whether a degree-0 divisor on the width-one cusps is a unit divisor."""
    return all(r == 0 for r, _ in class_coordinates(N, div, generator))


#: irregular primes below 800
IRREGULAR_PRIMES = frozenset(
    {37, 59, 67, 101, 103, 131, 149, 157, 233, 257, 263, 271, 283, 293,
     307, 311, 347, 353, 379, 389, 401, 409, 421, 433, 461, 463, 467, 491,
     523, 541, 547, 557, 577, 587, 593, 607, 613, 617, 619, 631, 647, 653,
     659, 673, 677, 683, 691, 727, 751, 757, 761, 773, 797}
)


def predicted_p_rank(p: int, n: int) -> int:
    return (p - 1) * p ** (n - 2) // 2 - 1


def predicted_multiplicity(p: int, n: int, j: int) -> int:
    """Predicted number of Z/p^j factors in the p-primary part at level p^n."""
    if j % 2 == 0:
        k = j // 2
        if (p == 2 and k <= n - 3) or (p >= 3 and k <= n - 2):
            return (p - 1) ** 2 * p ** (n - k - 2) // 2 - 1
        if p >= 5 and k == n - 1:
            return (p - 5) // 2
        return 0
    k = (j + 1) // 2
    if p == 2 and k <= n - 3:
        return 1
    if p == 3 and k <= n - 2:
        return 1
    if p >= 5 and k <= n - 1:
        return 1
    return 0


@dataclass(frozen=True)
class ConjectureReport:
    """Predicted vs computed p-primary shape; reports agreement, never asserts."""

    p: int
    n: int
    regular: bool
    predicted_rank: int
    computed_rank: int
    rows: tuple[tuple[int, int, int], ...]  # (exponent j, predicted, computed)

    @property
    def rank_agrees(self) -> bool:
        return self.predicted_rank == self.computed_rank

    @property
    def multiplicities_agree(self) -> bool:
        return all(pred == comp for _, pred, comp in self.rows)

    @property
    def agrees(self) -> bool:
        return self.rank_agrees and self.multiplicities_agree


def conjecture_report(p: int, n: int) -> ConjectureReport:
    """Compare the predicted p-primary decomposition at level p^n with the
    computed one."""
    if n < 2 or p**n < 8:
        raise ValueError(f"report requires p^n >= 8 with n >= 2, got p={p}, n={n}")
    parts = p_primary(p**n, p)
    computed_rank = sum(parts.values())
    max_j = max(parts.keys(), default=0)
    rows = []
    j = 1
    while True:
        pred = predicted_multiplicity(p, n, j)
        comp = parts.get(j, 0)
        if j > max_j and pred == 0 and j > 2 * n:
            break
        rows.append((j, pred, comp))
        j += 1
    return ConjectureReport(
        p=p,
        n=n,
        regular=p not in IRREGULAR_PRIMES,
        predicted_rank=predicted_p_rank(p, n),
        computed_rank=computed_rank,
        rows=tuple(rows),
    )
