import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

from modunits.zlinalg import (
    det,
    det_int,
    hnf,
    hnf_pivots,
    identity,
    lattice_index,
    mat_mul,
    smith_invariants,
    smith_invariants_bounded,
    snf,
    snf_with_transforms,
)


def _random_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randrange(lo, hi + 1) for _ in range(cols)] for _ in range(rows)]


def _minor_gcds(m):
    """gcd of all k x k minors, k = 1..min(dims); the determinantal oracle."""
    rows, cols = len(m), len(m[0])
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                sub = [[m[i][j] for j in ci] for i in ri]
                g = gcd(g, abs(det_int(sub)))
        out.append(g)
    return out


def test_det_identity_and_known():
    assert det_int(identity(4)) == 1
    assert det_int([[2, 1], [1, 1]]) == 1
    assert det_int([[1, 2], [2, 4]]) == 0
    assert det([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]) == Fraction(1, 3)


def test_det_matches_cofactor_expansion():
    rng = random.Random(11)

    def naive(m):
        n = len(m)
        if n == 1:
            return m[0][0]
        total = 0
        for j in range(n):
            sub = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * m[0][j] * naive(sub)
        return total

    for _ in range(60):
        n = rng.randrange(1, 6)
        m = _random_matrix(rng, n, n)
        assert det_int(m) == naive(m)


def test_hnf_contract():
    rng = random.Random(5)
    for _ in range(80):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        m = _random_matrix(rng, rows, cols)
        H, U = hnf(m)
        assert mat_mul(U, m) == H
        assert det_int(U) in (1, -1)
        # row echelon with positive pivots, entries above reduced into [0, pivot)
        last_col = -1
        for i, row in enumerate(H):
            nz = [j for j, x in enumerate(row) if x]
            if not nz:
                assert all(not any(r) for r in H[i:])
                break
            j = nz[0]
            assert j > last_col
            last_col = j
            assert row[j] > 0
            for i2 in range(i):
                assert 0 <= H[i2][j] < row[j]


def test_hnf_zero_matrix():
    H, U = hnf([[0, 0], [0, 0]])
    assert H == [[0, 0], [0, 0]]
    assert U == identity(2)


def test_snf_examples():
    assert snf([[2, 0], [0, 3]]) == [6]
    assert smith_invariants([[2, 0], [0, 3]]) == [1, 6]
    assert snf(identity(3)) == []


def test_snf_transforms_contract():
    rng = random.Random(13)
    for _ in range(60):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        m = _random_matrix(rng, rows, cols)
        S, U, V = snf_with_transforms(m)
        assert mat_mul(U, mat_mul(m, V)) == S
        assert det_int(U) in (1, -1)
        assert det_int(V) in (1, -1)
        diag = [S[i][i] for i in range(min(rows, cols))]
        for i, x in enumerate(S):
            for j, v in enumerate(x):
                if i != j:
                    assert v == 0
        nz = [d for d in diag if d]
        for a, b in zip(nz, nz[1:]):
            assert b % a == 0


def test_snf_against_minor_gcd_oracle():
    # determinantal-divisor check on 200 random small matrices
    rng = random.Random(17)
    for _ in range(200):
        rows, cols = rng.choice([(4, 5), (5, 4), (3, 3), (4, 4), (2, 5)])
        m = _random_matrix(rng, rows, cols)
        inv = smith_invariants(m)
        gcds = _minor_gcds(m)
        prod = 1
        for k, d in enumerate(inv):
            prod *= d
            assert prod == gcds[k], (m, inv, gcds)
        for k in range(len(inv), len(gcds)):
            assert gcds[k] == 0


def test_snf_bounded_matches_plain():
    rng = random.Random(19)
    for _ in range(100):
        n = rng.randrange(1, 6)
        m = _random_matrix(rng, n, n)
        d = abs(det_int(m))
        if d == 0:
            continue
        assert smith_invariants_bounded(m, d) == smith_invariants(m)


def test_hnf_snf_pivot_products_agree():
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randrange(1, 6)
        m = _random_matrix(rng, n, n)
        if det_int(m) == 0:
            continue
        ppiv = 1
        for p in hnf_pivots(m):
            ppiv *= p
        pinv = 1
        for d in smith_invariants(m):
            pinv *= d
        assert ppiv == pinv == abs(det_int(m))


def test_lattice_index_basics():
    # difference vectors themselves span the whole lattice
    rows = [[1, -1, 0], [0, 1, -1]]
    assert lattice_index(rows) == 1
    assert lattice_index([], size=1) == 1
    assert lattice_index([[2, -2]]) == 2
    assert lattice_index([[0, 0, 0], [0, 1, -1]]) == 0  # dependent


def test_lattice_index_validation():
    with pytest.raises(ValueError):
        lattice_index([[1, 0]])  # nonzero coordinate sum
    with pytest.raises(ValueError):
        lattice_index([[1, -1, 0]])  # wrong row count


def test_lattice_index_unimodular_invariance():
    rng = random.Random(29)
    for _ in range(50):
        n = rng.randrange(2, 6)
        rows = []
        for _ in range(n - 1):
            row = [rng.randrange(-6, 7) for _ in range(n - 1)]
            rows.append(row + [-sum(row)])
        base = lattice_index(rows)
        mixed = [row[:] for row in rows]
        for _ in range(6):
            i, j = rng.randrange(n - 1), rng.randrange(n - 1)
            if i != j:
                c = rng.choice((-2, -1, 1, 2))
                mixed[i] = [x + c * y for x, y in zip(mixed[i], mixed[j])]
        assert lattice_index(mixed) == base
