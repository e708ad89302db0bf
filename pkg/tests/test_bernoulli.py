import random
from fractions import Fraction

import pytest

from modunits.bernoulli import (
    b2_chi0,
    b2_chi_numeric,
    b2_primitive_numeric,
    bernoulli_matrix,
    bernoulli_matrix_det,
    conductor,
    enumerate_even_characters,
    nonprincipal_quarter_product,
    primitive_value,
    yu_prefactor,
)
from modunits.numtheory import b2, euler_phi, factorize
from modunits.zlinalg import det, mat_mul


def test_matrix_entries_generator_ordering():
    m = bernoulli_matrix(13, generator=7)
    assert m[0][0] == Fraction(97, 156)
    assert m[0][1] == Fraction(-83, 156)
    # each row is a cyclic shift of the first in this ordering
    first = m[0]
    for i, row in enumerate(m):
        assert row == first[i:] + first[:i]


def test_matrix_rejects():
    with pytest.raises(ValueError):
        bernoulli_matrix(4)
    with pytest.raises(ValueError):
        bernoulli_matrix(13, generator=4)  # not a generator mod +-1


def test_row_sums_equal_quarter_b2_chi0():
    for N in (13, 21, 27, 32, 36, 40):
        m = bernoulli_matrix(N)
        target = Fraction(1, 4) * b2_chi0(N)
        for row in m:
            assert sum(row) == target


def test_entry_denominators_divide_12N():
    for N in (13, 21, 36):
        for row in bernoulli_matrix(N):
            for x in row:
                assert (12 * N) % x.denominator == 0


def test_b2_chi0_values():
    assert b2_chi0(13) == -2
    assert b2_chi0(6) == Fraction(1, 3)


def test_b2_chi0_prime_via_distribution():
    # direct summation oracle against the M=1 distribution collapse
    for p in (5, 7, 11, 13, 17):
        direct = p * sum(b2(Fraction(a, p)) for a in range(1, p))
        assert b2_chi0(p) == direct
        assert direct == b2(0) - p * b2(0)  # p*sum_{a=0}^{p-1} B2(a/p) = B2(0)


def test_distribution_identity_exact():
    # N * sum_k B2((k*M + a)/N) == M * B2(a/M) for all N = n*M <= 30
    for N in range(2, 31):
        for M in range(1, N):
            if N % M:
                continue
            n = N // M
            for a in range(1, M):
                lhs = N * sum(b2(Fraction(k * M + a, N)) for k in range(n))
                assert lhs == M * b2(Fraction(a, M)), (N, M, a)


def test_enumerate_even_characters_counts():
    assert len(enumerate_even_characters(13)) == 6
    assert len(enumerate_even_characters(21)) == 6
    assert len(enumerate_even_characters(8)) == 2
    for N in range(3, 50):
        chars = enumerate_even_characters(N)
        assert len(chars) == euler_phi(N) // 2
        assert chars[0].is_principal
        assert all(c.is_even for c in chars)


def test_character_multiplicativity():
    rng = random.Random(31)
    for N in (13, 16, 21, 24, 36, 40):
        for chi in enumerate_even_characters(N):
            for _ in range(20):
                a, b = rng.randrange(1, N), rng.randrange(1, N)
                va, vb, vab = chi(a), chi(b), chi(a * b % N)
                assert abs(va * vb - vab) < 1e-12


def test_principal_character_numeric():
    chi0 = enumerate_even_characters(13)[0]
    assert abs(b2_chi_numeric(chi0) - (-2)) < 1e-12
    assert conductor(chi0) == 1


def test_det_matches_character_product():
    # |det| of the Bernoulli matrix vs the numeric product over all even chi
    for N in range(5, 61):
        prod = 1 + 0j
        for chi in enumerate_even_characters(N):
            prod *= b2_chi_numeric(chi) / 4
        d = bernoulli_matrix_det(N)
        assert abs(abs(complex(d)) - abs(prod)) <= 1e-9 * abs(prod), N


def test_conductor_relation_numeric():
    # B_{2,chi} = B_{2,chi_f} * prod_{p | N, p !| f} (1 - chi_f(p) p), to 1e-9
    for N in range(3, 61):
        for chi in enumerate_even_characters(N):
            f = conductor(chi)
            expected = b2_primitive_numeric(chi)
            for p, _ in factorize(N):
                if f % p:
                    expected *= 1 - primitive_value(chi, p) * p
            got = b2_chi_numeric(chi)
            assert abs(got - expected) <= 1e-9 * max(1.0, abs(expected)), (N, f)


def test_imprimitive_mod21_example():
    # a character mod 21 induced from conductor 7
    chars = [c for c in enumerate_even_characters(21) if conductor(c) == 7]
    assert chars
    for chi in chars:
        lhs = b2_chi_numeric(chi)
        rhs = b2_primitive_numeric(chi) * (1 - primitive_value(chi, 3) * 3)
        assert abs(lhs - rhs) < 1e-9


def test_yu_prefactor_values():
    for p in (5, 7, 13, 31):
        assert yu_prefactor(p) == p
    assert yu_prefactor(21) == 7
    assert yu_prefactor(27) == 243
    assert yu_prefactor(8) == 2
    with pytest.raises(ValueError):
        yu_prefactor(4)


def test_class_number_assembly_examples():
    assert yu_prefactor(13) * nonprincipal_quarter_product(13) == 19
    assert yu_prefactor(8) * nonprincipal_quarter_product(8) == 1
    assert yu_prefactor(21) * nonprincipal_quarter_product(21) == 182


def test_squarefree_remark_identity_n21():
    # det Q = (1 + 3^3)(1 + 7) * prod_chi (1/4) B_{2,chi}, last-row sum 16
    M21 = bernoulli_matrix(21, generator=2)
    W3 = [[27, 3, 9], [9, 27, 3], [3, 9, 27]]
    V3 = [[Fraction(-W3[i % 3][j % 3], 26) for j in range(6)] for i in range(6)]
    V7 = [[Fraction(-7, 6)] * 6 for _ in range(6)]
    eye = [[Fraction(int(i == j)) for j in range(6)] for i in range(6)]
    sub = lambda A, B: [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]
    upper = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(6):
        upper[i][i] = Fraction(1)
        if i + 1 < 6:
            upper[i][i + 1] = Fraction(-1)
    Q = mat_mul(upper, mat_mul(sub(eye, V3), mat_mul(sub(eye, V7), M21)))
    assert abs(det(Q)) == abs(28 * 8 * bernoulli_matrix_det(21))
    assert sum(Q[5]) == 16
    assert abs(det(Q)) / 16 == 182
