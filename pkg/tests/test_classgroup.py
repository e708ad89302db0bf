import random
from fractions import Fraction
from math import gcd, lcm

import pytest

from modunits.bernoulli import bernoulli_matrix
from modunits.classgroup import (
    ConjectureReport,
    GroupStructure,
    analyze,
    class_coordinates,
    class_number_lattice,
    class_number_yu,
    conjecture_report,
    divisor_matrix,
    generators,
    is_principal,
    p_primary,
    predicted_multiplicity,
    predicted_p_rank,
    primary_notation,
    structure,
)
from modunits.numtheory import factorize
from modunits.siegel import LevelContext, normalize_index
from modunits.zlinalg import det, hnf_pivots, lattice_index, mat_mul, snf


def _order_of(N, div):
    return lcm(*(d // gcd(d, r) for r, d in class_coordinates(N, div))) if class_coordinates(N, div) else 1


def test_class_numbers_examples():
    assert class_number_lattice(13) == 19
    assert class_number_yu(13) == 19
    assert class_number_yu(27) == 157491
    assert class_number_yu(49) == 7**3 * 113 * 2437 * 1940454849859
    assert class_number_lattice(32) == 279360
    assert class_number_lattice(36) == 31248
    assert class_number_yu(8) == 1


def test_analyze_rejects_small_level():
    with pytest.raises(ValueError):
        analyze(4)


def test_divisor_matrix_36_verbatim():
    assert divisor_matrix(36) == [
        [3, -3, -3, 3, 3, -3],
        [6, -4, -2, -2, -4, 6],
        [4, 2, -6, -6, 2, 4],
        [6, 1, 5, -5, -1, -6],
        [5, 6, -1, 1, -6, -5],
    ]


def test_divisor_matrix_rows_sum_zero():
    for N in (13, 27, 36, 42, 60):
        for row in divisor_matrix(N):
            assert sum(row) == 0


def test_prime_13_intermediates_with_override():
    # det(U2 U1 M) = 57/2, last-row sum 3/2, index 19
    M = bernoulli_matrix(13, generator=7)
    n, bsq, p = 6, 4, 13
    U1 = [[0] * n for _ in range(n)]
    U2 = [[0] * n for _ in range(n)]
    for i in range(n):
        U1[i][i] = U2[i][i] = 1
        if i + 1 < n:
            U1[i][i + 1] = -bsq
            U2[i][i + 1] = -1
    U1[n - 1][n - 1] = 1 - bsq
    U2[n - 2][n - 2], U2[n - 2][n - 1], U2[n - 1][n - 1] = p, -p, 1
    P = mat_mul(U2, mat_mul(U1, M))
    assert det(P) == Fraction(57, 2)
    assert sum(P[n - 1]) == Fraction(3, 2)
    assert [int(x) for x in P[0]] == [3, -2, 1, 2, 1, -5]
    rows = [[int(x) for x in r] for r in P[:5]]
    assert lattice_index(rows) == 19
    assert class_number_lattice(13, generator=7) == 19


def _generator_order_matrix(N, a):
    ctx = LevelContext.of(N)
    cusps = [normalize_index(N, pow(a, j, N)) for j in range(len(ctx.cusps))]
    perm = [ctx.cusps.index(c) for c in cusps]
    return [[row[j] for j in perm] for row in analyze(N).matrix]


def test_level_27_intermediates():
    rows = _generator_order_matrix(27, 2)
    assert rows[0] == [0, 2, 0, 1, -2, 4, -1, 0, -4]
    assert rows[5] == [4, -8, -5, -5, 7, 7, 1, 1, -2]
    q = [[Fraction(x) for x in r] for r in rows] + [[Fraction(-3, 4)] * 9]
    assert abs(det(q)) == Fraction(4252257, 4)
    assert lattice_index(rows) == 157491
    assert hnf_pivots(rows) == [1, 1, 1, 1, 1, 1, 3, 52497]
    assert snf(rows) == [3, 52497]


def test_structures_worked_examples():
    assert structure(27).invariants == (3, 52497)
    assert structure(28).invariants == (4, 4, 156)
    assert structure(32).invariants == (2, 12, 11640)
    assert structure(36).invariants == (4, 7812)
    assert structure(42).invariants == (91, 2730)
    assert structure(72).invariants == (4, 12, 36, 144, 9146133360)
    assert structure(13).invariants == (19,)
    assert structure(6).invariants == ()


def test_hnf_pivots_36():
    assert hnf_pivots(divisor_matrix(36)) == [1, 1, 1, 4, 7812]


def test_det_42_with_ones_row():
    m = [[Fraction(x) for x in row] for row in divisor_matrix(42)]
    m.append([Fraction(1)] * 6)
    assert det(m) / 6 == 248430


def test_group_structure_type():
    g = GroupStructure((2, 4, 12))
    assert g.order == 96
    assert not g.is_cyclic
    assert str(g) == "[2, 4, 12]"
    assert GroupStructure(()).order == 1
    with pytest.raises(ValueError):
        GroupStructure((3, 4))
    with pytest.raises(ValueError):
        GroupStructure((1, 4))


def test_generators_orders_and_membership():
    for N in (13, 27, 32, 36, 42):
        gens = generators(N)
        orders = sorted(d for _, d in gens)
        assert orders == sorted(structure(N).invariants)
        prod = 1
        for div, d in gens:
            assert sum(div) == 0
            assert _order_of(N, div) == d
            assert is_principal(N, [d * x for x in div])
            for e in {q for q, _ in factorize(d)}:
                assert not is_principal(N, [(d // e) * x for x in div])
            prod *= d
        assert prod == class_number_yu(N)


def test_paper_generators_level_27():
    # classes of (P8)-(P9) and (P7)-7415(P8)+7414(P9) have orders 52497 and 3;
    # three times the second is the Hermite row (0,...,0,3,-22245,22242)
    ctx = LevelContext.of(27)
    cusp_pos = {c: i for i, c in enumerate(ctx.cusps)}
    P = [normalize_index(27, pow(2, j, 27)) for j in range(9)]
    v1 = [0] * 9
    v1[cusp_pos[P[7]]] += 1
    v1[cusp_pos[P[8]]] -= 1
    v2 = [0] * 9
    v2[cusp_pos[P[6]]] += 1
    v2[cusp_pos[P[7]]] -= 7415
    v2[cusp_pos[P[8]]] += 7414
    assert _order_of(27, v1) == 52497
    assert _order_of(27, v2) == 3
    assert is_principal(27, [3 * x for x in v2])


def test_paper_generators_level_42():
    # classes of (17/42)-(19/42) and (13/42)+10(17/42)-11(19/42)
    ctx = LevelContext.of(42)
    pos = {c: i for i, c in enumerate(ctx.cusps)}
    v1 = [0] * 6
    v1[pos[17]] = 1
    v1[pos[19]] = -1
    v2 = [0] * 6
    v2[pos[13]] = 1
    v2[pos[17]] = 10
    v2[pos[19]] = -11
    assert _order_of(42, v1) == 2730
    assert _order_of(42, v2) == 91


def test_paper_generators_level_32():
    ctx = LevelContext.of(32)
    pos = {c: i for i, c in enumerate(ctx.cusps)}
    P = [normalize_index(32, pow(3, j, 32)) for j in range(8)]
    v1 = [0] * 8
    v1[pos[P[6]]] = 1
    v1[pos[P[7]]] = -1
    v2 = [0] * 8
    v2[pos[P[5]]] = 1
    v2[pos[P[6]]] = 46
    v2[pos[P[7]]] = -47
    v3 = [0] * 8
    v3[pos[P[4]]] = 1
    v3[pos[P[5]]] = 1
    v3[pos[P[6]]] = -177
    v3[pos[P[7]]] = 175
    assert _order_of(32, v1) == 11640
    assert _order_of(32, v2) == 12
    assert _order_of(32, v3) == 2


def test_membership_criterion_level_13():
    # principal iff degree 0 and 7d1+6d2+17d3+10d4+11d5 = 0 mod 19,
    # coordinates over the cusps P_i = 7^(i-1)/13
    ctx = LevelContext.of(13)
    P = [normalize_index(13, pow(7, j, 13)) for j in range(6)]
    pos = [ctx.cusps.index(c) for c in P]
    rng = random.Random(47)
    agree = 0
    for _ in range(300):
        d = [rng.randrange(-20, 21) for _ in range(5)]
        d.append(-sum(d))
        div = [0] * 6
        for i, x in enumerate(d):
            div[pos[i]] += x
        paper = (7 * d[0] + 6 * d[1] + 17 * d[2] + 10 * d[3] + 11 * d[4]) % 19 == 0
        assert paper == is_principal(13, div)
        agree += paper
    assert 0 < agree < 300  # both outcomes exercised
    # the m = 8 relation: 8(P1) - 9(P2) + (P3) is principal
    div = [0] * 6
    div[pos[0]] += 8
    div[pos[1]] -= 9
    div[pos[2]] += 1
    assert is_principal(13, div)


def test_membership_criterion_level_27():
    ctx = LevelContext.of(27)
    P = [normalize_index(27, pow(2, j, 27)) for j in range(9)]
    pos = [ctx.cusps.index(c) for c in P]
    coef = [-6427, 19882, -2511, 24452, -11942, -7047, 7415, 1]
    rng = random.Random(53)
    agree = 0
    for _ in range(200):
        d = [rng.randrange(-30, 31) for _ in range(8)]
        d.append(-sum(d))
        div = [0] * 9
        for i, x in enumerate(d):
            div[pos[i]] += x
        c1 = sum(c * x for c, x in zip(coef, d))
        c2 = d[0] + d[3] + d[6]
        paper = c1 % 52497 == 0 and c2 % 3 == 0
        assert paper == is_principal(27, div)
        agree += paper
    assert agree < 200


def test_p_primary_examples():
    assert p_primary(32, 2) == {1: 1, 2: 1, 3: 1}
    assert p_primary(27, 3) == {1: 1, 2: 1}
    assert p_primary(25, 5) == {1: 1}
    assert p_primary(42, 7) == {1: 2}
    assert p_primary(13, 7) == {}
    assert primary_notation(p_primary(32, 2), 2) == "(2)(2^2)(2^3)"
    assert primary_notation({}, 3) == "(1)"
    assert primary_notation({2: 5, 4: 1}, 3) == "(3^2)^5(3^4)"


def test_predicted_formulas_spot_values():
    assert predicted_p_rank(3, 4) == 8
    assert predicted_p_rank(2, 5) == 3
    assert predicted_p_rank(5, 2) == 1
    assert predicted_multiplicity(3, 4, 2) == 5
    assert predicted_multiplicity(3, 4, 4) == 1
    assert predicted_multiplicity(2, 5, 2) == 1
    assert predicted_multiplicity(7, 2, 2) == 1
    assert predicted_multiplicity(7, 3, 2) == 17
    assert predicted_multiplicity(3, 4, 6) == 0


def test_conjecture_report_agreement():
    for p, n in ((2, 4), (2, 5), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)):
        rep = conjecture_report(p, n)
        assert isinstance(rep, ConjectureReport)
        assert rep.regular
        assert rep.agrees, (p, n, rep)


def test_conjecture_report_rejects():
    with pytest.raises(ValueError):
        conjecture_report(2, 2)  # 4 < 8
    with pytest.raises(ValueError):
        conjecture_report(5, 1)


def test_p_primary_reconstructs_invariants():
    for N in (32, 36, 42, 72):
        st = structure(N)
        acc = [1] * len(st.invariants)
        for p in {q for q, _ in factorize(st.order)}:
            parts = p_primary(N, p)
            expanded = []
            for e, m in sorted(parts.items()):
                expanded.extend([p**e] * m)
            # largest p-parts attach to largest invariants
            for k, v in enumerate(reversed(expanded)):
                acc[len(acc) - 1 - k] *= v
        assert tuple(acc) == st.invariants
