"""Vector structure: orthogonal families, rank, rotation, Gram matrices."""

from itertools import combinations

import pytest

from mpslab import (Strategy, decode, gen_bhs_basis, gen_family,
                    iter_strategies, max_orthogonal_subset,
                    positions_to_strategy, rank_of_universe, rotation_matrix,
                    validate_membership)
from mpslab.distribution import UniverseParams
from mpslab.oracle import BudgetExceeded
from mpslab.vectors import (apply_matrix, det, dot, gram, rank_of_vectors,
                            second_difference_matrix)


def test_family_examples():
    eta5 = gen_family("eta", 5)
    assert [m.actions for m in eta5.members] == [(1, 0, 0, 0, -1), (0, 1, 0, -1, 0)]
    theta5 = gen_family("theta", 5)
    assert theta5.members[0].actions == (0, 1, -2, 1, 0)
    lam8 = gen_family("lambda", 8)
    assert [m.actions for m in lam8.members] == [
        (1, -1, 0, 0, 0, 0, -1, 1), (0, 0, 1, -1, -1, 1, 0, 0)]
    eta2 = gen_family("eta", 2)
    assert [m.actions for m in eta2.members] == [(1, -1)]
    nu6 = gen_family("nu", 6)
    assert [m.actions for m in nu6.members] == [(1, -2, 1, 1, -2, 1)]


def test_family_counts():
    for n in range(2, 13):
        assert len(gen_family("eta", n).members) == (n - 2) // 2 + 1
        if n >= 4:
            assert len(gen_family("lambda", n).members) == n // 4
        if n >= 6:
            assert len(gen_family("nu", n).members) == (n - 6) // 6 + 1
        if n % 2 == 1:
            assert len(gen_family("theta", n).members) == 1


def test_family_preconditions():
    with pytest.raises(ValueError):
        gen_family("lambda", 3)
    with pytest.raises(ValueError):
        gen_family("nu", 5)
    with pytest.raises(ValueError):
        gen_family("theta", 4)
    with pytest.raises(ValueError):
        gen_family("sigma", 5)


def test_family_members_are_universe_members():
    for n in range(2, 13):
        kinds = ["eta"] + (["lambda"] if n >= 4 else []) \
            + (["nu"] if n >= 6 else []) + (["theta"] if n % 2 else [])
        for kind in kinds:
            for s in gen_family(kind, n).members:
                assert validate_membership(s, 1)


def test_families_mutually_orthogonal_within():
    for n in range(2, 13):
        for kind in ("eta", "lambda", "nu"):
            try:
                fam = gen_family(kind, n)
            except ValueError:
                continue
            for a, b in combinations(fam.members, 2):
                assert dot(a.actions, b.actions) == 0


def test_cross_family_orthogonality_table():
    for n in range(2, 13):
        eta = gen_family("eta", n).members
        lam = gen_family("lambda", n).members if n >= 4 else ()
        nu = gen_family("nu", n).members if n >= 6 else ()
        theta = gen_family("theta", n).members if n % 2 else ()
        for a in eta:
            for b in (*lam, *nu, *theta):
                assert dot(a.actions, b.actions) == 0   # eta _|_ everything listed
        # theta _|_ lambda wherever their supports are disjoint; at n = 5
        # and 9 one lambda vector overlaps the center triple with dot -2
        if theta and lam:
            dots = sorted(dot(a.actions, b.actions) for a in theta for b in lam)
            if n in (5, 9):
                assert dots[0] == -2 and all(d == 0 for d in dots[1:])
            else:
                assert all(d == 0 for d in dots)
        # lambda is NOT orthogonal to nu wherever both exist
        if lam and nu:
            assert any(dot(a.actions, b.actions) != 0 for a in lam for b in nu)
    # theta is NOT orthogonal to nu at n=7, where their supports touch;
    # for n=9 and 11 the supports are disjoint and they are orthogonal
    theta7 = gen_family("theta", 7).members
    nu7 = gen_family("nu", 7).members
    assert any(dot(a.actions, b.actions) != 0 for a in theta7 for b in nu7)
    for n in (9, 11):
        th = gen_family("theta", n).members
        nu = gen_family("nu", n).members
        assert all(dot(a.actions, b.actions) == 0 for a in th for b in nu)


def test_bhs_basis():
    bhs3 = gen_bhs_basis(3)
    assert [m.actions for m in bhs3.members] == [(1, 0, -1), (0, 1, -1)]
    assert gen_bhs_basis(2).members[0].actions == (1, -1)
    for s in gen_bhs_basis(6).members:
        assert sum(a * a for a in s.actions) == 2    # Euclidean length sqrt(2)
    # expansion (1,-2,1) = bhs1 - 2 bhs2
    b1, b2 = (m.actions for m in bhs3.members)
    assert tuple(x - 2 * y for x, y in zip(b1, b2)) == (1, -2, 1)


def test_every_small_strategy_expands_in_bhs_with_integer_coeffs():
    for n in (2, 3, 4):
        basis = [m.actions for m in gen_bhs_basis(n).members]
        for s in iter_strategies(UniverseParams(1, n)):
            coeffs = s.actions[:-1]   # U_1..U_{n-1} are the coordinates
            combo = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(n)]
            assert tuple(combo) == s.actions


def test_rank_of_universe():
    for n in range(2, 9):
        assert rank_of_universe(n) == n - 1
    assert rank_of_universe(3, limit=4) == 2


def test_rank_n3_orthogonal_basis_exists():
    basis = [(1, 0, -1), (1, -2, 1)]
    assert dot(*basis) == 0
    assert rank_of_vectors(basis) == 2
    for v in basis:
        assert validate_membership(Strategy(v), 1)


def test_max_orthogonal_subsets():
    assert max_orthogonal_subset(5).size == 3
    assert max_orthogonal_subset(7, budget=3 ** 6).size == 5
    result6 = max_orthogonal_subset(6)
    assert result6.size == 5
    for a, b in combinations(result6.witness, 2):
        assert dot(a.actions, b.actions) == 0


def test_max_orthogonal_published_witness_n6_is_valid():
    printed = [(1, 0, 0, 0, 0, -1), (0, 1, 0, 0, -1, 0), (0, 0, 1, -1, 0, 0),
               (1, 0, -1, -1, 0, 1), (1, -2, 1, 1, -2, 1)]
    for v in printed:
        assert validate_membership(Strategy(v), 1)
    for a, b in combinations(printed, 2):
        assert dot(a, b) == 0


def test_max_orthogonal_budget():
    with pytest.raises(BudgetExceeded):
        max_orthogonal_subset(9, budget=3 ** 6)


def test_max_orthogonal_deterministic():
    a = max_orthogonal_subset(5)
    b = max_orthogonal_subset(5)
    assert a == b


def test_rotation_matrix():
    for n in (2, 3, 4, 5):
        r = rotation_matrix(n)
        identity = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        # R R^T = I
        assert [[sum(r[i][k] * r[j][k] for k in range(n)) for j in range(n)]
                for i in range(n)] == identity
        assert abs(det(r)) == 1
    assert det(rotation_matrix(3)) == 1
    assert det(rotation_matrix(5)) == 1    # odd cycle is an even permutation


def test_actions_are_positions_minus_rotated_positions():
    for n in (2, 3, 4, 5):
        p = UniverseParams(1, n)
        r = rotation_matrix(n)
        for idx in range(p.size):
            w = list(decode(idx, p).positions)
            shifted = apply_matrix(r, w)
            u = positions_to_strategy(decode(idx, p)).actions
            assert tuple(a - b for a, b in zip(w, shifted)) == u


def test_second_difference_matrix_shape():
    m = second_difference_matrix(5)
    for i in range(5):
        assert m[i][i] == 2
        assert sum(m[i]) == 0
        assert sum(row[i] for row in m) == 0
    assert m[0][4] == m[4][0] == -1
    assert m[0][1] == m[1][0] == -1


def test_gram_rank_and_identity():
    for n in (2, 3, 4):
        p = UniverseParams(1, n)
        strategies = [s.actions for s in iter_strategies(p)]
        g = gram(strategies)
        assert rank_of_vectors(g) == n - 1
        # G = W^T (2I - R - R^T) W, checked entrywise
        m = second_difference_matrix(n)
        positions = [decode(i, p).positions for i in range(p.size)]
        for a in range(len(positions)):
            for b in range(len(positions)):
                via = sum(positions[a][i] * m[i][j] * positions[b][j]
                          for i in range(n) for j in range(n))
                assert via == g[a][b]


def test_flat_price_orthogonal_to_universe():
    for w, n in ((1, 5), (2, 3)):
        flat = [7] * n
        for s in iter_strategies(UniverseParams(w, n)):
            assert dot(flat, s.actions) == 0
