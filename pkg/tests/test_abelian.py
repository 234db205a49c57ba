import random

import pytest

from locfree import abelian
from locfree.abelian import (DirectLimit, column_lattice_basis, determinant,
                             direct_limit, identity, mat_mul, matrix,
                             rational_rank, smith_normal_form)
from locfree.errors import RangeError


def _random_matrix(rng, rows, cols, bound=9):
    return matrix([[rng.randrange(-bound, bound + 1) for _ in range(cols)]
                   for _ in range(rows)])


def test_determinant():
    assert determinant(matrix([[2, 0], [0, 3]])) == 6
    assert determinant(matrix([[0, 1], [1, 0]])) == -1
    assert determinant(identity(4)) == 1
    assert determinant(matrix([[1, 2], [2, 4]])) == 0


def test_rational_rank():
    assert rational_rank(matrix([[1, -1, 0], [0, 0, 0]])) == 1
    assert rational_rank(identity(3)) == 3
    assert rational_rank(matrix([[2, 4], [1, 2]])) == 1
    assert rational_rank(()) == 0


def test_smith_normal_form_known():
    snf = smith_normal_form(matrix([[1, -1, 0], [0, 0, 0]]))
    assert snf.invariant_factors == (1,)
    assert snf.verify(matrix([[1, -1, 0], [0, 0, 0]]))

    snf = smith_normal_form(matrix([[4]]))
    assert snf.invariant_factors == (4,)

    snf = smith_normal_form(matrix([[2, 0], [0, 3]]))
    assert snf.invariant_factors == (1, 6)


def test_smith_normal_form_random_reconstruction():
    rng = random.Random(23)
    for _ in range(100):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        a = _random_matrix(rng, rows, cols)
        snf = smith_normal_form(a)
        # D = U A V holds by multiplication
        assert mat_mul(mat_mul(snf.u, a), snf.v) == snf.d
        # U, V unimodular
        assert abs(determinant(snf.u)) == 1
        assert abs(determinant(snf.v)) == 1
        # D diagonal, nonnegative, divisibility chain
        d = snf.d
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d[i][j] == 0
        factors = snf.invariant_factors
        assert all(f > 0 for f in factors)
        for x, y in zip(factors, factors[1:]):
            assert y % x == 0


def test_cokernel_invariants():
    assert abelian.cokernel_invariants(matrix([[1, -1, 0], [0, 0, 0]]), 3) \
        == (2, ())
    assert abelian.cokernel_invariants(matrix([[4]]), 1) == (0, (4,))
    assert abelian.cokernel_invariants((), 2) == (2, ())


def test_column_lattice_basis():
    basis = column_lattice_basis(matrix([[0, 0], [1, 1]]))
    assert basis == ((0, 1),)
    basis = column_lattice_basis(matrix([[2, 0], [0, 3]]))
    assert len(basis) == 2
    assert column_lattice_basis(matrix([[0, 0], [0, 0]])) == ()


def test_direct_limit_examples():
    assert direct_limit(matrix([[0, 0], [1, 1]])) == DirectLimit(
        1, 1, "free abelian of rank 1")
    assert direct_limit(matrix([[2]])) == DirectLimit(
        1, 2, "rank-1 module with dilation 2 (not finitely generated)")
    assert direct_limit(identity(2)) == DirectLimit(
        2, 1, "free abelian of rank 2")
    assert direct_limit(matrix([[0]])) == DirectLimit(
        0, 1, "free abelian of rank 0")
    # nilpotent: limit collapses
    assert direct_limit(matrix([[0, 1], [0, 0]])).stable_rank == 0
    with pytest.raises(RangeError):
        direct_limit(matrix([[1, 2, 3], [4, 5, 6]]))


def _random_unimodular(rng, n):
    p = [list(row) for row in identity(n)]
    for _ in range(6):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.randrange(-2, 3)
        for k in range(n):
            p[i][k] += c * p[j][k]
    return matrix(p)


def _inverse_unimodular(p):
    n = len(p)
    det = determinant(p)
    assert det in (1, -1)
    # adjugate over the integers
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [[p[r][c] for c in range(n) if c != i]
                     for r in range(n) if r != j]
            cof = determinant(matrix(minor)) * (-1) ** (i + j)
            row.append(cof * det)
        inv.append(row)
    return matrix(inv)


def test_direct_limit_conjugation_invariance():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randrange(1, 4)
        m = _random_matrix(rng, n, n, bound=3)
        p = _random_unimodular(rng, n)
        q = _inverse_unimodular(p)
        assert mat_mul(p, q) == identity(n)
        conj = mat_mul(mat_mul(q, m), p)
        assert direct_limit(m) == direct_limit(conj), (m, p)
