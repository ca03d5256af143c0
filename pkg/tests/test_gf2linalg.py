import random

import numpy as np
import pytest

from conftest import gf2_rank_oracle
from nfs.gf2linalg import ColumnSchema, GF2Matrix, SchemaError, assemble_matrix, kernel_basis, selected_rows
from nfs.relations import Relation
from nfs.sieve_algebraic import AlgebraicDecomposition
from nfs.sieve_rational import RationalDecomposition


def rel(sign, rat, alg=None, chars=""):
    return Relation(1, 1, RationalDecomposition(sign, rat), AlgebraicDecomposition(alg or {}), chars)


def test_assemble_examples():
    assert assemble_matrix([rel(1, {2: 5})], ColumnSchema([2], [])).to_dense() == [[1, 1]]
    empty = assemble_matrix([], ColumnSchema([2, 3], [(3, 1)], 2))
    assert empty.nrows == 0 and empty.ncols == 6
    assert assemble_matrix([rel(0, {3: 4})], ColumnSchema([3], [])).to_dense() == [[0, 0]]


def test_assemble_column_order():
    schema = ColumnSchema([2, 3], [(5, 1), (7, 2)], n_chars=2, count_column=True)
    row = assemble_matrix([rel(1, {3: 1}, {(7, 2): 3}, "01")], schema).to_dense()[0]
    assert row == [1, 0, 1, 0, 1, 0, 1, 1]


def test_assemble_unknown_prime():
    with pytest.raises(SchemaError):
        assemble_matrix([rel(0, {11: 1})], ColumnSchema([2], []))


def test_kernel_examples():
    assert kernel_basis(GF2Matrix.from_dense([[1, 1], [1, 1]])) == [0b11]
    assert kernel_basis(GF2Matrix.from_dense(np.eye(3, dtype=int).tolist())) == []


def test_kernel_random_20x30():
    rng = random.Random(12)
    for _ in range(1000):
        dense = [[rng.randint(0, 1) for _ in range(30)] for _ in range(20)]
        M = GF2Matrix.from_dense(dense)
        basis = kernel_basis(M)
        for v in basis:
            assert v and M.left_multiply(v) == 0
        assert len(basis) == 20 - gf2_rank_oracle(dense)


def test_kernel_nonempty_when_overdetermined():
    rng = random.Random(3)
    for _ in range(200):
        cols = rng.randint(1, 40)
        dense = [[rng.randint(0, 1) for _ in range(cols)] for _ in range(cols + 1)]
        M = GF2Matrix.from_dense(dense)
        basis = kernel_basis(M)
        assert basis
        assert len(basis) + gf2_rank_oracle(dense) == cols + 1
        for v in basis:
            rows = selected_rows(v)
            acc = np.zeros(cols, dtype=int)
            for r in rows:
                acc ^= np.array(dense[r])
            assert not acc.any()
