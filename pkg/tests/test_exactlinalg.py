import random
from fractions import Fraction as F

from framedhiggs.exactlinalg import (Echelon, LinSolver, Quotient, inverse,
                                     mat_mul, nullspace, nullspace_sparse,
                                     rank, rref, solve)


def test_rref_and_rank():
    m = [[F(1), F(2)], [F(2), F(4)], [F(0), F(1)]]
    red, pivots = rref(m)
    assert pivots == [0, 1]
    assert rank(m) == 2


def test_nullspace_matches_sparse_on_random():
    rng = random.Random(17)
    for _ in range(60):
        n, m = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(m)]
                for _ in range(n)]
        assert nullspace(rows, ncols=m) == nullspace_sparse(rows, ncols=m)


def test_nullspace_vectors_are_kernel():
    rng = random.Random(3)
    rows = [[F(rng.randint(-5, 5)) for _ in range(6)] for _ in range(3)]
    for v in nullspace_sparse(rows, ncols=6):
        assert all(sum(r * x for r, x in zip(row, v)) == 0 for row in rows)


def test_solve_and_inverse():
    a = [[F(2), F(1)], [F(1), F(3)]]
    x = solve(a, [F(5), F(10)])
    assert [sum(r * v for r, v in zip(row, x)) for row in a] == [F(5), F(10)]
    ainv = inverse(a)
    assert mat_mul(a, ainv) == [[F(1), F(0)], [F(0), F(1)]]
    assert solve([[F(1), F(1)], [F(1), F(1)]], [F(0), F(1)]) is None


def test_echelon_membership_and_insert():
    ech = Echelon(3)
    assert ech.insert([F(1), F(1), F(0)])
    assert not ech.insert([F(2), F(2), F(0)])
    assert ech.insert([F(0), F(1), F(1)])
    assert ech.contains([F(1), F(2), F(1)])
    assert not ech.contains([F(0), F(0), F(1)])


def test_linsolver_roundtrip():
    cols = [[F(1), F(0), F(1)], [F(0), F(1), F(1)]]
    s = LinSolver(cols, 3)
    c = s.coords([F(2), F(3), F(5)])
    assert c == [F(2), F(3)]
    assert s.coords([F(1), F(0), F(0)]) is None


def test_quotient_projection():
    sub = [[F(1), F(0), F(0)]]
    kernel = [[F(1), F(0), F(0)], [F(0), F(1), F(0)], [F(0), F(0), F(1)]]
    q = Quotient(3, sub, kernel)
    assert q.dim == 2
    assert q.project([F(7), F(2), F(3)]) == [F(2), F(3)]
