import random

from eqlefschetz.linalg import (determinant, diagonal, homology_ranks, integer_inverse, matmul,
                                smith_normal_form, solve_rational)


def test_snf_examples():
    S, U, V = smith_normal_form([[2, 0], [0, 3]])
    assert diagonal(S) == [1, 6]
    S, _, _ = smith_normal_form([[0, 0], [0, 0]])
    assert diagonal(S) == [0, 0]
    for d in range(-4, 6):
        S, _, _ = smith_normal_form([[d - 1]])
        assert diagonal(S) == [abs(d - 1)]


def test_snf_random_identity_and_divisibility():
    rng = random.Random(0)
    for _ in range(60):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        S, U, V = smith_normal_form(M)
        assert matmul(matmul(U, M), V) == S
        assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
        d = [x for x in diagonal(S) if x]
        assert all(x > 0 for x in d)
        assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
        for i in range(m):
            for j in range(n):
                assert i == j or S[i][j] == 0


def test_integer_inverse():
    M = [[2, 1], [1, 1]]
    assert matmul(M, integer_inverse(M)) == [[1, 0], [0, 1]]


def test_solve_rational():
    x = solve_rational([[2, 1], [1, 3]], [3, 5])
    assert [2 * x[0] + x[1], x[0] + 3 * x[1]] == [3, 5]


def test_homology_of_circle():
    # triangle boundary: d1 is 3x3
    d1 = [[-1, -1, 0], [1, 0, -1], [0, 1, 1]]
    rk = homology_ranks([None, d1], [3, 3])
    assert rk[0][:2] == [1, 1]
