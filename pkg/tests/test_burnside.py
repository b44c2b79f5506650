import random

import pytest

from eqlefschetz import corpus
from eqlefschetz.burnside import (BurnsideElement, BurnsideRing, LinearSphereMap, MarkVector,
                                  NotInImage, SingularOnStratum, BurnsideError, ch0, ch0_inverse,
                                  equivariant_degree, lefschetz_burnside_class)
from eqlefschetz.gcw import GComplex
from eqlefschetz.groups import cyclic_group, small_groups, trivial_group


def s3():
    return next(g for g in small_groups(6) if g.name == "S3")


def test_s3_table_of_marks():
    R = BurnsideRing.of(s3())
    assert R.labels == ["1", "2", "3", "6"]
    assert R.marks == [[6, 0, 0, 0], [3, 1, 0, 0], [2, 0, 2, 0], [1, 1, 1, 1]]


def test_marks_are_lower_triangular_with_positive_diagonal():
    for K in small_groups(12):
        R = BurnsideRing.of(K)
        n = len(R.labels)
        for i in range(n):
            assert R.marks[i][i] > 0
            for j in range(i + 1, n):
                assert R.marks[i][j] == 0 or R.classes[j].order <= R.classes[i].order


def test_one_and_products():
    R = BurnsideRing.of(s3())
    x = R.basis("2")
    assert x * R.one() == x
    # [S3/C2]^2 = [S3/C2] + [S3/1]
    assert x * x == BurnsideElement(R, {"1": 1, "2": 1})


def test_ch0_inverse_rejects_non_characters():
    R = BurnsideRing.of(cyclic_group(2))
    with pytest.raises(NotInImage):
        ch0_inverse(MarkVector(R, {"1": 1, "2": 0}))


def test_ch0_injective_random():
    rng = random.Random(5)
    for K in small_groups(8):
        R = BurnsideRing.of(K)
        for _ in range(10):
            a = BurnsideElement(R, {lab: rng.randint(-2, 2) for lab in R.labels})
            b = BurnsideElement(R, {lab: rng.randint(-2, 2) for lab in R.labels})
            assert (ch0(a) == ch0(b)) == (a == b)


def test_degree_of_sign_representation():
    K = corpus.z2()
    # A = -1 on the sign representation: marks (1 at K since V^K = 0, -1 at e)
    psi = LinearSphereMap(K, 1, [[[-1]]], [[-1]])
    assert equivariant_degree(psi).to_json() == {"1": -1, "2": 1}
    psi = LinearSphereMap(K, 1, [[[-1]]], [[3]])
    assert equivariant_degree(psi).to_json() == {"2": 1}


def test_trivial_group_degree_is_sign_of_determinant():
    K = trivial_group()
    psi = LinearSphereMap(K, 2, [], [[0, 1], [1, 0]])
    assert equivariant_degree(psi).to_json() == {"1": -1}


def test_singular_and_non_equivariant_maps():
    K = corpus.z2()
    with pytest.raises(SingularOnStratum):
        equivariant_degree(LinearSphereMap(K, 1, [[[1]]], [[0]]))
    with pytest.raises(BurnsideError):
        LinearSphereMap(K, 2, [[[0, 1], [1, 0]]], [[1, 0], [0, 2]])
    with pytest.raises(BurnsideError):
        LinearSphereMap(K, 1, [[[2]]], [[1]])


def test_odd_order_cyclic_degree_sign():
    K = cyclic_group(3)
    P = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    A = [[-2, 1, 1], [1, -2, 1], [1, 1, -2]]
    A = [[A[i][j] + (5 if i == j else 0) for j in range(3)] for i in range(3)]   # 3I + J: det > 0
    psi = LinearSphereMap(K, 3, [P], A)
    assert equivariant_degree(psi).to_json() == {"3": 1}
    B = [[-x for x in r] for r in A]
    assert equivariant_degree(LinearSphereMap(K, 3, [P], B)).to_json() == {"3": -1}


def test_lefschetz_burnside_class_examples():
    assert lefschetz_burnside_class(corpus.free_points().X, corpus.free_points().f).to_json() == {"1": 1}
    ex = corpus.hexagon_reflection_identity()
    val = lefschetz_burnside_class(ex.X, ex.f)
    assert val.to_json() == {"1": -1, "2": 2}
    # its marks are the Lefschetz numbers of the fixed sets: L(X) = 0, L(X^K) = 2
    assert ch0(val).to_json() == {"1": 0, "2": 2}
