import random
from fractions import Fraction

import pytest

from eqlefschetz.groups import cyclic_group
from eqlefschetz.twisted import (AbelianClasses, FiniteExtension, NonInjectiveWeyl, TwistedChainEndo,
                                 TwistedClassSum, collapse_to_whole, gr, incidence_data,
                                 incidence_lefschetz, induce_matrix, trace_identity_suite, mat_mul, mat_phi,
                                 product_with_cyclic, random_matrix, random_perm_endo,
                                 random_finite_subgroups, refined_lefschetz, standard_extensions,
                                 trace, zero_matrix)


def ext(name):
    return next(E for E in standard_extensions() if E.name == name)


def z2_trivial_pi():
    G = cyclic_group(2)
    return FiniteExtension(G, [0], [0, 1], "C2")


def test_trivial_classes():
    E = FiniteExtension(cyclic_group(1), [0], [0])
    assert trace([[gr((0, 1))]], E).to_json() == {"g0": 1}


@pytest.mark.parametrize("d", [-3, -1, 0, 2, 3, 5])
def test_reidemeister_count_of_multiplication_by_d(d):
    assert AbelianClasses([[d]]).count() == abs(d - 1)


def test_identity_on_z_has_infinitely_many_classes():
    C = AbelianClasses([[1]])
    assert C.count() is None
    assert C.key((3,)) != C.key((-3,))


def test_reflection_orbit_minimization():
    C = AbelianClasses([[1]], [([[-1]], (0,))])
    for a in range(-5, 6):
        assert C.key((a,)) == C.key((-a,)) == (abs(a),)


def test_trace_drops_weyl_part():
    E = ext("S3/C3")
    g = next(x for x in E.pi.elements if x)
    h = next(x for x in range(E.order) if x not in E.pi)
    A = [[gr((g, 1)), {}], [{}, gr((h, 1))]]
    t = trace(A, E)
    assert t.terms == {E.class_key(g): 1}


def test_permutation_module_trace_is_one_half():
    E = z2_trivial_pi()
    assert trace([[gr((0, 1))]], E, [[0, 1]]).terms == {0: Fraction(1, 2)}


def test_zero_and_euler_cancellation():
    E = z2_trivial_pi()
    C = TwistedChainEndo(E, [1, 1], [None, zero_matrix(1, 1)], [[[{}]], [[{}]]])
    assert not refined_lefschetz(C)
    one = [[gr((0, 1))]]
    C = TwistedChainEndo(E, [1, 1], [None, zero_matrix(1, 1)], [one, one])
    assert C.check()
    assert not refined_lefschetz(C)


def test_non_free_requires_q():
    E = z2_trivial_pi()
    C = TwistedChainEndo(E, [1], [None], [[[gr((0, 1))]]], [[[0, 1]]])
    with pytest.raises(Exception):
        refined_lefschetz(C, "z")
    assert refined_lefschetz(C, "q").terms == {0: Fraction(1, 2)}


@pytest.mark.parametrize("E", standard_extensions(), ids=lambda e: e.name)
def test_stabilization(E):
    rng = random.Random(1)
    els = list(E.elements())
    for _ in range(20):
        A = random_matrix(rng, E, 2, 2, els)
        k = rng.randint(1, 3)
        big = [row + [{}] * k for row in A] + [[{}] * (2 + k) for _ in range(k)]
        assert trace(big, E) == trace(A, E)


@pytest.mark.parametrize("E", standard_extensions(), ids=lambda e: e.name)
def test_conjugation_invariance(E):
    rng = random.Random(2)
    els = list(E.elements())
    for _ in range(20):
        A = random_matrix(rng, E, 2, 2, els)
        g, c = rng.choice(els), rng.randint(-2, 2)
        # elementary P = 1 + c g e_01, inverse 1 - c g e_01
        P = [[gr((0, 1)), gr((g, c))], [{}, gr((0, 1))]]
        Pinv = [[gr((0, 1)), gr((g, -c))], [{}, gr((0, 1))]]
        assert mat_mul(E, P, Pinv) == [[gr((0, 1)), {}], [{}, gr((0, 1))]]
        conj = mat_mul(E, mat_mul(E, mat_phi(E, P), A), Pinv)
        assert trace(conj, E) == trace(A, E)


@pytest.mark.parametrize("E", standard_extensions(), ids=lambda e: e.name)
def test_homotopy_invariance(E):
    rng = random.Random(3)
    els = list(E.elements())
    for _ in range(20):
        r0, r1 = rng.randint(1, 3), rng.randint(1, 3)
        D1 = random_matrix(rng, E, r1, r0, els)
        H0 = random_matrix(rng, E, r0, r1, els)
        A0 = random_matrix(rng, E, r0, r0, els)
        A1 = random_matrix(rng, E, r1, r1, els)
        f = TwistedChainEndo(E, [r0, r1], [None, D1], [A0, A1])
        B0 = _plus(A0, mat_mul(E, H0, D1))
        B1 = _plus(A1, mat_mul(E, mat_phi(E, D1), H0))
        g = TwistedChainEndo(E, [r0, r1], [None, D1], [B0, B1])
        assert refined_lefschetz(f) == refined_lefschetz(g)
        # d h + h d alone is a chain map with vanishing Lefschetz number
        n = TwistedChainEndo(E, [r0, r1], [None, D1], [mat_mul(E, H0, D1), mat_mul(E, mat_phi(E, D1), H0)])
        assert n.check()
        assert not refined_lefschetz(n)


def _plus(A, B):
    out = []
    for ra, rb in zip(A, B):
        row = []
        for a, b in zip(ra, rb):
            x = dict(a)
            for k, v in b.items():
                x[k] = x.get(k, 0) + v
                if not x[k]:
                    del x[k]
            row.append(x)
        out.append(row)
    return out


@pytest.mark.parametrize("E", standard_extensions(), ids=lambda e: e.name)
def test_two_routes_on_random_permutation_modules(E):
    rng = random.Random(4)
    for _ in range(25):
        n = rng.randint(1, 3)
        stabs = random_finite_subgroups(rng, E, n)
        A = random_perm_endo(rng, E, stabs)
        C = TwistedChainEndo(E, [n], [None], [A], [stabs])
        assert refined_lefschetz(C, "q") == incidence_lefschetz(E, incidence_data(C))


def test_trace_identity_suite_passes():
    rep = trace_identity_suite(instances=10, seed=1)
    assert rep["ok"], rep


def test_zero_matrix_gives_zero_everywhere():
    for E in standard_extensions():
        assert not trace(zero_matrix(3, 3), E)


def test_induction_refused_for_non_injective_weyl_map():
    E = ext("D8/C4")
    alpha = collapse_to_whole(E)
    assert not alpha.weyl_injective()
    with pytest.raises(NonInjectiveWeyl):
        induce_matrix(alpha, [[gr((0, 1))]])
    assert product_with_cyclic(E, 2).weyl_injective()


def test_class_sum_arithmetic():
    a = TwistedClassSum({0: 1, 1: 2})
    b = TwistedClassSum({1: -2})
    assert (a + b).terms == {0: 1}
    assert (a - a).terms == {}
    assert a.scaled(Fraction(1, 2)).augmentation() == Fraction(3, 2)
