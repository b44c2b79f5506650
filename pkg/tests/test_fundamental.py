import pytest

from eqlefschetz import corpus
from eqlefschetz.fundamental import (Analysis, ComponentNotPreserved, Frame, MissingPathData,
                                     Pi1Unsupported, component_dynamics, free_reduce, join,
                                     morphism_orbits, pi1_presentation, tietze, todd_coxeter)

from helpers import figure_eight, rp2, self_map, torus7


def test_free_reduce_and_join():
    assert free_reduce([(0, 1), (1, 1), (1, -1), (0, -1)]) == []
    assert join([0, 1], [1, 2], [2, 0]) == [0, 1, 2, 0]
    with pytest.raises(Exception):
        join([0, 1], [2, 3])


def test_todd_coxeter_small_groups():
    # <a | a^5>
    a, b = (0, 1), (1, 1)
    assert len(todd_coxeter(1, [[a] * 5])) == 5
    # <a, b | a^2, b^3, (ab)^2> = S3
    assert len(todd_coxeter(2, [[a] * 2, [b] * 3, [a, b] * 2])) == 6
    # <a, b | a^2, b^2, (ab)^4> = D8
    assert len(todd_coxeter(2, [[a] * 2, [b] * 2, [a, b] * 4])) == 8
    # <a, b | a b a^-1 b^-1, a^3, b^4> = C12
    assert len(todd_coxeter(2, [[a, b, (0, -1), (1, -1)], [a] * 3, [b] * 4])) == 12


def test_todd_coxeter_overflow_returns_none():
    assert todd_coxeter(2, [], limit=50) is None


def test_tietze_eliminates_single_occurrences():
    live, rels, subs = tietze(2, [[(0, 1), (1, 1)]])
    assert len(live) == 1 and not rels


def test_pi1_tiers():
    X = corpus.tetra_boundary((0, 1, 2, 3)).X
    _, pi = pi1_presentation(X, range(4), 0)
    assert pi.kind == "trivial"
    _, pi = pi1_presentation(rp2(), range(6), 0)
    assert pi.kind == "finite" and pi.order == 2
    C = corpus.circle_degree(1).X
    _, pi = pi1_presentation(C, range(3), 0)
    assert pi.kind == "free-abelian" and pi.rank == 1
    T = torus7()
    with pytest.raises(Pi1Unsupported):
        pi1_presentation(T, range(7), 0)
    _, pi = pi1_presentation(T, range(7), 0, assert_rank=2)
    assert pi.kind == "free-abelian" and pi.rank == 2 and pi.asserted
    with pytest.raises(Pi1Unsupported):
        pi1_presentation(T, range(7), 0, assert_rank=1)
    with pytest.raises(Pi1Unsupported):
        pi1_presentation(figure_eight(), range(5), 0)
    with pytest.raises(Pi1Unsupported):
        pi1_presentation(figure_eight(), range(5), 0, assert_rank=2)


def test_finite_model_arithmetic():
    _, pi = pi1_presentation(rp2(), range(6), 0)
    a = next(x for x in pi.elements() if x != pi.identity)
    assert pi.mul(a, a) == pi.identity
    assert pi.inv(a) == a


def test_object_classes_of_reflected_hexagon():
    ex = corpus.hexagon_reflection_identity()
    objs = Analysis(ex.X, ex.f).objects()
    assert [o.label for o in objs] == ["(1)@0", "(2)@0", "(2)@3"]
    assert all(o.preserved for o in objs)
    assert objs[0].weyl.order == 2


def test_aut_group_of_free_part_is_infinite_dihedral():
    ex = corpus.hexagon_reflection_identity()
    A = Analysis(ex.X, ex.f)
    fr = Frame(ex.X, ex.f, A.objects()[0])
    host = fr.host
    s = (fr.pi.identity, 1)
    t = ((1,), 0)
    assert host.mul(s, s) == host.identity
    # s t s^-1 = t^-1
    assert host.mul(host.mul(s, t), host.inv(s)) == ((-1,), 0)
    # classes: |alpha| for alpha in Z
    assert host.pi_class_key((2,)) == host.pi_class_key((-2,))
    assert host.pi_class_key((1,)) != host.pi_class_key((2,))


def test_group_laws_in_aut():
    ex = corpus.north_south(True)
    A = Analysis(ex.X, ex.f)
    fr = Frame(ex.X, ex.f, A.objects()[0])
    h = fr.host
    els = [((k,), n) for k in (-2, -1, 0, 1, 3) for n in (0, 1)]
    for a in els:
        assert h.mul(a, h.inv(a)) == h.identity
        for b in els:
            for c in els[:4]:
                assert h.mul(h.mul(a, b), c) == h.mul(a, h.mul(b, c))
            # phi is a homomorphism
            assert h.phi(h.mul(a, b)) == h.mul(h.phi(a), h.phi(b))


def test_component_not_preserved():
    ex = corpus.swap_disks()
    A = Analysis(ex.X, ex.f)
    obj = A.objects()[0]
    assert not obj.preserved
    with pytest.raises(ComponentNotPreserved):
        Frame(ex.X, ex.f, obj)


def test_bad_return_path_rejected():
    ex = corpus.circle_degree(0)
    obj = Analysis(ex.X, ex.f).objects()[0]
    with pytest.raises(MissingPathData):
        Frame(ex.X, ex.f, obj, w_path=[1, 2])


def test_dynamics_recurrent_and_transient():
    dyn = component_dynamics(corpus.collapse_pair().X, corpus.collapse_pair().f)
    assert [(d["component"], d["status"]) for d in dyn] == [(0, "recurrent"), (1, "transient")]
    assert dyn[1]["height"] == 1
    dyn = component_dynamics(corpus.swap_disks().X, corpus.swap_disks().f)
    assert all(d["status"] == "recurrent" and d["length"] == 2 for d in dyn)


def test_morphism_orbits_weights():
    ex = corpus.hexagon_reflection_identity()
    objs = Analysis(ex.X, ex.f).objects()
    free, fixed = objs[0], objs[1]
    mors = morphism_orbits(ex.X, free, fixed)
    # one orbit of morphisms from the free object to a fixed vertex, stabilizer WK = Z/2
    assert len(mors) == 1 and mors[0].stabilizer == 2
    assert morphism_orbits(ex.X, fixed, free) == []
