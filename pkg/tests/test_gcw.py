import pytest

from eqlefschetz import corpus
from eqlefschetz.gcw import (EquivariantMap, FixedSubcomplex, GComplex, MalformedComplex,
                             NotEquivariant, NotSimplicial, complex_from_json, map_from_json,
                             subdivide_self_map, validate)
from eqlefschetz.groups import trivial_group
from eqlefschetz.linalg import homology_ranks

from helpers import homology_lefschetz, rp2, torus7


def test_faces_are_closed_and_counted():
    X = corpus.sphere_model()[0]
    assert [len(s) for s in X.simplices] == [14, 36, 24]
    assert X.euler_characteristic() == 2


def test_bad_action_rejected():
    G = corpus.z2()
    with pytest.raises(MalformedComplex):
        GComplex(3, [(0, 1)], G, {"s": [1, 2, 0]})
    with pytest.raises(MalformedComplex):
        GComplex(3, [(0, 1)], G, {"s": [1, 0, 1]})


def test_admissibility_and_subdivision():
    G = corpus.z2()
    X = GComplex(2, [(0, 1)], G, {"s": [1, 0]})
    assert not X.is_admissible()
    rep = validate(X)
    assert rep["subdivided"]
    assert rep["complex"].is_admissible()
    f = subdivide_self_map(EquivariantMap(X, [0, 1]))
    f.validate()


def test_fixed_subcomplex_of_reflected_hexagon():
    ex = corpus.hexagon_reflection_identity()
    H = ex.X.group.whole()
    F = FixedSubcomplex(ex.X, H)
    assert F.vertices == [0, 3]
    assert F.components == [0, 3]
    F1 = FixedSubcomplex(ex.X, ex.X.group.trivial())
    assert F1.singular_set == {(0,), (3,)}


def test_map_validation_errors():
    X = GComplex(3, [(0, 1), (1, 2)], trivial_group())
    with pytest.raises(NotSimplicial):
        EquivariantMap(X, [0, 2, 2]).validate()
    G = corpus.z2()
    Y = GComplex(6, corpus.cycle_edges(6), G, {"s": [(i + 3) % 6 for i in range(6)]})
    with pytest.raises(NotEquivariant):
        EquivariantMap(Y, [0] * 6).validate()


def test_subdivided_degree_map_tiles():
    f = corpus.circle_degree(3).f
    f.validate()
    for e, pieces in f.sd_pieces().items():
        assert sum(w for _, _, w in pieces) == 1


@pytest.mark.parametrize("ex", corpus.geometric_corpus(), ids=lambda e: e.name)
def test_corpus_maps_validate(ex):
    ex.f.validate()
    cc = ex.X.chain_complex()
    assert cc.check_d2()


def test_homology_of_surfaces():
    b, t = homology_ranks(*_cc(rp2()))
    assert b == [1, 0, 0] and t[1] == [2]
    b, t = homology_ranks(*_cc(torus7()))
    assert b == [1, 2, 1]


def _cc(X):
    cc = X.chain_complex()
    return cc.boundaries, cc.ranks


def test_json_roundtrip_and_relabel():
    ex = corpus.north_south(True)
    X2 = complex_from_json(ex.X.to_json(), ex.X.group)
    assert sorted(X2.all_simplices()) == sorted(ex.X.all_simplices())
    f2 = map_from_json(ex.f.to_json(), X2)
    f2.validate()
    perm = [3, 5, 0, 1, 4, 2]
    Y = ex.X.relabeled(perm)
    g = ex.f.relabeled(perm, list(range(6)) + [6, 7])
    g.validate()
    assert homology_lefschetz(Y, g) == homology_lefschetz(ex.X, ex.f) == 0


def test_relative_chain_complex_requires_subcomplex():
    from eqlefschetz.gcw import NotASubcomplex
    X = GComplex(3, [(0, 1, 2)], trivial_group())
    with pytest.raises(NotASubcomplex):
        X.chain_complex(relative_to=[(0, 1)])
