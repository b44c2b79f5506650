import pytest

from eqlefschetz.groups import (FiniteGroup, GroupError, Subgroup, WeylGroup, all_subgroups,
                                class_of, conjugacy_classes_of_subgroups, conjugator, cyclic_group,
                                dihedral_group, gset_morphisms, normalizer, small_groups,
                                subgroups_bruteforce, trivial_group)


def s3():
    return next(g for g in small_groups(6) if g.name == "S3")


def test_identity_is_index_zero_and_table_consistent():
    G = dihedral_group(4)
    assert G.order == 8
    for a in range(G.order):
        assert G.mul(0, a) == a == G.mul(a, 0)
        assert G.mul(a, G.inv(a)) == 0


def test_not_a_permutation_rejected():
    with pytest.raises(GroupError):
        FiniteGroup(3, [(0, 0, 1)])


def test_catalogue_orders():
    orders = sorted(g.order for g in small_groups(12))
    # number of groups of each order up to 12
    counts = {n: orders.count(n) for n in set(orders)}
    assert counts == {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5}


@pytest.mark.parametrize("G", small_groups(12), ids=lambda g: g.name)
def test_subgroup_enumeration_matches_bruteforce(G):
    assert sorted(H.elements for H in all_subgroups(G)) == sorted(H.elements for H in subgroups_bruteforce(G))


def test_s3_classes():
    classes = conjugacy_classes_of_subgroups(s3())
    assert [c.order for c in classes] == [1, 2, 3, 6]
    assert [len(c.members) for c in classes] == [1, 3, 1, 1]


def test_weyl_group_of_reflection_in_s3_is_trivial():
    G = s3()
    H = next(c.representative for c in conjugacy_classes_of_subgroups(G) if c.order == 2)
    W = WeylGroup(G, H)
    assert W.order == 1
    assert normalizer(G, H) == H


def test_weyl_group_lift_projects_back():
    G = dihedral_group(4)
    for c in conjugacy_classes_of_subgroups(G):
        W = WeylGroup(G, c.representative)
        assert W.order == normalizer(G, c.representative).order // c.order
        for w in range(W.order):
            assert W.project(W.lift(w)) == w
        assert W.lift(0) in c.representative


def test_conjugator():
    G = s3()
    refl = next(c for c in conjugacy_classes_of_subgroups(G) if c.order == 2)
    for K in refl.members:
        g = conjugator(G, refl.representative, K)
        assert refl.representative.conjugate(g) == K
    assert class_of(conjugacy_classes_of_subgroups(G), refl.members[-1]) is not None


def test_gset_morphisms_count():
    G = s3()
    one = G.trivial()
    refl = next(c.representative for c in conjugacy_classes_of_subgroups(G) if c.order == 2)
    # G-maps G/1 -> G/H correspond to G/H
    assert len(gset_morphisms(one, refl)) == 3
    # no G-map G/H -> G/1 for nontrivial H
    assert gset_morphisms(refl, one) == []


def test_trivial_group():
    G = trivial_group()
    assert G.order == 1 and G.generators == []
    assert [c.label for c in conjugacy_classes_of_subgroups(G)] == ["1"]


def test_subgroup_closure():
    G = cyclic_group(6)
    g = G.generator_indices()[0]
    H = G.closure([G.mul(g, g)])
    assert isinstance(H, Subgroup) and H.order == 3
