from fractions import Fraction

import pytest

from eqlefschetz import corpus
from eqlefschetz.burnside import lefschetz_burnside_class
from eqlefschetz.fundamental import MissingPathData, Pi1Unsupported
from eqlefschetz.gcw import GComplex
from eqlefschetz.groups import trivial_group
from eqlefschetz.lefschetz import (Context, FixedPointError, SingularFixedPoint, augment, canonical_report,
                                   cover_chain, lambda_, lambda_local, pl_fixed_points, two_route_check,
                                   verify_fixed_point_theorem)

from helpers import homology_lefschetz, rp2, self_map, torus7

CORPUS = corpus.geometric_corpus()
IDS = [ex.name for ex in CORPUS]
WITH_DATA = [ex for ex in CORPUS if ex.fixed_data is not None]


def test_identity_on_point():
    ex = corpus.point_identity()
    assert lambda_(ex.X, ex.f).to_json() == {"(1)@0": {"1": 1}}


def test_empty_complex_gives_zero():
    X = GComplex(0, [], trivial_group())
    f = self_map(X, [])
    assert not lambda_(X, f)


@pytest.mark.parametrize("d", [-1, 0, 2, 3])
def test_circle_degree_classes(d):
    """A degree d circle map has |1 - d| essential classes whose indices sum to 1 - d."""
    ex = corpus.circle_degree(d)
    lam = lambda_(ex.X, ex.f)
    [(label, s)] = lam.terms.items()
    assert label == "(1)@0"
    assert len(s.terms) == abs(1 - d)
    assert s.augmentation() == 1 - d


def test_homotopic_maps_agree():
    ns = corpus.north_south()
    ident = corpus.circle_degree(1)
    assert lambda_(ns.X, ns.f) == lambda_(ident.X, ident.f)


@pytest.mark.parametrize("ex", CORPUS, ids=IDS)
def test_augmented_cover_chain_is_relative_chain_map(ex):
    ctx = Context(ex.X, ex.f)
    for obj in ctx.objects():
        if not obj.preserved:
            continue
        C = cover_chain(ctx.frame(obj))
        for cell in C.cellset:
            direct = {t: c for t, c in ex.f.cellular_image(cell).items() if t in C.cellset}
            assert C.augmented_image(cell) == direct


@pytest.mark.parametrize("ex", CORPUS, ids=IDS)
def test_two_routes(ex):
    for label, (a, b, eq, chain_ok) in two_route_check(ex.X, ex.f).items():
        assert eq, label
        assert chain_ok, label


@pytest.mark.parametrize("ex", CORPUS, ids=IDS)
def test_augmentation_matches_burnside_class(ex):
    """Summing augmented lambda over the objects of one class gives the Burnside coefficient."""
    per_class = {}
    for label, v in augment(lambda_(ex.X, ex.f)).items():
        cls = label.split("@")[0].strip("()")
        per_class[cls] = per_class.get(cls, 0) + v
    per_class = {k: v for k, v in per_class.items() if v}
    assert per_class == lefschetz_burnside_class(ex.X, ex.f).to_json()


@pytest.mark.parametrize("ex", WITH_DATA, ids=[e.name for e in WITH_DATA])
def test_fixed_point_theorem(ex):
    rep = verify_fixed_point_theorem(ex.X, ex.f, ex.fixed_data)
    assert rep["ok"], rep["checks"]
    if "L" in ex.expect:
        assert homology_lefschetz(ex.X, ex.f) == ex.expect["L"]


def test_rp2_identity_against_homology():
    X = rp2()
    f = self_map(X, list(range(6)))
    lam = lambda_(X, f)
    assert lam.to_json() == {"(1)@0": {"g0": 1}}
    assert sum(augment(lam).values()) == homology_lefschetz(X, f)


def test_torus_needs_assertion():
    X = torus7()
    f = self_map(X, [(-i) % 7 for i in range(7)])
    with pytest.raises(Pi1Unsupported):
        lambda_(X, f)


def test_torus_negation_has_four_classes():
    X = torus7()
    f = self_map(X, [(-i) % 7 for i in range(7)])
    lam = lambda_(X, f, assertions=[{"component": 0, "rank": 2}])
    [s] = lam.terms.values()
    assert sorted(s.terms.values()) == [1, 1, 1, 1]
    assert s.augmentation() == homology_lefschetz(X, f) == 4


def test_torus_translation_vanishes():
    X = torus7()
    f = self_map(X, [(i + 1) % 7 for i in range(7)])
    assert not lambda_(X, f, assertions=[{"component": 0, "rank": 2}])


def test_wedge_additivity():
    G = trivial_group()
    A = GComplex(3, [(0, 1, 2)], G)
    B = GComplex(3, [(0, 1, 2)], G)
    W = GComplex(5, [(0, 1, 2), (0, 3, 4)], G)
    P = GComplex(1, [], G)
    fa, fb = self_map(A, [0, 2, 1]), self_map(B, [0, 2, 1])
    fw, fp = self_map(W, [0, 2, 1, 4, 3]), self_map(P, [0])
    total = lambda_(A, fa) + lambda_(B, fb) - lambda_(P, fp)
    assert lambda_(W, fw) == total


def test_odd_order_sign_shortcut():
    """With odd isotropy the local term is sign det(id - T f) on the fixed point class."""
    ex = corpus.sphere_push_rotation()
    loc = lambda_local(ex.X, ex.f, ex.fixed_data)
    assert loc.to_json() == {"(3)@0": {"1": 1}, "(3)@1": {"1": 1}}
    assert lambda_(ex.X, ex.f) == loc


def test_flagship_values():
    F = corpus.flagships()
    got = {k: lambda_(ex.X, ex.f).to_json() for k, ex in F.items()}
    assert got["a"] == {} and got["d"] == {}
    assert augment(lambda_(F["b"].X, F["b"].f)) == {"(1)@0": -1, "(2)@0": 1, "(2)@3": 1}
    assert augment(lambda_(F["c"].X, F["c"].f)) == {"(1)@0": 1}


# -- fixed point data validation ------------------------------------------------------------


def test_singular_tangent_map():
    ex = corpus.north_south()
    data = [corpus.datum(0, [[0]]), corpus.datum(3, [[1]])]
    with pytest.raises(SingularFixedPoint):
        lambda_local(ex.X, ex.f, data)


def test_datum_on_non_fixed_vertex():
    ex = corpus.north_south()
    with pytest.raises(FixedPointError):
        lambda_local(ex.X, ex.f, [corpus.datum(1, [[1]]), corpus.datum(0, [[-1]]), corpus.datum(3, [[1]])])


def test_missing_datum():
    ex = corpus.north_south()
    with pytest.raises(FixedPointError, match="no datum"):
        lambda_local(ex.X, ex.f, [corpus.datum(0, [[-1]])])


def test_wrong_isotropy():
    ex = corpus.north_south(reflect=True)
    data = [corpus.datum(0, [[-1]]), ex.fixed_data[1]]
    with pytest.raises(FixedPointError, match="isotropy"):
        lambda_local(ex.X, ex.f, data)


def test_non_isolated_fixed_point():
    ex = corpus.hexagon_reflection_identity()
    with pytest.raises(FixedPointError, match="isolated"):
        lambda_local(ex.X, ex.f, [corpus.datum(0, [[1]], isotropy=[[1, 0]], rep={"s": [[-1]]})])


def test_bad_path_edges():
    ex = corpus.north_south()
    data = [corpus.datum(0, [[-1]]), corpus.datum(3, [[1]], path_t=[99])]
    with pytest.raises(MissingPathData):
        lambda_local(ex.X, ex.f, data)
    data = [corpus.datum(0, [[-1]]), corpus.datum(3, [[1]], path_t=[0, 4])]
    with pytest.raises(MissingPathData):
        lambda_local(ex.X, ex.f, data)


def test_explicit_paths_do_not_change_result():
    ex = corpus.north_south()
    edges = ex.X.edges()
    one_side = [edges.index(e) for e in [(0, 1), (1, 2), (2, 3)]]
    other_side = [edges.index(e) for e in [(0, 5), (4, 5), (3, 4)]]
    base = lambda_local(ex.X, ex.f, ex.fixed_data)
    for path in (one_side, other_side):
        data = [corpus.datum(0, [[-1]]), corpus.datum(3, [[1]], path_t=path)]
        assert lambda_local(ex.X, ex.f, data) == base


def test_perturbed_tangent_is_reported():
    ex = corpus.north_south()
    rep = verify_fixed_point_theorem(ex.X, ex.f, [corpus.datum(0, [[1]]), corpus.datum(3, [[1]])])
    assert not rep["ok"]
    assert "(1)@0" in rep["diff"]


# -- oracles and reports -------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["north-south", "sphere-push-trivial"])
def test_pl_fixed_points_match_data(name):
    ex = corpus.by_name(name)
    pts, degenerate = pl_fixed_points(ex.f)
    assert not degenerate
    found = sorted(s[0] for s, w in pts if len(s) == 1)
    assert len(pts) == len(found)
    assert found == sorted(d["vertex"] for d in ex.fixed_data)


def test_basis_log_lists_every_orbit():
    ex = corpus.north_south(reflect=True)
    ctx = Context(ex.X, ex.f)
    for obj in ctx.objects():
        if obj.preserved:
            C = cover_chain(ctx.frame(obj))
            log = C.basis_log()
            assert [len(r) for r in C.reps] == [len(r) for r in log]
            assert all(len(e) == p + 1 for p, r in enumerate(log) for e in r)


@pytest.mark.parametrize("seed", [1, 2, 17])
def test_seed_does_not_change_canonical_report(seed):
    ex = corpus.north_south(reflect=True)
    a = canonical_report(ex.X, ex.f, ex.fixed_data, seed=0)
    b = canonical_report(ex.X, ex.f, ex.fixed_data, seed=seed)
    for key in ("lambda", "lambda_loc", "augmented", "equal"):
        assert a[key] == b[key]


def test_rational_ring_agrees_on_free_chains():
    ex = corpus.sphere_push()
    assert canonical_report(ex.X, ex.f, ring="q")["augmented"] == canonical_report(ex.X, ex.f)["augmented"]
    assert Fraction(1) in canonical_report(ex.X, ex.f)["augmented"].values()
