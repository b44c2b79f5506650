from eqlefschetz.gcw import GComplex, EquivariantMap
from eqlefschetz.groups import trivial_group
from eqlefschetz.linalg import homology_trace_lefschetz

RP2_FACES = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5), (1, 2, 4), (1, 3, 4), (1, 3, 5),
             (2, 3, 5), (2, 4, 5)]


def rp2():
    return GComplex(6, RP2_FACES, trivial_group())


def torus7():
    faces = set()
    for i in range(7):
        faces.add(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        faces.add(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return GComplex(7, sorted(faces), trivial_group())


def figure_eight():
    edges = [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]
    return GComplex(5, edges, trivial_group())


def homology_lefschetz(X, f):
    cc = X.chain_complex()
    return homology_trace_lefschetz(cc.boundaries, cc.ranks, f.chain_matrices(cc))


def self_map(X, images):
    f = EquivariantMap(X, images)
    f.validate()
    return f
