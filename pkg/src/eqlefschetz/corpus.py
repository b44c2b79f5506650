"""Worked examples: complexes, maps and fixed-point data used by tests and the CLI."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .gcw import GComplex, EquivariantMap
from .groups import FiniteGroup, trivial_group, cyclic_group


class Example:
    def __init__(self, name, X, f, fixed_data=None, notes="", expect=None):
        self.name = name
        self.X = X
        self.f = f
        self.fixed_data = fixed_data
        self.notes = notes
        self.expect = expect or {}

    def __repr__(self):
        return f"Example({self.name})"


def z2():
    return FiniteGroup(2, [(1, 0)], name="C2", generator_names=["s"])


def cycle_edges(n, offset=0):
    return [(offset + i, offset + (i + 1) % n) for i in range(n)]


def _self_map(X, images):
    return EquivariantMap(X, images)


# -- simply connected complexes, trivial group --------------------------------------


def point_identity():
    G = trivial_group()
    X = GComplex(1, [], G)
    return Example("point-id", X, _self_map(X, [0]), [datum(0, [[1]])], expect={"L": 1})


def triangle_rotation():
    G = trivial_group()
    X = GComplex(3, [(0, 1, 2)], G)
    return Example("disk-rotation", X, _self_map(X, [1, 2, 0]), expect={"L": 1})


def tetra_boundary(perm):
    G = trivial_group()
    X = GComplex(4, list(itertools.combinations(range(4), 3)), G)
    return Example(f"S2-tetra-{''.join(map(str, perm))}", X, _self_map(X, list(perm)))


def octahedron():
    G = trivial_group()
    faces = [tuple(sorted(t)) for t in itertools.product((0, 1), (2, 3), (4, 5))]
    return G, faces


def octahedron_antipodal():
    G, faces = octahedron()
    X = GComplex(6, faces, G)
    return Example("S2-antipodal", X, _self_map(X, [1, 0, 3, 2, 5, 4]), expect={"L": 0})


def cone_rotation():
    G = trivial_group()
    X = GComplex(7, [(i, (i + 1) % 6, 6) for i in range(6)], G)
    return Example("cone-rotation", X, _self_map(X, [(i + 1) % 6 for i in range(6)] + [6]),
                   expect={"L": 1})


def tree_flip():
    G = trivial_group()
    X = GComplex(5, [(0, 1), (1, 2), (1, 3), (3, 4)], G)
    return Example("tree-flip", X, _self_map(X, [2, 1, 0, 3, 4]), expect={"L": 1})


def simply_connected_corpus():
    return [point_identity(), triangle_rotation(), tetra_boundary((1, 0, 3, 2)),
            tetra_boundary((1, 2, 0, 3)), octahedron_antipodal(), cone_rotation(), tree_flip(),
            sphere_push(trivial=True)]


# -- circles ---------------------------------------------------------------------------


def circle_degree(d):
    """Degree-d map of the 3-vertex circle; |d| >= 2 uses a subdivided source."""
    G = trivial_group()
    X = GComplex(3, cycle_edges(3), G)
    if d == 1:
        return Example("circle-deg1", X, _self_map(X, [0, 1, 2]))
    if d == -1:
        return Example("circle-deg-1", X, _self_map(X, [0, 2, 1]))
    if d == 0:
        return Example("circle-deg0", X, _self_map(X, [0, 0, 0]))
    if d < 2:
        raise ValueError("only d >= -1 is built")
    n = 3 * d
    S = GComplex(n, cycle_edges(n), G)
    positions = []
    for k in range(n):
        e, r = divmod(k, d)
        t = Fraction(r, d)
        pos = {e: 1 - t}
        if r:
            pos[(e + 1) % 3] = t
        positions.append(pos)
    f = EquivariantMap(X, [k % 3 for k in range(n)], S, positions)
    return Example(f"circle-deg{d}", X, f)


def hexagon(group=None, action=None):
    return GComplex(6, cycle_edges(6), group, action)


def north_south(reflect=False):
    """Hexagon map with a repelling fixed vertex 0 and an attracting fixed vertex 3."""
    if reflect:
        G = z2()
        act = [(-i) % 6 for i in range(6)]
        X = GComplex(6, cycle_edges(6), G, {"s": act})
        sact = act + [7, 6]
    else:
        G = trivial_group()
        X = GComplex(6, cycle_edges(6), G)
        sact = None
    # source: copies 0..5, a = 6 between 0 and 1, b = 7 between 5 and 0
    edges = [(0, 6), (6, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 7), (7, 0)]
    S = GComplex(8, [tuple(sorted(e)) for e in edges], G, {"s": sact} if reflect else None)
    half = Fraction(1, 2)
    pos = [{v: 1} for v in range(6)] + [{0: half, 1: half}, {5: half, 0: half}]
    f = EquivariantMap(X, [0, 2, 3, 3, 3, 4, 1, 5], S, pos)
    if reflect:
        fixed = [datum(0, [[-1]], isotropy=[[1, 0]], rep={"s": [[-1]]}),
                 datum(3, [[1]], isotropy=[[1, 0]], rep={"s": [[-1]]})]
        name = "north-south-reflection"
    else:
        fixed = [datum(0, [[-1]]), datum(3, [[1]])]
        name = "north-south"
    return Example(name, X, f, fixed, expect={"L": 0})


def free_rotation():
    """Free Z/2 rotation of the hexagon; f = one-step rotation has no fixed points."""
    G = z2()
    X = GComplex(6, cycle_edges(6), G, {"s": [(i + 3) % 6 for i in range(6)]})
    f = _self_map(X, [(i + 1) % 6 for i in range(6)])
    return Example("free-rotation", X, f, [], expect={"L": 0})


def hexagon_reflection_identity():
    G = z2()
    X = GComplex(6, cycle_edges(6), G, {"s": [(-i) % 6 for i in range(6)]})
    f = _self_map(X, list(range(6)))
    return Example("hexagon-reflection-id", X, f)


def swap_disks():
    """Two disjoint filled triangles exchanged by f, one of them rotated."""
    G = trivial_group()
    X = GComplex(6, [(0, 1, 2), (3, 4, 5)], G)
    return Example("swap-disks", X, _self_map(X, [4, 5, 3, 0, 1, 2]), [], expect={"L": 0})


def collapse_pair():
    """Two points, both sent to the first: one recurrent and one transient component."""
    G = trivial_group()
    X = GComplex(2, [], G)
    return Example("collapse-pair", X, _self_map(X, [0, 0]), [datum(0, [[1]])], expect={"L": 1})


def free_points():
    G = z2()
    X = GComplex(2, [], G, {"s": [1, 0]})
    return Example("free-S0", X, _self_map(X, [0, 1]))


def random_circle_map(rng, n=8, kind="trivial"):
    """Random simplicial self-map of an n-cycle, equivariant for the chosen Z/2 action.

    kind: "trivial" (no action), "reflection" (i -> -i) or "rotation" (i -> i + n/2, free).
    """
    if kind == "trivial":
        G, act = trivial_group(), None
    else:
        G = z2()
        act = [(-i) % n for i in range(n)] if kind == "reflection" else [(i + n // 2) % n for i in range(n)]
    X = GComplex(n, cycle_edges(n), G, {"s": act} if act else None)
    h = n // 2
    for _ in range(10000):
        if kind == "reflection":
            walk = [rng.choice([0, h])]
            for _ in range(h):
                walk.append((walk[-1] + rng.choice([-1, 0, 1])) % n)
            if walk[-1] not in (0, h):
                continue
            img = walk[:h + 1] + [(-walk[n - i]) % n for i in range(h + 1, n)]
        elif kind == "rotation":
            walk = [rng.randrange(n)]
            for _ in range(h):
                walk.append((walk[-1] + rng.choice([-1, 0, 1])) % n)
            if walk[-1] != (walk[0] + h) % n:
                continue
            img = walk[:h] + [(walk[i - h] + h) % n for i in range(h, n)]
        else:
            walk = [rng.randrange(n)]
            for _ in range(n - 1):
                walk.append((walk[-1] + rng.choice([-1, 0, 1])) % n)
            if (walk[0] - walk[-1]) % n not in (0, 1, n - 1):
                continue
            img = walk
        f = EquivariantMap(X, img)
        f.validate()
        return Example(f"random-{kind}-{''.join(map(str, img))}", X, f)
    raise RuntimeError("no random map found")


# -- the sphere ---------------------------------------------------------------------------


def c3():
    return FiniteGroup(3, [(1, 2, 0)], name="C3", generator_names=["r"])


def sphere_model(m=4, trivial=False):
    """S^2 with poles N, S, rings u_i, e_i (equator), l_i; Z/2 reflects through the equator."""
    N, S0 = 0, 1
    u = [2 + i for i in range(m)]
    e = [2 + m + i for i in range(m)]
    l = [2 + 2 * m + i for i in range(m)]
    tris = []
    for i in range(m):
        j = (i + 1) % m
        for top, ring in ((N, u), (S0, l)):
            tris.append((top, ring[i], ring[j]))
            tris.append((ring[i], e[i], e[j]))
            tris.append((ring[i], ring[j], e[j]))
    tris = [tuple(sorted(t)) for t in tris]
    n = 2 + 3 * m
    refl = [S0, N] + l + e + u
    if trivial:
        G = trivial_group()
        X = GComplex(n, tris, G)
    else:
        G = z2()
        X = GComplex(n, tris, G, {"s": refl})
    return X, (N, S0, u, e, l), refl


def sphere_push(m=4, trivial=False):
    """Rotate by one step, push both caps onto the bands and the bands onto the equator."""
    X, (N, S0, u, e, l), refl = sphere_model(m, trivial)
    G = X.group
    n = X.n_vertices
    up = [n + i for i in range(m)]       # midpoints N-u_i
    lp = [n + m + i for i in range(m)]   # midpoints S-l_i
    tris = []
    for i in range(m):
        j = (i + 1) % m
        for top, ring, mid in ((N, u, up), (S0, l, lp)):
            tris.append((top, mid[i], mid[j]))
            tris.append((mid[i], ring[i], ring[j]))
            tris.append((mid[i], mid[j], ring[j]))
            tris.append((ring[i], e[i], e[j]))
            tris.append((ring[i], ring[j], e[j]))
    tris = [tuple(sorted(t)) for t in tris]
    sref = refl + lp + up
    S = GComplex(n + 2 * m, tris, G, None if trivial else {"s": sref})
    half = Fraction(1, 2)
    pos = [{v: 1} for v in range(n)]
    pos += [{N: half, u[i]: half} for i in range(m)]
    pos += [{S0: half, l[i]: half} for i in range(m)]
    img = [0] * (n + 2 * m)
    img[N], img[S0] = N, S0
    for i in range(m):
        j = (i + 1) % m
        img[u[i]] = e[j]
        img[l[i]] = e[j]
        img[e[i]] = e[j]
        img[up[i]] = u[j]
        img[lp[i]] = l[j]
    f = EquivariantMap(X, img, S, pos)
    # tangent map at a pole: scale 2 composed with rotation by 2pi/m in a chart
    rot = _rotation(m)
    A = [[int(i == j) - 2 * rot[i][j] for j in range(2)] for i in range(2)]
    if trivial:
        fixed = [datum(N, A), datum(S0, A)]
        name = "sphere-push-trivial"
    else:
        fixed = [datum(N, A)]
        name = "sphere-push"
    return Example(name, X, f, fixed, expect={"L": 2})


def sphere_push_rotation():
    """The m = 3 push map with C3 rotating the rings; both poles have isotropy C3."""
    ex = sphere_push(3, trivial=True)
    X0, f0 = ex.X, ex.f
    G = c3()
    N, S0 = 0, 1
    u, e, l = [2, 3, 4], [5, 6, 7], [8, 9, 10]
    rot = [N, S0] + [u[(i + 1) % 3] for i in range(3)] + [e[(i + 1) % 3] for i in range(3)] \
        + [l[(i + 1) % 3] for i in range(3)]
    X = GComplex(X0.n_vertices, list(X0.maximal_simplices()), G, {"r": rot})
    S = f0.source
    n = X0.n_vertices
    srot = rot + [n + (i + 1) % 3 for i in range(3)] + [n + 3 + (i + 1) % 3 for i in range(3)]
    S2 = GComplex(S.n_vertices, list(S.maximal_simplices()), G, {"r": srot})
    f = EquivariantMap(X, f0.images, S2, f0.positions)
    R = _rotation(3)
    A = [[int(i == j) - 2 * R[i][j] for j in range(2)] for i in range(2)]
    iso = [[1, 2, 0]]
    fixed = [datum(N, A, isotropy=iso, rep={"r": R}), datum(S0, A, isotropy=iso, rep={"r": R})]
    return Example("sphere-push-c3", X, f, fixed, expect={"L": 2})


def _rotation(m):
    if m == 3:
        return [[0, -1], [1, -1]]
    if m == 4:
        return [[0, -1], [1, 0]]
    if m == 2:
        return [[-1, 0], [0, -1]]
    raise ValueError("integral chart rotation only for m in {2, 4}")


# -- fixed point data ---------------------------------------------------------------------


def datum(vertex, id_minus_df, isotropy=None, rep=None, path_t=None, path_v=None):
    return {"vertex": vertex, "isotropy_gens": isotropy or [], "id_minus_df": id_minus_df,
            "rep_action": rep or {}, "path_t": path_t or [], "path_v": path_v or []}


def flagships():
    return {"a": north_south(False), "b": north_south(True), "c": sphere_push(),
            "d": free_rotation()}


def geometric_corpus():
    """Every example whose lambda is computable without assertions."""
    out = simply_connected_corpus()
    out += [circle_degree(d) for d in (-1, 0, 1, 2, 3)]
    out += list(flagships().values())
    out += [hexagon_reflection_identity(), free_points(), swap_disks(), collapse_pair(),
            sphere_push_rotation()]
    return out


def by_name(name):
    for ex in geometric_corpus():
        if ex.name == name:
            return ex
    raise KeyError(name)
