"""Finite G-simplicial complexes, fixed subcomplexes, chains and equivariant maps."""

from __future__ import annotations

import json
from collections import deque
from fractions import Fraction
from itertools import combinations

from .groups import FiniteGroup, Subgroup, compose, trivial_group
from .linalg import determinant, sign


class ComplexError(Exception):
    pass


class MalformedComplex(ComplexError):
    def __init__(self, msg, simplex=None):
        super().__init__(msg)
        self.simplex = simplex


class NotASubcomplex(ComplexError):
    pass


class NotSimplicial(ComplexError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotEquivariant(ComplexError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        # smaller label wins so roots are canonical
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return {k: sorted(v) for k, v in out.items()}


def perm_sign(seq):
    """Sign of the permutation that sorts a sequence of distinct items."""
    seq = list(seq)
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def close_under_faces(simplices):
    out = set()
    for s in simplices:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    return out


class GComplex:
    """Finite simplicial complex with a simplicial action of a finite group.

    ``action`` maps generator names (or positions) to vertex permutations.
    Simplices are sorted vertex tuples; orientation is the sorted order.
    """

    def __init__(self, n_vertices, simplices, group=None, action=None, name="X", check=True):
        self.name = name
        self.n_vertices = int(n_vertices)
        self.group = group if group is not None else trivial_group()
        raw = [tuple(s) for s in simplices]
        for s in raw:
            if len(set(s)) != len(s) or not s:
                raise MalformedComplex(f"simplex {list(s)} has repeated vertices", s)
            if any(v < 0 or v >= self.n_vertices for v in s):
                raise MalformedComplex(f"simplex {list(s)} has a vertex out of range", s)
        allsimp = close_under_faces(raw) | {(v,) for v in range(self.n_vertices)}
        self.dim = max((len(s) - 1 for s in allsimp), default=-1)
        self.simplices = [sorted(s for s in allsimp if len(s) == p + 1) for p in range(self.dim + 1)]
        self.index = {}
        for p, lst in enumerate(self.simplices):
            for i, s in enumerate(lst):
                self.index[s] = i
        self._simplex_set = allsimp
        self._set_action(action or {})
        self._isotropy = {}
        if check:
            self._check_action()

    # -- action

    def _set_action(self, action):
        G = self.group
        names = G.generator_names
        if isinstance(action, (list, tuple)):
            action = {names[i]: a for i, a in enumerate(action)}
        gen_perms = []
        for k, name in enumerate(names):
            if name in action:
                p = action[name]
            elif len(action) == len(names):
                p = list(action.values())[k]
            elif not action and self.n_vertices == 0:
                p = []
            else:
                raise MalformedComplex(f"no vertex permutation for generator {name!r}")
            p = tuple(int(x) for x in p)
            if sorted(p) != list(range(self.n_vertices)):
                raise MalformedComplex(f"action of {name!r} is not a vertex permutation")
            gen_perms.append(p)
        self.gen_perms = gen_perms
        words = G.words()
        ident = tuple(range(self.n_vertices))
        vperm = []
        for g in range(G.order):
            p = ident
            for k in reversed(words[g]):
                p = compose(gen_perms[k], p)
            vperm.append(p)
        self.vperm = vperm

    def _check_action(self):
        G = self.group
        gens = G.generator_indices()
        for g in range(G.order):
            for k, s in enumerate(gens):
                if self.vperm[G.mul(s, g)] != compose(self.gen_perms[k], self.vperm[g]):
                    raise MalformedComplex("vertex action does not define a group homomorphism")
        for s in self._simplex_set:
            for k in range(len(gens)):
                img = tuple(sorted(self.gen_perms[k][v] for v in s))
                if img not in self._simplex_set:
                    raise MalformedComplex(f"action does not preserve simplex {list(s)}", s)

    def act(self, g, v):
        return self.vperm[g][v]

    def act_simplex(self, g, s):
        """Image simplex (sorted) and orientation sign."""
        img = [self.vperm[g][v] for v in s]
        return tuple(sorted(img)), perm_sign(img)

    def act_path(self, g, path):
        p = self.vperm[g]
        return [p[v] for v in path]

    # -- basic queries

    def all_simplices(self):
        for lst in self.simplices:
            yield from lst

    def count(self, p):
        return len(self.simplices[p]) if 0 <= p <= self.dim else 0

    def has(self, s):
        return tuple(s) in self._simplex_set

    def edges(self):
        return self.simplices[1] if self.dim >= 1 else []

    def neighbours(self, v):
        if not hasattr(self, "_nbrs"):
            nb = [[] for _ in range(self.n_vertices)]
            for a, b in self.edges():
                nb[a].append(b)
                nb[b].append(a)
            self._nbrs = [sorted(x) for x in nb]
        return self._nbrs[v]

    def euler_characteristic(self):
        return sum((-1) ** p * len(lst) for p, lst in enumerate(self.simplices))

    def isotropy(self, s):
        """Set-wise stabilizer of a simplex, as a Subgroup."""
        s = tuple(s)
        if s not in self._isotropy:
            key = set(s)
            els = [g for g in range(self.group.order) if {self.vperm[g][v] for v in s} == key]
            self._isotropy[s] = Subgroup(self.group, els)
        return self._isotropy[s]

    def pointwise_isotropy(self, s):
        return Subgroup(self.group, [g for g in range(self.group.order)
                                     if all(self.vperm[g][v] == v for v in s)])

    def admissibility_witness(self):
        for s in self.all_simplices():
            for g in self.isotropy(s):
                if any(self.vperm[g][v] != v for v in s):
                    return s, g
        return None

    def is_admissible(self):
        return self.admissibility_witness() is None

    def orbit(self, s):
        return sorted({self.act_simplex(g, s)[0] for g in range(self.group.order)})

    def orbit_representatives(self, p):
        seen = set()
        reps = []
        for s in self.simplices[p] if p <= self.dim else []:
            if s in seen:
                continue
            seen.update(self.orbit(s))
            reps.append(s)
        return reps

    # -- constructions

    def barycentric_subdivision(self):
        """Return (subdivided complex, positions) with vertices = simplices of self."""
        verts = list(self.all_simplices())
        vid = {s: i for i, s in enumerate(verts)}
        chains = []
        for s in self.maximal_simplices():
            for chain in _flags(s):
                chains.append(tuple(sorted(vid[c] for c in chain)))
        action = {}
        for name, p in zip(self.group.generator_names, self.gen_perms):
            action[name] = [vid[tuple(sorted(p[v] for v in s))] for s in verts]
        sub = GComplex(len(verts), chains, self.group, action, name=f"sd({self.name})")
        positions = []
        for s in verts:
            w = Fraction(1, len(s))
            positions.append({v: w for v in s})
        return sub, positions

    def relabeled(self, perm):
        """Copy with vertex v renamed perm[v]."""
        inv = [0] * len(perm)
        for i, j in enumerate(perm):
            inv[j] = i
        simp = [tuple(perm[v] for v in s) for s in self.all_simplices() if len(s) > 1]
        action = {}
        for name, p in zip(self.group.generator_names, self.gen_perms):
            action[name] = [perm[p[inv[w]]] for w in range(self.n_vertices)]
        return GComplex(self.n_vertices, simp, self.group, action, name=self.name)

    def to_json(self):
        maximal = self.maximal_simplices()
        return {"vertices": self.n_vertices,
                "simplices": [list(s) for s in maximal],
                "action": {n: list(p) for n, p in zip(self.group.generator_names, self.gen_perms)}}

    def maximal_simplices(self):
        out = []
        for s in self.all_simplices():
            p = len(s) - 1
            if p == self.dim or not any(set(s) < set(t) for t in self.simplices[p + 1]):
                out.append(s)
        return out

    # -- chains

    def chain_complex(self, relative_to=None, within=None):
        """Simplicial chain complex, optionally of a subcomplex and/or relative to one."""
        within = set(within) if within is not None else None
        rel = set(relative_to) if relative_to is not None else set()
        for s in rel:
            for f in close_under_faces([s]):
                if f not in rel:
                    raise NotASubcomplex(f"face {list(f)} of {list(s)} missing from subcomplex")
            if within is not None and s not in within:
                raise NotASubcomplex(f"{list(s)} not inside the ambient subcomplex")
        bases = []
        for p in range(self.dim + 1):
            b = [s for s in self.simplices[p] if (within is None or s in within) and s not in rel]
            bases.append(b)
        while bases and not bases[-1]:
            bases.pop()
        return ChainComplexZ(bases)


def _flags(s):
    """All maximal flags of faces ending at s (as lists of faces)."""
    if len(s) == 1:
        return [[s]]
    out = []
    for i in range(len(s)):
        f = s[:i] + s[i + 1:]
        for fl in _flags(f):
            out.append(fl + [s])
    return out


def boundary_chain(s):
    """Faces of an oriented simplex with signs."""
    if len(s) == 1:
        return []
    return [(s[:i] + s[i + 1:], (-1) ** i) for i in range(len(s))]


class ChainComplexZ:
    """Free chain complex with simplex bases; d_p acts on column vectors."""

    def __init__(self, bases):
        self.bases = bases
        self.ranks = [len(b) for b in bases]
        self.pos = [{s: i for i, s in enumerate(b)} for b in bases]
        self.boundaries = [None]
        for p in range(1, len(bases)):
            D = [[0] * self.ranks[p] for _ in range(self.ranks[p - 1])]
            for j, s in enumerate(bases[p]):
                for f, e in boundary_chain(s):
                    i = self.pos[p - 1].get(f)
                    if i is not None:
                        D[i][j] += e
            self.boundaries.append(D)

    def check_d2(self):
        for p in range(2, len(self.bases)):
            A, B = self.boundaries[p - 1], self.boundaries[p]
            for i in range(len(A)):
                for j in range(self.ranks[p]):
                    if sum(A[i][k] * B[k][j] for k in range(self.ranks[p - 1])):
                        return False
        return True

    def euler_characteristic(self):
        return sum((-1) ** p * r for p, r in enumerate(self.ranks))


def complex_from_json(data, group=None):
    try:
        return GComplex(data["vertices"], data.get("simplices", []), group, data.get("action", {}))
    except KeyError as exc:
        raise MalformedComplex(f"complex file missing field {exc}") from None


def load_complex(path, group=None):
    with open(path) as fh:
        return complex_from_json(json.load(fh), group)


class FixedSubcomplex:
    """X^H with its components and the singular part X^{>H}."""

    def __init__(self, X, H):
        self.parent = X
        self.subgroup = H
        hv = [X.vperm[h] for h in H.elements]
        fixed_v = [v for v in range(X.n_vertices) if all(p[v] == v for p in hv)]
        fv = set(fixed_v)
        self.vertices = fixed_v
        self.simplices = [s for s in X.all_simplices() if all(v in fv for v in s)]
        self.simplex_set = set(self.simplices)
        uf = UnionFind(fixed_v)
        for s in self.simplices:
            if len(s) == 2:
                uf.union(s[0], s[1])
        self.component_of = {v: uf.find(v) for v in fixed_v}
        self.components = sorted(uf.groups())  # ids = smallest vertex
        self.component_vertices = uf.groups()
        self.singular = [s for s in self.simplices if X.isotropy(s).order != H.order]
        self.singular_set = set(self.singular)

    def component_simplices(self, cid):
        return [s for s in self.simplices if self.component_of[s[0]] == cid]

    def regular_simplices(self, cid=None):
        """Simplices of isotropy exactly H (optionally in one component)."""
        return [s for s in self.simplices if s not in self.singular_set
                and (cid is None or self.component_of[s[0]] == cid)]

    def translate_component(self, g, cid):
        """Component id of g.C for g in the normalizer."""
        return self.component_of[self.parent.vperm[g][cid]]


def fixed_subcomplex(X, H):
    return FixedSubcomplex(X, H)


# -- equivariant maps --------------------------------------------------------


class EquivariantMap:
    """Simplicial map from a (possibly subdivided) copy of X onto X.

    ``source`` is a linear subdivision of ``target`` with ``positions[s]``
    the barycentric coordinates (target vertex -> weight) of source vertex s.
    With no source given the map is a simplicial self-map of X.
    """

    def __init__(self, target, vertex_images, source=None, positions=None):
        self.target = target
        self.source = source if source is not None else target
        self.images = [int(v) for v in vertex_images]
        if positions is None:
            if source is not None and source is not target:
                raise MalformedComplex("subdivided source needs vertex positions")
            positions = [{v: Fraction(1)} for v in range(target.n_vertices)]
        self.positions = [{int(k): Fraction(w) for k, w in pos.items() if Fraction(w) != 0}
                          for pos in positions]
        self._sd = None
        self._edge_paths = {}

    @property
    def subdivided(self):
        return self.source is not self.target

    # -- validation

    def validate(self):
        X, S = self.target, self.source
        if len(self.images) != S.n_vertices:
            raise NotSimplicial("vertex_images has wrong length", None)
        for v, w in enumerate(self.images):
            if not 0 <= w < X.n_vertices:
                raise NotSimplicial(f"vertex {v} maps outside the complex", (v,))
        for s in S.all_simplices():
            img = tuple(sorted({self.images[v] for v in s}))
            if not X.has(img):
                raise NotSimplicial(f"image of {list(s)} is not a simplex", s)
        if S.group is not X.group:
            raise NotEquivariant("source and target carry different groups", None)
        for k, name in enumerate(X.group.generator_names):
            ps, pt = S.gen_perms[k], X.gen_perms[k]
            for v in range(S.n_vertices):
                if self.images[ps[v]] != pt[self.images[v]]:
                    raise NotEquivariant(f"f({name}.{v}) != {name}.f({v})", (name, v))
        self._check_positions()
        return {"simplicial": True, "equivariant": True, "subdivided": self.subdivided}

    def carrier(self, s):
        verts = set()
        for v in s:
            verts.update(self.positions[v])
        return tuple(sorted(verts))

    def _check_positions(self):
        X, S = self.target, self.source
        if len(self.positions) != S.n_vertices:
            raise MalformedComplex("positions list has wrong length")
        for v, pos in enumerate(self.positions):
            if sum(pos.values()) != 1 or any(w < 0 for w in pos.values()):
                raise MalformedComplex(f"position of source vertex {v} is not barycentric")
            if not X.has(tuple(sorted(pos))):
                raise MalformedComplex(f"position of source vertex {v} is not inside a simplex")
        for k in range(len(X.group.generator_names)):
            ps, pt = S.gen_perms[k], X.gen_perms[k]
            for v in range(S.n_vertices):
                moved = {pt[a]: w for a, w in self.positions[v].items()}
                if moved != self.positions[ps[v]]:
                    raise NotEquivariant("subdivision positions are not equivariant", (k, v))
        for v in range(X.n_vertices):
            self.target_vertex_in_source(v)
        self._check_subdivision()

    def target_vertex_in_source(self, v):
        if not hasattr(self, "_tv"):
            tv = {}
            for s, pos in enumerate(self.positions):
                if len(pos) == 1:
                    (a,) = pos
                    tv[a] = s
            self._tv = tv
        if v not in self._tv:
            raise MalformedComplex(f"target vertex {v} has no copy in the subdivision")
        return self._tv[v]

    def sd_pieces(self):
        """For each target simplex, the oriented source simplices tiling it."""
        if self._sd is None:
            sd = {s: [] for s in self.target.all_simplices()}
            for s in self.source.all_simplices():
                c = self.carrier(s)
                if len(c) != len(s):
                    continue
                M = [[self.positions[v].get(a, 0) for a in c] for v in s]
                d = determinant(M)
                if d == 0:
                    raise MalformedComplex(f"degenerate source simplex {list(s)}", s)
                sd[c].append((s, sign(d), abs(d)))
            self._sd = sd
        return self._sd

    def _check_subdivision(self):
        sd = self.sd_pieces()
        for e, pieces in sd.items():
            if sum(w for _, _, w in pieces) != 1:
                raise MalformedComplex(f"source simplices do not tile {list(e)}", e)
        # boundary compatibility: d(sd e) == sd(d e)
        for e, pieces in sd.items():
            if len(e) < 2:
                continue
            lhs = {}
            for s, sg, _ in pieces:
                for f, eps in boundary_chain(s):
                    lhs[f] = lhs.get(f, 0) + sg * eps
            rhs = {}
            for f, eps in boundary_chain(e):
                for s, sg, _ in sd[f]:
                    rhs[s] = rhs.get(s, 0) + sg * eps
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                raise MalformedComplex(f"subdivision is not a chain map at {list(e)}", e)

    # -- chain level

    def image_simplex(self, s):
        """(sorted target simplex, sign) or None if degenerate."""
        img = [self.images[v] for v in s]
        if len(set(img)) < len(img):
            return None
        return tuple(sorted(img)), perm_sign(img)

    def cellular_image(self, e):
        """f_#(sd(e)) as a dict target simplex -> coefficient."""
        out = {}
        for s, sg, _ in self.sd_pieces()[e]:
            im = self.image_simplex(s)
            if im is None:
                continue
            t, sg2 = im
            out[t] = out.get(t, 0) + sg * sg2
        return {k: v for k, v in out.items() if v}

    def chain_matrices(self, cc):
        """Matrices of f_# o sd on a ChainComplexZ basis (column convention).

        Image terms outside the basis are dropped, which is the induced map
        on a relative complex when the dropped part is invariant.
        """
        mats = []
        for p, basis in enumerate(cc.bases):
            M = [[0] * len(basis) for _ in range(len(basis))]
            for j, e in enumerate(basis):
                for t, c in self.cellular_image(e).items():
                    i = cc.pos[p].get(t)
                    if i is not None:
                        M[i][j] += c
            mats.append(M)
        return mats

    # -- paths

    def source_edge_path(self, a, b):
        """Source vertices along the subdivided target edge from a to b."""
        key = (a, b)
        if key not in self._edge_paths:
            start = self.target_vertex_in_source(a)
            end = self.target_vertex_in_source(b)
            allowed = {a, b}
            self._edge_paths[key] = self.source_path_within(start, end, allowed)
        return self._edge_paths[key]

    def source_path_within(self, start, end, allowed):
        """BFS path in the source 1-skeleton through vertices carried by ``allowed``."""
        S = self.source
        allowed = set(allowed)
        prev = {start: None}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            if u == end:
                break
            for w in S.neighbours(u):
                if w not in prev and set(self.positions[w]) <= allowed:
                    prev[w] = u
                    queue.append(w)
        if end not in prev:
            raise MalformedComplex("subdivision of a simplex is not connected")
        path = [end]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        return path[::-1]

    def image_path(self, path):
        """f applied to an edge path of target vertices; returns target vertices."""
        out = [self.images[self.target_vertex_in_source(path[0])]]
        for a, b in zip(path, path[1:]):
            for s in self.source_edge_path(a, b)[1:]:
                w = self.images[s]
                if w != out[-1]:
                    out.append(w)
        return out

    def image_source_path(self, spath):
        out = [self.images[spath[0]]]
        for s in spath[1:]:
            w = self.images[s]
            if w != out[-1]:
                out.append(w)
        return out

    def fixed_vertices(self):
        """Target vertices v whose copy in the source is mapped to v."""
        return [v for v in range(self.target.n_vertices)
                if self.images[self.target_vertex_in_source(v)] == v]

    def relabeled(self, perm_target, perm_source=None):
        if not self.subdivided:
            X = self.target.relabeled(perm_target)
            imgs = [0] * len(self.images)
            for v, w in enumerate(self.images):
                imgs[perm_target[v]] = perm_target[w]
            return EquivariantMap(X, imgs)
        X = self.target.relabeled(perm_target)
        S = self.source.relabeled(perm_source)
        imgs = [0] * len(self.images)
        pos = [None] * len(self.positions)
        for v, w in enumerate(self.images):
            imgs[perm_source[v]] = perm_target[w]
            pos[perm_source[v]] = {perm_target[a]: c for a, c in self.positions[v].items()}
        return EquivariantMap(X, imgs, S, pos)

    def to_json(self):
        out = {"vertex_images": list(self.images)}
        if self.subdivided:
            out["source"] = self.source.to_json()
            out["positions"] = [{str(k): str(v) for k, v in p.items()} for p in self.positions]
        return out


def map_from_json(data, target):
    if "vertex_images" not in data:
        raise MalformedComplex("map file missing field 'vertex_images'")
    if "source" in data:
        src = complex_from_json(data["source"], target.group)
        pos = [{int(k): Fraction(v) for k, v in p.items()} for p in data["positions"]]
        return EquivariantMap(target, data["vertex_images"], src, pos)
    return EquivariantMap(target, data["vertex_images"])


def validate(X):
    """Check a complex; subdivide once if the action is not admissible."""
    report = {"vertices": X.n_vertices, "dim": X.dim,
              "counts": [len(s) for s in X.simplices], "admissible": True, "subdivided": False}
    w = X.admissibility_witness()
    if w is None:
        report["complex"] = X
        return report
    sub, _ = X.barycentric_subdivision()
    w2 = sub.admissibility_witness()
    if w2 is not None:
        raise MalformedComplex("action not admissible even after subdivision", w2[0])
    report.update(admissible=False, subdivided=True, witness=list(w[0]), complex=sub,
                  counts=[len(s) for s in sub.simplices])
    return report


def subdivide_self_map(f):
    """Barycentric subdivision of a simplicial self-map (source == target)."""
    if f.subdivided:
        raise MalformedComplex("cannot subdivide a map whose source is already subdivided; "
                               "supply an admissible target instead")
    X = f.target
    sub, _ = X.barycentric_subdivision()
    verts = list(X.all_simplices())
    vid = {s: i for i, s in enumerate(verts)}
    imgs = [vid[tuple(sorted({f.images[v] for v in s}))] for s in verts]
    return EquivariantMap(sub, imgs)


def validate_map(f):
    return f.validate()
