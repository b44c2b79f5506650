"""Objects of the fundamental category, pi_1 of fixed components, Aut(x).

An object is a pair (H, v) with v an H-fixed vertex; its component C is the
component of X^H containing v.  Paths are lists of vertices along edges.

pi_1(C, v) is the edge-path group: a BFS spanning tree T (neighbours in
increasing index order), one generator per non-tree edge, one relator per
triangle.  ``value(path)`` is the class of the loop T_a . path . T_b^-1 for a
path from a to b, so values of concatenated paths multiply.
"""

from __future__ import annotations

from collections import deque
from math import gcd

from .gcw import FixedSubcomplex
from .groups import WeylGroup, conjugacy_classes_of_subgroups, GSetMap
from .linalg import smith_normal_form, diagonal, integer_inverse


class Pi1Unsupported(Exception):
    pass


class ComponentNotPreserved(Exception):
    pass


class MissingPathData(Exception):
    pass


COSET_LIMIT = 10000


# -- words -------------------------------------------------------------------


def free_reduce(word):
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return out


def cyclic_reduce(word):
    w = free_reduce(word)
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return w


def invert_word(word):
    return [(g, -e) for g, e in reversed(word)]


def reverse(path):
    return list(reversed(path))


def join(*paths):
    """Concatenate vertex paths whose endpoints agree."""
    out = list(paths[0])
    for p in paths[1:]:
        if not p:
            continue
        if out and out[-1] != p[0]:
            raise ValueError(f"paths do not compose at {out[-1]} / {p[0]}")
        out.extend(p[1:])
    return out


# -- presentation ------------------------------------------------------------


class EdgePathPresentation:
    """Edge-path presentation of pi_1 of the full subcomplex on ``vertices``."""

    def __init__(self, X, vertices, base):
        self.X = X
        vs = set(vertices)
        self.vertices = sorted(vs)
        self.base = base
        parent = {base: None}
        order = [base]
        queue = deque([base])
        while queue:
            u = queue.popleft()
            for w in X.neighbours(u):
                if w in vs and w not in parent:
                    parent[w] = u
                    order.append(w)
                    queue.append(w)
        if len(parent) != len(vs):
            raise ValueError("vertex set is not connected")
        self.parent = parent
        self._tree_paths = {}
        tree = {tuple(sorted((u, p))) for u, p in parent.items() if p is not None}
        self.tree_edges = tree
        self.generators = [e for e in X.edges() if e[0] in vs and e[1] in vs and e not in tree]
        self.gen_index = {e: k for k, e in enumerate(self.generators)}
        self.relators = []
        if X.dim >= 2:
            for a, b, c in X.simplices[2]:
                if a in vs and b in vs and c in vs:
                    r = free_reduce(self.edge_word(a, b) + self.edge_word(b, c) + self.edge_word(c, a))
                    self.relators.append(r)

    def tree_path(self, v):
        """Vertices of the tree geodesic from the base to v."""
        if v not in self._tree_paths:
            path = [v]
            while self.parent[path[-1]] is not None:
                path.append(self.parent[path[-1]])
            self._tree_paths[v] = path[::-1]
        return self._tree_paths[v]

    def edge_word(self, a, b):
        if a < b:
            k = self.gen_index.get((a, b))
            return [] if k is None else [(k, 1)]
        k = self.gen_index.get((b, a))
        return [] if k is None else [(k, -1)]

    def path_word(self, path):
        w = []
        for a, b in zip(path, path[1:]):
            if a != b:
                w.extend(self.edge_word(a, b))
        return free_reduce(w)

    def loop_of_word(self, word):
        path = [self.base]
        for k, e in word:
            a, b = self.generators[k]
            if e < 0:
                a, b = b, a
            piece = join(self.tree_path(a), [a, b], reverse(self.tree_path(b)))
            path = join(path, piece)
        return path

    def choice_log(self):
        return {"base": self.base,
                "tree": sorted([list(e) for e in self.tree_edges]),
                "generators": [list(e) for e in self.generators]}


# -- Tietze elimination --------------------------------------------------------


def tietze(ngens, relators):
    """Eliminate generators occurring exactly once in some relator.

    Returns (live generators, relators over them, substitutions) where
    substitutions is an ordered list (g, word) with g = word.
    """
    rels = [cyclic_reduce(r) for r in relators]
    rels = [r for r in rels if r]
    live = set(range(ngens))
    subs = []
    while True:
        best = None
        for ri, r in enumerate(rels):
            counts = {}
            for g, _ in r:
                counts[g] = counts.get(g, 0) + 1
            for g in sorted(counts):
                if counts[g] == 1:
                    cand = (len(r), g, ri)
                    if best is None or cand < best:
                        best = cand
                    break
        if best is None:
            break
        _, g, ri = best
        r = rels[ri]
        pos = next(i for i, (h, _) in enumerate(r) if h == g)
        rot = r[pos:] + r[:pos]
        e = rot[0][1]
        rest = rot[1:]
        word = invert_word(rest) if e == 1 else list(rest)
        subs.append((g, word))
        live.discard(g)
        new = []
        for k, r2 in enumerate(rels):
            if k == ri:
                continue
            out = []
            for h, e2 in r2:
                if h == g:
                    out.extend(word if e2 == 1 else invert_word(word))
                else:
                    out.append((h, e2))
            out = cyclic_reduce(out)
            if out:
                new.append(out)
        rels = new
    return sorted(live), rels, subs


# -- coset enumeration -----------------------------------------------------------


def todd_coxeter(ngens, relators, limit=COSET_LIMIT):
    """HLT enumeration of the cosets of the trivial subgroup.

    Returns the standardized coset table (rows = cosets, columns 2k / 2k+1
    for generator k and its inverse) or None if more than ``limit`` cosets
    were defined.
    """
    ncols = 2 * ngens
    table = [[None] * ncols]
    fwd = [0]
    rels = [[2 * g + (0 if e == 1 else 1) for g, e in r] for r in relators]

    def rep(c):
        r = c
        while fwd[r] != r:
            r = fwd[r]
        while fwd[c] != r:
            fwd[c], c = r, fwd[c]
        return r

    def define(c, x):
        if len(table) >= limit:
            raise OverflowError
        d = len(table)
        table.append([None] * ncols)
        fwd.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def merge(k, l, q):
        k, l = rep(k), rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        fwd[l] = k
        q.append(l)

    def coincidence(a, b):
        q = []
        merge(a, b, q)
        i = 0
        while i < len(q):
            g = q[i]
            i += 1
            for x in range(ncols):
                d = table[g][x]
                if d is None:
                    continue
                if table[d][x ^ 1] == g:
                    table[d][x ^ 1] = None
                mu, nu = rep(g), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x], q)
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1], q)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(c, word):
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            define(f, word[i])

    try:
        c = 0
        while c < len(table):
            if fwd[c] == c:
                for r in rels:
                    scan_and_fill(c, r)
                    if fwd[c] != c:
                        break
                if fwd[c] == c:
                    for x in range(ncols):
                        if table[c][x] is None:
                            define(c, x)
            c += 1
    except OverflowError:
        return None
    # standardize by BFS from coset 0
    live = {}
    order = [rep(0)]
    live[order[0]] = 0
    k = 0
    while k < len(order):
        c = order[k]
        k += 1
        for x in range(ncols):
            d = rep(table[c][x])
            if d not in live:
                live[d] = len(order)
                order.append(d)
    return [[live[rep(table[c][x])] for x in range(ncols)] for c in order]


# -- pi_1 models ------------------------------------------------------------------


class Pi1Model:
    """pi_1 in one of three tiers: trivial, finite or free abelian.

    Elements: trivial -> (); finite -> coset index; free abelian -> int tuple.
    """

    def __init__(self, presentation, kind, **data):
        self.presentation = presentation
        self.kind = kind
        self.rank = data.get("rank", 0)
        self.table = data.get("table")
        self.live = data.get("live", [])
        self.asserted = data.get("asserted", False)
        self.eliminated = data.get("eliminated", [])
        ngens = len(presentation.generators)
        if kind == "trivial":
            self.identity = ()
            self.gen_value = [()] * ngens
        elif kind == "finite":
            self.identity = 0
            self._rep_words = self._coset_words()
            self._mul_cache = {}
            live_val = {g: self.table[0][2 * i] for i, g in enumerate(self.live)}
            self.gen_value = self._resolve(live_val, data["subs"], ngens)
        else:
            self.identity = (0,) * self.rank
            self._basis_words = data["basis_words"]
            self.gen_value = self._resolve(data["live_vectors"], data["subs"], ngens)

    def _resolve(self, live_val, subs, ngens):
        val = dict(live_val)
        for g, word in reversed(subs):
            val[g] = self.eval_word(word, val)
        return [val[g] for g in range(ngens)]

    def _coset_words(self):
        words = {0: []}
        order = [0]
        k = 0
        while k < len(order):
            c = order[k]
            k += 1
            for x in range(2 * len(self.live)):
                d = self.table[c][x]
                if d not in words:
                    words[d] = words[c] + [(self.live[x // 2], 1 if x % 2 == 0 else -1)]
                    order.append(d)
        return [words[c] for c in range(len(self.table))]

    # group operations

    @property
    def order(self):
        if self.kind == "trivial":
            return 1
        if self.kind == "finite":
            return len(self.table)
        return None

    def elements(self):
        if self.kind == "trivial":
            return [()]
        if self.kind == "finite":
            return list(range(len(self.table)))
        raise Pi1Unsupported("infinite group has no element list")

    def mul(self, a, b):
        if self.kind == "trivial":
            return ()
        if self.kind == "finite":
            key = (a, b)
            r = self._mul_cache.get(key)
            if r is None:
                r = a
                live_pos = {g: i for i, g in enumerate(self.live)}
                for g, e in self._rep_words[b]:
                    r = self.table[r][2 * live_pos[g] + (0 if e == 1 else 1)]
                self._mul_cache[key] = r
            return r
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        if self.kind == "trivial":
            return ()
        if self.kind == "finite":
            r = 0
            live_pos = {g: i for i, g in enumerate(self.live)}
            for g, e in invert_word(self._rep_words[a]):
                r = self.table[r][2 * live_pos[g] + (0 if e == 1 else 1)]
            return r
        return tuple(-x for x in a)

    def power(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        r = self.identity
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def eval_word(self, word, values=None):
        vals = values if values is not None else self.gen_value
        if self.kind == "free-abelian":
            acc = [0] * self.rank
            for g, e in word:
                for i, x in enumerate(vals[g]):
                    acc[i] += e * x
            return tuple(acc)
        r = self.identity
        for g, e in word:
            x = vals[g] if e == 1 else self.inv(vals[g])
            r = self.mul(r, x)
        return r

    def word_of(self, a):
        """A word in presentation generators representing a."""
        if self.kind == "trivial":
            return []
        if self.kind == "finite":
            return list(self._rep_words[a])
        out = []
        for j, c in enumerate(a):
            if c:
                w = self._basis_words[j]
                out.extend(w * c if c > 0 else invert_word(w) * (-c))
        return free_reduce(out)

    def loop_of(self, a):
        return self.presentation.loop_of_word(self.word_of(a))

    def sort_key(self, a):
        if self.kind == "free-abelian":
            return tuple((abs(c), c < 0) for c in a)
        return a

    def hom(self, images, target):
        """Homomorphism self -> target from images of presentation generators."""
        if self.kind == "free-abelian":
            cols = [target.eval_word(self._basis_words[j], images) for j in range(self.rank)]
            if target.kind == "free-abelian":
                def fn(a):
                    acc = [0] * target.rank
                    for j, c in enumerate(a):
                        if c:
                            for i, x in enumerate(cols[j]):
                                acc[i] += c * x
                    return tuple(acc)
                fn.matrix = [[cols[j][i] for j in range(self.rank)] for i in range(target.rank)]
                return fn
            # a free abelian group mapping into a finite or trivial one
            def fn(a):
                r = target.identity
                for j, c in enumerate(a):
                    r = target.mul(r, target.power(cols[j], c))
                return r
            return fn
        cache = {}

        def fn(a):
            if a not in cache:
                cache[a] = target.eval_word(self.word_of(a), images)
            return cache[a]
        return fn

    def describe(self):
        out = {"kind": self.kind}
        if self.kind == "finite":
            out["order"] = self.order
        if self.kind == "free-abelian":
            out["rank"] = self.rank
            out["asserted"] = self.asserted
        return out


def abelianization(ngens, relators):
    """(free rank, torsion coefficients) of <gens | relators>^ab."""
    if ngens == 0:
        return 0, []
    if not relators:
        return ngens, []
    M = [[0] * ngens for _ in relators]
    for i, r in enumerate(relators):
        for g, e in r:
            M[i][g] += e
    S, _, _ = smith_normal_form(M)
    d = [x for x in diagonal(S) if x]
    return ngens - len(d), [x for x in d if x > 1]


def build_pi1(pres, assert_rank=None, limit=COSET_LIMIT):
    """Classify pi_1 of a presentation into a supported tier."""
    ngens = len(pres.generators)
    live, rels, subs = tietze(ngens, pres.relators)
    if not live:
        return Pi1Model(pres, "trivial", subs=subs, eliminated=[g for g, _ in subs])
    pos = {g: i for i, g in enumerate(live)}
    local = [[(pos[g], e) for g, e in r] for r in rels]
    free_rank, torsion = abelianization(len(live), local)
    if free_rank == 0:
        table = todd_coxeter(len(live), local, limit)
        if table is None:
            raise Pi1Unsupported(f"coset enumeration exceeded {limit} cosets")
        if len(table) == 1:
            return Pi1Model(pres, "trivial")
        return Pi1Model(pres, "finite", table=table, live=live, subs=subs)
    if len(live) == 1:
        return _free_abelian_model(pres, live, local, subs, asserted=False)
    if assert_rank is not None and not local:
        raise Pi1Unsupported(f"pi_1 is free of rank {len(live)}, not abelian; the assertion is false")
    if assert_rank is not None and assert_rank == free_rank and not torsion:
        return _free_abelian_model(pres, live, local, subs, asserted=True)
    if assert_rank is not None:
        raise Pi1Unsupported(f"asserted free abelian rank {assert_rank} is inconsistent with "
                             f"abelianization Z^{free_rank} + torsion {torsion}")
    raise Pi1Unsupported(f"pi_1 is infinite (abelianization rank {free_rank}) on {len(live)} "
                         "generators and no free-abelian assertion was given")


def _relator_rank(local, n):
    if not local:
        return 0
    M = [[0] * n for _ in local]
    for i, r in enumerate(local):
        for g, e in r:
            M[i][g] += e
    S, _, _ = smith_normal_form(M)
    return sum(1 for x in diagonal(S) if x)


def _free_abelian_model(pres, live, local, subs, asserted):
    n = len(live)
    if local:
        M = [[0] * n for _ in local]
        for i, r in enumerate(local):
            for g, e in r:
                M[i][g] += e
        S, _, V = smith_normal_form(M)
        r = sum(1 for x in diagonal(S) if x)
    else:
        V = [[int(i == j) for j in range(n)] for i in range(n)]
        r = 0
    rank = n - r
    # coordinates of live generator i: row i of V, last ``rank`` entries
    live_vectors = {g: tuple(V[i][r:]) for i, g in enumerate(live)}
    Vinv = integer_inverse(V)
    basis_words = []
    for j in range(rank):
        row = Vinv[r + j]
        basis_words.append(free_reduce([(live[i], 1 if c > 0 else -1) for i, c in enumerate(row)
                                        for _ in range(abs(c))]))
    return Pi1Model(pres, "free-abelian", rank=rank, live=live, subs=subs,
                    live_vectors=live_vectors, basis_words=basis_words, asserted=asserted)


def pi1_presentation(X, vertices, base, assert_rank=None):
    pres = EdgePathPresentation(X, vertices, base)
    return pres, build_pi1(pres, assert_rank)


# -- objects -------------------------------------------------------------------------


class FcObject:
    """Canonical representative (H, v) of an object iso class."""

    def __init__(self, hclass, fixed, weyl, component, orbit, weyl_part, preserved):
        self.hclass = hclass
        self.subgroup = hclass.representative
        self.fixed = fixed
        self.weyl = weyl
        self.component = component
        self.base_vertex = component
        self.orbit = orbit
        self.weyl_part = weyl_part
        self.preserved = preserved

    @property
    def label(self):
        return f"({self.hclass.label})@{self.component}"

    @property
    def vertices(self):
        return self.fixed.component_vertices[self.component]

    def __repr__(self):
        return f"FcObject{self.label}"

    def to_json(self):
        return {"class": self.hclass.label, "order": self.hclass.order, "component": self.component,
                "vertices": sorted(self.vertices), "component_orbit": self.orbit,
                "weyl_order": self.weyl.order, "weyl_part_order": len(self.weyl_part),
                "preserved": self.preserved}


def image_vertex(f, v):
    return f.images[f.target_vertex_in_source(v)]


class Analysis:
    """Subgroup classes, fixed subcomplexes and Weyl groups for (X, f)."""

    def __init__(self, X, f=None):
        self.X = X
        self.f = f
        self.G = X.group
        self.classes = conjugacy_classes_of_subgroups(self.G)
        self.fixed = {}
        self.weyl = {}
        for c in self.classes:
            self.fixed[c.label] = FixedSubcomplex(X, c.representative)
        self._objects = None

    def weyl_of(self, hclass):
        if hclass.label not in self.weyl:
            self.weyl[hclass.label] = WeylGroup(self.G, hclass.representative)
        return self.weyl[hclass.label]

    def component_orbits(self, hclass):
        F = self.fixed[hclass.label]
        W = self.weyl_of(hclass)
        seen = set()
        out = []
        for cid in F.components:
            if cid in seen:
                continue
            orbit = sorted({F.translate_component(W.lift(w), cid) for w in range(W.order)})
            seen.update(orbit)
            part = [w for w in range(W.order) if F.translate_component(W.lift(w), cid) == cid]
            out.append((cid, orbit, part))
        return out

    def objects(self):
        if self._objects is None:
            objs = []
            for c in self.classes:
                F = self.fixed[c.label]
                if not F.vertices:
                    continue
                for cid, orbit, part in self.component_orbits(c):
                    pres = None
                    if self.f is not None:
                        pres = F.component_of[image_vertex(self.f, cid)] == cid
                    objs.append(FcObject(c, F, self.weyl_of(c), cid, orbit, part, pres))
            self._objects = objs
        return self._objects

    def locate(self, hclass_label, vertex):
        """Canonical object of the class containing the component of ``vertex`` and a
        Weyl element n (index) with n.C = canonical component."""
        F = self.fixed[hclass_label]
        cid = F.component_of[vertex]
        c = next(c for c in self.classes if c.label == hclass_label)
        W = self.weyl_of(c)
        for obj in self.objects():
            if obj.hclass.label != hclass_label or cid not in obj.orbit:
                continue
            for w in range(W.order):
                if F.translate_component(W.lift(w), cid) == obj.component:
                    return obj, w
        raise KeyError(vertex)


def object_iso_classes(X, f=None):
    return Analysis(X, f).objects()


# -- frames and Aut(x) -----------------------------------------------------------


class Frame:
    """All choices for one preserved object: tree, pi_1 model, return path W.

    ``W`` runs from the base v to f(v) inside the component (the reverse of
    the path w from f(v) to v); by default the tree geodesic.
    """

    def __init__(self, X, f, obj, assert_rank=None, w_path=None):
        if not obj.preserved:
            raise ComponentNotPreserved(f"f does not map component {obj.label} to itself")
        self.X, self.f, self.obj = X, f, obj
        self.pres, self.pi = pi1_presentation(X, obj.vertices, obj.base_vertex, assert_rank)
        self.base = obj.base_vertex
        self.fv = image_vertex(f, self.base)
        if w_path is None:
            W = list(self.pres.tree_path(self.fv))
        else:
            W = list(w_path)
            if W[0] != self.base or W[-1] != self.fv:
                raise MissingPathData("return path must run from the base vertex to its image")
            vs = set(obj.vertices)
            for a, b in zip(W, W[1:]):
                if a not in vs or b not in vs or not X.has(tuple(sorted((a, b)))):
                    raise MissingPathData(f"return path leaves the component at {a}-{b}")
        self.W = W
        self._edge_val = {}
        self.weyl = obj.weyl
        self.weyl_part = obj.weyl_part
        self.g_of = {n: obj.weyl.lift(n) for n in self.weyl_part}
        self.val_W = self.value(W)
        self.host = AutGroup(self)

    # -- paths

    def T(self, u):
        return self.pres.tree_path(u)

    def eps(self, a, b):
        key = (a, b)
        v = self._edge_val.get(key)
        if v is None:
            v = self.pi.eval_word(self.pres.edge_word(a, b))
            self._edge_val[key] = v
        return v

    def value(self, path):
        pi = self.pi
        r = pi.identity
        for a, b in zip(path, path[1:]):
            if a != b:
                r = pi.mul(r, self.eps(a, b))
        return r

    def act(self, n, path):
        """Weyl element n (index) applied to a vertex path."""
        return self.X.act_path(self.g_of[n], path)

    def image(self, path):
        return self.f.image_path(path)

    def generator_loops(self):
        out = []
        for a, b in self.pres.generators:
            out.append(join(self.T(a), [a, b], reverse(self.T(b))))
        return out

    def path_map_hom(self, mapper):
        """Endomorphism of pi induced by a path map sending base loops to base loops."""
        images = [self.value(mapper(loop)) for loop in self.generator_loops()]
        return self.pi.hom(images, self.pi)

    def choice_log(self):
        log = self.pres.choice_log()
        log.update({"object": self.obj.label, "pi1": self.pi.describe(), "w": list(reversed(self.W))})
        return log


class AutGroup:
    """Aut(x) as pairs (gamma, n): gamma in pi_1(C, v), n in WH_C.

    (gamma, n) is the deck transformation given by the path gamma . T_{nv}
    from v to n.v, where n acts through its coset representative.
    """

    def __init__(self, frame):
        self.frame = fr = frame
        pi = fr.pi
        self.pi = pi
        W = fr.weyl
        self.W = W
        self.identity = (pi.identity, 0)
        v = fr.base
        self._c = {}
        self._zeta = {}
        self.c_hom = {}
        for n in fr.weyl_part:
            nv = fr.X.act(fr.g_of[n], v)
            Tn = fr.T(nv)

            def mapper(loop, n=n, Tn=Tn):
                return join(Tn, fr.act(n, loop), reverse(Tn))
            self.c_hom[n] = fr.path_map_hom(mapper)
        # phi on pi: gamma -> W f(gamma) W^-1
        vw = fr.val_W
        fhom = fr.path_map_hom(fr.image)
        self.f_hom = fhom
        vwi = pi.inv(vw)
        self.phi_pi = lambda g: pi.mul(pi.mul(vw, fhom(g)), vwi)
        self.delta = {}
        for n in fr.weyl_part:
            nv = fr.X.act(fr.g_of[n], v)
            Tn = fr.T(nv)
            d = pi.mul(vw, fr.value(fr.image(Tn)))
            d = pi.mul(d, pi.inv(fr.value(fr.act(n, fr.W))))
            self.delta[n] = d
        self.classes = self._build_classes()

    def zeta(self, n1, n2):
        key = (n1, n2)
        if key not in self._zeta:
            fr = self.frame
            v = fr.base
            n2v = fr.X.act(fr.g_of[n2], v)
            self._zeta[key] = fr.value(fr.act(n1, fr.T(n2v)))
        return self._zeta[key]

    def z(self, n, u):
        """Label of the deck image of the base lift of u under (1, n)."""
        fr = self.frame
        return fr.value(fr.act(n, fr.T(u)))

    def mul(self, a, b):
        (g1, n1), (g2, n2) = a, b
        pi = self.pi
        x = pi.mul(pi.mul(g1, self.c_hom[n1](g2)), self.zeta(n1, n2))
        return (x, self.W.mul(n1, n2))

    def inv(self, a):
        g, n = a
        fr = self.frame
        ni = self.W.inv(n)
        nv = fr.X.act(fr.g_of[n], fr.base)
        P = join(fr.pi.loop_of(g), fr.T(nv))
        Q = fr.act(ni, reverse(P))
        return (fr.value(Q), ni)

    def phi(self, a):
        g, n = a
        return (self.pi.mul(self.phi_pi(g), self.delta[n]), n)

    def in_pi(self, a):
        return a[1] == 0

    def sort_key(self, a):
        return (a[1], self.pi.sort_key(a[0]))

    def act_vertex(self, a, u, label):
        """Deck action on a lifted vertex (u, label)."""
        g, n = a
        fr = self.frame
        pi = self.pi
        lab = pi.mul(pi.mul(g, self.c_hom[n](label)), self.z(n, u))
        return fr.X.act(fr.g_of[n], u), lab

    # -- twisted classes

    def _build_classes(self):
        from .twisted import UnionFindClasses, AbelianClasses
        pi = self.pi
        if pi.kind == "free-abelian":
            r = pi.rank
            basis = [tuple(int(i == j) for i in range(r)) for j in range(r)]
            M = [[self.phi_pi(b)[i] for b in basis] for i in range(r)]
            affine = []
            for n in self.frame.weyl_part:
                if n == 0:
                    continue
                h = (pi.identity, n)
                hi = self.inv(h)
                ph = self.phi(h)

                def move(alpha, ph=ph, hi=hi):
                    x = self.mul(self.mul(ph, (alpha, 0)), hi)
                    assert x[1] == 0
                    return x[0]
                d = move(pi.identity)
                A = [[move(b)[i] - d[i] for b in basis] for i in range(r)]
                affine.append((A, d))
            self.kind = "abelian"
            return AbelianClasses(M, affine)
        moves = []
        gens = [(x, 0) for x in pi.elements()] if pi.kind == "finite" else []
        gens += [(pi.identity, n) for n in self.frame.weyl_part if n != 0]
        for h in gens:
            ph, hi = self.phi(h), self.inv(h)

            def move(alpha, ph=ph, hi=hi):
                return self.mul(self.mul(ph, (alpha, 0)), hi)[0]
            moves.append(move)
        self.kind = "finite"
        return UnionFindClasses(pi.elements(), moves, pi.sort_key)

    def class_key(self, a):
        return self.classes.key(a[0])

    def pi_class_key(self, g):
        return self.classes.key(g)

    def class_label(self, key):
        if self.pi.kind == "trivial":
            return "1"
        if self.pi.kind == "finite":
            return f"g{key}"
        return "a(" + ",".join(str(c) for c in key) + ")"

    def representative(self, key):
        """A pi element in the class with this key."""
        if self.pi.kind == "free-abelian":
            return self.classes.lift(key)
        return key

    def class_count(self):
        if self.pi.kind == "free-abelian":
            return self.classes.count()
        return len(self.classes)


def aut_extension(X, f, obj, assert_rank=None, w_path=None):
    return Frame(X, f, obj, assert_rank, w_path)


# -- component dynamics -------------------------------------------------------------


def component_dynamics(X, f, analysis=None):
    """Recurrent / transient status of WH-orbits of fixed components."""
    A = analysis or Analysis(X, f)
    out = []
    for c in A.classes:
        F = A.fixed[c.label]
        if not F.vertices:
            continue
        W = A.weyl_of(c)
        orbits = A.component_orbits(c)
        orbit_of = {}
        for i, (cid, orbit, _) in enumerate(orbits):
            for k in orbit:
                orbit_of[k] = i
        nxt = [orbit_of[F.component_of[image_vertex(f, cid)]] for cid, _, _ in orbits]
        for i, (cid, orbit, part) in enumerate(orbits):
            seen = {}
            j, step = i, 0
            while j not in seen:
                seen[j] = step
                j = nxt[j]
                step += 1
            recurrent = j == i
            entry = {"class": c.label, "component": cid, "orbit": orbit}
            if recurrent:
                l = step
                v = cid
                for _ in range(l):
                    v = image_vertex(f, v)
                target = F.component_of[v]
                g = min(w for w in range(W.order) if F.translate_component(W.lift(w), cid) == target)
                gv = X.act(W.lift(g), cid)
                pres = EdgePathPresentation(X, F.component_vertices[target], gv)
                entry.update(status="recurrent", length=l, g_C=g,
                             g_C_element=W.lift(g), return_path=pres.tree_path(v))
            else:
                h, j = 0, i
                while not _on_cycle(nxt, j):
                    j = nxt[j]
                    h += 1
                entry.update(status="transient", height=h)
            out.append(entry)
    return out


def _on_cycle(nxt, i):
    j = nxt[i]
    for _ in range(len(nxt)):
        if j == i:
            return True
        j = nxt[j]
    return False


# -- morphisms --------------------------------------------------------------------------


class FcMorphism:
    """(sigma, [w]) in Mor(y, x): sigma sends 1K to gH, w runs from v_y to g.v_x."""

    def __init__(self, y, x, g, path, stabilizer):
        self.y, self.x = y, x
        self.g = g
        self.gset = GSetMap(y.subgroup, x.subgroup, g)
        self.path = path
        self.stabilizer = stabilizer

    def __repr__(self):
        return f"FcMorphism({self.y.label} -> {self.x.label}, g={self.g}, |stab|={self.stabilizer})"


def morphism_orbits(X, y, x, frame_y=None):
    """Aut(y)-orbit representatives of Mor(y, x) with stabilizer orders.

    Orbits correspond to WK_y-orbits of the cosets gH with K <= gHg^-1 and
    g.v_x in the component of y; the path part is the tree geodesic.
    """
    G = X.group
    H, K = x.subgroup, y.subgroup
    Fy = y.fixed
    cosets = {}
    for g in range(G.order):
        key = min(G.mul(g, h) for h in H.elements)
        if key in cosets:
            continue
        gi = G.inv(g)
        if not all(G.mul(G.mul(gi, k), g) in H for k in K.elements):
            continue
        if Fy.component_of.get(X.act(g, x.base_vertex)) != y.component:
            continue
        cosets[key] = g
    W = y.weyl
    lifts = [W.lift(n) for n in y.weyl_part]

    def act(n_elem, key):
        g = G.mul(n_elem, key)
        return min(G.mul(g, h) for h in H.elements)

    if frame_y is not None:
        tree = frame_y.pres
    else:
        tree = EdgePathPresentation(X, y.vertices, y.base_vertex)
    out = []
    seen = set()
    for key in sorted(cosets):
        if key in seen:
            continue
        orbit = {act(n, key) for n in lifts}
        seen.update(orbit)
        stab = sum(1 for n in lifts if act(n, key) == key)
        path = tree.tree_path(X.act(key, x.base_vertex))
        out.append(FcMorphism(y, x, key, path, stab))
    return out


def transport(frame_y, frame_x, mor, alpha):
    """(sigma, [w])^*: pi_1 element at x -> pi_1 element at y (trace-coefficient convention).

    alpha -> W_y f(w) g(W_x)^-1 g(alpha) w^-1.
    """
    X = frame_y.X
    g = mor.g
    w = mor.path
    loop = frame_x.pi.loop_of(alpha)
    pieces = join(frame_y.W, frame_y.image(w), reverse(X.act_path(g, frame_x.W)),
                  X.act_path(g, loop), reverse(w))
    return frame_y.value(pieces)
