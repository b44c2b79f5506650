"""lambda_G(f) from covering chains, lambda_G^loc(f) from fixed points, and ch_G."""

from __future__ import annotations

import json
import random
from fractions import Fraction

from .burnside import (BurnsideRing, LinearSphereMap, equivariant_degree, SingularOnStratum,
                       BurnsideError)
from .fundamental import (Analysis, Frame, ComponentNotPreserved, MissingPathData, Pi1Unsupported,
                          image_vertex, join, reverse, morphism_orbits, transport)
from .groups import FiniteGroup, Subgroup, class_of, conjugator
from .linalg import solve_rational
from .twisted import (TwistedChainEndo, TwistedClassSum, refined_lefschetz, incidence_lefschetz,
                      add_term)


class SingularFixedPoint(Exception):
    pass


class FixedPointError(ValueError):
    pass


class Mismatch(Exception):
    def __init__(self, msg, diff=None):
        super().__init__(msg)
        self.diff = diff or {}


# -- cover chains ----------------------------------------------------------------


class CoverChainEndo:
    """Lift of f to the universal cover of a fixed component, as a twisted chain endo.

    Basis: one lift per WH_C-orbit of cells (the orbit minimum, lifted with its
    first vertex labelled 1).  ``incidence`` holds the self-incidence data read
    directly from lifted image cells, independent of the orbit decomposition.
    """

    def __init__(self, frame, relative=True):
        self.frame = fr = frame
        self.relative = relative
        X, f, obj = fr.X, fr.f, fr.obj
        host = fr.host
        pi = fr.pi
        F = obj.fixed
        comp = set(obj.vertices)
        cells = [s for s in F.simplices if s[0] in comp]
        if relative:
            cells = [s for s in cells if s not in F.singular_set]
        cells.sort(key=lambda s: (len(s), s))
        self.cellset = set(cells)
        top = max((len(s) for s in cells), default=0)
        reps = [[] for _ in range(top)]
        info = {}
        stabs = [[] for _ in range(top)]
        for s in cells:
            if s in info:
                continue
            p = len(s) - 1
            idx = len(reps[p])
            reps[p].append(s)
            st = []
            for n in fr.weyl_part:
                img, sg = X.act_simplex(fr.g_of[n], s)
                info.setdefault(img, (idx, n, sg))
                if img == s:
                    st.append((pi.inv(host.z(n, s[0])), n))
            stabs[p].append(sorted(st, key=host.sort_key))
        self.reps, self.info = reps, info
        self._rho = {}
        ranks = [len(r) for r in reps]
        bounds = [None]
        for p in range(1, top):
            D = [[{} for _ in reps[p - 1]] for _ in reps[p]]
            for i, e in enumerate(reps[p]):
                lab = self._base_labels(e)
                for k in range(len(e)):
                    face = e[:k] + e[k + 1:]
                    if face not in self.cellset:
                        continue
                    j, g, sg = self.decompose(face, face[0], lab[face[0]])
                    add_term(D[i][j], g, (-1) ** k * sg)
            bounds.append(D)
        endos = []
        incidence = []
        sd = f.sd_pieces()
        for p in range(top):
            A = [[{} for _ in reps[p]] for _ in reps[p]]
            inc = []
            for i, e in enumerate(reps[p]):
                terms = []
                for piece, sg, _ in sd[e]:
                    im = f.image_simplex(piece)
                    if im is None:
                        continue
                    tau, sg2 = im
                    if tau not in self.cellset:
                        continue
                    labels = {f.images[s]: self.image_label(e, s) for s in piece}
                    a = tau[0]
                    for u in tau[1:]:
                        if labels[u] != pi.mul(labels[a], fr.eps(a, u)):
                            raise RuntimeError("inconsistent lift of an image simplex")
                    j, g, sg3 = self.decompose(tau, a, labels[a])
                    add_term(A[i][j], g, sg * sg2 * sg3)
                    if tau == e:
                        terms.append((i, (labels[e[0]], 0), sg * sg2))
                inc.append((stabs[p][i], terms))
            endos.append(A)
            incidence.append(inc)
        self.chain = TwistedChainEndo(host, ranks, bounds, endos, stabs)
        self.incidence = incidence

    def _base_labels(self, e):
        fr = self.frame
        return {u: fr.eps(e[0], u) for u in e}

    def decompose(self, tau, a, la):
        """Lifted cell tau (anchor a with label la) = sign * g . (basis lift)."""
        fr = self.frame
        pi = fr.pi
        j, n, sg = self.info[tau]
        p = len(tau) - 1
        rep = self.reps[p][j]
        b = fr.X.act(fr.g_of[n], rep[0])
        lb = pi.mul(la, fr.eps(a, b))
        gamma = pi.mul(lb, pi.inv(fr.host.z(n, rep[0])))
        return j, (gamma, n), sg

    def rho(self, s):
        """Label of f~(s0), s0 = source vertex s in the lift of its carrier with c0 labelled 1."""
        if s not in self._rho:
            fr = self.frame
            f = fr.f
            carrier = f.carrier((s,))
            c0 = carrier[0]
            start = f.target_vertex_in_source(c0)
            inner = f.source_path_within(start, s, carrier)
            path = join(fr.W, fr.image(fr.T(c0)), f.image_source_path(inner))
            self._rho[s] = fr.value(path)
        return self._rho[s]

    def image_label(self, e, s):
        fr = self.frame
        pi = fr.pi
        c0 = fr.f.carrier((s,))[0]
        kappa = fr.eps(e[0], c0)
        return pi.mul(fr.host.phi_pi(kappa), self.rho(s))

    def augmented_image(self, cell):
        """f_#(cell) on the cells of the pair, rebuilt from the orbit matrices with pi_1 -> 1."""
        fr = self.frame
        X = fr.X
        j, n, s = self.info[cell]
        p = len(cell) - 1
        out = {}
        for jj, x in enumerate(self.chain.endos[p][j]):
            for (_, m), c in x.items():
                t, sg = X.act_simplex(fr.g_of[m], self.reps[p][jj])
                t, sg2 = X.act_simplex(fr.g_of[n], t)
                out[t] = out.get(t, 0) + s * c * sg * sg2
        return {k: v for k, v in out.items() if v}

    def basis_log(self):
        return [[list(e) for e in r] for r in self.reps]


def cover_chain(frame, relative=True):
    return CoverChainEndo(frame, relative)


# -- Lambda elements -----------------------------------------------------------------


class LambdaElement:
    """Object iso class label -> TwistedClassSum (over that object's host)."""

    def __init__(self, terms=None, frames=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self.frames = frames or {}

    def __eq__(self, other):
        return isinstance(other, LambdaElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        frames = dict(self.frames)
        frames.update(other.frames)
        return LambdaElement(out, frames)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, r):
        return LambdaElement({k: v.scaled(r) for k, v in self.terms.items()}, self.frames)

    def __bool__(self):
        return bool(self.terms)

    def to_json(self):
        return {k: self.terms[k].to_json() for k in sorted(self.terms, key=_label_key)}

    def diff(self, other):
        out = {}
        for k in sorted(set(self.terms) | set(other.terms), key=_label_key):
            a = self.terms.get(k, TwistedClassSum())
            b = other.terms.get(k, TwistedClassSum())
            if a != b:
                out[k] = {"left": a.to_json(), "right": b.to_json()}
        return out

    def __repr__(self):
        return f"LambdaElement({self.to_json()})"


def _label_key(label):
    # "(2a)@3" -> (order, suffix, component)
    cls, comp = label.split("@")
    cls = cls.strip("()")
    digits = "".join(ch for ch in cls if ch.isdigit())
    return (int(digits), cls[len(digits):], int(comp))


def augment(lam):
    return {k: v.augmentation() for k, v in lam.terms.items()}


class Context:
    """Analysis plus lazily built frames for the preserved objects of (X, f)."""

    def __init__(self, X, f, assertions=None):
        self.X, self.f = X, f
        self.analysis = Analysis(X, f)
        self.assertions = assertions or []
        self._frames = {}

    def objects(self):
        return self.analysis.objects()

    def object(self, label):
        return next(o for o in self.objects() if o.label == label)

    def assert_rank(self, obj):
        for a in self.assertions:
            if a.get("pi1", "free-abelian") != "free-abelian":
                continue
            cls = a.get("class")
            if cls is not None and cls != obj.hclass.label:
                continue
            if a["component"] in obj.vertices:
                return int(a["rank"])
        return None

    def frame(self, obj):
        if obj.label not in self._frames:
            self._frames[obj.label] = Frame(self.X, self.f, obj, self.assert_rank(obj))
        return self._frames[obj.label]

    def frames(self):
        return {o.label: self.frame(o) for o in self.objects() if o.preserved}


def lambda_(X, f, assertions=None, ctx=None, ring="z"):
    """lambda_G(f): refined Lefschetz numbers of the relative covering chains."""
    ctx = ctx or Context(X, f, assertions)
    terms = {}
    for obj in ctx.objects():
        if not obj.preserved:
            continue
        fr = ctx.frame(obj)
        C = cover_chain(fr)
        terms[obj.label] = refined_lefschetz(C.chain, ring if C.chain.is_free() else "q")
    return LambdaElement(terms, ctx.frames())


def lambda_incidence(X, f, assertions=None, ctx=None):
    ctx = ctx or Context(X, f, assertions)
    terms = {}
    for obj in ctx.objects():
        if obj.preserved:
            fr = ctx.frame(obj)
            terms[obj.label] = incidence_lefschetz(fr.host, cover_chain(fr).incidence)
    return LambdaElement(terms, ctx.frames())


def two_route_check(X, f, ctx=None, relative=True):
    """refined_lefschetz over Q versus the incidence route, per object."""
    ctx = ctx or Context(X, f)
    out = {}
    for obj in ctx.objects():
        if not obj.preserved:
            continue
        fr = ctx.frame(obj)
        C = cover_chain(fr, relative)
        a = refined_lefschetz(C.chain, "q")
        b = incidence_lefschetz(fr.host, C.incidence)
        out[obj.label] = (a, b, a == b, C.chain.check())
    return out


# -- fixed point data ---------------------------------------------------------------------


def load_fixed_data(path):
    with open(path) as fh:
        return json.load(fh)


def _edge_path(X, edge_ids, start=None):
    edges = X.edges()
    if not edge_ids:
        return None
    es = []
    for k in edge_ids:
        if not 0 <= k < len(edges):
            raise MissingPathData(f"edge id {k} out of range")
        es.append(edges[k])
    if len(es) == 1:
        a, b = es[0]
        if start is not None and start == b:
            return [b, a]
        return [a, b]
    # orient by the shared vertex with the next edge
    first, second = es[0], es[1]
    common = set(first) & set(second)
    if not common:
        raise MissingPathData("path edges are not consecutive")
    c = common.pop()
    path = [first[0] if first[1] == c else first[1], c]
    for e in es[1:]:
        if path[-1] not in e:
            raise MissingPathData("path edges are not consecutive")
        path.append(e[0] if e[1] == path[-1] else e[1])
    return path


class FixedPoint:
    """Validated fixed-point datum."""

    def __init__(self, X, f, d):
        G = X.group
        self.vertex = p = int(d["vertex"])
        if not 0 <= p < X.n_vertices:
            raise FixedPointError(f"fixed point vertex {p} out of range")
        if image_vertex(f, p) != p:
            raise FixedPointError(f"vertex {p} is not fixed by f")
        gens = [tuple(int(x) for x in g) for g in d.get("isotropy_gens", [])]
        try:
            idx = [G.index(g) for g in gens]
        except KeyError:
            raise FixedPointError("isotropy generator is not an element of the group") from None
        iso = G.closure(idx)
        actual = X.pointwise_isotropy((p,))
        if iso != actual:
            raise FixedPointError(f"isotropy of vertex {p} has order {actual.order}, datum gives {iso.order}")
        self.isotropy = iso
        names = []
        for k, g in enumerate(gens):
            amb = [G.generator_names[j] for j, h in enumerate(G.generators) if h == g]
            names.append(amb[0] if amb else f"h{k}")
        self.group = FiniteGroup(G.degree, gens, name=f"G_{p}", generator_names=names)
        self.to_ambient = [G.index(self.group.perm(k)) for k in range(self.group.order)]
        A = d["id_minus_df"]
        n = len(A)
        rep = d.get("rep_action", {})
        mats = []
        for k in range(len(gens)):
            key = next((c for c in (names[k], str(k), k) if c in rep), None)
            if key is None:
                raise FixedPointError(f"missing representation matrix for isotropy generator {k}")
            mats.append(rep[key])
        self.sphere = LinearSphereMap(self.group, n, mats, [[Fraction(x) for x in r] for r in A])
        self.path_t = d.get("path_t") or []
        self.path_v = d.get("path_v") or []
        # a source vertex next to p that f fixes as a point makes the fixed edge non-isolated
        S = f.source
        here = [w for w in range(S.n_vertices) if f.positions[w] == {p: 1}]
        for w in here:
            for u in S.neighbours(w):
                if f.positions[u] == {f.images[u]: 1}:
                    raise FixedPointError(f"fixed point {p} is not isolated: neighbour {f.images[u]} is fixed")

    def degree(self):
        try:
            return equivariant_degree(self.sphere)
        except SingularOnStratum as exc:
            raise SingularFixedPoint(f"det(id - T f) = 0 at vertex {self.vertex} on stratum ({exc.label})") from None

    def subgroup_in_G(self, L):
        G_ = self.isotropy.parent
        return Subgroup(G_, [self.to_ambient[k] for k in L.elements])


def fixed_point_class(fr, p, t=None):
    """Trace class of a fixed vertex p in the component of fr: W f(t) t^-1."""
    if t is None:
        t = fr.T(p)
    return fr.value(join(fr.W, fr.image(t), reverse(t)))


def lambda_local(X, f, fixed_data, assertions=None, ctx=None, report=None):
    ctx = ctx or Context(X, f, assertions)
    G = X.group
    A = ctx.analysis
    terms = {}
    pts = [FixedPoint(X, f, d) for d in fixed_data]
    seen_orbits = set()
    for fp in pts:
        orb = frozenset(X.act(g, fp.vertex) for g in range(G.order))
        if orb in seen_orbits:
            raise FixedPointError(f"two data for the orbit of vertex {fp.vertex}")
        seen_orbits.add(orb)
    for v in f.fixed_vertices():
        orb = frozenset(X.act(g, v) for g in range(G.order))
        if orb not in seen_orbits:
            raise FixedPointError(f"fixed vertex {v} has no datum for its orbit")
    for fp in pts:
        deg = fp.degree()
        R = deg.ring
        for lab, c in deg.items():
            L = fp.subgroup_in_G(R.classes[R.pos[lab]].representative)
            hc = class_of(A.classes, L)
            k = conjugator(G, hc.representative, L)   # k L_can k^-1 = L
            q = X.act(G.inv(k), fp.vertex)
            obj, n = A.locate(hc.label, q)
            if not obj.preserved:
                if report is not None:
                    report.setdefault("flags", []).append(
                        {"vertex": fp.vertex, "object": obj.label, "coefficient": c})
                continue
            fr = ctx.frame(obj)
            p2 = X.act(obj.weyl.lift(n), q)
            t = None
            if p2 == fp.vertex and fp.path_t:
                t = _edge_path(X, fp.path_t, fr.base)
                if t[0] != fr.base or t[-1] != p2:
                    raise MissingPathData(f"path_t for vertex {fp.vertex} must run from {fr.base} to {p2}")
            if p2 == fp.vertex and fp.path_v:
                w = _edge_path(X, fp.path_v, fr.fv)
                if w[0] != fr.fv or w[-1] != fr.base:
                    raise MissingPathData(f"path_v for vertex {fp.vertex} must run from {fr.fv} to {fr.base}")
            alpha = fixed_point_class(fr, p2, t)
            key = fr.host.pi_class_key(alpha)
            s = terms.setdefault(obj.label, TwistedClassSum({}, fr.host.class_label))
            terms[obj.label] = s + TwistedClassSum({key: c}, fr.host.class_label)
    return LambdaElement(terms, ctx.frames())


# -- character map ----------------------------------------------------------------------------


def character(lam, ctx):
    """ch_G: per target object, the weighted transports of every lambda term."""
    out = {}
    frames = ctx.frames()
    X = ctx.X
    for y_label, fy in frames.items():
        total = TwistedClassSum({}, fy.host.class_label)
        for x_label, tsum in lam.terms.items():
            fx = frames[x_label]
            for mor in morphism_orbits(X, fy.obj, fx.obj, fy):
                w = Fraction(1, mor.stabilizer)
                acc = {}
                for key, c in tsum.terms.items():
                    alpha = fx.host.representative(key)
                    k2 = fy.host.pi_class_key(transport(fy, fx, mor, alpha))
                    acc[k2] = acc.get(k2, 0) + w * c
                total = total + TwistedClassSum(acc, fy.host.class_label)
        if total:
            out[y_label] = total
    return LambdaElement(out, frames)


def character_inverse(chi, ctx):
    """Top-down elimination: objects with larger isotropy first."""
    frames = ctx.frames()
    order = sorted(frames, key=lambda lab: (-frames[lab].obj.hclass.order, _label_key(lab)))
    solved = {}
    for y in order:
        fy = frames[y]
        rest = chi.terms.get(y, TwistedClassSum({}, fy.host.class_label))
        for x, tsum in solved.items():
            if x == y:
                continue
            fx = frames[x]
            for mor in morphism_orbits(ctx.X, fy.obj, fx.obj, fy):
                w = Fraction(1, mor.stabilizer)
                acc = {}
                for key, c in tsum.terms.items():
                    k2 = fy.host.pi_class_key(transport(fy, fx, mor, fx.host.representative(key)))
                    acc[k2] = acc.get(k2, 0) - w * c
                rest = rest + TwistedClassSum(acc, fy.host.class_label)
        if rest:
            solved[y] = rest
    return LambdaElement(solved, frames)


def absolute_cover_lefschetz(ctx):
    """L^{Q Aut(y)} of the lift to the absolute cover of each preserved component."""
    out = {}
    inc = {}
    for label, fr in ctx.frames().items():
        C = cover_chain(fr, relative=False)
        a = refined_lefschetz(C.chain, "q")
        b = incidence_lefschetz(fr.host, C.incidence)
        if a:
            out[label] = a
        if b:
            inc[label] = b
    return LambdaElement(out), LambdaElement(inc)


def fixed_point_character(ctx, fixed_data):
    """ch at each y from fixed points: sum over WK_y-orbits |stab|^-1 sign det(A|V^K') alpha."""
    X, f = ctx.X, ctx.f
    G = X.group
    pts = [FixedPoint(X, f, d) for d in fixed_data]
    out = {}
    for label, fy in ctx.frames().items():
        K = fy.obj.subgroup
        comp = set(fy.obj.vertices)
        found = {}
        for fp in pts:
            for g in range(G.order):
                p = X.act(g, fp.vertex)
                if p not in comp or p in found:
                    continue
                gi = G.inv(g)
                Kp = [G.conj(gi, k) for k in K.elements]
                if not all(x in fp.isotropy for x in Kp):
                    continue
                local = [fp.to_ambient.index(x) for x in Kp]
                sub = Subgroup(fp.group, local)
                found[p] = fp.sphere.stratum_degree(sub)
        acc = {}
        lifts = [fy.g_of[n] for n in fy.weyl_part]
        done = set()
        for p in sorted(found):
            if p in done:
                continue
            orbit = {X.act(g, p) for g in lifts}
            done |= orbit
            stab = sum(1 for g in lifts if X.act(g, p) == p)
            key = fy.host.pi_class_key(fixed_point_class(fy, p))
            acc[key] = acc.get(key, 0) + Fraction(found[p], stab)
        s = TwistedClassSum(acc, fy.host.class_label)
        if s:
            out[label] = s
    return LambdaElement(out)


def verify_fixed_point_theorem(X, f, fixed_data, assertions=None, ctx=None):
    ctx = ctx or Context(X, f, assertions)
    rep = {}
    lam = lambda_(X, f, ctx=ctx)
    loc = lambda_local(X, f, fixed_data, ctx=ctx, report=rep)
    ch_lam = character(lam, ctx)
    ch_loc = character(loc, ctx)
    ch_fix = fixed_point_character(ctx, fixed_data)
    ch_abs, ch_abs_inc = absolute_cover_lefschetz(ctx)
    checks = {
        "lambda == lambda_loc": lam == loc,
        "ch(lambda) == ch(lambda_loc)": ch_lam == ch_loc,
        "ch(lambda) == fixed point formula": ch_lam == ch_fix,
        "ch(lambda) == absolute cover": ch_lam == ch_abs,
        "absolute cover two routes": ch_abs == ch_abs_inc,
        "ch inverse recovers lambda": character_inverse(ch_lam, ctx) == lam,
    }
    rep.update({
        "lambda": lam.to_json(), "lambda_loc": loc.to_json(),
        "ch": {"from_lambda": ch_lam.to_json(), "from_lambda_loc": ch_loc.to_json(),
               "fixed_point_formula": ch_fix.to_json(), "absolute_cover": ch_abs.to_json()},
        "checks": checks, "ok": all(checks.values()),
    })
    if lam != loc:
        rep["diff"] = lam.diff(loc)
    return rep


# -- PL fixed point oracle -------------------------------------------------------------------


def pl_fixed_points(f):
    """Fixed points of the PL map |f| found simplex by simplex.

    Returns (points, degenerate) where points are (source simplex, barycentric
    weights on its vertices) in the relative interior, and degenerate lists
    source simplices on which the fixed set is not a single point.
    """
    pts, degenerate = [], []
    for s in f.source.all_simplices():
        verts = set()
        for v in s:
            verts.update(f.positions[v])
            verts.add(f.images[v])
        verts = sorted(verts)
        rows = [[f.positions[v].get(a, 0) - (f.images[v] == a) for v in s] for a in verts]
        rows.append([1] * len(s))
        rhs = [0] * len(verts) + [1]
        x = solve_rational(rows, rhs)
        if x is None:
            continue
        # uniqueness: the homogeneous system must be trivial
        from .burnside import nullspace
        ker = nullspace(rows, len(s))
        if ker:
            degenerate.append(s)
            continue
        if all(t > 0 for t in x):
            pts.append((s, x))
    return pts, degenerate


# -- seeds and canonical reports ---------------------------------------------------------------


def relabel_problem(X, f, fixed_data, seed):
    rng = random.Random(seed)
    perm = list(range(X.n_vertices))
    rng.shuffle(perm)
    if f.subdivided:
        sperm = list(range(f.source.n_vertices))
        rng.shuffle(sperm)
    else:
        sperm = perm
    X2 = X.relabeled(perm)
    f2 = f.relabeled(perm, sperm)
    old_edges = X.edges()
    new_index = {e: i for i, e in enumerate(X2.edges())}

    def edge_map(ids):
        out = []
        for k in ids:
            a, b = old_edges[k]
            out.append(new_index[tuple(sorted((perm[a], perm[b])))])
        return out
    data = []
    for d in fixed_data or []:
        d2 = dict(d)
        d2["vertex"] = perm[d["vertex"]]
        d2["path_t"] = edge_map(d.get("path_t") or [])
        d2["path_v"] = edge_map(d.get("path_v") or [])
        data.append(d2)
    return X2, f2, data, perm


def reidentify(lam, ctx_run, ctx_canon, perm):
    """Transport a LambdaElement computed on relabeled data into the canonical frames."""
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    X = ctx_canon.X
    out = {}
    for label, tsum in lam.terms.items():
        fr_run = ctx_run.frames()[label]
        base_orig = inv[fr_run.base]
        W_orig = [inv[v] for v in fr_run.W]
        obj, n = ctx_canon.analysis.locate(fr_run.obj.hclass.label, base_orig)
        fr = ctx_canon.frame(obj)
        g = obj.weyl.lift(n)
        t = fr.T(X.act(g, base_orig))
        acc = {}
        for key, c in tsum.terms.items():
            loop = [inv[v] for v in fr_run.pi.loop_of(fr_run.host.representative(key))]
            path = join(fr.W, fr.image(t), reverse(X.act_path(g, W_orig)), X.act_path(g, loop), reverse(t))
            k2 = fr.host.pi_class_key(fr.value(path))
            acc[k2] = acc.get(k2, 0) + c
        s = TwistedClassSum(acc, fr.host.class_label)
        out[obj.label] = out[obj.label] + s if obj.label in out else s
    return LambdaElement(out, ctx_canon.frames())


def canonical_report(X, f, fixed_data=None, assertions=None, seed=0, ring="z"):
    """Full pipeline; results are expressed in the frames of the original labelling."""
    canon = Context(X, f, assertions)
    if seed:
        X2, f2, data2, perm = relabel_problem(X, f, fixed_data, seed)
        assertions2 = []
        for a in assertions or []:
            a2 = dict(a)
            a2["component"] = perm[a["component"]]
            assertions2.append(a2)
        run = Context(X2, f2, assertions2)
    else:
        X2, f2, data2, perm = X, f, fixed_data, list(range(X.n_vertices))
        run = canon
    lam = reidentify(lambda_(X2, f2, ctx=run, ring=ring), run, canon, perm)
    rep = {"objects": [o.to_json() for o in canon.objects()],
           "lambda": lam.to_json(),
           "augmented": {k: _num(v) for k, v in sorted(augment(lam).items(), key=lambda kv: _label_key(kv[0]))}}
    if fixed_data is not None:
        loc = reidentify(lambda_local(X2, f2, data2, ctx=run), run, canon, perm)
        ch_run = reidentify(character(lambda_(X2, f2, ctx=run), run), run, canon, perm)
        rep["lambda_loc"] = loc.to_json()
        rep["ch"] = ch_run.to_json()
        rep["equal"] = lam == loc
    rep["choices"] = [canon.frame(o).choice_log() for o in canon.objects() if o.preserved]
    return rep


def _num(v):
    v = Fraction(v)
    return int(v) if v.denominator == 1 else str(v)
