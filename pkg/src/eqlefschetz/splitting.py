"""Type filtration of chain modules: splitting/extension functors on explicit data."""

from __future__ import annotations

import random
from fractions import Fraction

from .fundamental import Analysis, component_dynamics
from .gcw import EquivariantMap, FixedSubcomplex
from .groups import conjugacy_classes_of_subgroups, class_of, subconjugate
from .twisted import (FiniteExtension, TwistedClassSum, add_term, trace, standard_extensions,
                      random_element, random_finite_subgroups)


class SplittingError(Exception):
    pass


class FilteredModule:
    """Sum of permutation modules R[host/S_b] with a type label per basis element.

    ``leq(a, b)`` is the partial order on types; ``endo`` is a row-convention
    twisted endomorphism (group ring entries), or None.
    """

    def __init__(self, host, types, leq, stabilizers=None, endo=None, labels=None):
        self.host = host
        self.types = list(types)
        self.leq = leq
        n = len(self.types)
        self.stabilizers = stabilizers or [[host.identity] for _ in range(n)]
        self.endo = endo
        self.labels = labels or [str(i) for i in range(n)]
        if len(self.stabilizers) != n or len(self.labels) != n:
            raise SplittingError("one stabilizer and label per basis element")
        if endo is not None and (len(endo) != n or any(len(r) != n for r in endo)):
            raise SplittingError("endomorphism has wrong shape")

    @property
    def rank(self):
        return len(self.types)

    def type_list(self):
        out = []
        for t in self.types:
            if t not in out:
                out.append(t)
        return out

    def indices(self, t):
        return [i for i, s in enumerate(self.types) if s == t]

    def trace(self):
        return trace(self.endo, self.host, self.stabilizers)


def triangularity_check(M):
    """Entries b0 -> b are allowed only for type(b) >= type(b0)."""
    bad = []
    for i, row in enumerate(M.endo):
        for j, x in enumerate(row):
            if x and not M.leq(M.types[i], M.types[j]):
                bad.append({"row": M.labels[i], "column": M.labels[j],
                            "from_type": str(M.types[i]), "to_type": str(M.types[j])})
    return {"triangular": not bad, "violations": bad}


def split(M, t):
    """S_H: the type-t subquotient with the diagonal block of the endo."""
    idx = M.indices(t)
    endo = None
    if M.endo is not None:
        endo = [[dict(M.endo[i][j]) for j in idx] for i in idx]
    return FilteredModule(M.host, [t] * len(idx), M.leq, [M.stabilizers[i] for i in idx], endo,
                          [M.labels[i] for i in idx])


def extend(N, t, leq=None):
    """E_H: regard a type-t module as a filtered module concentrated in type t."""
    if any(s != t for s in N.types):
        raise SplittingError("extension input must be concentrated in one type")
    return FilteredModule(N.host, list(N.types), leq or N.leq, list(N.stabilizers),
                          None if N.endo is None else [[dict(x) for x in r] for r in N.endo],
                          list(N.labels))


def reassemble(blocks, leq):
    """Direct sum of E_H(S_H M) over the types, in the given block order."""
    host = blocks[0][1].host
    types, stabs, labels = [], [], []
    for t, N in blocks:
        types += N.types
        stabs += N.stabilizers
        labels += N.labels
    n = len(types)
    endo = [[{} for _ in range(n)] for _ in range(n)]
    off = 0
    for _, N in blocks:
        for i in range(N.rank):
            for j in range(N.rank):
                endo[off + i][off + j] = dict(N.endo[i][j])
        off += N.rank
    return FilteredModule(host, types, leq, stabs, endo, labels)


def _same_module(A, B):
    return (A.types == B.types and A.labels == B.labels
            and [sorted(s) for s in A.stabilizers] == [sorted(s) for s in B.stabilizers]
            and _clean(A.endo) == _clean(B.endo))


def _clean(E):
    if E is None:
        return None
    return [[{g: c for g, c in x.items() if c} for x in r] for r in E]


def splitting_roundtrip(M):
    """S_H E_H = id per type; E(S(M)) is the associated graded of M up to block permutation."""
    report = {"types": [], "ok": True}
    blocks = []
    block_trace = TwistedClassSum({}, M.host.class_label)
    for t in M.type_list():
        N = split(M, t)
        back = split(extend(N, t), t)
        same = _same_module(N, back)
        blocks.append((t, N))
        bt = N.trace()
        block_trace = block_trace + bt
        report["types"].append({"type": str(t), "rank": N.rank, "roundtrip": same,
                                "trace": bt.to_json()})
        report["ok"] &= same
    R = reassemble(blocks, M.leq)
    perm = [M.labels.index(lab) for lab in R.labels]
    graded = True
    for a, i in enumerate(perm):
        for b, j in enumerate(perm):
            expect = M.endo[i][j] if M.types[i] == M.types[j] else {}
            if _clean([[R.endo[a][b]]]) != _clean([[expect]]):
                graded = False
    total = M.trace()
    report.update(reassembled=graded, total_trace=total.to_json(), block_trace_sum=block_trace.to_json(),
                  trace_additive=total == block_trace,
                  triangular=triangularity_check(M)["triangular"])
    report["ok"] &= graded and total == block_trace
    return report


# -- geometric filtered modules ------------------------------------------------------------


def trivial_host(G):
    return FiniteExtension(G, [0], list(range(G.order)), G.name)


def chain_filtration(X, f):
    """Cellular chain modules of X as Z[G]-permutation modules, typed by isotropy class.

    Returns one FilteredModule per degree with f_# as endo.
    """
    G = X.group
    host = trivial_host(G)
    classes = conjugacy_classes_of_subgroups(G)

    def leq(a, b):
        # larger isotropy is higher in the filtration
        return subconjugate(G, classes[a].representative, classes[b].representative)
    out = []
    for p in range(X.dim + 1):
        reps, where = [], {}
        for s in X.simplices[p]:
            if s in where:
                continue
            reps.append(s)
            for g in range(G.order):
                img, sg = X.act_simplex(g, s)
                where.setdefault(img, (len(reps) - 1, g, sg))
        n = len(reps)
        types = [classes.index(class_of(classes, X.isotropy(s))) for s in reps]
        stabs = [list(X.isotropy(s).elements) for s in reps]
        A = [[{} for _ in range(n)] for _ in range(n)]
        for i, e in enumerate(reps):
            for t, c in f.cellular_image(e).items():
                j, g, sg = where[t]
                add_term(A[i][j], g, c * sg)
        labels = [",".join(map(str, s)) for s in reps]
        out.append(FilteredModule(host, types, leq, stabs, A, labels))
    return out, classes


def type_block_report(X, f):
    """Total trace vs sum of type-block traces, per degree and in total.

    Also compares |H| times the identity coefficient of each type block with
    the Burnside coefficient of the relative Weyl-group Lefschetz number.
    """
    from .burnside import lefschetz_burnside_class
    mods, classes = chain_filtration(X, f)
    rep = {"degrees": [], "ok": True}
    per_type = {}
    for p, M in enumerate(mods):
        r = splitting_roundtrip(M)
        tri = triangularity_check(M)
        rep["degrees"].append({"degree": p, "trace_additive": r["trace_additive"],
                               "triangular": tri["triangular"], "roundtrip": r["ok"]})
        rep["ok"] &= r["trace_additive"] and tri["triangular"] and r["ok"]
        for t in M.type_list():
            tr = split(M, t).trace()
            per_type[t] = per_type.get(t, 0) + (-1) ** p * tr.terms.get(0, 0)
    if X.is_admissible():
        lr = lefschetz_burnside_class(X, f)
        scaled = {classes[t].label: v * classes[t].order for t, v in per_type.items() if v}
        rep["burnside"] = lr.to_json()
        rep["type_traces"] = {k: _num(v) for k, v in scaled.items()}
        rep["burnside_match"] = {k: Fraction(v) for k, v in lr.to_json().items()} == scaled
        rep["ok"] &= rep["burnside_match"]
    return rep


def _num(v):
    v = Fraction(v)
    return int(v) if v.denominator == 1 else str(v)


# -- component decomposition ----------------------------------------------------------------


class PhiStructure:
    """Cycle C -> f(C) -> ... -> f^l(C) = g_C C of relative chain maps, closed by g_C^-1."""

    def __init__(self, hclass, components, steps, closing, g):
        self.hclass = hclass
        self.components = components
        self.steps = steps          # per step: per degree integer matrix (column convention)
        self.closing = closing      # per degree: square matrix on the first component's cells
        self.g = g

    @property
    def length(self):
        return len(self.components)

    def composite_trace(self):
        """Lefschetz number of the closing composite."""
        total = 0
        for p, M in enumerate(self.closing):
            total += (-1) ** p * sum(M[i][i] for i in range(len(M)))
        return total

    def to_json(self):
        return {"class": self.hclass, "cycle": self.components, "length": self.length,
                "g_C": self.g, "composite_trace": self.composite_trace()}


def _relative_cells(F, cid):
    cells = F.regular_simplices(cid)
    top = max((len(s) for s in cells), default=0)
    return [sorted(s for s in cells if len(s) == p + 1) for p in range(top)]


def _step_matrices(f, src, dst, translate=None):
    """Integer matrices of f_# from the cells src to dst (optionally moved by translate)."""
    mats = []
    for p in range(max(len(src), len(dst))):
        a = src[p] if p < len(src) else []
        b = dst[p] if p < len(dst) else []
        pos = {s: i for i, s in enumerate(b)}
        M = [[0] * len(a) for _ in b]
        for j, e in enumerate(a):
            for t, c in f.cellular_image(e).items():
                sg = 1
                if translate is not None:
                    t, sg = translate(t)
                i = pos.get(t)
                if i is not None:
                    M[i][j] += c * sg
        mats.append(M)
    return mats


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]) if B else 0)]
            for i in range(len(A))]


def split_components(X, f, analysis=None):
    A = analysis or Analysis(X, f)
    G = X.group
    out = []
    for entry in component_dynamics(X, f, A):
        hc = next(c for c in A.classes if c.label == entry["class"])
        F = A.fixed[hc.label]
        cid = entry["component"]
        if entry["status"] == "transient":
            cells = _relative_cells(F, cid)
            out.append({"class": hc.label, "component": cid, "status": "transient",
                        "height": entry["height"], "ranks": [len(c) for c in cells]})
            continue
        l = entry["length"]
        g = entry["g_C_element"]
        gi = G.inv(g)
        cycle = [cid]
        v = cid
        for _ in range(l - 1):
            v = F.component_of[_image(f, v)]
            cycle.append(v)
        cells = [_relative_cells(F, c) for c in cycle]
        steps = [_step_matrices(f, cells[k], cells[k + 1]) for k in range(l - 1)]
        steps.append(_step_matrices(f, cells[-1], cells[0],
                                    translate=lambda t: X.act_simplex(gi, t)))
        closing = []
        for p in range(len(cells[0])):
            M = None
            for st in steps:
                S = st[p] if p < len(st) else []
                M = S if M is None else _matmul(S, M)
            closing.append(M)
        phi = PhiStructure(hc.label, cycle, steps, closing, g)
        item = {"class": hc.label, "component": cid, "status": "recurrent", "structure": phi}
        item.update(phi.to_json())
        out.append(item)
    return out


def _image(f, v):
    return f.images[f.target_vertex_in_source(v)]


def iterate_check(X, f, item):
    """For a simplicial self-map: trace of the closing composite vs the map g_C^-1 f^l directly."""
    if f.subdivided:
        raise SplittingError("iterate check needs a simplicial self-map")
    G = X.group
    gi = G.inv(item["g_C"])
    l = item["length"]
    imgs = []
    for v in range(X.n_vertices):
        w = v
        for _ in range(l):
            w = f.images[w]
        imgs.append(X.act(gi, w))
    h = EquivariantMap(X, imgs)
    hc = next(c for c in conjugacy_classes_of_subgroups(G) if c.label == item["class"])
    F = FixedSubcomplex(X, hc.representative)
    cells = _relative_cells(F, item["component"])
    direct = 0
    for p, mats in enumerate(_step_matrices(h, cells, cells)):
        direct += (-1) ** p * sum(mats[i][i] for i in range(len(mats)))
    return direct, item["structure"].composite_trace()


# -- random filtered modules -------------------------------------------------------------------


def random_poset(rng, k):
    """Random partial order on 0..k-1 refining the natural order."""
    rel = {(a, b) for a in range(k) for b in range(a + 1, k) if rng.random() < 0.5}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return lambda a, b: a == b or (a, b) in rel


def random_filtered_module(rng, host=None, rank=None, types=3):
    host = host or rng.choice(standard_extensions())
    n = rank or rng.randint(1, 6)
    leq = random_poset(rng, types)
    ty = sorted(rng.randrange(types) for _ in range(n))
    rng.shuffle(ty)
    stabs = random_finite_subgroups(rng, host, n)
    els = list(host.elements())
    A = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if not leq(ty[i], ty[j]):
                continue
            x = random_element(rng, host, els)
            y = {}
            for h in stabs[i]:
                for g, c in x.items():
                    add_term(y, host.mul(host.phi(h), g), c)
            z = {}
            for k in stabs[j]:
                for g, c in y.items():
                    add_term(z, host.mul(g, k), c)
            A[i][j] = z
    return FilteredModule(host, ty, leq, stabs, A, [f"b{i}" for i in range(n)])


def roundtrip_suite(count=50, seed=0):
    rng = random.Random(seed)
    results = []
    for _ in range(count):
        M = random_filtered_module(rng)
        results.append(splitting_roundtrip(M))
    return {"checked": len(results), "failures": sum(not r["ok"] for r in results),
            "ok": all(r["ok"] for r in results)}
