"""Group rings over Z/Q, twisted conjugacy classes and the twisted trace.

A *host* is a group extension 1 -> pi -> G -> W -> 1 with an endomorphism
phi that restricts to pi and induces the identity on W.  Hosts expose

    identity, mul(a, b), inv(a), phi(a), in_pi(a), class_key(a), class_label(key),
    sort_key(a)

Free modules are row vectors over RG; a phi-twisted endomorphism is
``x -> phi(x) A`` for a square matrix A of group-ring elements, and the
boundary is ``x -> x D``.  Permutation modules R[G/S] are handled through
the idempotent e_S = |S|^-1 sum(S) over Q.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .groups import FiniteGroup, Subgroup, cyclic_group, direct_product
from .linalg import integer_inverse, smith_normal_form, diagonal


class TwistError(Exception):
    pass


class NonInjectiveWeyl(TwistError):
    pass


# -- group ring arithmetic ---------------------------------------------------


def gr(*terms):
    """Group-ring element from (element, coeff) pairs."""
    out = {}
    for g, c in terms:
        add_term(out, g, c)
    return out


def add_term(x, g, c):
    if c:
        v = x.get(g, 0) + c
        if v:
            x[g] = v
        else:
            x.pop(g, None)


def gr_add(a, b, scale=1):
    out = dict(a)
    for g, c in b.items():
        add_term(out, g, scale * c)
    return out


def gr_scale(a, r):
    if not r:
        return {}
    return {g: r * c for g, c in a.items()}


def gr_mul(host, a, b):
    out = {}
    for g, c in a.items():
        for h, d in b.items():
            add_term(out, host.mul(g, h), c * d)
    return out


def gr_phi(host, a):
    out = {}
    for g, c in a.items():
        add_term(out, host.phi(g), c)
    return out


def gr_map(fn, a):
    out = {}
    for g, c in a.items():
        add_term(out, fn(g), c)
    return out


def idempotent(host, stab):
    n = len(stab)
    return {h: Fraction(1, n) for h in stab}


def mat_mul(host, A, B):
    n = len(A)
    m = len(B[0]) if B else 0
    out = [[{} for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for k, a in enumerate(A[i]):
            if not a:
                continue
            for j in range(m):
                b = B[k][j]
                if b:
                    out[i][j] = gr_add(out[i][j], gr_mul(host, a, b))
    return out


def mat_phi(host, A):
    return [[gr_phi(host, x) for x in row] for row in A]


def mat_add(A, B, ra=1, rb=1):
    return [[gr_add(gr_scale(a, ra), b, rb) for a, b in zip(ra_, rb_)] for ra_, rb_ in zip(A, B)]


def zero_matrix(n, m):
    return [[{} for _ in range(m)] for _ in range(n)]


# -- class sums --------------------------------------------------------------


class TwistedClassSum:
    """Finitely supported map canonical class key -> rational."""

    def __init__(self, terms=None, labeler=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self.labeler = labeler

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TwistedClassSum(out, self.labeler or other.labeler)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, r):
        return TwistedClassSum({k: r * v for k, v in self.terms.items()}, self.labeler)

    def __eq__(self, other):
        if isinstance(other, TwistedClassSum):
            return self.terms == other.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def augmentation(self):
        return sum(self.terms.values(), Fraction(0))

    def support(self):
        return sorted(self.terms)

    def label(self, key):
        return self.labeler(key) if self.labeler else str(key)

    def to_json(self):
        return {self.label(k): _num(v) for k, v in sorted(self.terms.items())}

    def __repr__(self):
        return f"TwistedClassSum({self.to_json()})"


def _num(v):
    v = Fraction(v)
    return int(v) if v.denominator == 1 else str(v)


# -- trace ---------------------------------------------------------------------


def trace_element(host, x):
    """sum_{g in pi} r_g * class(g)."""
    out = {}
    for g, c in x.items():
        if host.in_pi(g):
            k = host.class_key(g)
            out[k] = out.get(k, 0) + c
    return TwistedClassSum(out, host.class_label)


def trace(A, host, stabilizers=None):
    """Trace of a phi-twisted endomorphism given by matrix A.

    ``stabilizers[i]`` (a list of host elements) marks basis i as the
    permutation module R[G/S_i]; its diagonal entry is multiplied by e_S.
    """
    total = TwistedClassSum({}, host.class_label)
    for i in range(len(A)):
        a = A[i][i]
        if stabilizers is not None and len(stabilizers[i]) > 1:
            a = gr_mul(host, a, idempotent(host, stabilizers[i]))
        total = total + trace_element(host, a)
    return total


class TwistedChainEndo:
    """Chain complex of permutation modules with a phi-twisted chain endomorphism.

    ``boundaries[p]`` has shape ranks[p] x ranks[p-1]; ``endos[p]`` is square.
    ``stabilizers[p][i]`` is the (finite) isotropy of basis element i.
    """

    def __init__(self, host, ranks, boundaries, endos, stabilizers=None):
        self.host = host
        self.ranks = list(ranks)
        self.boundaries = boundaries
        self.endos = endos
        ident = host.identity
        self.stabilizers = stabilizers or [[[ident] for _ in range(r)] for r in ranks]

    def is_free(self):
        return all(len(s) == 1 for st in self.stabilizers for s in st)

    def coset_key(self, p, i, g):
        st = self.stabilizers[p][i]
        if len(st) == 1:
            return g
        return min((self.host.mul(g, h) for h in st), key=self.host.sort_key)

    def expand(self, p, row):
        """Row of group-ring entries -> chain of cells {(i, coset key): coeff}."""
        out = {}
        for i, x in enumerate(row):
            for g, c in x.items():
                k = (i, self.coset_key(p, i, g))
                out[k] = out.get(k, 0) + c
        return {k: v for k, v in out.items() if v}

    def check(self):
        """d o d == 0 and f o d == d o f at the level of cells."""
        H = self.host
        for p in range(2, len(self.ranks)):
            DD = mat_mul(H, self.boundaries[p], self.boundaries[p - 1])
            for row in DD:
                if self.expand(p - 2, row):
                    return False
        for p in range(1, len(self.ranks)):
            lhs = mat_mul(H, mat_phi(H, self.boundaries[p]), self.endos[p - 1])
            rhs = mat_mul(H, self.endos[p], self.boundaries[p])
            for i in range(self.ranks[p]):
                if self.expand(p - 1, lhs[i]) != self.expand(p - 1, rhs[i]):
                    return False
        return True


def refined_lefschetz(C, ring="z"):
    """sum_p (-1)^p tr(C_p(f)) in R pi_phi'."""
    if ring == "z" and not C.is_free():
        raise TwistError("non-free chain modules need ring='q'")
    total = TwistedClassSum({}, C.host.class_label)
    for p, A in enumerate(C.endos):
        t = trace(A, C.host, C.stabilizers[p])
        total = total + (t if p % 2 == 0 else t.scaled(-1))
    if ring == "q":
        total = TwistedClassSum({k: Fraction(v) for k, v in total.terms.items()}, total.labeler)
    return total


def refined_incidence(host, i, stab, image_terms):
    """inc_phi(f, e_i): image_terms are (cell index, element g, coeff) meaning coeff * g.e_cell."""
    out = {}
    for j, g, c in image_terms:
        if j != i:
            continue
        alpha = None
        for h in stab:
            x = host.mul(g, h)
            if host.in_pi(x):
                alpha = x
                break
        if alpha is None:
            continue
        k = host.class_key(alpha)
        out[k] = out.get(k, 0) + c
    return out


def incidence_lefschetz(host, cells):
    """sum_p (-1)^p sum_{orbits} |G_e|^-1 inc_phi(f, e).

    ``cells[p]`` lists (stabilizer elements, image_terms) per orbit representative.
    """
    total = {}
    for p, lst in enumerate(cells):
        for i, (stab, terms) in enumerate(lst):
            w = Fraction((-1) ** p, len(stab))
            for k, c in refined_incidence(host, i, stab, terms).items():
                total[k] = total.get(k, 0) + w * c
    return TwistedClassSum(total, host.class_label)


def incidence_data(C):
    """Read refined incidence input from a TwistedChainEndo."""
    cells = []
    for p, A in enumerate(C.endos):
        lst = []
        for i in range(len(A)):
            terms = [(j, g, c) for j, x in enumerate(A[i]) for g, c in x.items()]
            lst.append((C.stabilizers[p][i], terms))
        cells.append(lst)
    return cells


# -- class reducers --------------------------------------------------------------


class UnionFindClasses:
    """Twisted classes of a finite pi by closure under alpha -> phi(g) alpha g^-1."""

    def __init__(self, elements, moves, sort_key=lambda x: x):
        parent = {x: x for x in elements}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x in elements:
            for mv in moves:
                y = mv(x)
                rx, ry = find(x), find(y)
                if rx != ry:
                    if sort_key(ry) < sort_key(rx):
                        rx, ry = ry, rx
                    parent[ry] = rx
        self.key_of = {x: find(x) for x in elements}
        # roots are minimal only if unions kept the minimum; enforce
        best = {}
        for x, r in self.key_of.items():
            if r not in best or sort_key(x) < sort_key(best[r]):
                best[r] = x
        self.key_of = {x: best[self.key_of[x]] for x in elements}
        self.classes = sorted(set(self.key_of.values()), key=sort_key)

    def key(self, x):
        return self.key_of[x]

    def __len__(self):
        return len(self.classes)


def _free_order(c):
    return (abs(c), c < 0)


class AbelianClasses:
    """Twisted classes of pi = Z^r: coker(M - I) modulo a finite affine action.

    ``M`` is phi on column vectors; ``affine`` lists (A, delta) acting by
    alpha -> A alpha + delta (the Weyl part).  Keys are SNF coordinates,
    minimized over the orbit in the order 0 < 1 < -1 < 2 < -2 ... on free
    coordinates.
    """

    def __init__(self, M, affine=()):
        r = len(M)
        self.rank = r
        D = [[M[i][j] - (i == j) for j in range(r)] for i in range(r)]
        if r:
            S, U, V = smith_normal_form(D)
            self.d = diagonal(S)
            self.U = U
            self.Uinv = integer_inverse(U)
        else:
            self.d, self.U, self.Uinv = [], [], []
        self.affine = list(affine)
        self._cache = {}

    def coords(self, alpha):
        y = [sum(self.U[i][j] * alpha[j] for j in range(self.rank)) for i in range(self.rank)]
        out = []
        for i, yi in enumerate(y):
            di = self.d[i]
            if di == 1:
                continue
            out.append(yi % di if di else yi)
        return tuple(out)

    def lift(self, key):
        y = []
        it = iter(key)
        for di in self.d:
            y.append(0 if di == 1 else next(it))
        return tuple(sum(self.Uinv[i][j] * y[j] for j in range(self.rank)) for i in range(self.rank))

    def _order(self, key):
        out = []
        ks = iter(key)
        for di in self.d:
            if di == 1:
                continue
            c = next(ks)
            out.append((0, c) if di else _free_order(c))
        return tuple(out)

    def key(self, alpha):
        c0 = self.coords(alpha)
        if c0 in self._cache:
            return self._cache[c0]
        orbit = {c0}
        todo = [c0]
        while todo:
            c = todo.pop()
            a = self.lift(c)
            for A, delta in self.affine:
                b = tuple(sum(A[i][j] * a[j] for j in range(self.rank)) + delta[i] for i in range(self.rank))
                cb = self.coords(b)
                if cb not in orbit:
                    orbit.add(cb)
                    todo.append(cb)
                    if len(orbit) > 100000:
                        raise TwistError("Weyl orbit on the cokernel is not finite")
        best = min(orbit, key=self._order)
        for c in orbit:
            self._cache[c] = best
        return best

    def count(self):
        """Number of classes if finite (no free coordinates), else None."""
        if any(di == 0 for di in self.d):
            return None
        seen = set()
        import itertools
        ranges = [range(di) for di in self.d if di != 1]
        for c in itertools.product(*ranges):
            seen.add(self.key(self.lift(c)))
        return len(seen)


# -- finite extensions -----------------------------------------------------------


class FiniteExtension:
    """Host built from a finite permutation group, a normal subgroup pi and phi."""

    def __init__(self, G, pi, phi, name=None):
        self.G = G
        self.pi = pi if isinstance(pi, Subgroup) else Subgroup(G, pi)
        self.phi_table = list(phi)
        self.name = name or G.name
        self.identity = 0
        self._check()
        moves = []
        gens = G.generator_indices()
        for g in gens:
            pg = self.phi_table[g]
            gi = G.inv(g)
            moves.append(lambda a, pg=pg, gi=gi: G.mul(G.mul(pg, a), gi))
        self.classes = UnionFindClasses(list(self.pi.elements), moves)

    def _check(self):
        G, phi = self.G, self.phi_table
        for a in range(G.order):
            for b in G.generator_indices():
                if phi[G.mul(a, b)] != G.mul(phi[a], phi[b]):
                    raise TwistError("phi is not a homomorphism")
        if any(phi[a] not in self.pi for a in self.pi.elements):
            raise TwistError("phi does not restrict to pi")
        for a in range(G.order):
            if G.mul(phi[a], G.inv(a)) not in self.pi:
                raise TwistError("phi does not induce the identity on W")
        for g in range(G.order):
            if self.pi.conjugate(g) != self.pi:
                raise TwistError("pi is not normal")

    def mul(self, a, b):
        return self.G.mul(a, b)

    def inv(self, a):
        return self.G.inv(a)

    def phi(self, a):
        return self.phi_table[a]

    def in_pi(self, a):
        return a in self.pi

    def weyl(self, a):
        return min(self.G.mul(a, p) for p in self.pi.elements)

    def class_key(self, a):
        return self.classes.key(a)

    def class_label(self, key):
        return f"g{key}"

    def sort_key(self, a):
        return a

    @property
    def order(self):
        return self.G.order

    def elements(self):
        return range(self.G.order)


def phi_from_images(G, images):
    """Endomorphism table from generator images (element indices)."""
    words = G.words()
    gens = G.generator_indices()
    table = []
    for g in range(G.order):
        x = 0
        for k in reversed(words[g]):
            x = G.mul(images[k], x)
        table.append(x)
    # sanity: must agree on generators
    for k, g in enumerate(gens):
        if table[g] != images[k]:
            raise TwistError("generator images do not define a homomorphism")
    return table


def inner_phi(G, c):
    return [G.conj(c, g) for g in range(G.order)]


def standard_extensions():
    """Small finite extensions used by the property suites."""
    from .groups import small_groups
    cat = {g.name: g for g in small_groups(12)}
    out = []
    V = cat["C2xC2"]
    # pi = first factor, phi(a, b) = (a + b, b)
    a, b = V.generator_indices()
    pi = V.closure([a])
    phi = phi_from_images(V, [a, V.mul(a, b)])
    out.append(FiniteExtension(V, pi, phi, "C2xC2/C2"))
    S3 = cat["S3"]
    C3 = next(c.representative for c in __import__("eqlefschetz.groups", fromlist=["x"]).conjugacy_classes_of_subgroups(S3) if c.order == 3)
    t = next(g for g in range(S3.order) if S3.element_order(g) == 2)
    out.append(FiniteExtension(S3, C3, inner_phi(S3, t), "S3/C3"))
    D8 = cat["D8"]
    r = next(g for g in range(D8.order) if D8.element_order(g) == 4)
    C4 = D8.closure([r])
    out.append(FiniteExtension(D8, C4, inner_phi(D8, r), "D8/C4"))
    C4g = cat["C4"]
    g = C4g.generator_indices()[0]
    out.append(FiniteExtension(C4g, C4g.whole(), phi_from_images(C4g, [C4g.mul(g, g)]), "C4 doubling"))
    return out


# -- homomorphisms of extensions ---------------------------------------------------


class ExtensionMap:
    """Homomorphism alpha: E -> F of extensions, commuting with phi."""

    def __init__(self, source, target, table):
        self.source = source
        self.target = target
        self.table = list(table)
        E, F = source, target
        for x in range(E.order):
            for y in E.G.generator_indices():
                if self.table[E.mul(x, y)] != F.mul(self.table[x], self.table[y]):
                    raise TwistError("alpha is not a homomorphism")
        for x in range(E.order):
            if self.table[E.phi(x)] != F.phi(self.table[x]):
                raise TwistError("alpha does not commute with phi")
        if any(not F.in_pi(self.table[p]) for p in E.pi.elements):
            raise TwistError("alpha does not map pi into the target kernel")

    def weyl_injective(self):
        E, F = self.source, self.target
        return all(E.in_pi(x) for x in range(E.order) if F.in_pi(self.table[x]))

    def __call__(self, x):
        return self.table[x]


def product_with_cyclic(E, m):
    """E -> E x C_m with pi x C_m as kernel and phi x id."""
    G = E.G
    K = direct_product(G, cyclic_group(m), name=f"{G.name}xC{m}")
    d = G.degree
    emb = []
    for g in range(G.order):
        emb.append(K.index(tuple(G.perm(g)) + tuple(range(d, d + m))))
    c = K.index(tuple(range(d)) + tuple(d + (i + 1) % m for i in range(m)))
    cyc = [K.index(tuple(range(d)) + tuple(d + (i + k) % m for i in range(m))) for k in range(m)]
    pi = set()
    for p in E.pi.elements:
        for z in cyc:
            pi.add(K.mul(emb[p], z))
    phi = [None] * K.order
    for g in range(G.order):
        for z in cyc:
            phi[K.mul(emb[g], z)] = K.mul(emb[E.phi(g)], z)
    F = FiniteExtension(K, Subgroup(K, pi), phi, f"{E.name}xC{m}")
    del c
    return ExtensionMap(E, F, emb)


def collapse_to_whole(E):
    """Identity map of G onto the extension with kernel all of G (Weyl part collapses)."""
    F = FiniteExtension(E.G, E.G.whole(), E.phi_table, f"{E.name}/all")
    return ExtensionMap(E, F, range(E.order))


def induce_matrix(alpha, A):
    if not alpha.weyl_injective():
        raise NonInjectiveWeyl("induction is only defined here for injective Weyl maps")
    return [[gr_map(alpha, x) for x in row] for row in A]


def induce_classes(alpha, t):
    F = alpha.target
    out = {}
    for k, v in t.terms.items():
        kk = F.class_key(alpha(k))
        out[kk] = out.get(kk, 0) + v
    return TwistedClassSum(out, F.class_label)


class SubExtension(FiniteExtension):
    """Restriction of a host to a subgroup H with pi <= H <= G."""

    def __init__(self, E, H):
        if not set(E.pi.elements) <= set(H.elements):
            raise TwistError("restriction needs pi inside H")
        self.parent = E
        self.H = H
        # realise H on its own element indices through the parent
        self.members = list(H.elements)
        self.G = E.G
        self.pi = E.pi
        self.phi_table = E.phi_table
        self.name = f"{E.name}|H"
        self.identity = 0
        if any(E.phi(h) not in H for h in self.members):
            raise TwistError("phi does not preserve H")
        moves = []
        for g in H.generators():
            pg, gi = E.phi(g), E.G.inv(g)
            moves.append(lambda a, pg=pg, gi=gi: E.G.mul(E.G.mul(pg, a), gi))
        self.classes = UnionFindClasses(list(self.pi.elements), moves)

    @property
    def order(self):
        return len(self.members)

    def elements(self):
        return self.members


def right_coset_reps(G, H):
    """Representatives s_k with G = disjoint union of H s_k."""
    reps = []
    seen = set()
    for g in range(G.order):
        if g in seen:
            continue
        reps.append(g)
        seen.update(G.mul(h, g) for h in H.elements)
    return reps


def restrict_matrix(E, H, A):
    """Matrix over RH of the restriction of x -> phi(x) A from RG to RH.

    Basis of RG^n over RH: s_k b_i for right coset reps s_k.
    """
    G = E.G
    reps = right_coset_reps(G, H)
    rep_index = {}
    for k, s in enumerate(reps):
        for h in H.elements:
            rep_index[G.mul(h, s)] = (k, h)
    n = len(A)
    m = len(reps)
    out = [[{} for _ in range(n * m)] for _ in range(n * m)]
    for i in range(n):
        for k, s in enumerate(reps):
            row = out[i * m + k]
            ps = E.phi(s)
            for j in range(n):
                for g, c in A[i][j].items():
                    x = G.mul(ps, g)
                    kk, h = rep_index[x]
                    add_term(row[j * m + kk], h, c)
    return out


def project_classes(E_sub, E, t):
    out = {}
    for k, v in t.terms.items():
        kk = E.class_key(k)
        out[kk] = out.get(kk, 0) + v
    return TwistedClassSum(out, E.class_label)


# -- random instances --------------------------------------------------------------


def random_element(rng, host, elements, k=3, lo=-3, hi=3, integer=True):
    out = {}
    for _ in range(rng.randint(0, k)):
        add_term(out, rng.choice(elements), rng.randint(lo, hi))
    return out


def random_matrix(rng, host, n, m, elements):
    return [[random_element(rng, host, elements) for _ in range(m)] for _ in range(n)]


def random_perm_endo(rng, E, stabs):
    """Twisted endo of a sum of permutation modules: rows invariant under phi(S_i)."""
    n = len(stabs)
    els = list(E.elements())
    A = []
    for i in range(n):
        row = []
        for j in range(n):
            x = random_element(rng, E, els)
            # average over phi(S_i) on the left and over S_j on the right
            y = {}
            for h in stabs[i]:
                for g, c in x.items():
                    add_term(y, E.mul(E.phi(h), g), c)
            z = {}
            for k in stabs[j]:
                for g, c in y.items():
                    add_term(z, E.mul(g, k), c)
            row.append(z)
        A.append(row)
    return A


def random_finite_subgroups(rng, E, count):
    """Subgroups meeting pi trivially, as lists of elements."""
    from .groups import all_subgroups
    subs = [S for S in all_subgroups(E.G) if all(x == 0 or x not in E.pi for x in S.elements)]
    return [list(rng.choice(subs).elements) for _ in range(count)]


def trace_identity_suite(instances=50, seed=0, extensions=None):
    """Check the six trace identities on random instances; returns a report dict."""
    rng = random.Random(seed)
    exts = extensions or standard_extensions()
    report = {str(k): {"checked": 0, "failures": []} for k in range(1, 7)}

    def record(k, ok, info):
        r = report[str(k)]
        r["checked"] += 1
        if not ok and len(r["failures"]) < 3:
            r["failures"].append(info)

    for t in range(instances):
        for E in exts:
            els = list(E.elements())
            n, m = rng.randint(1, 3), rng.randint(1, 3)
            # (1) tr(v o u) = tr(phi*(u) o v)
            U = random_matrix(rng, E, n, m, els)
            V = random_matrix(rng, E, m, n, els)
            lhs = trace(mat_mul(E, mat_phi(E, U), V), E)
            rhs = trace(mat_mul(E, V, U), E)
            record(1, lhs == rhs, (E.name, t))
            # (2) block additivity, one block a permutation module
            S = random_finite_subgroups(rng, E, 1)[0]
            stabs = [S] + [[0]] * n
            A = random_perm_endo(rng, E, stabs)
            whole = trace(A, E, stabs)
            b1 = trace([[A[0][0]]], E, [S])
            b2 = trace([row[1:] for row in A[1:]], E, stabs[1:])
            record(2, whole == b1 + b2, (E.name, t))
            # (3) linearity
            A1 = random_matrix(rng, E, n, n, els)
            A2 = random_matrix(rng, E, n, n, els)
            r1, r2 = rng.randint(-4, 4), rng.randint(-4, 4)
            comb = [[gr_add(gr_scale(a, r1), b, r2) for a, b in zip(x, y)] for x, y in zip(A1, A2)]
            record(3, trace(comb, E) == trace(A1, E).scaled(r1) + trace(A2, E).scaled(r2), (E.name, t))
            # (4) induction along an injective-Weyl map
            alpha = product_with_cyclic(E, rng.choice([2, 3]))
            lhs = trace(induce_matrix(alpha, A1), alpha.target)
            rhs = induce_classes(alpha, trace(A1, E))
            record(4, lhs == rhs, (E.name, t))
            # (5) restriction to pi <= H <= G
            Hs = [H for H in _intermediate(E)]
            H = rng.choice(Hs)
            sub = SubExtension(E, H)
            R = restrict_matrix(E, H, A1)
            lhs = project_classes(sub, E, trace(R, sub))
            rhs = trace(A1, E).scaled(E.G.order // H.order)
            record(5, lhs == rhs, (E.name, t))
            # (6) the R[G/H] formula against the idempotent route
            S = random_finite_subgroups(rng, E, 1)[0]
            A = random_perm_endo(rng, E, [S])
            via_idem = trace(A, E, [S])
            direct = perm_module_trace(E, S, coset_coefficients(E, S, A[0][0]))
            record(6, via_idem == direct, (E.name, t))
    report["ok"] = all(not r["failures"] for k, r in report.items() if k != "ok")
    return report


def _intermediate(E):
    from .groups import all_subgroups
    P = set(E.pi.elements)
    return [H for H in all_subgroups(E.G) if P <= set(H.elements)]


def coset_coefficients(E, S, a):
    """Coefficients r_{gS} of a (S-right-invariant) element a e_S written on cosets."""
    out = {}
    for g, c in gr_mul(E, a, idempotent(E, S)).items():
        key = min(E.mul(g, h) for h in S)
        out[key] = out.get(key, 0) + c
    # a e_S = sum_cosets r_{gS} * (|S|^-1 sum_{s} g s) so r = |S| * (coefficient of each element)
    return {k: v for k, v in out.items() if v}


def perm_module_trace(E, S, r):
    """|S|^-1 sum_{g in pi} r_{gS} g-bar with r given on canonical coset keys."""
    out = {}
    n = len(S)
    for g in E.pi.elements:
        key = min(E.mul(g, h) for h in S)
        c = r.get(key, 0)
        if c:
            k = E.class_key(g)
            out[k] = out.get(k, 0) + Fraction(c, n)
    return TwistedClassSum(out, E.class_label)


def tr_identity_perm_module(E, S):
    """Trace of the identity of R[G/S]."""
    return perm_module_trace(E, S, {min(S): 1})
