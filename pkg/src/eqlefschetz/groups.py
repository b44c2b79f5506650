"""Finite permutation groups, subgroup lattices and G-set morphisms.

Elements are stored as permutation tuples (0-based image arrays) and
addressed by their index in the lexicographically sorted element list.
The identity is always index 0.  Products follow function composition:
``mul(a, b)`` applies ``b`` first, then ``a``.
"""

from __future__ import annotations

import json
from collections import deque
from itertools import combinations


class GroupError(Exception):
    pass


class GroupTooLarge(GroupError):
    pass


DEFAULT_BOUND = 512


def compose(p, q):
    """p after q."""
    return tuple(p[i] for i in q)


def invert(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_permutation(p, n):
    return len(p) == n and sorted(p) == list(range(n))


class FiniteGroup:
    """A permutation group given by generators."""

    def __init__(self, degree, generators, name="G", generator_names=None):
        self.degree = int(degree)
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if not is_permutation(g, self.degree):
                raise GroupError(f"generator {list(g)} is not a permutation of {self.degree} points")
            gens.append(g)
        self.generators = gens
        self.name = name
        if generator_names is None:
            generator_names = [f"g{i}" for i in range(len(gens))]
        if len(generator_names) != len(gens):
            raise GroupError("generator_names length mismatch")
        self.generator_names = list(generator_names)
        self._elements = None
        self._index = None
        self._table = None
        self._inv = None
        self._words = None

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    # -- materialization

    def _materialize(self):
        ident = tuple(range(self.degree))
        seen = {ident}
        todo = [ident]
        while todo:
            nxt = []
            for x in todo:
                for g in self.generators:
                    y = compose(g, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            todo = nxt
        self._elements = sorted(seen)
        self._index = {p: i for i, p in enumerate(self._elements)}

    @property
    def elements(self):
        if self._elements is None:
            self._materialize()
        return self._elements

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return self.order

    def index(self, perm):
        if self._index is None:
            self._materialize()
        return self._index[tuple(perm)]

    def perm(self, i):
        return self.elements[i]

    @property
    def identity(self):
        return 0

    def generator_indices(self):
        return [self.index(g) for g in self.generators]

    def mul(self, a, b):
        t = self._table
        if t is None:
            t = self.table()
        return t[a][b]

    def table(self):
        if self._table is None:
            els = self.elements
            idx = self._index
            self._table = [[idx[compose(p, q)] for q in els] for p in els]
        return self._table

    def inv(self, a):
        if self._inv is None:
            idx = {p: i for i, p in enumerate(self.elements)}
            self._inv = [idx[invert(p)] for p in self.elements]
        return self._inv[a]

    def conj(self, g, h):
        """g h g^-1"""
        return self.mul(self.mul(g, h), self.inv(g))

    def words(self):
        """Shortest generator word (list of generator positions) for every element."""
        if self._words is None:
            gens = self.generator_indices()
            words = {0: []}
            queue = deque([0])
            while queue:
                x = queue.popleft()
                for k, g in enumerate(gens):
                    y = self.mul(g, x)
                    if y not in words:
                        words[y] = [k] + words[x]
                        queue.append(y)
            self._words = [words[i] for i in range(self.order)]
        return self._words

    def element_order(self, a):
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self):
        gens = self.generator_indices()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def whole(self):
        return Subgroup(self, range(self.order))

    def trivial(self):
        return Subgroup(self, [0])

    def closure(self, gens):
        """Subgroup generated by element indices."""
        elems = {0}
        todo = [0]
        gens = list(gens)
        while todo:
            nxt = []
            for x in todo:
                for g in gens:
                    y = self.mul(g, x)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            todo = nxt
        return Subgroup(self, elems)

    def to_json(self):
        return {"name": self.name, "degree": self.degree,
                "generators": [list(g) for g in self.generators],
                "generator_names": list(self.generator_names)}


def trivial_group():
    return FiniteGroup(1, [], name="1")


def group_from_json(data):
    try:
        return FiniteGroup(data["degree"], data.get("generators", []), name=data.get("name", "G"),
                           generator_names=data.get("generator_names"))
    except KeyError as exc:
        raise GroupError(f"group file missing field {exc}") from None


def load_group(path):
    with open(path) as fh:
        return group_from_json(json.load(fh))


class Subgroup:
    """Subgroup of a FiniteGroup, stored as a sorted tuple of element indices."""

    def __init__(self, parent, elements):
        self.parent = parent
        self.elements = tuple(sorted(set(elements)))
        self._set = frozenset(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self._set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other):
        return self._set <= other._set

    def __repr__(self):
        return f"Subgroup(order={self.order}, {list(self.elements)})"

    def is_closed(self):
        G = self.parent
        if 0 not in self:
            return False
        return all(G.mul(a, b) in self for a in self.elements for b in self.elements)

    def conjugate(self, g):
        """g H g^-1"""
        G = self.parent
        return Subgroup(G, (G.conj(g, h) for h in self.elements))

    def index(self):
        return self.parent.order // self.order

    def generators(self):
        """Small generating set, chosen greedily in element order."""
        G = self.parent
        gens = []
        cur = {0}
        for h in self.elements:
            if h not in cur:
                gens.append(h)
                cur = set(G.closure(gens).elements)
        return gens

    def as_group(self, name=None):
        """Materialize as a permutation group on the parent's points."""
        G = self.parent
        gens = [G.perm(g) for g in self.generators()]
        return FiniteGroup(G.degree, gens, name=name or f"{G.name}.sub{self.order}")


def all_subgroups(G, bound=DEFAULT_BOUND):
    """Every subgroup once, sorted by (order, elements)."""
    if G.order > bound:
        raise GroupTooLarge(f"|G| = {G.order} exceeds bound {bound}")
    cyclic = {}
    for g in range(G.order):
        c = G.closure([g])
        cyclic.setdefault(c.elements, (c, g))
    found = {key: sub for key, (sub, _) in cyclic.items()}
    cyc_gens = sorted(g for _, g in cyclic.values())
    frontier = list(found.values())
    while frontier:
        nxt = []
        for H in frontier:
            for g in cyc_gens:
                if g in H:
                    continue
                J = G.closure(list(H.generators()) + [g])
                if J.elements not in found:
                    found[J.elements] = J
                    nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, s.elements))


def subgroups_bruteforce(G):
    """Oracle: all subsets that are closed under products (tiny groups only)."""
    n = G.order
    if n > 12:
        raise GroupTooLarge("brute-force enumeration limited to order 12")
    others = list(range(1, n))
    out = []
    for r in range(0, n):
        for combo in combinations(others, r):
            s = Subgroup(G, (0,) + combo)
            if n % s.order == 0 and s.is_closed():
                out.append(s)
    return sorted(out, key=lambda s: (s.order, s.elements))


def normalizer(G, H):
    return Subgroup(G, [g for g in range(G.order) if H.conjugate(g) == H])


class SubgroupConjClass:
    def __init__(self, representative, members, label):
        self.representative = representative
        self.members = members
        self.label = label

    @property
    def order(self):
        return self.representative.order

    def __repr__(self):
        return f"({self.label})"

    def contains(self, H):
        return any(H == M for M in self.members)


def _class_labels(reps):
    by_order = {}
    for r in reps:
        by_order.setdefault(r.order, []).append(r)
    labels = {}
    for order, rs in by_order.items():
        if len(rs) == 1:
            labels[rs[0].elements] = str(order)
        else:
            for k, r in enumerate(rs):
                labels[r.elements] = f"{order}{_suffix(k)}"
    return labels


def _suffix(k):
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = chr(ord("a") + r) + s
    return s


def conjugacy_classes_of_subgroups(G, bound=DEFAULT_BOUND):
    """Conjugacy classes sorted by (order, canonical representative).

    Sorting by order is a linear extension of the subconjugacy order.
    """
    subs = all_subgroups(G, bound)
    seen = set()
    classes = []
    for H in subs:
        if H.elements in seen:
            continue
        members = {}
        for g in range(G.order):
            K = H.conjugate(g)
            members.setdefault(K.elements, K)
        seen.update(members)
        ms = sorted(members.values(), key=lambda s: s.elements)
        classes.append(ms)
    classes.sort(key=lambda ms: (ms[0].order, ms[0].elements))
    labels = _class_labels([ms[0] for ms in classes])
    return [SubgroupConjClass(ms[0], ms, labels[ms[0].elements]) for ms in classes]


def subconjugate(G, H, K):
    """True if some g^-1 H g lies in K."""
    if K.order % H.order:
        return False
    return any(H.conjugate(g) <= K for g in range(G.order))


def class_of(classes, H):
    for c in classes:
        if c.order == H.order and c.contains(H):
            return c
    raise GroupError("subgroup not found among classes")


def conjugator(G, H, K):
    """Some g with g H g^-1 == K, or None."""
    for g in range(G.order):
        if H.conjugate(g) == K:
            return g
    return None


class WeylGroup(FiniteGroup):
    """N_G(H)/H realized by its left action on the cosets nH.

    ``coset_rep[w]`` is the smallest element of G in the coset labelled w.
    """

    def __init__(self, G, H):
        self.ambient = G
        self.subgroup = H
        self.normalizer = normalizer(G, H)
        cosets = []
        rep_of = {}
        for n in self.normalizer.elements:
            if n in rep_of:
                continue
            coset = sorted(G.mul(n, h) for h in H.elements)
            for x in coset:
                rep_of[x] = len(cosets)
            cosets.append(coset)
        self._cosets = cosets
        self._coset_of = rep_of
        m = len(cosets)
        gens = []
        for n in self.normalizer.generators():
            gens.append(tuple(rep_of[G.mul(n, c[0])] for c in cosets))
        super().__init__(m, gens, name=f"W({G.name})")
        # element of the quotient <-> coset
        self._elem_of_coset = {}
        for ci, coset in enumerate(cosets):
            n = coset[0]
            p = tuple(rep_of[G.mul(n, c[0])] for c in cosets)
            self._elem_of_coset[ci] = self.index(p)
        self.coset_rep = [None] * self.order
        for ci, coset in enumerate(cosets):
            self.coset_rep[self._elem_of_coset[ci]] = coset[0]

    def project(self, g):
        """Image of g in N_G(H) under N_G(H) -> WH."""
        return self._elem_of_coset[self._coset_of[g]]

    def lift(self, w):
        return self.coset_rep[w]


def weyl_group(G, H):
    return WeylGroup(G, H)


class GSetMap:
    """The G-map G/H -> G/K, gH -> ... sending 1H to cK, with c^-1 H c inside K."""

    def __init__(self, source, target, coset):
        self.source = source
        self.target = target
        self.coset = coset

    def __repr__(self):
        return f"GSetMap(1H -> {self.coset}K)"


def gset_morphisms(H, K):
    G = H.parent
    out = []
    seen = set()
    for c in range(G.order):
        ci = G.inv(c)
        if all(G.mul(G.mul(ci, h), c) in K for h in H.elements):
            key = min(G.mul(c, k) for k in K.elements)
            if key not in seen:
                seen.add(key)
                out.append(GSetMap(H, K, key))
    out.sort(key=lambda m: m.coset)
    return out


# -- small groups catalogue -------------------------------------------------


def cyclic_group(n):
    if n == 1:
        return FiniteGroup(1, [], name="C1")
    return FiniteGroup(n, [tuple((i + 1) % n for i in range(n))], name=f"C{n}")


def dihedral_group(n):
    """Symmetries of an n-gon, order 2n (n >= 3)."""
    r = tuple((i + 1) % n for i in range(n))
    s = tuple((-i) % n for i in range(n))
    return FiniteGroup(n, [r, s], name=f"D{2 * n}")


def direct_product(G1, G2, name=None):
    d1 = G1.degree
    gens = []
    for g in G1.generators:
        gens.append(tuple(g) + tuple(range(d1, d1 + G2.degree)))
    for g in G2.generators:
        gens.append(tuple(range(d1)) + tuple(x + d1 for x in g))
    return FiniteGroup(d1 + G2.degree, gens, name=name or f"{G1.name}x{G2.name}")


def regular_group(elements, mul, gens, name):
    """Left-regular permutation group of an abstract group."""
    idx = {e: i for i, e in enumerate(elements)}
    perms = [tuple(idx[mul(g, x)] for x in elements) for g in gens]
    return FiniteGroup(len(elements), perms, name=name)


def quaternion_group():
    # elements (sign, unit) with unit in 1,i,j,k
    table = {("1", u): (1, u) for u in "1ijk"}
    table.update({(u, "1"): (1, u) for u in "1ijk"})
    for a, b, s, c in [("i", "i", -1, "1"), ("j", "j", -1, "1"), ("k", "k", -1, "1"),
                       ("i", "j", 1, "k"), ("j", "i", -1, "k"), ("j", "k", 1, "i"),
                       ("k", "j", -1, "i"), ("k", "i", 1, "j"), ("i", "k", -1, "j")]:
        table[(a, b)] = (s, c)
    els = [(s, u) for s in (1, -1) for u in "1ijk"]

    def mul(x, y):
        s, c = table[(x[1], y[1])]
        return (x[0] * y[0] * s, c)

    return regular_group(els, mul, [(1, "i"), (1, "j")], "Q8")


def dicyclic12():
    # a^6 = 1, x^2 = a^3, x a x^-1 = a^-1; elements a^k x^e
    els = [(k, e) for e in (0, 1) for k in range(6)]

    def mul(p, q):
        k1, e1 = p
        k2, e2 = q
        if e1 == 0:
            return ((k1 + k2) % 6, e2)
        # a^k1 x a^k2 x^e2 = a^(k1-k2) x x^e2
        k = (k1 - k2) % 6
        if e2 == 0:
            return (k, 1)
        return ((k + 3) % 6, 0)

    return regular_group(els, mul, [(1, 0), (0, 1)], "Dic12")


def alternating4():
    return FiniteGroup(4, [(1, 2, 0, 3), (1, 0, 3, 2)], name="A4")


def small_groups(max_order=12):
    """One permutation model per isomorphism type of order <= max_order (max 12)."""
    if max_order > 12:
        raise GroupError("catalogue covers orders up to 12")
    C = cyclic_group
    out = [C(1), C(2), C(3), C(4), direct_product(C(2), C(2), "C2xC2"), C(5), C(6),
           dihedral_group(3), C(7), C(8), direct_product(C(4), C(2), "C4xC2"),
           direct_product(direct_product(C(2), C(2)), C(2), "C2^3"), dihedral_group(4),
           quaternion_group(), C(9), direct_product(C(3), C(3), "C3xC3"), C(10),
           dihedral_group(5), C(11), C(12), direct_product(C(6), C(2), "C6xC2"),
           alternating4(), dihedral_group(6), dicyclic12()]
    out[7].name = "S3"
    return [g for g in out if g.order <= max_order]
