"""Burnside ring A(K): table of marks, character map, Lefschetz class, degree."""

from __future__ import annotations

from fractions import Fraction

from .groups import conjugacy_classes_of_subgroups, class_of, Subgroup, FiniteGroup
from .linalg import determinant, sign, solve_rational, matmul


class BurnsideError(Exception):
    pass


class NotInImage(BurnsideError):
    pass


class SingularOnStratum(BurnsideError):
    def __init__(self, msg, label=None):
        super().__init__(msg)
        self.label = label


class BurnsideRing:
    """Classes of subgroups of K with the table of marks, cached per group."""

    _cache = {}

    def __init__(self, K):
        self.group = K
        self.classes = conjugacy_classes_of_subgroups(K)
        self.labels = [c.label for c in self.classes]
        self.pos = {c.label: i for i, c in enumerate(self.classes)}
        n = len(self.classes)
        # marks[i][j] = |(K/L_i)^{H_j}|
        self.marks = [[self._mark(self.classes[i].representative, self.classes[j].representative)
                       for j in range(n)] for i in range(n)]

    @classmethod
    def of(cls, K):
        key = id(K)
        if key not in cls._cache or cls._cache[key].group is not K:
            cls._cache[key] = cls(K)
        return cls._cache[key]

    def _mark(self, L, H):
        K = self.group
        if L.order % H.order:
            return 0
        count = 0
        for k in range(K.order):
            ki = K.inv(k)
            if all(K.mul(K.mul(ki, h), k) in L for h in H.elements):
                count += 1
        return count // L.order

    def class_of(self, H):
        return class_of(self.classes, H)

    def basis(self, label):
        return BurnsideElement(self, {label: 1})

    def one(self):
        return self.basis(self.classes[-1].label)

    def zero(self):
        return BurnsideElement(self, {})

    def orbit_type(self, H):
        return self.class_of(H).label


class BurnsideElement:
    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = {k: int(v) for k, v in coeffs.items() if v}

    @property
    def group(self):
        return self.ring.group

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BurnsideElement(self.ring, out)

    def __neg__(self):
        return BurnsideElement(self.ring, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, r):
        return BurnsideElement(self.ring, {k: r * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        out = self.ring.zero()
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out = out + basis_product(self.ring, a, b).scaled(x * y)
        return out

    def __eq__(self, other):
        return isinstance(other, BurnsideElement) and self.ring is other.ring and self.coeffs == other.coeffs

    def __repr__(self):
        return "BurnsideElement(" + " + ".join(f"{v}[K/{k}]" for k, v in self.items()) + ")"

    def items(self):
        return [(lab, self.coeffs[lab]) for lab in self.ring.labels if lab in self.coeffs]

    def to_json(self):
        return {k: v for k, v in self.items()}


class MarkVector:
    def __init__(self, ring, values):
        self.ring = ring
        self.values = {lab: Fraction(values.get(lab, 0)) for lab in ring.labels}

    def __mul__(self, other):
        return MarkVector(self.ring, {k: self.values[k] * other.values[k] for k in self.ring.labels})

    def __add__(self, other):
        return MarkVector(self.ring, {k: self.values[k] + other.values[k] for k in self.ring.labels})

    def __eq__(self, other):
        return isinstance(other, MarkVector) and self.values == other.values

    def __repr__(self):
        return f"MarkVector({self.to_json()})"

    def to_json(self):
        return {k: (int(v) if v.denominator == 1 else str(v)) for k, v in self.values.items()}


def ch0(b):
    R = b.ring
    vals = {lab: 0 for lab in R.labels}
    for lab, c in b.coeffs.items():
        i = R.pos[lab]
        for j, h in enumerate(R.labels):
            vals[h] += c * R.marks[i][j]
    return MarkVector(R, vals)


def ch0_inverse(m):
    """Triangular solve against the table of marks, largest subgroups first."""
    R = m.ring
    n = len(R.labels)
    coeffs = [Fraction(0)] * n
    for j in reversed(range(n)):
        rest = m.values[R.labels[j]] - sum(coeffs[i] * R.marks[i][j] for i in range(j + 1, n))
        c = rest / R.marks[j][j]
        coeffs[j] = c
    if any(c.denominator != 1 for c in coeffs):
        raise NotInImage(f"mark vector {m.to_json()} is not the character of a K-set combination")
    return BurnsideElement(R, {R.labels[i]: int(coeffs[i]) for i in range(n)})


def basis_product(R, a, b):
    """[K/L1][K/L2] by orbits of K on K/L1 x K/L2."""
    K = R.group
    L1 = R.classes[R.pos[a]].representative
    L2 = R.classes[R.pos[b]].representative

    def coset(g, L):
        return min(K.mul(g, h) for h in L.elements)

    c1 = sorted({coset(g, L1) for g in range(K.order)})
    c2 = sorted({coset(g, L2) for g in range(K.order)})
    seen = set()
    out = {}
    for x in c1:
        for y in c2:
            if (x, y) in seen:
                continue
            orbit = {(coset(K.mul(k, x), L1), coset(K.mul(k, y), L2)) for k in range(K.order)}
            seen |= orbit
            stab = Subgroup(K, [k for k in range(K.order)
                                if coset(K.mul(k, x), L1) == x and coset(K.mul(k, y), L2) == y])
            lab = R.class_of(stab).label
            out[lab] = out.get(lab, 0) + 1
    return BurnsideElement(R, out)


# -- linear sphere maps ------------------------------------------------------------


class LinearSphereMap:
    """K-equivariant linear map v -> A v of a representation V, compactified."""

    def __init__(self, group, dim, rep_matrices, map_matrix):
        self.group = group
        self.dim = int(dim)
        self.rep_matrices = [[[Fraction(x) for x in row] for row in M] for M in rep_matrices]
        self.map_matrix = [[Fraction(x) for x in row] for row in map_matrix]
        if len(self.map_matrix) != self.dim or any(len(r) != self.dim for r in self.map_matrix):
            raise BurnsideError("map matrix has wrong shape")
        if len(self.rep_matrices) != len(group.generators):
            raise BurnsideError("one representation matrix per generator is required")
        self._all = None
        self._check()

    def _identity(self):
        return [[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)]

    def element_matrices(self):
        if self._all is None:
            K = self.group
            words = K.words()
            mats = []
            for g in range(K.order):
                M = self._identity()
                for k in reversed(words[g]):
                    M = matmul(self.rep_matrices[k], M)
                mats.append(M)
            self._all = mats
        return self._all

    def _check(self):
        K = self.group
        mats = self.element_matrices()
        for g in range(K.order):
            for k, s in enumerate(K.generator_indices()):
                if matmul(self.rep_matrices[k], mats[g]) != mats[K.mul(s, g)]:
                    raise BurnsideError("representation matrices do not satisfy the group relations")
        A = self.map_matrix
        for M in self.rep_matrices:
            if matmul(M, A) != matmul(A, M):
                raise BurnsideError("map matrix does not commute with the representation")

    def fixed_basis(self, H):
        """Basis (columns) of V^H as a list of vectors."""
        mats = self.element_matrices()
        rows = []
        for h in H.elements:
            M = mats[h]
            for i in range(self.dim):
                rows.append([M[i][j] - (i == j) for j in range(self.dim)])
        return nullspace(rows, self.dim)

    def stratum_degree(self, H):
        """sign det(A restricted to V^H); +1 on the zero space."""
        B = self.fixed_basis(H)
        if not B:
            return 1
        A = self.map_matrix
        # A B = B C; solve column by column
        k = len(B)
        Bm = [[B[c][i] for c in range(k)] for i in range(self.dim)]
        C = []
        for c in range(k):
            img = [sum(A[i][j] * B[c][j] for j in range(self.dim)) for i in range(self.dim)]
            x = solve_rational(Bm, img)
            if x is None:
                raise BurnsideError("map does not preserve a fixed subspace")
            C.append(x)
        Cm = [[C[c][r] for c in range(k)] for r in range(k)]
        d = determinant(Cm)
        if d == 0:
            raise SingularOnStratum("map is singular on a fixed stratum")
        return sign(d)


def nullspace(rows, n):
    """Rational basis of {x : rows x = 0}."""
    M = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        basis.append(v)
    return basis


def degree_marks(psi):
    R = BurnsideRing.of(psi.group)
    vals = {}
    for c in R.classes:
        try:
            vals[c.label] = psi.stratum_degree(c.representative)
        except SingularOnStratum:
            raise SingularOnStratum(f"det(A|V^H) = 0 on stratum ({c.label})", c.label) from None
    return MarkVector(R, vals)


def equivariant_degree(psi):
    return ch0_inverse(degree_marks(psi))


# -- Lefschetz class of a K-complex --------------------------------------------------


def lefschetz_burnside_class(Z, psi):
    """sum over (H) of L^{Z[WH]}(psi^H, psi^{>H}) [K/H], via the twisted trace."""
    from .twisted import FiniteExtension, TwistedChainEndo, refined_lefschetz
    from .groups import WeylGroup
    from .gcw import FixedSubcomplex
    K = Z.group
    R = BurnsideRing.of(K)
    out = {}
    for c in R.classes:
        H = c.representative
        F = FixedSubcomplex(Z, H)
        cells = [s for s in F.simplices if s not in F.singular_set]
        if not cells:
            continue
        W = WeylGroup(K, H)
        host = FiniteExtension(W, W.trivial(), list(range(W.order)), f"W{c.label}")
        lifts = [W.lift(w) for w in range(W.order)]
        dims = max(len(s) for s in cells)
        reps = [[] for _ in range(dims)]
        where = {}
        for s in sorted(cells, key=lambda s: (len(s), s)):
            if s in where:
                continue
            p = len(s) - 1
            reps[p].append(s)
            for w, g in enumerate(lifts):
                img, sg = Z.act_simplex(g, s)
                where.setdefault(img, (len(reps[p]) - 1, w, sg))
        cellset = set(cells)
        endos = []
        for p in range(dims):
            A = [[{} for _ in reps[p]] for _ in reps[p]]
            for i, e in enumerate(reps[p]):
                for t, coef in psi.cellular_image(e).items():
                    if t not in cellset:
                        continue
                    j, w, sg = where[t]
                    A[i][j][w] = A[i][j].get(w, 0) + coef * sg
                    if A[i][j][w] == 0:
                        del A[i][j][w]
            endos.append(A)
        C = TwistedChainEndo(host, [len(r) for r in reps], [None] * dims, endos)
        L = refined_lefschetz(C, "z")
        out[c.label] = int(L.augmentation())
    return BurnsideElement(R, out)
