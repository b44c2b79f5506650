"""Exact integer and rational matrix helpers, Smith normal form, homology.

Matrices are lists of row lists.  Nothing here uses floating point.
"""

from __future__ import annotations

from fractions import Fraction


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def matmul(A, B):
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def is_zero(A):
    return all(x == 0 for row in A for x in row)


def smith_normal_form(M):
    """Return (S, U, V) with U*M*V == S diagonal, d_1 | d_2 | ..., U and V unimodular."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, row)) for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        if c:
            A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        if c:
            for row in A:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    add_row(t, i, -q)
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    add_col(t, j, -q)
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest remainder in row/col t to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cands)
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            # divisibility against the rest of the block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def diagonal(S):
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def frac_matrix(A):
    return [[Fraction(x) for x in row] for row in A]


def rational_inverse(A):
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def integer_inverse(A):
    inv = rational_inverse(A)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def determinant(A):
    """Exact determinant by fraction-valued elimination."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    M = [list(map(Fraction, row)) for row in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        pv = M[c][c]
        det *= pv
        for r in range(c + 1, n):
            if M[r][c] != 0:
                f = M[r][c] / pv
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def sign(x):
    return (x > 0) - (x < 0)


def solve_rational(A, b):
    """One solution x of A x = b over Q, or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(map(Fraction, A[i])) + [Fraction(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return x


# -- homology oracle --------------------------------------------------------


def homology_ranks(boundaries, ranks):
    """Betti numbers and torsion from boundary matrices.

    ``boundaries[p]`` is the matrix of d_p: C_p -> C_{p-1} acting on column
    vectors (shape ranks[p-1] x ranks[p]); ``boundaries[0]`` is ignored.
    """
    top = len(ranks)
    rk = []
    tors = []
    for p in range(top + 1):
        if p < top and p >= 1 and ranks[p] and ranks[p - 1]:
            S, _, _ = smith_normal_form(boundaries[p])
            d = [x for x in diagonal(S) if x]
        else:
            d = []
        rk.append(len(d))
        tors.append([x for x in d if x > 1])
    betti = []
    torsion = []
    for p in range(top):
        betti.append(ranks[p] - rk[p] - rk[p + 1])
        torsion.append(tors[p + 1])
    return betti, torsion


def homology_trace_lefschetz(boundaries, ranks, chain_maps):
    """Sum of (-1)^p trace(f_* on H_p(-;Q)), via Smith normal form.

    ``chain_maps[p]`` acts on column vectors of C_p.  Works independently of
    the chain-level trace: a basis of free homology classes is built from
    SNF data and f_* is expressed in it.
    """
    total = Fraction(0)
    top = len(ranks)
    for p in range(top):
        n = ranks[p]
        if n == 0:
            continue
        # cycles: kernel of d_p
        if p >= 1 and ranks[p - 1]:
            S, U, V = smith_normal_form(boundaries[p])
            r = sum(1 for x in diagonal(S) if x)
            Z = [[V[i][j] for j in range(r, n)] for i in range(n)]  # columns span ker
        else:
            Z = identity(n)
        k = len(Z[0]) if Z else 0
        if k == 0:
            continue
        # boundaries B = im d_{p+1}, written in cycle coordinates
        if p + 1 < top and ranks[p + 1]:
            D = boundaries[p + 1]
            cols = []
            for j in range(ranks[p + 1]):
                col = [D[i][j] for i in range(n)]
                x = solve_rational(Z, col)
                cols.append([int(v) for v in x])
            B = transpose(cols, k) if cols else zeros(k, 0)
        else:
            B = zeros(k, 0)
        # adapted basis of the cycle lattice: U B V = S, new coords y = U x
        if B and B[0]:
            S, U, _ = smith_normal_form(B)
            rB = sum(1 for x in diagonal(S) if x)
        else:
            U = identity(k)
            rB = 0
        Uinv = integer_inverse(U)
        # free homology generators: cycle coordinates Uinv[:, j] for j >= rB
        F = chain_maps[p]
        tr = Fraction(0)
        for j in range(rB, k):
            coords = [Uinv[i][j] for i in range(k)]
            cyc = [sum(Z[i][a] * coords[a] for a in range(k)) for i in range(n)]
            img = [sum(F[i][a] * cyc[a] for a in range(n)) for i in range(n)]
            x = solve_rational(Z, img)
            y = [sum(U[i][a] * x[a] for a in range(k)) for i in range(k)]
            tr += y[j]
        total += (-1) ** p * tr
    return total
