"""Exact integer linear algebra: Hermite and Smith normal forms with transforms.

Matrices are lists of lists of Python ints, row major. Everything here is
small (component groups have a handful of generators), so clarity beats
asymptotics. sympy ships both normal forms but without the transformation
matrices, which the sub/quotient/induced-action computations need; the sympy
versions are kept as oracles in the test suite.
"""

from fractions import Fraction


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, m = len(A), len(B[0]) if B else 0
    k = len(B)
    assert not A or len(A[0]) == k
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(A, v):
    return [sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A))]


def transpose(A):
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def hnf_row(A):
    """Row Hermite normal form: returns (H, U) with U unimodular and U A = H.

    H is in row echelon form with positive pivots and entries above each pivot
    reduced into [0, pivot).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [list(map(int, row)) for row in A]
    U = identity_matrix(m)
    pr = 0
    for pc in range(n):
        if pr == m:
            break
        # clear column pc below row pr by gcd steps
        while True:
            piv, best = -1, None
            for i in range(pr, m):
                if H[i][pc] != 0 and (best is None or abs(H[i][pc]) < best):
                    piv, best = i, abs(H[i][pc])
            if piv < 0:
                break
            if piv != pr:
                H[pr], H[piv] = H[piv], H[pr]
                U[pr], U[piv] = U[piv], U[pr]
            done = True
            for i in range(pr + 1, m):
                q = H[i][pc] // H[pr][pc]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[pr])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[pr])]
                if H[i][pc] != 0:
                    done = False
            if done:
                break
        if H[pr][pc] != 0:
            if H[pr][pc] < 0:
                H[pr] = [-a for a in H[pr]]
                U[pr] = [-a for a in U[pr]]
            for i in range(pr):
                q = H[i][pc] // H[pr][pc]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[pr])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[pr])]
            pr += 1
    return H, U


def hnf_col(A):
    """Column Hermite normal form: returns (H, V) with V unimodular and A V = H."""
    Ht, Vt = hnf_row(transpose(A))
    return transpose(Ht), transpose(Vt)


def column_basis(A):
    """Nonzero columns of the column HNF: a basis of the column lattice of A."""
    H, _ = hnf_col(A)
    if not H:
        return []
    cols = transpose(H)
    return transpose([c for c in cols if any(c)])


def kernel_basis(A):
    """Columns spanning the integer kernel of A, as a list of column vectors."""
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    H, V = hnf_col(A)
    cols = transpose(H)
    Vc = transpose(V)
    return [list(Vc[j]) for j in range(n) if not any(cols[j])]


def snf(A):
    """Smith normal form: returns (U, S, V) with U A V = S diagonal, s1 | s2 | ...

    U and V are unimodular; the diagonal entries are nonnegative.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(map(int, row)) for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)

    def row_op(i, j, q):  # row_i -= q * row_j
        S[i] = [a - q * b for a, b in zip(S[i], S[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(m):
            S[r][i] -= q * S[r][j]
        for r in range(n):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(m):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(m, n):
        # locate the absolutely smallest nonzero entry in the trailing block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] != 0 and (piv is None or abs(S[i][j]) < abs(S[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = False
        for i in range(t + 1, m):
            q = S[i][t] // S[t][t]
            if q:
                row_op(i, t, q)
            if S[i][t] != 0:
                dirty = True
        for j in range(t + 1, n):
            q = S[t][j] // S[t][t]
            if q:
                col_op(j, t, q)
            if S[t][j] != 0:
                dirty = True
        if dirty:
            continue  # smaller remainders appeared, redo the pivot hunt
        # divisibility: S[t][t] must divide the rest of the block
        fix = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % S[t][t] != 0:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            # add the offending row to row t and restart this pivot
            S[t] = [a + b for a, b in zip(S[t], S[fix])]
            U[t] = [a + b for a, b in zip(U[t], U[fix])]
            continue
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, S, V


def det_unimodular_sign(A):
    """Determinant of an integer matrix via fraction-free elimination (for sanity checks)."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        inv = M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / inv
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    assert det.denominator == 1
    return int(det)


def invert_unimodular(A):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        assert piv is not None, "singular matrix"
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
        inv = M[c][c]
        M[c] = [a / inv for a in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    out = [[M[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in out for x in row), "matrix is not unimodular"
    return [[int(x) for x in row] for row in out]


def solve_integer(B, targets):
    """Solve B X = T exactly for X; returns None if any entry is non-integral.

    B is square nonsingular, targets a list of column vectors.
    """
    n = len(B)
    cols = len(targets)
    M = [[Fraction(B[i][j]) for j in range(n)] + [Fraction(targets[c][i]) for c in range(cols)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        assert piv is not None, "singular matrix"
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
        inv = M[c][c]
        M[c] = [a / inv for a in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    out = [[M[i][n + c] for i in range(n)] for c in range(cols)]
    if any(x.denominator != 1 for col in out for x in col):
        return None
    return [[int(x) for x in col] for col in out]
