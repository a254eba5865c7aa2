"""Dense exact linear algebra over Q (lists of lists of mpq)."""

from __future__ import annotations

from gmpy2 import mpq


def matvec(M, v):
    return [sum((a * b for a, b in zip(row, v) if a and b), mpq(0)) for row in M]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col) if a and b), mpq(0)) for col in Bt] for row in A]


def identity(n):
    return [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]


def rref(M):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    A = [list(map(mpq, row)) for row in M]
    rows = len(A)
    cols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def solve(A, B):
    """Solve A X = B for square nonsingular A (B: list of right-hand-side vectors).

    Returns a list of solution vectors, or None when A is singular.
    """
    n = len(A)
    aug = [list(A[i]) + [b[i] for b in B] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        return None
    return [[R[i][n + k] for i in range(n)] for k in range(len(B))]


def nullspace(M):
    if not M:
        return []
    cols = len(M[0])
    R, piv = rref(M)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [mpq(0)] * cols
        v[f] = mpq(1)
        for r, p in enumerate(piv):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def inverse(A):
    n = len(A)
    cols = solve(A, [[mpq(1) if i == k else mpq(0) for i in range(n)] for k in range(n)])
    if cols is None:
        return None
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def symmetric_signature(S) -> tuple[int, int]:
    """(rank, signature) of a rational symmetric matrix by congruence diagonalisation."""
    A = [list(map(mpq, row)) for row in S]
    n = len(A)
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = next((i for i in active if A[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # x_i <- x_i + x_j makes the (i, i) entry 2*A[i][j] != 0
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        d = A[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        row = A[piv]
        for k in active:
            f = A[k][piv]
            if not f:
                continue
            f = f / d
            Ak = A[k]
            for l in active:
                if row[l]:
                    Ak[l] -= f * row[l]
            Ak[piv] = mpq(0)
        for k in active:
            A[piv][k] = mpq(0)
    return pos + neg, pos - neg


def charpoly(A):
    """Characteristic polynomial det(x I - A), ascending coefficients (Hessenberg method)."""
    n = len(A)
    H = [list(map(mpq, row)) for row in A]
    for m in range(1, n - 1):
        i = next((r for r in range(m, n) if H[r][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        t = H[m][m - 1]
        for j in range(m + 1, n):
            u = H[j][m - 1] / t
            if not u:
                continue
            H[j] = [a - u * b for a, b in zip(H[j], H[m])]
            for row in H:
                row[m] += u * row[j]
    # p[m] as ascending coefficient lists
    p = [[mpq(1)]]
    for m in range(1, n + 1):
        prev = p[m - 1]
        cur = [mpq(0)] + prev  # x * p_{m-1}
        h = H[m - 1][m - 1]
        for k, c in enumerate(prev):
            cur[k] -= h * c
        t = mpq(1)
        for i in range(1, m):
            t *= H[m - i][m - i - 1]
            if not t:
                break
            f = t * H[m - i - 1][m - 1]
            if f:
                for k, c in enumerate(p[m - i - 1]):
                    cur[k] -= f * c
        p.append(cur)
    return p[n]


def sign_variations(seq) -> int:
    signs = [1 if c > 0 else -1 for c in seq if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def charpoly_signature(S) -> tuple[int, int]:
    """(rank, signature) of a symmetric matrix from Descartes' rule on its characteristic polynomial.

    All roots are real, so sign variations count positive and negative eigenvalues exactly.
    """
    cp = charpoly(S)
    n = len(S)
    zero_mult = next(k for k, c in enumerate(cp) if c)
    pos = sign_variations(cp)
    neg = sign_variations([c if k % 2 == 0 else -c for k, c in enumerate(cp)])
    if pos + neg != n - zero_mult:
        raise ValueError("matrix is not symmetric: characteristic polynomial has non-real roots")
    return n - zero_mult, pos - neg
