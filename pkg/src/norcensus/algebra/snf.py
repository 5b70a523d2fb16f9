"""Smith normal form over the integers, with unimodular transforms."""


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _copy(m):
    return [list(r) for r in m]


def _nearest(a, p):
    # quotient rounded to nearest, so remainders satisfy |r| <= |p| / 2
    q, r = divmod(a, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def smith_normal_form(M):
    """Return ``(S, U, V)`` with ``S == U @ M @ V``, ``U`` and ``V``
    unimodular, and ``S`` diagonal with ``d1 | d2 | ...`` and ``di >= 0``.

    Matrices are lists of rows of Python ints (numpy arrays are accepted).
    """
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):      # row dst += k * row src
        if k:
            A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):      # col dst += k * col src
        if k:
            for r in A:
                r[dst] += k * r[src]
            for r in V:
                r[dst] += k * r[src]

    def neg_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    def pivot_to(t):
        # smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < best[0]):
                    best = (abs(A[i][j]), i, j)
        if best is None:
            return False
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        return True

    t = 0
    while t < min(m, n) and pivot_to(t):
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                add_row(i, t, -_nearest(A[i][t], p))
            for j in range(t + 1, n):
                add_col(j, t, -_nearest(A[t][j], p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                # a remainder is smaller than the pivot; choose again
                pivot_to(t)
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            neg_row(t)
        t += 1
    return A, U, V


def invariant_factors(M):
    """Diagonal of the Smith normal form (length ``min(rows, cols)``)."""
    S, _, _ = smith_normal_form(M)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def determinant(M):
    """Exact integer determinant by fraction-free elimination (Bareiss)."""
    A = _copy(M)
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]
