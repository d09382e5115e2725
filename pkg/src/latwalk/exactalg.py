"""Exact linear algebra over the integers and rationals.

Everything here is pure, deterministic and allocation-light: matrices are
plain lists of lists (Python ints or Fractions) internally and tuples at the
boundaries of the value types built on top.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

Fr = Fraction

IntMat = list  # list[list[int]], rows
FracMat = list  # list[list[Fraction]]


# ---------------------------------------------------------------------------
# basic matrix helpers


def mat_copy(a):
    return [row[:] for row in a]


def mat_freeze(a):
    return tuple(tuple(row) for row in a)


def mat_thaw(a):
    return [list(row) for row in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(v, a):
    """Row vector times matrix."""
    return [sum(x * col[i] for i, x in enumerate(v)) for col in zip(*a)] if a else []


def vec_mat(v, a):
    return mat_vec(v, a)


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def vec_add(u, v):
    return [x + y for x, y in zip(u, v)]


def vec_sub(u, v):
    return [x - y for x, y in zip(u, v)]


def vec_scale(u, c):
    return [c * x for x in u]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def pair(u, gram, v):
    """Inner product u . gram . v^T for row vectors."""
    total = 0
    for gu, x in zip(gram, u):
        if x:
            total += x * dot(gu, v)
    return total


def is_symmetric(a):
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i)
    )


def lcm_den(values):
    """lcm of denominators of a flat iterable of ints/Fractions."""
    l = 1
    for v in values:
        d = v.denominator if isinstance(v, Fraction) else 1
        l = l * d // gcd(l, d)
    return l


def clear_denominators(rows):
    """Scale rational rows to integers; returns (int_rows, denominator)."""
    den = lcm_den(x for row in rows for x in row)
    out = [[int(x * den) for x in row] for row in rows]
    return out, den


def content(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive_part(v):
    g = content(v)
    if g == 0:
        return list(v)
    return [x // g for x in v]


# ---------------------------------------------------------------------------
# determinants


def bareiss_det(a):
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    a = mat_copy(a)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def frac_det(a):
    """Determinant of a rational matrix."""
    rows = [list(map(Fraction, row)) for row in a]
    scaled, den = clear_denominators(rows)
    n = len(rows)
    return Fraction(bareiss_det(scaled), den**n)


# ---------------------------------------------------------------------------
# Hermite normal form (row style): U @ A = H with U unimodular.


def hnf(a, transform=False):
    """Row HNF of an integer matrix.

    Returns (H, U, pivots) when transform else (H, pivots).  H is in row
    echelon form with positive pivots and reduced entries above each pivot;
    zero rows are swept to the bottom.
    """
    h = mat_copy(a)
    m = len(h)
    n = len(h[0]) if m else 0
    u = identity(m) if transform else None
    pivots = []
    row = 0
    for col in range(n):
        piv = None
        best = None
        for i in range(row, m):
            v = h[i][col]
            if v != 0 and (best is None or abs(v) < best):
                best = abs(v)
                piv = i
        if piv is None:
            continue
        h[row], h[piv] = h[piv], h[row]
        if transform:
            u[row], u[piv] = u[piv], u[row]
        # euclidean elimination below the pivot
        while True:
            done = True
            for i in range(row + 1, m):
                if h[i][col] == 0:
                    continue
                q = h[i][col] // h[row][col]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[row])]
                    if transform:
                        u[i] = [x - q * y for x, y in zip(u[i], u[row])]
                if h[i][col] != 0:
                    done = False
                    h[row], h[i] = h[i], h[row]
                    if transform:
                        u[row], u[i] = u[i], u[row]
            if done:
                break
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            if transform:
                u[row] = [-x for x in u[row]]
        # reduce entries above the pivot
        p = h[row][col]
        for i in range(row):
            q = h[i][col] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[row])]
                if transform:
                    u[i] = [x - q * y for x, y in zip(u[i], u[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    if transform:
        return h, u, pivots
    return h, pivots


def row_space_basis(rows):
    """Basis of the row span over Z (nonzero HNF rows)."""
    if not rows:
        return []
    h, pivots = hnf(rows)
    return [h[i] for i in range(len(pivots))]


def left_kernel(a):
    """Basis of {x : x @ a = 0} over Z for an integer matrix a."""
    m = len(a)
    if m == 0:
        return []
    h, u, pivots = hnf(a, transform=True)
    rank = len(pivots)
    return [u[i] for i in range(rank, m)]


def solve_left_int(a, b):
    """One integer solution x of x @ a = b, or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    if len(b) != n:
        raise ValueError("dimension mismatch")
    h, u, pivots = hnf(a, transform=True)
    x = [0] * m
    r = list(b)
    for i, col in enumerate(pivots):
        if r[col] % h[i][col] != 0:
            return None
        q = r[col] // h[i][col]
        if q:
            r = [rv - q * hv for rv, hv in zip(r, h[i])]
        x[i] = q
    if any(r):
        return None
    return mat_vec(x, u)


def solve_right_frac(a, b):
    """Solve y for a @ y^T = b^T, i.e. y @ a^T = b, rationally (a square regular)."""
    return solve_left_frac(transpose(a), b)


def solve_left_frac(a, b):
    """Rational solution x of x @ a = b for square nonsingular a."""
    n = len(a)
    cols = list(zip(*a))
    # gaussian elimination on a^T | b^T
    m = [[Fraction(cols[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        m[k], m[piv] = m[piv], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                c = m[i][k]
                m[i] = [x - c * y for x, y in zip(m[i], m[k])]
    return [m[i][n] for i in range(n)]


def inv_frac(a):
    """Exact inverse of a square rational matrix."""
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[k], m[piv] = m[piv], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                c = m[i][k]
                m[i] = [x - c * y for x, y in zip(m[i], m[k])]
    return [row[n:] for row in m]


# ---------------------------------------------------------------------------
# Smith normal form with smallest-pivot pivoting (keeps entries tame).


def snf(a):
    """Smith normal form.  Returns (d, u, v) with u @ a @ v = diag(d).

    Pivoting always picks the smallest nonzero entry of the remaining block,
    which controls coefficient blowup on the mid-rank integer Grams that occur
    here.
    """
    d = mat_copy(a)
    m = len(d)
    n = len(d[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def apply_col(j, k, q):
        for row in d:
            row[j] -= q * row[k]
        for i in range(n):
            v[i][j] -= q * v[i][k]

    def swap_col(j, k):
        for row in d:
            row[j], row[k] = row[k], row[j]
        for i in range(n):
            v[i][j], v[i][k] = v[i][k], v[i][j]

    def negate_col(j):
        for row in d:
            row[j] = -row[j]
        for i in range(n):
            v[i][j] = -v[i][j]

    t = 0
    while t < min(m, n):
        # find smallest nonzero entry in the remaining block
        best = None
        bi = bj = -1
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    bi, bj = i, j
        if best is None:
            break
        d[t], d[bi] = d[bi], d[t]
        u[t], u[bi] = u[bi], u[t]
        if bj != t:
            swap_col(bj, t)
        while True:
            # clear row t and column t
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    if q:
                        d[i] = [x - q * y for x, y in zip(d[i], d[t])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if d[i][t]:
                        d[t], d[i] = d[i], d[t]
                        u[t], u[i] = u[i], u[t]
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    if q:
                        apply_col(j, t, q)
                    if d[t][j]:
                        swap_col(j, t)
                        dirty = True
            if not dirty:
                break
        # divisibility sweep: pivot must divide the rest of the block
        p = d[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            d[t] = [x + y for x, y in zip(d[t], d[offender])]
            u[t] = [x + y for x, y in zip(u[t], u[offender])]
            continue
        if p < 0:
            negate_col(t)
        t += 1
    diag = [d[i][i] for i in range(min(m, n))]
    return diag, u, v


# ---------------------------------------------------------------------------
# exact signature via symmetric congruence (no eigenvalues)


def inertia(gram):
    """(positive, negative, zero) inertia counts of a rational symmetric matrix."""
    a = [[Fraction(x) for x in row] for row in gram]
    n = len(a)
    pos = neg = zero = 0
    idx = list(range(n))
    k = 0
    while k < n:
        # choose a nonzero diagonal pivot if possible
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            # all diagonal zero: find off-diagonal nonzero
            found = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if a[i][j] != 0:
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                zero += n - k
                break
            i, j = found
            # row/col i += row/col j makes diagonal nonzero
            for c in range(k, n):
                a[i][c] += a[j][c]
            for r in range(k, n):
                a[r][i] += a[r][j]
            continue
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k]:
                c = a[i][k] / p
                for j in range(k, n):
                    a[i][j] -= c * a[k][j]
        for j in range(k + 1, n):
            a[k][j] = Fraction(0)
        # symmetric: also zero the column (entries already eliminated implicitly)
        for i in range(k + 1, n):
            a[i][k] = Fraction(0)
        k += 1
    return pos, neg, zero


# ---------------------------------------------------------------------------
# integral LLL on a Gram matrix (positive definite)


def lll_gram(gram, delta=(3, 4)):
    """LLL-reduce a positive definite integer Gram matrix.

    Returns (reduced_gram, u) with reduced = u @ gram @ u^T.  All-integer:
    the scaled Gram-Schmidt data (lam, d) is kept lazily and recomputed from
    the first dirty row after each basis operation.
    """
    g = mat_copy(gram)
    n = len(g)
    u = identity(n)
    if n <= 1:
        return g, u
    dnum, dden = delta

    d = [1] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    clean = 0  # gso rows < clean are valid

    def recompute_to(k):
        nonlocal clean
        for i in range(clean, k + 1):
            for j in range(i + 1):
                s = g[i][j]
                for t in range(j):
                    s = (d[t + 1] * s - lam[i][t] * lam[j][t]) // d[t]
                    # exact division by the integral GSO identity
                if j < i:
                    lam[i][j] = s
                else:
                    d[i + 1] = s
        clean = k + 1

    def row_sub(k, j, q):
        nonlocal clean
        u[k] = [x - q * y for x, y in zip(u[k], u[j])]
        for c in range(n):
            g[k][c] -= q * g[j][c]
        for r in range(n):
            g[r][k] -= q * g[r][j]
        clean = min(clean, k)

    def swap_rows(k):
        nonlocal clean
        u[k], u[k - 1] = u[k - 1], u[k]
        g[k], g[k - 1] = g[k - 1], g[k]
        for r in range(n):
            g[r][k], g[r][k - 1] = g[r][k - 1], g[r][k]
        clean = min(clean, k - 1)

    def size_reduce(k, j):
        recompute_to(k)
        if 2 * abs(lam[k][j]) > d[j + 1]:
            q = (2 * lam[k][j] + d[j + 1]) // (2 * d[j + 1])
            if q:
                row_sub(k, j, q)

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        recompute_to(k)
        lhs = dden * (d[k + 1] * d[k - 1] + lam[k][k - 1] ** 2)
        rhs = dnum * d[k] ** 2
        if lhs < rhs:
            swap_rows(k)
            k = max(k - 1, 1)
        else:
            for j in range(k - 2, -1, -1):
                size_reduce(k, j)
            k += 1
    return g, u


# ---------------------------------------------------------------------------
# misc number theory


def isqrt_floor_frac(x):
    """floor(sqrt(x)) for a nonnegative Fraction."""
    if x < 0:
        raise ValueError("negative")
    num, den = x.numerator, x.denominator
    # floor(sqrt(num/den)) = isqrt(num*den)//den
    return isqrt(num * den) // den


def bernoulli_numbers(n):
    """B_0..B_n as Fractions (B_1 = -1/2 convention)."""
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        s = Fraction(0)
        binom = 1
        for j in range(m):
            s += binom * b[j]
            binom = binom * (m + 1 - j) // (j + 1)
        b[m] = -s / (m + 1)
    return b
