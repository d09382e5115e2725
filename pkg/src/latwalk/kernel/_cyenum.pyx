# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled enumeration kernel.

Same exact semantics as the pure-Python twin (_pyenum): every bound decision
is an exact integer comparison.  The Fincke-Pohst data is scaled by the
Bareiss minors of the Gram matrix, which clears all denominators: at level i
the inequality reads (m_{i+1}*Y_i + S_i)^2 * weight_i <= N_i with all values
integers (Python bigints; the speedup is in the typed control flow).
"""

from fractions import Fraction
from math import gcd, isqrt

BACKEND = "cython"


def _bareiss_data(gram):
    """Leading principal minors m[0..n] (m[0]=1) and scaled offdiagonals B.

    At pivot step k the current row holds B[k][j] with the Gram-Schmidt
    coefficient L_kj = B[k][j] / m[k+1]; fraction-free elimination, all
    divisions exact.
    """
    n = len(gram)
    a = [[gram[i][j] for j in range(n)] for i in range(n)]
    m = [1] * (n + 1)
    b = [[0] * n for _ in range(n)]
    for k in range(n):
        pivot = a[k][k]
        if pivot <= 0:
            raise ValueError("gram not positive definite")
        m[k + 1] = pivot
        for j in range(k + 1, n):
            b[k][j] = a[k][j]
        prev = m[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
    return m, b


_CACHE = {}


def _data_for(gram_key):
    data = _CACHE.get(gram_key)
    if data is None:
        data = _bareiss_data([list(r) for r in gram_key])
        if len(_CACHE) > 256:
            _CACHE.clear()
        _CACHE[gram_key] = data
    return data


_SCALED_CACHE = {}


def _scaled_data(gram_key, e, bden):
    """Cached per-(gram, denominators) scaling: (m, b, M, weights)."""
    key = (gram_key, e, bden)
    data = _SCALED_CACHE.get(key)
    if data is None:
        m, b = _data_for(gram_key)
        n = len(gram_key)
        lcm_mm = 1
        for i in range(n):
            prod = m[i] * m[i + 1]
            lcm_mm = lcm_mm * (prod // gcd(lcm_mm, prod))
        M = e * e * bden * lcm_mm
        weights = [M // (m[i] * m[i + 1] * e * e) for i in range(n)]
        if len(_SCALED_CACHE) > 256:
            _SCALED_CACHE.clear()
        data = (m, b, M, weights)
        _SCALED_CACHE[key] = data
    return data


def enumerate_upto(gram, bound, center=None, limit=0):
    """All integer rows z with Q(z + center) <= bound (Q positive definite).

    Mirrors _pyenum.enumerate_upto: returns [(coords tuple, norm Fraction)];
    with center=None only one of each +-pair is produced and 0 is skipped.
    """
    bound = Fraction(bound)
    if center is None:
        return enumerate_coset(gram, bound.numerator, bound.denominator, None, 1, limit)
    cfr = [Fraction(x) for x in center]
    e = 1
    for frac in cfr:
        d = frac.denominator
        e = e * (d // gcd(e, d))
    cnum = [int(frac * e) for frac in cfr]
    return enumerate_coset(gram, bound.numerator, bound.denominator, cnum, e, limit)


def enumerate_coset(gram, bnum, bden, cnum, cden, limit=0):
    """Core enumeration with integer center data (cnum/cden) and exact
    rational bound bnum/bden; cden must be the exact common denominator."""
    cdef int n = len(gram)
    if n == 0 or bnum < 0:
        return []
    bound = Fraction(bnum, bden)
    gram_key = tuple(tuple(int(x) for x in row) for row in gram)
    half = cnum is None
    e = 1 if half else cden
    ec = [0] * n if half else list(cnum)
    m, b, M, weights = _scaled_data(gram_key, e, bden)
    n_top = bnum * (M // bden)

    cdef int level, j, jj
    cdef bint nz, all0
    x = [0] * n
    y = [0] * n          # Y_i = e*x_i + ec_i
    svals = [0] * n      # S_i at open time
    mstage = [0] * n     # m[i+1] cached per level
    nstack = [0] * (n + 1)
    hi = [0] * n
    out = []
    nstack[n - 1] = n_top
    for j in range(n):
        mstage[j] = m[j + 1]

    def open_level(int lev):
        cdef int jjj
        ni = nstack[lev]
        if ni < 0:
            return False
        s = 0
        brow = b[lev]
        for jjj in range(lev + 1, n):
            if y[jjj]:
                s = s + brow[jjj] * y[jjj]
        svals[lev] = s
        wi = weights[lev]
        cap = ni // wi
        root = isqrt(cap)
        mi = mstage[lev]
        me = mi * e
        off = s + mi * ec[lev]  # val(x) = me*x + off

        # hi: largest integer x with (me*x + off <= +sqrt(ni/wi)), monotone down
        xg = (root - off) // me
        while True:
            val = me * (xg + 1) + off
            if val <= 0 or val * val * wi <= ni:
                xg += 1
            else:
                break
        while True:
            val = me * xg + off
            if val <= 0 or val * val * wi <= ni:
                break
            xg -= 1
        xhi = xg

        # lo: smallest integer x with (me*x + off >= -sqrt(ni/wi)), monotone up
        xg = (-root - off) // me
        while True:
            val = me * (xg - 1) + off
            if val >= 0 or val * val * wi <= ni:
                xg -= 1
            else:
                break
        while True:
            val = me * xg + off
            if val >= 0 or val * val * wi <= ni:
                break
            xg += 1
        xlo = xg

        if half:
            nz = 1
            for jjj in range(lev + 1, n):
                if x[jjj] != 0:
                    nz = 0
                    break
            if nz and xlo < 0:
                xlo = 0
        if xlo > xhi:
            return False
        hi[lev] = xhi
        x[lev] = xlo - 1
        return True

    level = n - 1
    if not open_level(level):
        return []
    while True:
        x[level] += 1
        if x[level] > hi[level]:
            level += 1
            if level >= n:
                break
            continue
        y[level] = e * x[level] + ec[level]
        s = mstage[level] * y[level] + svals[level]
        rem = nstack[level] - s * s * weights[level]
        if level == 0:
            if half:
                all0 = 1
                for j in range(n):
                    if x[j] != 0:
                        all0 = 0
                        break
                if all0:
                    continue
            norm = bound - Fraction(rem, M)
            out.append((tuple(x), norm))
            if limit and len(out) >= limit:
                return out
        else:
            nstack[level - 1] = rem
            if open_level(level - 1):
                level -= 1
    return out
