"""Pure-Python Fincke-Pohst enumeration.

Reference implementation of the hot kernel: all bound decisions are made in
exact rational arithmetic, so the output is exact regardless of basis
conditioning.  The compiled twin in _cyenum.pyx mirrors this semantics.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

BACKEND = "python"


def fp_coefficients(gram):
    """Exact FP/Cholesky coefficients of a positive definite integer Gram."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if a[i][i] <= 0:
            raise ValueError("gram not positive definite")
        for j in range(i + 1, n):
            aij = a[i][j]
            a[j][i] = aij  # stash original for the elimination step
            a[i][j] = aij / a[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= a[k][i] * a[i][l]
    # zero the stashes below the diagonal for cleanliness
    for i in range(len(a)):
        for j in range(i):
            a[i][j] = Fraction(0)
    return a


def _sqrt_guess(lim):
    """Integer close to sqrt(lim) for a nonnegative Fraction; guess only."""
    num, den = lim.numerator, lim.denominator
    if num.bit_length() - den.bit_length() < 100:
        try:
            return int(float(num / den) ** 0.5)
        except OverflowError:
            pass
    return isqrt(num // den)


def _offset_guess(off):
    try:
        return int(off)
    except OverflowError:  # pragma: no cover
        return off.numerator // off.denominator


def _adjust_hi(t, d, off):
    """Largest integer x with x + off <= sqrt(t/d) (t >= 0, d > 0)."""

    def le_s(x):  # x + off <= +sqrt(t/d); monotone decreasing in x
        xo = x + off
        return xo <= 0 or d * xo * xo <= t

    x = _sqrt_guess(t / d) - _offset_guess(off)
    while le_s(x + 1):
        x += 1
    while not le_s(x):
        x -= 1
    return x


def _adjust_lo(t, d, off):
    """Smallest integer x with x + off >= -sqrt(t/d) (t >= 0, d > 0)."""

    def ge_ms(x):  # x + off >= -sqrt(t/d); monotone increasing in x
        xo = x + off
        return xo >= 0 or d * xo * xo <= t

    x = -_sqrt_guess(t / d) - _offset_guess(off)
    while ge_ms(x - 1):
        x -= 1
    while not ge_ms(x):
        x += 1
    return x


def enumerate_coset(gram, bnum, bden, cnum, cden, limit=0):
    """Integer-center entry point matching the compiled twin's signature."""
    center = None if cnum is None else [Fraction(x, cden) for x in cnum]
    return enumerate_upto(gram, Fraction(bnum, bden), center=center, limit=limit)


def enumerate_upto(gram, bound, center=None, limit=0):
    """All integer rows z with Q(z + center) <= bound; Q given by gram.

    gram: positive definite integer matrix (list of rows).
    bound: exact upper bound (int or Fraction), >= 0 results only.
    center: rational row or None.  With center=None only one of each +-z pair
    is produced (first nonzero coordinate from the top of the descent is
    positive) and z = 0 is skipped.
    limit: if nonzero, stop after that many vectors.

    Returns a list of (coords tuple, norm Fraction).
    """
    n = len(gram)
    bound = Fraction(bound)
    if n == 0 or bound < 0:
        return []
    q = fp_coefficients(gram)
    half = center is None
    c = [Fraction(0)] * n if half else [Fraction(x) for x in center]
    out = []

    x = [0] * n
    # descent state: level n-1 chosen first
    t_stack = [Fraction(0)] * (n + 1)
    u_stack = [Fraction(0)] * n
    t_stack[n - 1] = bound

    def u_at(level):
        s = Fraction(0)
        qi = q[level]
        for j in range(level + 1, n):
            cj = x[j] + c[j]
            if cj:
                s += qi[j] * cj
        return s

    level = n - 1
    lo = [0] * n
    hi = [-1] * n
    pending = [False] * n

    def open_level(lev):
        t = t_stack[lev]
        if t < 0:
            return False
        u = u_at(lev)
        u_stack[lev] = u
        off = c[lev] + u
        l = _adjust_lo(t, q[lev][lev], off)
        h = _adjust_hi(t, q[lev][lev], off)
        if half and all(x[j] == 0 for j in range(lev + 1, n)):
            l = max(l, 0)
        if l > h:
            return False
        lo[lev], hi[lev] = l, h
        x[lev] = l - 1
        return True

    if not open_level(level):
        return []
    while True:
        x[level] += 1
        if x[level] > hi[level]:
            level += 1
            if level >= n:
                break
            continue
        off = x[level] + c[level] + u_stack[level]
        used = q[level][level] * off * off
        rem = t_stack[level] - used
        if level == 0:
            norm = bound - rem
            if half and all(v == 0 for v in x):
                continue
            out.append((tuple(x), norm))
            if limit and len(out) >= limit:
                return out
        else:
            t_stack[level - 1] = rem
            nxt = level - 1
            if open_level(nxt):
                level = nxt
            # if the child interval is empty, stay and advance x[level]
    return out
