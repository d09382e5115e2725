"""Standard lattices used throughout: ADE root lattices, the rank-10 even
unimodular hyperbolic lattice, the hyperbolic plane, and the Leech lattice
built from the extended Golay code.

Root lattices follow the negative-definite convention (diagonal -2, +1 on
Dynkin edges), matching the hyperbolic chamber machinery.
"""

from __future__ import annotations

from functools import lru_cache

from . import exactalg as ea
from .lattice import Lattice, direct_sum, rescale


def _dynkin_gram(edges, n):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g


def root_gram(letter: str, n: int):
    """Negative-definite Gram matrix of the ADE root lattice."""
    if letter == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif letter == "D":
        if n < 3:
            raise ValueError("D_n needs n >= 3")
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif letter == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in {6,7,8}")
        # chain 0-1-2-3-4(-5)(-6), branch node attached at position 2
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    else:
        raise ValueError(f"unknown ADE letter {letter!r}")
    return _dynkin_gram(edges, n)


def root_lattice(letter: str, n: int) -> Lattice:
    return Lattice.from_gram(root_gram(letter, n), name=f"{letter}{n}")


def hyperbolic_plane() -> Lattice:
    return Lattice.from_gram([[0, 1], [1, 0]], name="U")


@lru_cache(maxsize=None)
def e10() -> Lattice:
    """Even unimodular hyperbolic lattice of rank 10 on the fixed root basis.

    Basis e1..e10 of (-2)-vectors; e1 joins e4, and e2-e3-e4-...-e10 is a
    chain.  Determinant -1, signature (1,9).
    """
    edges = [(0, 3), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9)]
    return Lattice.from_gram(_dynkin_gram(edges, 10), name="L10")


def e10_doubled() -> Lattice:
    return rescale(e10(), 2)


def e10_null_vector():
    """A primitive isotropic vector of the rank-10 lattice.

    Marks of the affine E8 subdiagram spanned by e1..e9; pairs to 1 with e10.
    """
    coeffs = [3, 2, 4, 6, 5, 4, 3, 2, 1, 0]
    return list(coeffs)


def e10_interior_point():
    """Sum of the dual basis: an interior point of the standard chamber."""
    lat = e10()
    inv = ea.inv_frac(lat.gram_rows())
    v = [sum(col) for col in zip(*inv)]
    assert all(x.denominator == 1 for x in v)
    return [int(x) for x in v]


# ---------------------------------------------------------------------------
# Golay code and the Leech lattice


@lru_cache(maxsize=None)
def golay_basis():
    """Generator rows (12x24, 0/1 ints) of the extended binary Golay code."""
    # cyclic [23,12] code from a degree-11 generator polynomial, then a parity bit
    gpoly = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]  # coeffs of 1+x^2+x^4+x^5+x^6+x^10+x^11
    rows = []
    for sh in range(12):
        w = [0] * 23
        for d, c in enumerate(gpoly):
            if c:
                w[(sh + d) % 23] = 1
        rows.append(w + [sum(w) % 2])
    return tuple(tuple(r) for r in rows)


def golay_codewords():
    """All 4096 extended Golay codewords (tuples of 0/1)."""
    basis = golay_basis()
    words = []
    for mask in range(1 << 12):
        w = [0] * 24
        for i in range(12):
            if (mask >> i) & 1:
                w = [a ^ b for a, b in zip(w, basis[i])]
        words.append(tuple(w))
    return words


@lru_cache(maxsize=None)
def leech() -> Lattice:
    """Positive-definite Leech lattice (even, unimodular, minimum 4)."""
    gens = []
    basis = golay_basis()
    for c in basis:
        gens.append([2 * x for x in c])
    for j in range(1, 24):
        gens.append([4 if i == 0 else (4 if i == j else 0) for i in range(24)])
        gens.append([4 if i == 0 else (-4 if i == j else 0) for i in range(24)])
    gens.append([-3] + [1] * 23)
    h, piv = ea.hnf(gens)
    assert len(piv) == 24
    b = [h[i] for i in range(24)]
    gram = ea.mat_mul(b, ea.transpose(b))
    for i in range(24):
        for j in range(24):
            q, r = divmod(gram[i][j], 8)
            assert r == 0, "Leech construction produced a non-integral pairing"
            gram[i][j] = q
    return Lattice.from_gram(gram, name="Leech")


def leech_negative() -> Lattice:
    return rescale(leech(), -1)


@lru_cache(maxsize=None)
def genus_seed() -> Lattice:
    """Rank-16 negative-definite seed: D8 + E8(2)."""
    d8 = root_lattice("D", 8)
    e8_2 = rescale(root_lattice("E", 8), 2)
    return direct_sum(d8, e8_2, name="D8+E8(2)")


def u_plus_leech_negative() -> Lattice:
    """Even unimodular lattice of signature (1,25) in a split form."""
    return direct_sum(hyperbolic_plane(), leech_negative(), name="U+Leech(-1)")
