"""Integral lattices with exact Gram matrices.

A lattice is identified with its basis: vectors are coordinate rows, the
Gram matrix holds all pairings, and sublattices remember how their basis sits
inside the parent (``parent_basis`` rows, rational).  Everything is immutable
and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

from . import exactalg as ea

Fr = Fraction


class Signature(NamedTuple):
    positive: int
    negative: int


@dataclass(frozen=True)
class Lattice:
    """Nondegenerate integral lattice given by a symmetric Gram matrix."""

    gram: tuple
    name: str = ""
    parent: Optional["Lattice"] = field(default=None, compare=False)
    parent_basis: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        g = self.gram
        if not all(isinstance(x, int) for row in g for x in row):
            raise ValueError("gram entries must be integers")
        if not ea.is_symmetric([list(r) for r in g]):
            raise ValueError("gram must be symmetric")
        if self.rank and ea.bareiss_det(self.gram_rows()) == 0:
            raise ValueError("gram must be nondegenerate")
        if self.parent_basis is not None:
            if self.parent is None:
                raise ValueError("parent_basis without parent")
            pb = [list(r) for r in self.parent_basis]
            check = ea.mat_mul(ea.mat_mul(pb, self.parent.gram_rows()), ea.transpose(pb))
            if [[Fr(x) for x in row] for row in self.gram] != check:
                raise ValueError("parent_basis inconsistent with gram")

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def from_gram(rows, name="", parent=None, parent_basis=None):
        g = tuple(tuple(int(x) for x in row) for row in rows)
        pb = None
        if parent_basis is not None:
            pb = tuple(tuple(Fr(x) for x in row) for row in parent_basis)
        return Lattice(g, name=name, parent=parent, parent_basis=pb)

    def gram_rows(self):
        return [list(r) for r in self.gram]

    # -- basic invariants -----------------------------------------------------

    @property
    def rank(self):
        return len(self.gram)

    @property
    def det(self):
        return _det(self.gram)

    @property
    def signature(self):
        return _signature(self.gram)

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def is_unimodular(self):
        return abs(self.det) == 1

    def is_definite(self):
        s = self.signature
        return s.positive == 0 or s.negative == 0

    # -- pairings -------------------------------------------------------------

    def pair(self, u, v):
        return ea.pair(u, self.gram_rows(), v)

    def norm(self, v):
        return self.pair(v, v)

    def dual_basis(self):
        """Rows of gram^{-1}: the dual basis in lattice coordinates."""
        return _dual_basis(self.gram)

    def in_dual(self, v):
        """Is the rational vector (lattice coords) an element of the dual?"""
        return all(x.denominator == 1 for x in
                   (Fr(t) for t in ea.mat_vec(list(v), self.gram_rows())))

    # -- coordinate moves -----------------------------------------------------

    def to_parent(self, v):
        if self.parent_basis is None:
            raise ValueError("lattice has no parent")
        return ea.mat_vec(list(v), [list(r) for r in self.parent_basis])

    def __repr__(self):
        nm = self.name or "lattice"
        s = self.signature
        return f"<{nm} rank {self.rank} sig ({s.positive},{s.negative}) det {self.det}>"


@lru_cache(maxsize=None)
def _det(gram):
    return ea.bareiss_det([list(r) for r in gram])


@lru_cache(maxsize=None)
def _signature(gram):
    pos, neg, zero = ea.inertia([list(r) for r in gram])
    if zero:
        raise ValueError("degenerate gram")
    return Signature(pos, neg)


@lru_cache(maxsize=None)
def _dual_basis(gram):
    inv = ea.inv_frac([list(r) for r in gram])
    return tuple(tuple(row) for row in inv)


@lru_cache(maxsize=None)
def _disc_group_data(gram):
    """Invariant factors > 1 of L^v/L together with generator vectors.

    Returns (orders, gens) where gens are rational rows in lattice
    coordinates; gens[i] has order orders[i] modulo L.  Definite Grams are
    LLL-reduced first to keep the Smith-form coefficients small.
    """
    g = [list(r) for r in gram]
    n = len(g)
    pos, neg, zero = ea.inertia(g)
    back = None
    if zero == 0 and (pos == 0 or neg == 0) and n > 1:
        work = g if neg == 0 else [[-x for x in row] for row in g]
        red, u = ea.lll_gram(work)
        back = u  # reduced coords -> original coords
        g = red if neg == 0 else [[-x for x in row] for row in red]
    d, u, v = ea.snf(g)
    gv = ea.mat_mul(g, v)
    inv = ea.inv_frac(gv)  # rows e_i V^{-1} G^{-1}
    orders = []
    gens = []
    for i in range(n):
        if d[i] > 1:
            orders.append(d[i])
            row = inv[i] if back is None else ea.mat_vec(inv[i], back)
            gens.append(tuple(row))
    return tuple(orders), tuple(gens)


def rescale(lat: Lattice, m: int) -> Lattice:
    """Same module, bilinear form multiplied by m."""
    if m == 0:
        raise ValueError("scale factor must be nonzero")
    g = [[m * x for x in row] for row in lat.gram]
    name = f"{lat.name}({m})" if lat.name else ""
    return Lattice.from_gram(g, name=name)


def discriminant_group(lat: Lattice):
    """Invariant factors of L^v/L (empty tuple for unimodular L)."""
    orders, _ = _disc_group_data(lat.gram)
    return orders


def discriminant_generators(lat: Lattice):
    """(orders, generator rows in L-coords) for A(L) = L^v/L."""
    return _disc_group_data(lat.gram)


def signature(lat: Lattice) -> Signature:
    return lat.signature


def direct_sum(m: Lattice, n: Lattice, name="") -> Lattice:
    a, b = m.rank, n.rank
    g = ea.zeros(a + b, a + b)
    for i in range(a):
        for j in range(a):
            g[i][j] = m.gram[i][j]
    for i in range(b):
        for j in range(b):
            g[a + i][a + j] = n.gram[i][j]
    return Lattice.from_gram(g, name=name or f"{m.name}+{n.name}")


def sublattice(lat: Lattice, rows, name="") -> Lattice:
    """Sublattice spanned by integer rows (must be independent)."""
    b = [list(r) for r in rows]
    g = ea.mat_mul(ea.mat_mul(b, lat.gram_rows()), ea.transpose(b))
    return Lattice.from_gram(g, name=name, parent=lat, parent_basis=b)


def orthogonal_complement(lat: Lattice, rows, name="") -> Lattice:
    """All v in lat pairing to 0 with every given row (rows in lat coords)."""
    if not rows:
        raise ValueError("empty constraint set")
    m = ea.mat_mul(lat.gram_rows(), ea.transpose([list(r) for r in rows]))
    ker = ea.left_kernel(m)
    if not ker:
        raise ValueError("orthogonal complement is trivial (rank 0)")
    g = ea.mat_mul(ea.mat_mul(ker, lat.gram_rows()), ea.transpose(ker))
    if ea.bareiss_det(g) == 0:
        raise ValueError("orthogonal complement is degenerate")
    return Lattice.from_gram(g, name=name, parent=lat,
                             parent_basis=[[Fr(x) for x in row] for row in ker])


def saturation_index(lat: Lattice, rows):
    """Index of span(rows) inside its saturation in lat (1 <=> primitive)."""
    h, piv = ea.hnf([list(r) for r in rows])
    basis = [h[i] for i in range(len(piv))]
    d, _, _ = ea.snf(basis)
    idx = 1
    for x in d:
        idx *= abs(x)
    return idx


def is_primitive_sublattice(lat: Lattice, rows):
    return saturation_index(lat, rows) == 1


def overlattice_from_glue(m: Lattice, n: Lattice, glue_vectors, name="") -> Lattice:
    """Overlattice of m + n generated by the given rational glue rows.

    glue_vectors are rows in (m + n)-coordinates (rational).  Returns the
    lattice generated by m + n and the glue rows; raises if the result is not
    integral.
    """
    amb = direct_sum(m, n)
    k = amb.rank
    rows = [[Fr(int(i == j)) for j in range(k)] for i in range(k)]
    rows += [[Fr(x) for x in gv] for gv in glue_vectors]
    scaled, den = ea.clear_denominators(rows)
    h, piv = ea.hnf(scaled)
    if len(piv) != k:
        raise ValueError("glue rows do not span a full-rank overlattice")
    basis = [[Fr(x, den) for x in h[i]] for i in range(k)]
    g = ea.mat_mul(ea.mat_mul(basis, amb.gram_rows()), ea.transpose(basis))
    gi = [[x for x in row] for row in g]
    if any(x.denominator != 1 for row in gi for x in row):
        raise ValueError("glue does not define an integral overlattice")
    g_int = [[int(x) for x in row] for row in gi]
    return Lattice.from_gram(g_int, name=name, parent=amb, parent_basis=basis)


def overlattice_index(over: Lattice):
    """Index [over : parent] for an overlattice carrying parent_basis."""
    pb = [list(r) for r in over.parent_basis]
    d = ea.frac_det(pb)
    return abs(Fraction(1) / d)
