"""Rank-26 even unimodular models built by gluing the doubled rank-10
lattice to a rank-16 negative definite complement.

The model keeps its basis expressed over the orthogonal sum coordinates, so
both orthogonal projections are coordinate splits and no isometry to any
standard rank-26 shape is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import exactalg as ea
from .catalog import e10, e10_doubled
from .fqf import GlueMap, discriminant_form, find_glue_isomorphism, negate
from .lattice import (
    Lattice,
    discriminant_generators,
    overlattice_from_glue,
    overlattice_index,
    saturation_index,
)

Fr = Fraction


@dataclass(frozen=True)
class EmbeddingModel:
    """L = glue(S, R): primitive S of rank 10 and its complement R."""

    lattice: Lattice  # rank 26, even, unimodular, signature (1,25)
    s_lattice: Lattice  # the doubled rank-10 lattice
    r_lattice: Lattice  # rank-16 negative definite complement
    s_basis: tuple  # 10 x 26 int rows: images of the S basis in model coords
    r_basis: tuple  # 16 x 26 int rows
    glue: GlueMap

    @cached_property
    def _ambient(self):
        """Model basis rows over the (S + R) coordinate system."""
        return [list(r) for r in self.lattice.parent_basis]

    @cached_property
    def _ambient_inv(self):
        return ea.inv_frac(self._ambient)

    @property
    def gram(self):
        return self.lattice.gram_rows()

    def pair(self, u, v):
        return self.lattice.pair(u, v)

    def norm(self, v):
        return self.lattice.pair(v, v)

    def iota(self, v10):
        """Image in model coordinates of a vector given in S/L10 coordinates."""
        return ea.mat_vec(list(v10), [list(r) for r in self.s_basis])

    def include_r(self, v16):
        return ea.mat_vec(list(v16), [list(r) for r in self.r_basis])

    def split(self, v):
        """Projections (v_S, v_R): coordinates over the S resp. R bases.

        v_S is the S^v-component written in S coordinates (rational), v_R the
        R^v-component in R coordinates.
        """
        amb = ea.mat_vec([Fr(x) for x in v], self._ambient)
        return amb[:10], amb[10:]

    def from_parts(self, s_coords, r_coords):
        """Model coordinates of s + r if the sum lies in the model, else None."""
        amb = [Fr(x) for x in s_coords] + [Fr(x) for x in r_coords]
        v = ea.mat_vec(amb, self._ambient_inv)
        if all(x.denominator == 1 for x in v):
            return [int(x) for x in v]
        return None

    def contains_sum(self, s_coords, r_coords):
        return self.from_parts(s_coords, r_coords) is not None


def build_embedding(r: Lattice, glue: GlueMap | None = None,
                    s: Lattice | None = None) -> EmbeddingModel:
    """Glue S (doubled rank-10) with R along an anti-isometry of forms."""
    s = s or e10_doubled()
    qs = discriminant_form(s)
    qr = discriminant_form(r)
    if glue is None:
        glue = find_glue_isomorphism(qs, negate(qr))
        if glue is None:
            raise ValueError("no anti-isometry between the discriminant forms")
    if not glue.is_valid():
        raise ValueError("glue map is not an isometry of forms")
    _, gens_s = discriminant_generators(s)
    _, gens_r = discriminant_generators(r)
    glue_rows = []
    for i, gen in enumerate(gens_s):
        img = glue.matrix[i]
        lift = [Fr(0)] * r.rank
        for j, bit in enumerate(img):
            if bit:
                lift = [a + b for a, b in zip(lift, gens_r[j])]
        glue_rows.append(list(gen) + lift)
    over = overlattice_from_glue(s, r, glue_rows, name=f"glue({s.name},{r.name})")
    if not over.is_even() or abs(over.det) != 1:
        raise AssertionError("glue failed to produce an even unimodular lattice")
    sig = over.signature
    if (sig.positive, sig.negative) != (1, 25):
        raise AssertionError(f"unexpected signature {sig}")
    if overlattice_index(over) != 1 << 10:
        raise AssertionError("overlattice index must be 2^10")
    inv = ea.inv_frac([list(rr) for rr in over.parent_basis])
    s_rows = []
    r_rows = []
    for i in range(26):
        unit = [Fr(int(j == i)) for j in range(26)]
        coords = ea.mat_vec(unit, inv)
        assert all(x.denominator == 1 for x in coords)
        coords = [int(x) for x in coords]
        if i < 10:
            s_rows.append(tuple(coords))
        else:
            r_rows.append(tuple(coords))
    model = EmbeddingModel(over, s, r, tuple(s_rows), tuple(r_rows), glue)
    # primitivity of both factors
    if saturation_index(over, [list(rr) for rr in s_rows]) != 1:
        raise AssertionError("S is not primitive in the model")
    if saturation_index(over, [list(rr) for rr in r_rows]) != 1:
        raise AssertionError("R is not primitive in the model")
    return model
