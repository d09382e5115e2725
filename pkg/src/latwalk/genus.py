"""Genus bookkeeping for even lattices with 2-elementary discriminant:
mass formula, p-neighbors, and classification by a random neighbor walk.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from . import exactalg as ea
from .definite import automorphism_group, fingerprint, is_isometric
from .fqf import FiniteQuadraticForm, discriminant_form, find_glue_isomorphism
from .lattice import Lattice, Signature, discriminant_group

Fr = Fraction


class UnsupportedGenus(ValueError):
    pass


@dataclass(frozen=True)
class GenusDescriptor:
    """Signature + evenness + the 2-adic Jordan data of a 2-elementary genus."""

    signature: Signature
    even: bool
    scale1_dim: int
    scale2_dim: int
    eps1: int  # +1/-1, 0 if the unimodular block is empty
    eps2: int  # +1/-1, 0 if the 2-elementary block is empty
    qform: FiniteQuadraticForm

    @property
    def rank(self):
        return self.signature.positive + self.signature.negative

    def describe(self):
        parts = []
        if self.scale1_dim:
            parts.append(f"1^{'+' if self.eps1 > 0 else '-'}{self.scale1_dim}")
        if self.scale2_dim:
            parts.append(f"2^{'+' if self.eps2 > 0 else '-'}{self.scale2_dim}")
        return " ".join(parts) or "1^0"


def _unit_mod8(x):
    m = x % 8
    if m not in (1, 3, 5, 7):
        raise UnsupportedGenus(f"determinant unit {x} is even")
    return m


def _eps_from_qform(q: FiniteQuadraticForm):
    """+1 for u^t, -1 for u^(t-1) v, decided by the isotropic count."""
    a = q.k
    if a == 0:
        return 0
    if a % 2 != 0:
        raise UnsupportedGenus("odd 2-elementary block (type I) not supported")
    if not q.is_integer_valued():
        raise UnsupportedGenus("half-integer discriminant values (type I block)")
    t = a // 2
    iso = q.isotropic_count()
    if iso == (1 << (2 * t - 1)) + (1 << (t - 1)):
        return 1
    if iso == (1 << (2 * t - 1)) - (1 << (t - 1)):
        return -1
    raise UnsupportedGenus("discriminant form is not a sum of even binary blocks")


def genus_of(lat: Lattice) -> GenusDescriptor:
    """Genus descriptor of an even lattice with 2-elementary discriminant."""
    if not lat.is_even():
        raise UnsupportedGenus("odd lattice")
    orders = discriminant_group(lat)
    if any(d != 2 for d in orders):
        raise UnsupportedGenus("discriminant group not 2-elementary")
    a = len(orders)
    n = lat.rank
    q = discriminant_form(lat)
    eps2 = _eps_from_qform(q)
    n1 = n - a
    det = lat.det
    if abs(det) != 1 << a:
        raise AssertionError("2-elementary lattice must have |det| = 2^a")
    if n1 == 0:
        eps1 = 0
    else:
        unit = _unit_mod8(det >> a if det > 0 else -((-det) >> a))
        # det(U^t) = 7^t, det(U^(t-1) V) = 7^(t-1) * 3  (mod 8)
        if n1 % 2 != 0:
            raise UnsupportedGenus("odd-dimensional unimodular 2-adic block")
        t1, t2 = n1 // 2, a // 2
        if eps2 == 1:
            b2 = pow(7, t2, 8)
        elif eps2 == -1:
            b2 = (pow(7, t2 - 1, 8) * 3) % 8
        else:
            b2 = 1
        want = (unit * pow(b2, -1, 8)) % 8
        if want == pow(7, t1, 8):
            eps1 = 1
        elif t1 >= 1 and want == (pow(7, t1 - 1, 8) * 3) % 8:
            eps1 = -1
        else:
            raise UnsupportedGenus(f"unit {unit} incompatible with block data")
    return GenusDescriptor(lat.signature, True, n1, a, eps1, eps2, q)


def genus_member_check(lat: Lattice, g: GenusDescriptor) -> bool:
    """Signature + evenness + discriminant form decide the genus here."""
    if lat.signature != g.signature or not lat.is_even():
        return False
    orders = discriminant_group(lat)
    if any(d != 2 for d in orders) or len(orders) != g.scale2_dim:
        return False
    q = discriminant_form(lat)
    return find_glue_isomorphism(q, g.qform) is not None


# ---------------------------------------------------------------------------
# mass formula


def siegel_mass_even_unimodular(n: int) -> Fraction:
    """Mass of the even unimodular genus of rank n (n = 0 mod 8)."""
    if n % 8 != 0 or n <= 0:
        raise UnsupportedGenus("even unimodular lattices need rank = 0 mod 8")
    s = n // 2
    bs = ea.bernoulli_numbers(max(s, 2 * (s - 1)))
    m = Fr(abs(bs[s]), 2 * s)
    for j in range(1, s):
        m *= Fr(abs(bs[2 * j]), 4 * j)
    return m


def _block_factor(t: int, eps: int) -> Fraction:
    """Reciprocal group-density factor of an even 2-adic block of dim 2t."""
    if t == 0:
        return Fr(1)
    d = Fr(2) * (1 - eps * Fr(1, 1 << t))
    for i in range(1, t):
        d *= 1 - Fr(1, 1 << (2 * i))
    return 1 / d


def genus_mass(g: GenusDescriptor) -> Fraction:
    """Exact mass of a definite even 2-elementary genus (type II blocks).

    Normalized against the even unimodular genus of the same rank, which
    pins all archimedean and odd-prime factors; the remaining 2-adic ratio
    is the product of block factors times the scale cross term.
    """
    n = g.rank
    if g.signature.positive and g.signature.negative:
        raise UnsupportedGenus("definite genus required")
    if n == 1:
        return Fr(1, 2)  # single class, O = {+-1}
    if (n1d := g.scale1_dim * g.scale2_dim) % 2 != 0:
        raise UnsupportedGenus("odd cross-term exponent")
    base = siegel_mass_even_unimodular(n)
    m2 = _block_factor(g.scale1_dim // 2, g.eps1) * _block_factor(g.scale2_dim // 2, g.eps2)
    m2 *= Fr(1 << (n1d // 2))
    m2_std = _block_factor(n // 2, 1)
    return base * m2 / m2_std


def genus_mass_of_lattice(lat: Lattice) -> Fraction:
    return genus_mass(genus_of(lat))


# ---------------------------------------------------------------------------
# neighbors


def p_neighbor(lat: Lattice, v, p: int) -> Lattice:
    """The p-neighbor L(v) = L_v + Z(v/p).

    Preconditions: p an odd prime not dividing det, v in L \\ pL with
    <v,v> = 0 mod p^2 (an even lattice keeps the result even).
    """
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    if lat.det % p == 0:
        raise ValueError("p divides the determinant")
    n = lat.rank
    v = [int(x) for x in v]
    if all(x % p == 0 for x in v):
        raise ValueError("v lies in pL")
    nv = lat.norm(v)
    if nv % (p * p) != 0:
        raise ValueError("<v,v> must be divisible by p^2")
    gv = ea.mat_vec(v, lat.gram_rows())  # pairing functional values
    j = next((i for i in range(n) if gv[i] % p != 0), None)
    if j is None:
        raise AssertionError("v pairs to 0 mod p with everything (det divisible by p?)")
    inv = pow(gv[j] % p, -1, p)
    rows = []
    for i in range(n):
        if i == j:
            continue
        c = (gv[i] * inv) % p
        row = [0] * n
        row[i] = 1
        row[j] = -c
        rows.append(row)
    pj = [0] * n
    pj[j] = p
    rows.append(pj)
    # rows span L_v; add v/p by scaling everything by p and running HNF
    scaled = [[p * x for x in row] for row in rows]
    scaled.append(v)
    h, piv = ea.hnf(scaled)
    assert len(piv) == n
    basis = [[Fr(x, p) for x in h[i]] for i in range(n)]
    gram = ea.mat_mul(ea.mat_mul(basis, lat.gram_rows()), ea.transpose(basis))
    out = []
    for row in gram:
        r = []
        for x in row:
            assert x.denominator == 1, "neighbor is not integral"
            r.append(int(x))
        out.append(r)
    res = Lattice.from_gram(out)
    assert res.det == lat.det, "neighbor must preserve the determinant"
    assert res.is_even(), "neighbor of an even lattice must stay even"
    return res


def random_neighbor_vector(lat: Lattice, rng: Random, p: int = 3):
    """Sample v per the walk recipe: uniform nonzero class mod p with norm
    divisible by p, then adjusted by +p*w so the norm is divisible by p^2."""
    n = lat.rank
    while True:
        v = [rng.randrange(p) for _ in range(n)]
        if all(x == 0 for x in v):
            continue
        if lat.norm(v) % p == 0:
            break
    nv = lat.norm(v)
    k = (nv // p) % p
    if k:
        gv = ea.mat_vec(v, lat.gram_rows())
        j = next(i for i in range(n) if gv[i] % p != 0)
        # norm(v + p*c*e_j) = norm(v) + 2*p*c*<v,e_j> mod p^2
        c = (-k * pow(2 * gv[j], -1, p)) % p
        v = [x + (p * c if i == j else 0) for i, x in enumerate(v)]
    assert lat.norm(v) % (p * p) == 0
    return v


# ---------------------------------------------------------------------------
# classification walk


class WalkUnfinished(RuntimeError):
    def __init__(self, classes, mass_acc, mass_target):
        super().__init__(
            f"walk hit the iteration budget at mass {mass_acc} / {mass_target}"
        )
        self.classes = classes
        self.mass_acc = mass_acc
        self.mass_target = mass_target


@dataclass
class GenusClass:
    lattice: Lattice
    aut_order: int
    fp: tuple


class ClassList:
    """Accumulated genus classes with their automorphism orders."""

    def __init__(self, target_mass: Fraction):
        self.classes: list[GenusClass] = []
        self.target_mass = target_mass

    @property
    def mass(self):
        return sum((Fr(1, c.aut_order) for c in self.classes), Fr(0))

    def find_isometric(self, lat: Lattice):
        fp = fingerprint(lat.gram)
        for c in self.classes:
            if c.fp == fp and is_isometric(lat, c.lattice) is not None:
                return c
        return None

    def add(self, lat: Lattice, aut_order: int):
        self.classes.append(GenusClass(lat, aut_order, fingerprint(lat.gram)))

    def sorted_classes(self):
        return sorted(self.classes, key=lambda c: c.fp)

    def fingerprint_set(self):
        return frozenset(c.fp for c in self.classes)


def _reduced(lat: Lattice) -> Lattice:
    sign = 1 if lat.signature.negative == 0 else -1
    g = lat.gram_rows()
    if sign < 0:
        g = [[-x for x in row] for row in g]
    red, _ = ea.lll_gram(g)
    if sign < 0:
        red = [[-x for x in row] for row in red]
    return Lattice.from_gram(red)


def classify_by_random_walk(
    seed: Lattice,
    p: int = 3,
    rng_seed: int = 0,
    max_iter: int = 100000,
    checkpoint_dir=None,
    known_orders=None,
) -> ClassList:
    """Classify the genus of ``seed`` by random p-neighbor steps.

    Stops exactly when the accumulated mass matches the genus mass.  A
    ``known_orders`` list of (lattice, order) pairs lets a rerun reuse
    already-verified automorphism orders (each reuse is re-checked by an
    exact isometry test).
    """
    g = genus_of(seed)
    target = genus_mass(g)
    rng = Random(rng_seed)
    cl = ClassList(target)
    known = list(known_orders or [])

    def aut_order_of(lat: Lattice):
        for ref, order in known:
            if fingerprint(ref.gram) == fingerprint(lat.gram) and is_isometric(lat, ref) is not None:
                return order
        return automorphism_group(lat).order

    first = _reduced(seed)
    if not genus_member_check(first, g):
        raise ValueError("seed fails its own genus check")
    cl.add(first, aut_order_of(first))
    _checkpoint(cl, checkpoint_dir)
    it = 0
    while cl.mass != target:
        if cl.mass > target:
            raise AssertionError("accumulated mass exceeded the genus mass")
        if it >= max_iter:
            raise WalkUnfinished(cl, cl.mass, target)
        it += 1
        base = cl.classes[rng.randrange(len(cl.classes))].lattice
        v = random_neighbor_vector(base, rng, p)
        nb = _reduced(p_neighbor(base, v, p))
        if cl.find_isometric(nb) is None:
            if not genus_member_check(nb, g):
                raise AssertionError("neighbor left the genus")
            cl.add(nb, aut_order_of(nb))
            _checkpoint(cl, checkpoint_dir)
    return cl


def _checkpoint(cl: ClassList, directory):
    if not directory:
        return
    os.makedirs(directory, exist_ok=True)
    data = {
        "target_mass": str(cl.target_mass),
        "classes": [
            {"gram": [list(r) for r in c.lattice.gram], "aut_order": str(c.aut_order)}
            for c in cl.classes
        ],
    }
    path = os.path.join(directory, "classes_checkpoint.json")
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh)
    os.replace(tmp, path)


def resume_from_checkpoint(directory) -> list:
    path = os.path.join(directory, "classes_checkpoint.json")
    with open(path) as fh:
        data = json.load(fh)
    return [
        (Lattice.from_gram(c["gram"]), int(c["aut_order"])) for c in data["classes"]
    ]
