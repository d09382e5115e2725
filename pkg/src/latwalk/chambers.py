"""Hyperbolic chamber machinery on rank-26 models.

All points are rational rows; chamber decisions are exact sign tests.  Walls
of an induced chamber are stored as their doubles: integer (-2)-vectors of
the rank-10 lattice (the actual wall vectors are these divided by two).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from random import Random

from . import exactalg as ea
from .catalog import e10, e10_interior_point, e10_null_vector
from .definite import RootSystemType, dynkin_type, enumerate_short
from .embedding import EmbeddingModel
from .kernel import enumerate_coset, enumerate_upto
from .lattice import Lattice, orthogonal_complement

Fr = Fraction


class TieError(RuntimeError):
    """Segment hits two hyperplanes at the same parameter: re-perturb."""


class InftyClassError(ValueError):
    """Chamber machinery is undefined when the projected Weyl norm vanishes."""


@dataclass(frozen=True)
class WeylVector:
    coords: tuple  # model coordinates, integer
    quotient_root_count: int  # certificate: 0

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class InducedChamber:
    weyl: WeylVector
    interior: tuple  # rational point of the rank-10 positive cone (L10 coords)
    walls: tuple  # doubled wall vectors: integer (-2)-rows of L10
    w_s: tuple  # Weyl projection in L10 coordinates (rational)
    w_r: tuple  # Weyl projection in R coordinates (rational)

    @property
    def n_w(self):
        g = e10().gram_rows()
        return ea.pair(list(self.w_s), g, list(self.w_s))

    @property
    def d_w(self):
        return ea.lcm_den(self.w_s)


# ---------------------------------------------------------------------------
# fixed rank-10 data


def vinberg_chamber_walls():
    """The 10 root basis vectors cutting out the standard chamber."""
    return [[int(i == j) for j in range(10)] for i in range(10)]


def interior_point():
    return e10_interior_point()


def reflection_matrix(gram, r):
    """Matrix (rows = images) of the reflection in a (-2)-vector r."""
    n = len(gram)
    gr = ea.mat_vec(list(r), gram)  # pairing functional values <e_a, r>
    assert ea.pair(list(r), gram, list(r)) == -2
    m = [[int(a == b) for b in range(n)] for a in range(n)]
    for a in range(n):
        if gr[a]:
            for b in range(n):
                m[a][b] += gr[a] * r[b]
    return m


def reflect_vector(gram, v, r):
    """v + <v,r> r for a (-2)-vector r (exact, works on rational rows)."""
    c = ea.pair(list(v), gram, list(r))
    return [x + c * y for x, y in zip(v, r)]


# ---------------------------------------------------------------------------
# roots of sublattices of the model


def _complement_roots(lat: Lattice, constraint_rows):
    """Sign-classes of (-2)-vectors of lat orthogonal to the given rows."""
    sub = orthogonal_complement(lat, constraint_rows)
    res = enumerate_short(sub.gram_rows(), 2)
    out = []
    for v, q in res:
        if q == -2:
            out.append(tuple(int(x) for x in sub.to_parent(list(v))))
    return sorted(out)


def roots_orthogonal_to(model: EmbeddingModel, h):
    """Sign-classes of model roots pairing to zero with the rational row h."""
    hh, _ = ea.clear_denominators([[Fr(x) for x in h]])
    return _complement_roots(model.lattice, [ea.primitive_part(hh[0])])


def r_root_images(model: EmbeddingModel):
    """Sign-classes of the roots of R, pushed into model coordinates."""
    res = enumerate_short(model.r_lattice.gram_rows(), 2)
    out = []
    for v, q in res:
        if q == -2:
            out.append(tuple(model.include_r(list(v))))
    return sorted(out)


def _sign_normalize(vecs):
    out = set()
    for v in vecs:
        w = tuple(v)
        for x in w:
            if x:
                if x < 0:
                    w = tuple(-t for t in w)
                break
        out.add(w)
    return out


def interiority_equality_holds(model: EmbeddingModel, point10) -> bool:
    """Roots through iota(point) are exactly the R-roots (the interior test)."""
    lhs = _sign_normalize(roots_orthogonal_to(model, model.iota(point10)))
    rhs = _sign_normalize(r_root_images(model))
    return lhs == rhs


# ---------------------------------------------------------------------------
# separating roots and the chamber walk


def _integerize(v):
    rows, den = ea.clear_denominators([[Fr(x) for x in v]])
    return ea.primitive_part(rows[0])


def separating_roots(lat: Lattice, v_from, v_to):
    """(-2)-vectors separating two positive-norm rational points, ordered by
    the crossing parameter along the segment from v_from to v_to.

    Returns [(root, t)] with roots normalized to pair positively with v_to.
    Raises TieError when two distinct hyperplanes share a crossing point.
    """
    g = lat.gram_rows()
    ha = _integerize(v_to)
    hb = _integerize(v_from)
    p = ea.pair(ha, g, ha)
    s = ea.pair(hb, g, hb)
    q = ea.pair(ha, g, hb)
    if p <= 0 or s <= 0:
        raise ValueError("separating_roots needs positive-norm endpoints")
    disc = q * q - p * s
    if disc <= 0:
        if disc < 0:
            raise AssertionError("pair of positive vectors must span (1,1)")
        return []  # proportional rays: nothing separates
    tcap = 2 * disc
    n = lat.rank
    # pairing map and its kernel
    m2 = [[ea.pair([int(i == j) for j in range(n)], g, hh) for hh in (ha, hb)] for i in range(n)]
    h, u, piv = ea.hnf(m2, transform=True)
    rank2 = len(piv)
    if rank2 != 2:
        raise AssertionError("independent endpoints expected")
    kern = [u[i] for i in range(2, n)]
    kg = ea.mat_mul(kern, g)
    kgram = ea.mat_mul(kg, ea.transpose(kern))
    red, ured = ea.lll_gram([[-x for x in row] for row in kgram])
    kb = ea.mat_mul(ured, kern)  # reduced kernel basis rows
    kbg = ea.mat_mul(kb, g)
    kgram_red = [[-x for x in row] for row in red]  # negative definite
    inv = ea.inv_frac([[Fr(x) for x in row] for row in red])  # inverse of the positive gram
    den = ea.lcm_den(x for row in inv for x in row)
    adj = [[int(x * den) for x in row] for row in inv]

    found = []
    # iterate only over the image sublattice of the pairing map: members are
    # (a, b) = cq0 (d1, e1) + cq1 (0, d2) for the 2x2 HNF of that image,
    # with the lifted representative cq0 u[0] + cq1 u[1]
    if piv != [0, 1]:
        raise AssertionError("pairing image must project onto both coordinates")
    d1, e1, d2 = h[0][0], h[0][1], h[1][1]
    kgram_pos = [[-x for x in row] for row in kgram_red]
    kbg_t = ea.transpose(kbg)
    w_u0 = ea.mat_vec(u[0], kbg_t)
    w_u1 = ea.mat_vec(u[1], kbg_t)
    c_u0 = ea.mat_vec([-x for x in w_u0], adj)  # center numerators, per unit cq0
    c_u1 = ea.mat_vec([-x for x in w_u1], adj)
    amax = ea.isqrt_floor_frac(Fr(tcap, p))
    for a in range(d1, amax + 1, d1):
        aa = p * a * a - tcap
        disc_b = (q * a) ** 2 - s * aa
        if disc_b < 0:
            continue
        bmax_abs = (-(q * a) + isqrt(disc_b)) // s + 1
        cq0 = a // d1
        base = cq0 * e1
        b = base + ((-1 - base) // d2) * d2
        while b >= -bmax_abs:
            num = s * a * a - 2 * q * a * b + p * b * b
            if num <= tcap:
                cq1 = (b - base) // d2
                tpos = 2 - Fr(num, disc)
                cnum = [cq0 * x0 + cq1 * x1 for x0, x1 in zip(c_u0, c_u1)]
                hits = enumerate_coset(kgram_pos, 2 * disc - num, disc, cnum, den)
                if hits:
                    r0 = [cq0 * x0 + cq1 * x1 for x0, x1 in zip(u[0], u[1])]
                    for z, qq in hits:
                        if qq != tpos:
                            continue
                        r = list(r0)
                        for zi, row in zip(z, kb):
                            if zi:
                                r = [rv + zi * rw for rv, rw in zip(r, row)]
                        assert ea.pair(r, g, r) == -2
                        assert ea.pair(r, g, ha) == a and ea.pair(r, g, hb) == b
                        t = Fr(-b, a - b)
                        found.append((t, tuple(r)))
            b -= d2
    found.sort(key=lambda it: (it[0], it[1]))
    for i in range(len(found) - 1):
        if found[i][0] == found[i + 1][0]:
            raise TieError(f"two walls crossed at t = {found[i][0]}")
    return [(r, t) for t, r in found]


def walk_to_chamber(model: EmbeddingModel, w0, a26, target):
    """Reflect the Weyl vector through all separating walls, in order.

    Returns (w, transported a26).  Postcondition (re-validated): nothing
    separates the transported interior point from the target.
    """
    g = model.gram
    seps = separating_roots(model.lattice, a26, target)
    w = list(w0)
    a = [Fr(x) for x in a26]
    for r, _t in seps:
        w = reflect_vector(g, w, r)
        a = reflect_vector(g, a, r)
    if separating_roots(model.lattice, a, target):
        raise AssertionError("chamber walk failed to reach the target chamber")
    return [int(x) for x in w], a


def perturb_interior(model: EmbeddingModel, a10, rng_seed: int):
    """A rational interior point near a10, still interior to the same
    induced chamber, suitable as a generic walk target."""
    base = [Fr(x) for x in a10]
    rng = Random(rng_seed)
    for attempt in range(32):
        k = 4 + attempt
        d = [rng.randrange(-8, 9) for _ in range(10)]
        cand = [b + Fr(x, 1 << k) for b, x in zip(base, d)]
        lat10 = e10()
        if ea.pair(cand, lat10.gram_rows(), cand) <= 0:
            continue
        if not interiority_equality_holds(model, cand):
            continue
        try:
            if separating_roots(model.lattice, model.iota(a10), model.iota(cand)):
                continue
        except TieError:
            continue
        return cand
    raise RuntimeError("perturbation retry budget exhausted")


# ---------------------------------------------------------------------------
# Weyl vectors


def _solve_pairing_one(lat: Lattice, w):
    col = ea.mat_vec(list(w), lat.gram_rows())
    sol = ea.solve_left_int([[c] for c in col], [1])
    if sol is None:
        raise ValueError("vector is not primitive")
    return sol


def _null_complement(model: EmbeddingModel, w):
    """(f, g, K): hyperbolic pair completing w plus the rank-24 complement."""
    lat = model.lattice
    x = _solve_pairing_one(lat, w)
    nx = lat.norm(x)
    lam = -(nx // 2)
    gvec = [xi + lam * wi for xi, wi in zip(x, w)]
    assert lat.norm(gvec) == 0 and lat.pair(w, gvec) == 1
    sub = orthogonal_complement(lat, [list(w), gvec])
    assert sub.rank == 24
    return gvec, sub


def is_weyl_vector(model: EmbeddingModel, w):
    """(bool, root_count) for a primitive isotropic model vector."""
    lat = model.lattice
    w = [int(x) for x in w]
    if lat.norm(w) != 0:
        raise ValueError("Weyl candidates must be isotropic")
    if ea.content(w) != 1:
        raise ValueError("Weyl candidates must be primitive")
    _, sub = _null_complement(model, w)
    assert abs(sub.det) == 1 and sub.is_even()
    res = enumerate_short(sub.gram_rows(), 2)
    count = 2 * sum(1 for _, qq in res if qq == -2)
    return count == 0, count


_COXETER = {"A": lambda n: n + 1, "D": lambda n: 2 * n - 2,
            "E": lambda n: {6: 12, 7: 18, 8: 30}[n]}


def find_weyl_vector(model: EmbeddingModel) -> WeylVector:
    """A Weyl vector of the model: start from an isotropic vector of the
    rank-10 factor and apply the Leech-ification replacement if the
    complement splitting has roots."""
    lat = model.lattice
    w = model.iota(e10_null_vector())
    assert lat.norm(w) == 0
    w = ea.primitive_part(w)
    ok, count = is_weyl_vector(model, w)
    if not ok:
        gvec, sub = _null_complement(model, w)
        rootcls = [list(v) for v, qq in enumerate_short(sub.gram_rows(), 2) if qq == -2]
        both = rootcls + [[-x for x in v] for v in rootcls]
        h = (2 * len(rootcls)) // 24
        if 24 * h != 2 * len(rootcls):
            raise AssertionError("quotient root count is not 24h")
        simples = _simple_system_rows(sub.gram_rows(), both)
        comp_type = dynkin_type([tuple(s) for s in simples], Lattice(ea.mat_freeze(sub.gram_rows())))
        for letter, nn in comp_type:
            if _COXETER[letter](nn) != h:
                raise AssertionError("mixed Coxeter numbers in a Niemeier splitting")
        rho = _weyl_rho(sub.gram_rows(), simples)
        rho_model = [Fr(0)] * 26
        for c, row in zip(rho, sub.parent_basis):
            rho_model = [rv + c * Fr(x) for rv, x in zip(rho_model, row)]
        wnew = [rm + h * Fr(wi) + (h + 1) * Fr(gi) for rm, wi, gi in zip(rho_model, w, gvec)]
        assert all(x.denominator == 1 for x in wnew), "integral Weyl replacement expected"
        w = ea.primitive_part([int(x) for x in wnew])
        ok, count = is_weyl_vector(model, w)
        if not ok:
            raise AssertionError("holy-construction replacement failed to be rootless")
    # orient toward the positive cone of the embedded rank-10 factor
    h10 = model.iota(interior_point())
    pr = lat.pair(w, h10)
    assert pr != 0
    if pr < 0:
        w = [-x for x in w]
    return WeylVector(tuple(w), 0)


def _simple_system_rows(gram, both_roots):
    big = 2 * max(abs(x) for r in both_roots for x in r) + 3
    pos = []
    for r in both_roots:
        val = 0
        for x in r:
            val = val * big + x
        if val > 0:
            pos.append(tuple(r))
    pos_set = set(pos)
    simples = []
    for r in pos:
        if any(tuple(a - b for a, b in zip(r, p)) in pos_set for p in pos if p != r):
            continue
        simples.append(list(r))
    return simples


def _weyl_rho(gram, simples):
    """rho with <rho, alpha> = -1 for every simple alpha (negative definite)."""
    if len(simples) != len(gram):
        raise AssertionError("simple system must have full rank here")
    a = ea.mat_mul(simples, gram)  # rows: functionals alpha . gram
    rhs = [Fr(-1)] * len(simples)
    return ea.solve_left_frac(ea.transpose(a), rhs)


def conway_interior_point(model: EmbeddingModel, w, variant: int = 0):
    """An interior point of the chamber of w: 2w + w' shifted generically.

    The base point is 2w + w' with w' isotropic, <w, w'> = 1.  Nonzero
    variants add a small seeded vector from the rank-16 factor, which breaks
    crossing ties invisible to perturbations of the rank-10 side; the shifted
    point is certified interior exactly (positive norm, on no mirror, nothing
    separating it from the base point) before use.
    """
    lat = model.lattice
    x = _solve_pairing_one(lat, list(w))
    lam = -(lat.norm(x) // 2)
    wp = [xi + lam * wi for xi, wi in zip(x, w)]
    assert lat.norm(wp) == 0 and lat.pair(list(w), wp) == 1
    base = [2 * wi + wpi for wi, wpi in zip(w, wp)]
    assert lat.norm(base) == 4
    h10 = model.iota(interior_point())
    if lat.pair(base, h10) < 0:
        raise AssertionError("interior point landed in the opposite cone")
    if not variant:
        return base
    rng = Random(variant)
    for _ in range(24):
        z = [0] * lat.rank
        for row in model.r_basis:
            c = rng.randrange(-9, 10)
            if c:
                z = [zv + c * rv for zv, rv in zip(z, row)]
        # scale the base up so the shifted point keeps positive norm
        k = 1 - min(0, lat.norm(z)) // 2
        cand = [k * bv + zv for bv, zv in zip(base, z)]
        if lat.norm(cand) <= 0 or lat.pair(cand, h10) <= 0:
            continue
        if roots_orthogonal_to(model, cand):
            continue
        if separating_roots(lat, base, cand):
            continue
        return cand
    raise RuntimeError("could not shift the chamber interior point")


def build_chamber(model: EmbeddingModel, rng_seed: int = 0, max_attempts: int = 24):
    """Full per-class chamber construction with tie-driven retries.

    Perturbs the standard interior point, finds/walks a Weyl vector, and
    computes the wall set; on a tie both the perturbation and the Conway
    interior point are re-randomized.
    """
    a10 = interior_point()
    if not interiority_equality_holds(model, a10):
        raise AssertionError("interiority equality fails at the standard point")
    w0 = find_weyl_vector(model)
    last = None
    for attempt in range(max_attempts):
        try:
            a10p = perturb_interior(model, a10, rng_seed=rng_seed + 101 * attempt)
            a26 = conway_interior_point(model, list(w0.coords), variant=attempt)
            target = model.iota(a10p)
            wn, _ = walk_to_chamber(model, list(w0.coords), a26, target)
            weyl = WeylVector(tuple(wn), 0)
            return induced_chamber_walls(model, weyl, interior=a10)
        except TieError as exc:
            last = exc
            continue
    raise RuntimeError(f"chamber construction kept hitting ties: {last}")


# ---------------------------------------------------------------------------
# walls of the induced chamber


def induced_chamber_walls(model: EmbeddingModel, w, interior=None) -> InducedChamber:
    """Finite wall set of the induced chamber of the Weyl vector w."""
    lat = model.lattice
    g10 = e10().gram_rows()
    w_s, w_r = model.split(list(w))
    n_w = ea.pair(list(w_s), g10, list(w_s))
    if n_w <= 0:
        raise InftyClassError("projected Weyl vector has nonpositive norm")
    w2 = [2 * x for x in w_s]
    assert all(Fr(x).denominator == 1 for x in w2)
    w2 = [int(x) for x in w2]
    gr = model.r_lattice.gram_rows()
    grinv = ea.inv_frac(gr)
    gram_dual2 = [[2 * x for x in row] for row in grinv]
    assert all(x.denominator == 1 for x in (y for row in gram_dual2 for y in row))
    gram_dual2 = [[int(x) for x in row] for row in gram_dual2]
    vr_half = [v for v, q in enumerate_short(gram_dual2, 2) if q == -2]
    vr_all = [list(v) for v in vr_half] + [[-x for x in v] for v in vr_half]
    # group by the wall-level a-value: a(v) = 1 - <w_R, v>, doubled to stay integral
    w_r_frac = [Fr(x) for x in w_r]
    groups = {}
    for v in vr_all:
        a2 = 2 - 2 * sum(wx * vx for wx, vx in zip(w_r_frac, v))  # 2*a(v)
        assert a2.denominator == 1
        groups.setdefault(int(a2), []).append(v)
    walls = set()
    pairs_checked = 0
    for a2, vs in sorted(groups.items()):
        xs = _roots_with_pairing(g10, w2, a2, -2)
        if not xs:
            continue
        for v in vs:
            v_rcoords = ea.mat_vec(v, grinv)  # dual-basis -> R-basis coords
            for x in xs:
                s_half = [Fr(xi, 2) for xi in x]
                pairs_checked += 1
                if model.contains_sum(s_half, v_rcoords):
                    walls.add(tuple(x))
    walls = sorted(walls)
    if not walls:
        raise AssertionError("empty wall set for a non-degenerate chamber")
    a10 = interior or interior_point()
    for x in walls:
        assert ea.pair(list(x), g10, list(x)) == -2
        assert ea.pair(list(a10), g10, list(x)) > 0, "interior point must see all walls positively"
        assert tuple(-t for t in x) not in set(walls)
    h, piv = ea.hnf([list(x) for x in walls])
    assert len(piv) == 10, "walls must span the rank-10 space"
    return InducedChamber(
        weyl=w if isinstance(w, WeylVector) else WeylVector(tuple(int(x) for x in w), 0),
        interior=tuple(Fr(x) for x in a10),
        walls=tuple(tuple(x) for x in walls),
        w_s=tuple(Fr(x) for x in w_s),
        w_r=tuple(Fr(x) for x in w_r),
    )


def _roots_with_pairing(g10, w2, m, norm):
    """{x in L10 : <x,x> = norm, <w2, x> = m} by a definite coset enumeration."""
    col = ea.mat_vec(w2, g10)
    x0 = ea.solve_left_int([[c] for c in col], [m])
    if x0 is None:
        return []
    lat10 = e10()
    sub = orthogonal_complement(lat10, [w2])
    kb = [list(r) for r in sub.parent_basis]
    kb = [[int(x) for x in row] for row in kb]
    kgram = sub.gram_rows()
    nw2 = ea.pair(w2, g10, w2)
    target = Fr(norm) - Fr(m * m, nw2)
    tpos = -target
    if tpos < 0:
        return []
    kg = ea.mat_mul(kb, g10)
    w24 = ea.mat_vec(x0, ea.transpose(kg))
    inv = ea.inv_frac([[Fr(-x) for x in row] for row in kgram])
    den = ea.lcm_den(x for row in inv for x in row)
    adj = [[int(x * den) for x in row] for row in inv]
    cnum = ea.mat_vec([-x for x in w24], adj)
    center = [Fr(x, den) for x in cnum]
    hits = enumerate_upto([[-x for x in row] for row in kgram], tpos, center=center)
    out = []
    for z, qq in hits:
        if qq != tpos:
            continue
        x = list(x0)
        for zi, row in zip(z, kb):
            if zi:
                x = [xv + zi * rw for xv, rw in zip(x, row)]
        assert ea.pair(x, g10, x) == norm and ea.pair(w2, g10, x) == m
        out.append(tuple(x))
    return sorted(out)
