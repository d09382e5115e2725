"""Definite-lattice algorithms: enumeration, root systems, automorphisms.

Vector conventions: coordinate rows in the lattice basis; a lattice here is
negative definite unless stated (positive definite inputs are negated).  The
isometry/automorphism search is a stabilizer-chain backtracking over
short-vector shells with partial-Gram and pairing-profile pruning; orders are
exact products of orbit sizes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exactalg as ea
from . import kernel
from .lattice import Lattice

_INT64_GUARD = 1 << 60


class RootSystemType(tuple):
    """Multiset of ADE components as a sorted tuple of (letter, rank)."""

    def __str__(self):
        if not self:
            return "0"
        from collections import Counter

        c = Counter(self)
        parts = []
        for (letter, n), mult in sorted(c.items()):
            parts.append(f"{letter}{n}" + (f"^{mult}" if mult > 1 else ""))
        return "+".join(parts)

    @property
    def rank(self):
        return sum(n for _, n in self)


class IsometryGroup:
    """Generators (integer matrices) plus the exact group order."""

    def __init__(self, generators, order):
        self.generators = tuple(ea.mat_freeze(g) for g in generators)
        self.order = order

    def __repr__(self):
        return f"<isometry group of order {self.order}, {len(self.generators)} gens>"


# ---------------------------------------------------------------------------
# reduced enumeration plumbing


@lru_cache(maxsize=None)
def _reduction(gram):
    """(reduced positive gram, transform u) with red = u (+-gram) u^T."""
    g = [list(r) for r in gram]
    n = len(g)
    if n == 0:
        return (), ()
    pos, neg, zero = ea.inertia(g)
    if zero or (pos and neg):
        raise ValueError("definite lattice required")
    if neg:
        g = [[-x for x in row] for row in g]
    red, u = ea.lll_gram(g)
    return ea.mat_freeze(red), ea.mat_freeze(u)


def _definite_sign(lat):
    s = lat.signature
    if s.positive and s.negative:
        raise ValueError("indefinite lattice rejected")
    return 1 if s.negative == 0 else -1


def enumerate_short(gram, bound, center=None, limit=0):
    """Vectors (original coords) of a +-definite gram with |norm| <= bound.

    Returns list of (coords tuple, norm) with norms carrying the lattice's own
    sign.  Homogeneous calls return one representative per +-pair.
    """
    n = len(gram)
    if n == 0:
        return []
    gt = ea.mat_freeze(gram)
    pos, neg, zero = ea.inertia([list(r) for r in gt])
    sign = -1 if neg else 1
    red, u = _reduction(gt)
    urows = [list(r) for r in u]
    cred = None
    if center is not None:
        # center is in original coords; move to reduced coords: y*u = x  =>  y = x*u^{-1}
        uinv = ea.inv_frac(urows)
        cred = ea.mat_vec([Fraction(t) for t in center], uinv)
    raw = kernel.enumerate_upto([list(r) for r in red], bound, center=cred, limit=limit)
    out = []
    for v, q in raw:
        w = ea.mat_vec(list(v), urows)
        out.append((tuple(w), sign * q))
    out.sort()
    return out


def _norm_key(q):
    return int(q) if isinstance(q, Fraction) and q.denominator == 1 else q


def short_vectors(lat: Lattice, k: int):
    """All lattice vectors of exact norm k, one per +-pair, sign-normalized.

    The lattice must be definite; k must have the lattice's sign.
    """
    sign = _definite_sign(lat)
    if k == 0 or (k > 0) != (sign > 0):
        return ()
    res = enumerate_short(lat.gram_rows(), abs(k))
    vecs = []
    for v, q in res:
        if q == k:
            vv = list(v)
            for x in vv:
                if x:
                    if x < 0:
                        vv = [-t for t in vv]
                    break
            vecs.append(tuple(vv))
    return tuple(sorted(vecs))


def count_vectors(lat: Lattice, k: int) -> int:
    """Number of vectors of norm exactly k, counting both signs."""
    if k == 0:
        return 0
    sign = _definite_sign(lat)
    if (k > 0) != (sign > 0):
        return 0
    return 2 * len(short_vectors(lat, k))


@lru_cache(maxsize=None)
def _cached_shell(gram, k):
    lat = Lattice(gram)
    return short_vectors(lat, k)


def shell(lat: Lattice, k: int):
    return _cached_shell(lat.gram, k)


def has_vectors(lat: Lattice, k: int) -> bool:
    sign = _definite_sign(lat)
    if k == 0 or (k > 0) != (sign > 0):
        return False
    res = enumerate_short(lat.gram_rows(), abs(k), limit=0)
    return any(q == k for _, q in res)


# ---------------------------------------------------------------------------
# root systems


def roots(lat: Lattice):
    """(-2)-vectors of a negative definite lattice, one per +-pair."""
    return shell(lat, -2)


def _positive_system(root_list):
    """Split sign classes into positive roots via an exact generic functional."""
    if not root_list:
        return []
    big = 2 * max(abs(x) for r in root_list for x in r) + 3
    pos = []
    for r in root_list:
        val = 0
        for x in r:
            val = val * big + x
        pos.append(r if val > 0 else tuple(-x for x in r))
    return pos


def simple_system(lat: Lattice, root_list=None):
    """Simple roots of the root sublattice (negative definite convention)."""
    if root_list is None:
        root_list = roots(lat)
    pos = _positive_system(list(root_list))
    pos_set = set(pos)
    simples = []
    for r in pos:
        is_sum = False
        for p in pos:
            q = tuple(a - b for a, b in zip(r, p))
            if q != r and q in pos_set:
                is_sum = True
                break
        if not is_sum:
            simples.append(r)
    return sorted(simples)


def root_type(lat: Lattice, root_list=None) -> RootSystemType:
    """ADE type of the sublattice generated by the (-2)-vectors."""
    simples = simple_system(lat, root_list)
    return dynkin_type(simples, lat)


def dynkin_type(simples, lat: Lattice) -> RootSystemType:
    """Classify the Dynkin graph of a simple system of (-2)-roots."""
    m = len(simples)
    if m == 0:
        return RootSystemType(())
    gram = lat.gram_rows()
    adj = [[] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            p = ea.pair(simples[i], gram, simples[j])
            if p not in (0, 1):
                raise ValueError(f"not a simply-laced simple system (pairing {p})")
            if p == 1:
                adj[i].append(j)
                adj[j].append(i)
    seen = [False] * m
    comps = []
    for s in range(m):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(comp)
    labels = []
    for comp in comps:
        n = len(comp)
        degs = sorted(len(adj[v]) for v in comp)
        if n == 1:
            labels.append(("A", 1))
            continue
        if degs[-1] > 3 or degs.count(3) > 1:
            raise ValueError("not an ADE diagram")
        if degs[-1] <= 2:
            if degs.count(1) != 2:
                raise ValueError("cycle in Dynkin graph")
            labels.append(("A", n))
            continue
        # one branch node: arms determine D vs E
        branch = next(v for v in comp if len(adj[v]) == 3)
        arms = []
        for w in adj[branch]:
            ln, prev, cur = 1, branch, w
            while True:
                nxts = [t for t in adj[cur] if t != prev]
                if not nxts:
                    break
                if len(nxts) > 1:
                    raise ValueError("not an ADE diagram")
                prev, cur = cur, nxts[0]
                ln += 1
            arms.append(ln)
        arms.sort()
        if arms[0] != 1:
            raise ValueError("not an ADE diagram")
        if arms[1] == 1:
            labels.append(("D", n))
        elif arms[1] == 2 and arms[2] in (2, 3, 4):
            labels.append(("E", n))
        else:
            raise ValueError("not an ADE diagram")
    return RootSystemType(sorted(labels))


# ---------------------------------------------------------------------------
# invariant fingerprints


@lru_cache(maxsize=None)
def fingerprint(gram):
    """Cheap isometry invariants: (rank, det, vector counts, root type).

    Counts stop at norm -4; colliding classes are split by the exact
    isometry test, so a coarser fingerprint only costs extra comparisons.
    """
    lat = Lattice(gram)
    counts = tuple(count_vectors(lat, k) for k in (-2, -4))
    rt = str(root_type(lat))
    return (lat.rank, lat.det, counts, rt)


# ---------------------------------------------------------------------------
# isometry and automorphism backtracking


@lru_cache(maxsize=64)
def _shell_arrays(gram, norms):
    """Both-signs shell arrays (sorted, int64) for a reduced positive gram."""
    n = len(gram)
    out = {}
    for t in norms:
        half = _cached_shell(gram, t)
        vecs = [list(v) for v in half] + [[-x for x in v] for v in half]
        out[t] = np.array(sorted(vecs), dtype=np.int64) if vecs else np.zeros((0, n), dtype=np.int64)
    return out


@lru_cache(maxsize=64)
def _profile_tables(gram, norms):
    shells = _shell_arrays(gram, norms)
    g = np.array(gram, dtype=np.int64)
    return _SearchContext._profiles(shells, g)


class _SearchContext:
    """Shared tables for mapping lat1's basis into lat2's short vectors."""

    def __init__(self, lat1: Lattice, lat2: Lattice):
        # work on LLL-reduced copies; map answers back at the end
        self.red1, self.u1 = _reduction(lat1.gram)
        self.red2, self.u2 = _reduction(lat2.gram)
        self.sign = _definite_sign(lat1)
        self.n = lat1.rank
        g1 = np.array(self.red1, dtype=np.int64)
        g2 = np.array(self.red2, dtype=np.int64)
        self.g1 = g1
        self.g2 = g2
        norms = tuple(sorted({int(g1[i, i]) for i in range(self.n)}))
        self.shells = _shell_arrays(self.red2, norms)
        bound = max((int(np.abs(a).max()) for a in self.shells.values() if a.size), default=1)
        if bound * bound * int(np.abs(g2).max() + 1) * self.n * 4 > _INT64_GUARD:
            raise ValueError("entries too large for int64 fast path")
        # level ordering: rare shells first, then connectivity
        order = sorted(range(self.n), key=lambda i: (len(self.shells[int(g1[i, i])]), i))
        seq = [order[0]]
        rest = set(order[1:])
        while rest:
            nxt = max(
                sorted(rest),
                key=lambda i: (sum(1 for j in seq if g1[i, j] != 0), -len(self.shells[int(g1[i, i])])),
            )
            seq.append(nxt)
            rest.discard(nxt)
        self.seq = seq
        self.profiles2 = _profile_tables(self.red2, norms)
        self.shells1 = _shell_arrays(self.red1, norms)

    @staticmethod
    def _pair_histogram(vec_block, g, arr2):
        """Rows of (value, count) histograms of pairings against arr2."""
        pairs = (vec_block @ g) @ arr2.T
        out = []
        for row in pairs:
            vals, counts = np.unique(row, return_counts=True)
            out.append(tuple(zip(vals.tolist(), counts.tolist())))
        return out

    @staticmethod
    def _anchor_norm(shells):
        """Smallest nonempty shell; ties by norm.  Isometry-invariant choice."""
        best = None
        for t, arr in sorted(shells.items()):
            if arr.size and (best is None or arr.shape[0] < shells[best].shape[0]):
                best = t
        return best

    @classmethod
    def _profiles(cls, shells, g):
        """Per-vector invariant: pairing histogram against the anchor shell."""
        prof = {}
        anchor = cls._anchor_norm(shells)
        arr2 = shells[anchor] if anchor is not None else None
        for t, arr in sorted(shells.items()):
            m = arr.shape[0]
            combined = {}
            if arr2 is None or not m:
                prof[t] = {idx: 0 for idx in range(m)}
                continue
            for lo in range(0, m, 512):
                hists = cls._pair_histogram(arr[lo:lo + 512], g, arr2)
                for k, h in enumerate(hists):
                    combined[lo + k] = hash((anchor, h))
            prof[t] = combined
        return prof

    def basis_profile(self, i):
        """Profile hash of basis vector e_i of lat1 within lat1's shells."""
        v = np.zeros((1, self.n), dtype=np.int64)
        v[0, i] = 1
        anchor = self._anchor_norm(self.shells1)
        if anchor is None:
            return 0
        return hash((anchor, self._pair_histogram(v, self.g1, self.shells1[anchor])[0]))


def _search(ctx: _SearchContext, mode, progress=None):
    """Backtracking core.

    mode 'iso': return one full isometry (reduced coords) or None.
    mode 'aut': return (gens, order) by a stabilizer chain over ctx.seq.
    """
    n = ctx.n
    g1 = ctx.g1
    g2 = ctx.g2
    seq = ctx.seq

    shell_arrays = {t: arr for t, arr in ctx.shells.items()}
    prof2 = ctx.profiles2

    def initial_candidates(level_pos):
        i = seq[level_pos]
        t = int(g1[i, i])
        arr = shell_arrays[t]
        if arr.size == 0:
            return arr
        want = ctx.basis_profile(i)
        table = prof2[t]
        keep = [idx for idx in range(arr.shape[0]) if table[idx] == want]
        return arr[keep]

    def filter_cands(cands, placed_imgs, i, placed_idx):
        if cands.shape[0] == 0:
            return cands
        for j, img in zip(placed_idx, placed_imgs):
            need = int(g1[i, j])
            vals = cands @ (g2 @ img)
            cands = cands[vals == need]
            if cands.shape[0] == 0:
                break
        return cands

    base_cands = [initial_candidates(p) for p in range(n)]

    def dfs(level_pos, placed_imgs, placed_idx):
        """Complete the partial assignment; returns full matrix rows or None."""
        if level_pos == n:
            return list(placed_imgs)
        i = seq[level_pos]
        cands = filter_cands(base_cands[level_pos], placed_imgs, i, placed_idx)
        for row in cands:
            res = dfs(level_pos + 1, placed_imgs + [row], placed_idx + [i])
            if res is not None:
                return res
        return None

    def assemble(rows_by_seq):
        g = [[0] * n for _ in range(n)]
        for pos, row in enumerate(rows_by_seq):
            g[seq[pos]] = [int(x) for x in row]
        return g

    if mode == "iso":
        res = dfs(0, [], [])
        if res is None:
            return None
        g = assemble(res)
        if ea.mat_mul(ea.mat_mul(g, [list(r) for r in ctx.red2]), ea.transpose(g)) != [
            list(r) for r in ctx.red1
        ]:
            raise AssertionError("backtracking produced a non-isometry")
        return g

    # automorphism stabilizer chain (lat1 == lat2)
    gens = []
    neg = [[-int(i == j) for j in range(n)] for i in range(n)]
    gens.append(neg)
    order = 1
    ident = np.eye(n, dtype=np.int64)

    def orbit_of(i, level_pos, active_gens):
        start = tuple(int(x) for x in ident[i])
        orb = {start}
        queue = [start]
        mats = [np.array(g, dtype=np.int64) for g in active_gens]
        while queue:
            v = np.array(queue.pop(), dtype=np.int64)
            for m in mats:
                w = tuple(int(x) for x in v @ m)
                if w not in orb:
                    orb.add(w)
                    queue.append(w)
        return orb

    placed_imgs = []
    placed_idx = []
    for pos in range(n):
        i = seq[pos]
        cands = filter_cands(base_cands[pos], placed_imgs, i, placed_idx)
        # generators valid at this level fix all previously pinned basis vectors
        active = []
        for g in gens:
            ok = True
            for j in placed_idx:
                if g[j] != [int(j == c) for c in range(n)]:
                    ok = False
                    break
            if ok:
                active.append(g)
        orb = orbit_of(i, pos, active)
        cand_tuples = [tuple(int(x) for x in row) for row in cands]
        for c in cand_tuples:
            if c in orb:
                continue
            rows = dfs(pos + 1, placed_imgs + [np.array(c, dtype=np.int64)], placed_idx + [i])
            if rows is not None:
                g = assemble(rows)
                if ea.mat_mul(ea.mat_mul(g, [list(r) for r in ctx.red2]), ea.transpose(g)) != [
                    list(r) for r in ctx.red1
                ]:
                    raise AssertionError("backtracking produced a non-isometry")
                gens.append(g)
                active.append(g)
                orb = orbit_of(i, pos, active)
                if c not in orb:
                    raise AssertionError("orbit closure failed")
        count = sum(1 for c in cand_tuples if c in orb)
        order *= count
        if progress:
            progress(pos, count)
        placed_imgs.append(ident[i].copy())
        placed_idx.append(i)
    return gens, order


def is_isometric(lat1: Lattice, lat2: Lattice):
    """An isometry matrix g with g G2 g^T = G1 (rows = images), or None."""
    if lat1.rank != lat2.rank or lat1.det != lat2.det:
        return None
    if lat1.rank == 0:
        return []
    if fingerprint(lat1.gram) != fingerprint(lat2.gram):
        return None
    ctx = _SearchContext(lat1, lat2)
    g_red = _search(ctx, "iso")
    if g_red is None:
        return None
    # g_red maps red1-coords to red2-coords; conjugate back to original bases
    u1 = [list(r) for r in ctx.u1]
    u2 = [list(r) for r in ctx.u2]
    u1_inv = [[int(x) for x in row] for row in _int_inv(u1)]
    g = ea.mat_mul(ea.mat_mul(u1_inv, g_red), u2)
    assert ea.mat_mul(ea.mat_mul(g, lat2.gram_rows()), ea.transpose(g)) == lat1.gram_rows()
    return g


def _int_inv(u):
    inv = ea.inv_frac(u)
    out = []
    for row in inv:
        out.append([int(x) for x in row])
        if any(Fraction(x).denominator != 1 for x in row):
            raise AssertionError("unimodular inverse expected")
    return out


def automorphism_group(lat: Lattice) -> IsometryGroup:
    """Full orthogonal group of a definite lattice: generators + exact order."""
    if lat.rank == 0:
        return IsometryGroup([], 1)
    ctx = _SearchContext(lat, lat)
    gens_red, order = _search(ctx, "aut")
    u = [list(r) for r in ctx.u1]
    u_inv = _int_inv(u)
    gens = [ea.mat_mul(ea.mat_mul(u_inv, g), u) for g in gens_red]
    for g in gens:
        assert ea.mat_mul(ea.mat_mul(g, lat.gram_rows()), ea.transpose(g)) == lat.gram_rows()
    return IsometryGroup(gens, order)
