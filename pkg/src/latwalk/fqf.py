"""Discriminant forms on 2-elementary groups.

A form lives on (Z/2)^k; q takes values in (1/2)Z / 2Z stored as integer
multiples of 1/2 modulo 4, and the bilinear form b takes values in (1/2)Z / Z
stored as an F2 matrix (units of 1/2).  The compatibility rule in these units
is q(x+y) = q(x) + q(y) + 2 b(x,y)  (mod 4).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import exactalg as ea
from .lattice import Lattice, discriminant_generators

Fr = Fraction


@dataclass(frozen=True)
class FiniteQuadraticForm:
    qvals: tuple  # q(g_i), half-units mod 4
    bmat: tuple  # b(g_i,g_j), half-units mod 2 (symmetric F2 matrix)

    def __post_init__(self):
        k = len(self.qvals)
        assert len(self.bmat) == k and all(len(r) == k for r in self.bmat)
        for i in range(k):
            assert self.bmat[i][i] == self.qvals[i] % 2, "b(x,x) must equal q(x) mod 1"
            for j in range(k):
                assert self.bmat[i][j] == self.bmat[j][i]

    @property
    def k(self):
        return len(self.qvals)

    def q_of(self, x):
        """q on the F2 vector x, in half-units mod 4."""
        total = 0
        k = self.k
        for i in range(k):
            if x[i] & 1:
                total += self.qvals[i]
                for j in range(i + 1, k):
                    if x[j] & 1:
                        total += 2 * self.bmat[i][j]
        return total % 4
    def b_of(self, x, y):
        total = 0
        for i in range(self.k):
            if x[i] & 1:
                row = self.bmat[i]
                for j in range(self.k):
                    if y[j] & 1:
                        total += row[j]
        return total % 2

    def is_integer_valued(self):
        return all(v % 2 == 0 for v in self.qvals)

    def elements(self):
        k = self.k
        for m in range(1 << k):
            yield tuple((m >> i) & 1 for i in range(k))

    def isotropic_count(self):
        return sum(1 for x in self.elements() if self.q_of(x) == 0)


def u_form():
    """The hyperbolic plane form on F2^2: q(x)=q(y)=0, b(x,y)=1/2."""
    return FiniteQuadraticForm((0, 0), ((0, 1), (1, 0)))


def v_form():
    """The other even binary form: q(x)=q(y)=1, b(x,y)=1/2."""
    return FiniteQuadraticForm((2, 2), ((0, 1), (1, 0)))


def orthogonal_sum(*forms):
    qs = []
    rows = []
    total = sum(f.k for f in forms)
    ofs = 0
    mat = [[0] * total for _ in range(total)]
    for f in forms:
        qs.extend(f.qvals)
        for i in range(f.k):
            for j in range(f.k):
                mat[ofs + i][ofs + j] = f.bmat[i][j]
        ofs += f.k
    return FiniteQuadraticForm(tuple(qs), tuple(tuple(r) for r in mat))


def discriminant_form(lat: Lattice) -> FiniteQuadraticForm:
    """q(L) on A(L) for an even lattice with 2-elementary discriminant."""
    if not lat.is_even():
        raise ValueError("odd lattice rejected")
    orders, gens = discriminant_generators(lat)
    if any(d != 2 for d in orders):
        raise ValueError("discriminant group is not 2-elementary")
    k = len(orders)
    qv = []
    bm = [[0] * k for _ in range(k)]
    for i in range(k):
        ni = lat.pair(list(gens[i]), list(gens[i]))
        q = Fr(ni) % 2  # value in Q/2Z
        half = 2 * q
        assert half.denominator == 1, "q must lie in (1/2)Z"
        qv.append(int(half) % 4)
        for j in range(k):
            bij = Fr(lat.pair(list(gens[i]), list(gens[j]))) % 1
            h = 2 * bij
            assert h.denominator == 1
            bm[i][j] = int(h) % 2
    return FiniteQuadraticForm(tuple(qv), tuple(tuple(r) for r in bm))


def negate(form: FiniteQuadraticForm) -> FiniteQuadraticForm:
    return FiniteQuadraticForm(tuple((-v) % 4 for v in form.qvals), form.bmat)


# ---------------------------------------------------------------------------
# glue maps


@dataclass(frozen=True)
class GlueMap:
    """Isomorphism source -> target of finite quadratic forms (F2 matrix).

    Rows are the images of the source generators in target coordinates.
    """

    source: FiniteQuadraticForm
    target: FiniteQuadraticForm
    matrix: tuple

    def apply(self, x):
        k = self.target.k
        out = [0] * k
        for i, xi in enumerate(x):
            if xi & 1:
                row = self.matrix[i]
                for j in range(k):
                    out[j] ^= row[j]
        return tuple(out)

    def is_valid(self):
        s, t = self.source, self.target
        if s.k != t.k:
            return False
        if _f2_rank([list(r) for r in self.matrix]) != s.k:
            return False
        basis = [tuple(int(i == j) for j in range(s.k)) for i in range(s.k)]
        for i, x in enumerate(basis):
            if t.q_of(self.apply(x)) != s.q_of(x):
                return False
            for y in basis[i + 1:]:
                if t.b_of(self.apply(x), self.apply(y)) != s.b_of(x, y):
                    return False
        return True

    def inverse(self):
        inv = _f2_inverse([list(r) for r in self.matrix])
        return GlueMap(self.target, self.source, tuple(tuple(r) for r in inv))


def _f2_rank(rows):
    rows = [r[:] for r in rows]
    n = len(rows[0]) if rows else 0
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _f2_inverse(rows):
    k = len(rows)
    aug = [rows[i][:] + [int(i == j) for j in range(k)] for i in range(k)]
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, k) if aug[i][col]), None)
        if piv is None:
            raise ValueError("singular F2 matrix")
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(k):
            if i != r and aug[i][col]:
                aug[i] = [a ^ b for a, b in zip(aug[i], aug[r])]
        r += 1
    return [row[k:] for row in aug]


def _split_hyperbolic(form: FiniteQuadraticForm):
    """Basis change T (rows = new basis in old coords) putting form into
    u + u + ... (+ v) shape; returns (T, shape) with shape in {'u'*a, 'u'*a+'v'}.
    """
    if not form.is_integer_valued():
        raise NotImplementedError("splitting implemented for integer-valued forms only")
    k = form.k
    basis = [[int(i == j) for j in range(k)] for i in range(k)]
    current = basis  # rows: current complement basis in original coords
    out_rows = []
    shape = ""

    def q_on(v):
        return form.q_of(v)

    def b_on(v, w):
        return form.b_of(v, w)

    while len(current) > 2:
        iso = None
        m = len(current)
        for mask in range(1, 1 << m):
            v = [0] * k
            for i in range(m):
                if (mask >> i) & 1:
                    v = [a ^ b for a, b in zip(v, current[i])]
            if q_on(v) == 0 and any(v):
                iso = v
                break
        if iso is None:
            raise ValueError("no isotropic vector in a form of rank > 2")
        mate = next((w for w in current if b_on(iso, w) == 1), None)
        assert mate is not None, "degenerate form"
        if q_on(mate) != 0:
            mate = [a ^ b for a, b in zip(mate, iso)]
            assert q_on(mate) == 0
        out_rows += [iso, mate]
        shape += "u"
        nxt = []
        for w in current:
            w2 = w[:]
            if b_on(w2, mate):
                w2 = [a ^ b for a, b in zip(w2, iso)]
            if b_on(w2, iso):
                w2 = [a ^ b for a, b in zip(w2, mate)]
            if any(w2):
                nxt.append(w2)
        # keep an independent subset
        nxt = _f2_row_basis(nxt)
        assert len(nxt) == len(current) - 2
        current = nxt
    if current:
        assert len(current) == 2
        x, y = current
        if b_on(x, y) == 0:
            raise ValueError("degenerate tail")
        if q_on(x) == 0 or q_on(y) == 0:
            if q_on(x) != 0:
                x, y = y, x
            if q_on(y) != 0:
                y = [a ^ b for a, b in zip(x, y)]
            assert q_on(x) == 0 and q_on(y) == 0
            out_rows += [x, y]
            shape += "u"
        else:
            # q(x) = q(y) = q(x+y) = 1: the anisotropic block
            assert q_on(x) == 2 and q_on(y) == 2
            out_rows += [x, y]
            shape += "v"
    return out_rows, shape


def _f2_row_basis(rows):
    picked = []
    used = []
    for r in rows:
        if _f2_rank(used + [r[:]]) > len(used):
            used.append(r[:])
            picked.append(r)
    return picked


def find_glue_isomorphism(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm):
    """One isomorphism q1 -> q2 by hyperbolic splitting, or None."""
    if q1.k != q2.k:
        return None
    try:
        t1, s1 = _split_hyperbolic(q1)
        t2, s2 = _split_hyperbolic(q2)
    except NotImplementedError:
        raise
    except ValueError:
        return None
    if s1 != s2:
        return None
    # rows of t1: basis of q1 in standard shape; same for t2.  phi sends
    # t1-basis to t2-basis: phi = t1^{-1} t2 over F2.
    t1m = [list(r) for r in t1]
    t2m = [list(r) for r in t2]
    inv = _f2_inverse(t1m)
    mat = [[0] * q2.k for _ in range(q1.k)]
    for i in range(q1.k):
        for j in range(q2.k):
            s = 0
            for l in range(q1.k):
                s ^= inv[i][l] & t2m[l][j]
            mat[i][j] = s
    gm = GlueMap(q1, q2, tuple(tuple(r) for r in mat))
    if not gm.is_valid():
        raise AssertionError("splitting produced an invalid isomorphism")
    return gm


# ---------------------------------------------------------------------------
# induced action of lattice isometries


@lru_cache(maxsize=None)
def _snf_of_gram(gram):
    d, u, v = ea.snf([list(r) for r in gram])
    return tuple(d), ea.mat_freeze(v)


def disc_coords(lat: Lattice, v):
    """Coordinates of a dual vector v (lattice coords, rational) in A(L)."""
    gram = lat.gram_rows()
    x = ea.mat_vec([Fr(t) for t in v], gram)
    assert all(t.denominator == 1 for t in x), "vector not in the dual lattice"
    d, vv = _snf_of_gram(lat.gram)
    y = ea.mat_vec([int(t) for t in x], [list(r) for r in vv])
    out = []
    for i in range(lat.rank):
        if d[i] > 1:
            out.append(y[i] % d[i])
    return tuple(out)


def eta(lat: Lattice, g) -> tuple:
    """Induced F2 matrix of an isometry g on A(L) (rows = generator images)."""
    gm = lat.gram_rows()
    gl = [list(r) for r in g]
    if ea.mat_mul(ea.mat_mul(gl, gm), ea.transpose(gl)) != gm:
        raise ValueError("matrix is not an isometry of the lattice")
    orders, gens = discriminant_generators(lat)
    assert all(d == 2 for d in orders)
    rows = []
    for gen in gens:
        img = ea.mat_vec([Fr(t) for t in gen], gl)
        rows.append(disc_coords(lat, img))
    return tuple(rows)


def eta_preserves_form(lat: Lattice, mat) -> bool:
    form = discriminant_form(lat)
    k = form.k
    basis = [tuple(int(i == j) for j in range(k)) for i in range(k)]

    def apply(x):
        out = [0] * k
        for i, xi in enumerate(x):
            if xi:
                out = [a ^ b for a, b in zip(out, mat[i])]
        return tuple(out)

    for i, x in enumerate(basis):
        if form.q_of(apply(x)) != form.q_of(x):
            return False
        for y in basis[i + 1:]:
            if form.b_of(apply(x), apply(y)) != form.b_of(x, y):
                return False
    return True


def lift_condition_check(glue: GlueMap, lat_m: Lattice, g, lat_n: Lattice, h) -> bool:
    """Does (g, h) glue to an isometry of the overlattice defined by glue?

    True iff the image of eta(M)(g) under conjugation by the glue map equals
    eta(N)(h).
    """
    em = eta(lat_m, g)
    en = eta(lat_n, h)
    p = [list(r) for r in glue.matrix]
    pinv = _f2_inverse(p)
    k = glue.source.k
    # conjugate: pinv @ em @ p over F2
    def f2mul(a, b):
        kk = len(b[0])
        return [[_f2_dot(ra, [row[j] for row in b]) for j in range(kk)] for ra in a]

    conj = f2mul(f2mul(pinv, [list(r) for r in em]), p)
    return conj == [list(r) for r in en]


def _f2_dot(a, b):
    s = 0
    for x, y in zip(a, b):
        s ^= x & y
    return s


# ---------------------------------------------------------------------------
# permutation group order via a stabilizer chain (Schreier-Sims)


class StabilizerChain:
    """Schreier-Sims stabilizer chain on explicit permutations.

    Additions are sifted in; ``verify_closure`` then drives the chain to a
    genuine base-and-strong-generating-set by checking every Schreier
    generator, so ``order`` is the exact product of orbit lengths.
    """

    def __init__(self, degree):
        import numpy as np

        self.np = np
        self.degree = degree
        self.identity = np.arange(degree, dtype=np.int32)
        self.levels = []  # dicts: base(int), gens(list of arrays), orbit {pt: transversal}

    def order(self):
        o = 1
        for lev in self.levels:
            o *= len(lev["orbit"])
        return o

    def _mul(self, p, q):
        # x^(pq) = (x^p)^q
        return q[p]

    def _inv(self, p):
        np = self.np
        out = np.empty_like(p)
        out[p] = self.identity
        return out

    def _gens_at(self, idx):
        """Generators of the idx-th stabilizer: inserted at any level >= idx."""
        out = []
        for lev in self.levels[idx:]:
            out.extend(lev["gens"])
        return out

    def _recompute_orbit(self, idx):
        lev = self.levels[idx]
        base = lev["base"]
        gens = self._gens_at(idx)
        orbit = {base: self.identity}
        queue = [base]
        while queue:
            p = queue.pop()
            tp = orbit[p]
            for g in gens:
                q = int(g[p])
                if q not in orbit:
                    orbit[q] = self._mul(tp, g)
                    queue.append(q)
        lev["orbit"] = orbit
        lev["inv"] = {p: self._inv(t) for p, t in orbit.items()}

    def sift(self, g):
        """Returns (residue, level index where it got stuck)."""
        for idx, lev in enumerate(self.levels):
            p = int(g[lev["base"]])
            if p not in lev["orbit"]:
                return g, idx
            g = self._mul(g, lev["inv"][p])
        return g, len(self.levels)

    def add(self, g):
        """Sift g and insert the residue; returns True if the chain grew."""
        np = self.np
        g = np.asarray(g, dtype=np.int32)
        h, idx = self.sift(g)
        if bool((h == self.identity).all()):
            return False
        if idx == len(self.levels):
            base = int(np.nonzero(h != self.identity)[0][0])
            self.levels.append({"base": base, "gens": [], "orbit": {}, "inv": {}})
        self.levels[idx]["gens"].append(h)
        for j in range(idx, -1, -1):
            self._recompute_orbit(j)
        return True

    def verify_closure(self):
        """Add Schreier generators until every one sifts to the identity."""
        changed = True
        while changed:
            changed = False
            for idx in range(len(self.levels) - 1, -1, -1):
                lev = self.levels[idx]
                for p in sorted(lev["orbit"]):
                    tp = lev["orbit"][p]
                    for s in self._gens_at(idx):
                        q = int(s[p])
                        sg = self._mul(self._mul(tp, s), lev["inv"][q])
                        h, at = self.sift(sg)
                        if not bool((h == self.identity).all()):
                            if at == len(self.levels):
                                base = int(self.np.nonzero(h != self.identity)[0][0])
                                self.levels.append({"base": base, "gens": [], "orbit": {}, "inv": {}})
                            self.levels[at]["gens"].append(h)
                            for j in range(at, -1, -1):
                                self._recompute_orbit(j)
                            changed = True
                if changed:
                    break
        return self.order()


def group_order_from_generators(gens, degree=None):
    """Exact order of the permutation group generated by gens.

    gens: permutations (sequences) or F2 matrices acting on row vectors;
    matrices are converted to permutations of the 2^k points.
    """
    perms = []
    for g in gens:
        if len(g) and isinstance(g[0], (tuple, list)):
            perms.append(_matrix_to_perm(g))
        else:
            perms.append(tuple(g))
    if not perms:
        return 1
    deg = len(perms[0])
    chain = StabilizerChain(deg)
    for p in perms:
        chain.add(p)
    return chain.verify_closure()


def _matrix_to_perm(mat):
    k = len(mat)
    deg = 1 << k
    out = []
    cols = list(range(k))
    rows_as_int = [sum((mat[i][j] & 1) << j for j in range(k)) for i in range(k)]
    for point in range(deg):
        acc = 0
        p = point
        i = 0
        while p:
            if p & 1:
                acc ^= rows_as_int[i]
            p >>= 1
            i += 1
        out.append(acc)
    return tuple(out)
