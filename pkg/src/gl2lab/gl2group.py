"""Vectorized GL2 over finite local rings GR(p^n, r).

Ring elements are encoded as integers 0..Q-1 (Q = p^(nr)) with numpy
lookup tables for the ring operations; matrices are quadruples of codes.
This is the workhorse behind exhaustive sigma-conjugacy, centralizer and
coset-averaging computations, which touch every group element.
"""

from __future__ import annotations

import numpy as np

from .errors import check_cap
from .padic import get_context


class RingTables:
    """Operation tables for GR(p^n, r); element code = sum c_i (p^n)^i."""

    _cache = {}

    def __new__(cls, p, r, n):
        key = (p, r, n)
        if key not in cls._cache:
            obj = super().__new__(cls)
            obj._build(p, r, n)
            cls._cache[key] = obj
        return cls._cache[key]

    def _build(self, p, r, n):
        self.p, self.r, self.n = p, r, n
        ctx = get_context(p, r, n)
        self.ctx = ctx
        pn = p**n
        Q = pn**r
        self.Q = Q
        base = [pn**i for i in range(r)]

        def encode(coeffs):
            return sum(c * b for c, b in zip(coeffs, base))

        def decode(code):
            return tuple((code // b) % pn for b in base)

        self.encode_coeffs = encode
        self.decode_code = decode
        els = [ctx.el(decode(c)) for c in range(Q)]
        self.ADD = np.zeros((Q, Q), dtype=np.int32)
        self.MUL = np.zeros((Q, Q), dtype=np.int32)
        for i in range(Q):
            xi = els[i]
            for j in range(Q):
                self.ADD[i, j] = encode((xi + els[j]).coeffs_mod(n))
                self.MUL[i, j] = encode((xi * els[j]).coeffs_mod(n))
        self.NEG = np.array([encode((-els[i]).coeffs_mod(n)) for i in range(Q)],
                            dtype=np.int32)
        self.SIG = np.array([encode(els[i].frobenius().coeffs_mod(n))
                             for i in range(Q)], dtype=np.int32)
        self.VAL = np.array([min((v.value if not v.is_infinite else n)
                                 for v in ([_vp(c, p, n) for c in decode(i)]))
                             for i in range(Q)], dtype=np.int32)
        self.UNIT = self.VAL == 0
        inv = np.zeros(Q, dtype=np.int32)
        for i in range(Q):
            if self.UNIT[i]:
                inv[i] = encode(els[i].inverse().coeffs_mod(n))
        self.INV = inv
        self.one = encode(ctx.one.coeffs)
        self.zero = 0
        # codes of the prime subring Z/p^n inside GR
        self.subring = np.arange(pn, dtype=np.int32)

    def embed_int(self, x):
        return int(x) % (self.p**self.n)


def _vp(c, p, n):
    from .padic import vp_int
    v = vp_int(c % p**n, p)
    return v


class MatGroup:
    """GL2 over the tables' ring, with all elements materialized."""

    _cache = {}

    def __new__(cls, tables: RingTables):
        key = (tables.p, tables.r, tables.n)
        if key not in cls._cache:
            obj = super().__new__(cls)
            obj._build(tables)
            cls._cache[key] = obj
        return cls._cache[key]

    def _build(self, t: RingTables):
        self.t = t
        Q = t.Q
        check_cap(Q**4, "GL2 matrix-code space")
        codes = np.arange(Q**4, dtype=np.int64)
        a, b, c, d = self.decode(codes)
        det = self.rsub(self.rmul(a, d), self.rmul(b, c))
        unit = t.UNIT[det]
        self.el_codes = codes[unit]
        self.order = len(self.el_codes)
        idx = np.full(Q**4, -1, dtype=np.int64)
        idx[self.el_codes] = np.arange(self.order)
        self.idx_of_code = idx
        self.comps = self.decode(self.el_codes)

    # -- ring ops on arrays -----------------------------------------------------

    def rmul(self, x, y):
        return self.t.MUL[x, y]

    def radd(self, x, y):
        return self.t.ADD[x, y]

    def rsub(self, x, y):
        return self.t.ADD[x, self.t.NEG[y]]

    # -- matrix ops ----------------------------------------------------------------

    def decode(self, codes):
        Q = self.t.Q
        return (codes % Q, (codes // Q) % Q, (codes // Q**2) % Q, (codes // Q**3) % Q)

    def encode(self, a, b, c, d):
        Q = self.t.Q
        return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64) * Q
                + np.asarray(c, dtype=np.int64) * Q**2
                + np.asarray(d, dtype=np.int64) * Q**3)

    def matmul(self, x, y):
        xa, xb, xc, xd = x
        ya, yb, yc, yd = y
        return (self.radd(self.rmul(xa, ya), self.rmul(xb, yc)),
                self.radd(self.rmul(xa, yb), self.rmul(xb, yd)),
                self.radd(self.rmul(xc, ya), self.rmul(xd, yc)),
                self.radd(self.rmul(xc, yb), self.rmul(xd, yd)))

    def sigma(self, x):
        s = self.t.SIG
        return (s[x[0]], s[x[1]], s[x[2]], s[x[3]])

    def det(self, x):
        return self.rsub(self.rmul(x[0], x[3]), self.rmul(x[1], x[2]))

    def trace(self, x):
        return self.radd(x[0], x[3])

    def minv(self, x):
        di = self.t.INV[self.det(x)]
        neg = self.t.NEG
        return (self.rmul(x[3], di), self.rmul(neg[x[1]], di),
                self.rmul(neg[x[2]], di), self.rmul(x[0], di))

    def norm(self, x):
        acc, cur = x, x
        for _ in range(self.t.r - 1):
            cur = self.sigma(cur)
            acc = self.matmul(acc, cur)
        return acc

    def idx(self, x):
        return self.idx_of_code[self.encode(*x)]

    def single(self, rows):
        """Encode one matrix given as [[a, b], [c, d]] of coefficient entries."""
        t = self.t
        flat = []
        for row in rows:
            for e in row:
                if isinstance(e, int):
                    flat.append(t.encode_coeffs((e % t.p**t.n,) + (0,) * (t.r - 1)))
                else:
                    flat.append(t.encode_coeffs(tuple(c % t.p**t.n for c in e)))
        return tuple(np.int64(f) for f in flat)

    # -- generators and orbits -------------------------------------------------------

    def generators(self):
        """E12/E21 over additive module generators plus all diagonal units."""
        t = self.t
        gens = []
        for i in range(t.r):
            coeffs = tuple(1 if j == i else 0 for j in range(t.r))
            x = t.encode_coeffs(coeffs)
            gens.append(self.single([[1, t.decode_code(x)], [0, 1]]))
            gens.append(self.single([[1, 0], [t.decode_code(x), 1]]))
        for u in range(t.Q):
            if t.UNIT[u] and u != t.one:
                gens.append(self.single([[t.decode_code(u), 0], [0, 1]]))
        return gens

    def sigma_conj_perm(self, g):
        """Permutation i -> index of g^-1 x_i g^sigma."""
        ginv = self.minv(g)
        gs = self.sigma(g)
        y = self.matmul(self.matmul(self._bcast(ginv), self.comps), self._bcast(gs))
        return self.idx(y)

    def conj_perm(self, g):
        ginv = self.minv(g)
        y = self.matmul(self.matmul(self._bcast(ginv), self.comps), self._bcast(g))
        return self.idx(y)

    def _bcast(self, g):
        return tuple(np.full(self.order, int(v), dtype=np.int64) for v in g)

    def orbit_labels(self, perms):
        """Connected components of the union of the permutation graphs."""
        import scipy.sparse as sp
        from scipy.sparse.csgraph import connected_components
        n = self.order
        rows = np.concatenate([np.arange(n)] * len(perms))
        cols = np.concatenate(perms)
        graph = sp.coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                              shape=(n, n))
        count, labels = connected_components(graph, directed=False)
        return count, labels

    def congruence_mask(self, k):
        """Elements congruent to the identity mod p^k."""
        t = self.t
        a, b, c, d = self.comps
        am = self.rsub(a, np.full(self.order, t.one, dtype=np.int64))
        dm = self.rsub(d, np.full(self.order, t.one, dtype=np.int64))
        v = t.VAL
        return (v[am] >= k) & (v[b] >= k) & (v[c] >= k) & (v[dm] >= k)
