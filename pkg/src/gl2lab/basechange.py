"""Finite-level norm map and sigma-conjugacy verification.

sigma-conjugacy classes of GL2(GR(p^n, r)) are computed by orbit closure
and matched bijectively with conjugacy classes of GL2(Z/p^n) through the
norm map; twisted and ordinary centralizers are counted independently on
the two sides.  The exact sequence of unit groups behind that bijection
and the finite shadow of the base-change identity for congruence-subgroup
idempotents are verified exhaustively.

Sign convention recorded for downstream (out-of-scope) comparisons of
orbital integrals: matching carries the sign +, except when the norm is
central while the element itself is not sigma-conjugate to a central
element, where it is -.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .errors import DomainError, check_cap
from .finitegl2 import FiniteGL2
from .gl2group import MatGroup, RingTables


@dataclass
class SigmaOrbitRecord:
    rep: tuple            # matrix over GL2(Z/p^n) whose chosen preimage lies here
    size: int
    tw_centralizer: int
    norm_class: int
    norm_centralizer: int


@dataclass
class SigmaOrbitTable:
    p: int
    r: int
    n: int
    group_order: int
    class_count: int
    orbit_count: int
    orbits: List[SigmaOrbitRecord]
    bijection: bool

    def all_centralizers_match(self):
        return all(o.tw_centralizer == o.norm_centralizer for o in self.orbits)

    def to_dict(self):
        return {
            "p": self.p, "r": self.r, "n": self.n,
            "group_order": self.group_order,
            "class_count": self.class_count,
            "orbit_count": self.orbit_count,
            "bijection": self.bijection,
            "orbits": [{"rep": list(o.rep), "size": o.size,
                        "tw_centralizer": o.tw_centralizer,
                        "norm_class": o.norm_class}
                       for o in self.orbits],
        }


def _group_and_labels(p, r, n):
    tables = RingTables(p, r, n)
    G = MatGroup(tables)
    perms = [G.sigma_conj_perm(g) for g in G.generators()]
    count, labels = G.orbit_labels(perms)
    return tables, G, count, labels


def _norm_preimage_in_commutant(tables, G, gamma):
    """delta in (GR[gamma])^x with N(delta) = gamma, by exhaustive search."""
    t = tables
    gm = G.single([[gamma[0], gamma[1]], [gamma[2], gamma[3]]])
    ident = G.single([[1, 0], [0, 1]])
    target = G.encode(*gm)
    for a in range(t.Q):
        for b in range(t.Q):
            m = tuple(int(t.ADD[t.MUL[a, i], t.MUL[b, g]])
                      for i, g in zip(ident, gm))
            if not t.UNIT[int(G.det(tuple(np.int64(x) for x in m)))]:
                continue
            mm = tuple(np.int64(x) for x in m)
            if int(G.encode(*G.norm(mm))) == int(target):
                return mm
    return None


def sigma_orbits(p: int, r: int, n: int) -> SigmaOrbitTable:
    """Orbit table of delta ~ h^-1 delta h^sigma with per-orbit centralizers."""
    tables, G, count, labels = _group_and_labels(p, r, n)
    small = FiniteGL2(p, n)
    orbit_sizes = np.bincount(labels, minlength=count)

    records = []
    used_orbits = {}
    for cid, gamma in enumerate(small.class_reps):
        delta = _norm_preimage_in_commutant(tables, G, gamma)
        if delta is None:
            raise DomainError(f"no norm preimage in the commutant of {gamma}")
        di = int(G.idx(delta))
        orb = int(labels[di])
        # twisted centralizer: h with delta h^sigma = h delta
        lhs = G.matmul(G._bcast(delta), G.sigma(G.comps))
        rhs = G.matmul(G.comps, G._bcast(delta))
        tw = int(np.count_nonzero(
            (lhs[0] == rhs[0]) & (lhs[1] == rhs[1])
            & (lhs[2] == rhs[2]) & (lhs[3] == rhs[3])))
        stand = _centralizer_order(small, gamma)
        records.append(SigmaOrbitRecord(gamma, int(orbit_sizes[orb]), tw, cid, stand))
        if orb in used_orbits:
            raise DomainError("two classes map to one sigma-orbit")
        used_orbits[orb] = cid

    bijection = (len(used_orbits) == count == len(small.class_reps))
    table = SigmaOrbitTable(p, r, n, G.order, len(small.class_reps), count,
                            records, bijection)
    assert sum(o.size for o in table.orbits) == G.order
    for o in table.orbits:
        assert o.size * o.tw_centralizer == G.order
    return table


def _centralizer_order(small: FiniteGL2, gamma) -> int:
    return sum(1 for x in small.elements
               if small.mul(x, gamma) == small.mul(gamma, x))


_ORBIT_CACHE = {}


def orbit_label_data(p, r, n):
    """(tables, G, labels, norm_class_of_orbit) for downstream averaging."""
    if (p, r, n) in _ORBIT_CACHE:
        return _ORBIT_CACHE[(p, r, n)]
    tables, G, count, labels = _group_and_labels(p, r, n)
    small = FiniteGL2(p, n)
    norm_class = np.full(count, -1, dtype=np.int64)
    for cid, gamma in enumerate(small.class_reps):
        delta = _norm_preimage_in_commutant(tables, G, gamma)
        if delta is None:
            raise DomainError("norm preimage missing")
        norm_class[labels[int(G.idx(delta))]] = cid
    if np.any(norm_class < 0):
        raise DomainError("sigma-orbit without a matched conjugacy class")
    _ORBIT_CACHE[(p, r, n)] = (tables, G, labels, norm_class)
    return _ORBIT_CACHE[(p, r, n)]


# ---------------------------------------------------------------------------
# the exact sequence of unit groups


def unit_group_exactness(gamma, p: int, r: int, n: int) -> bool:
    """0 -> Z_p -> Z_pr --d1--> Z_pr --d2--> Z_p -> 0 on commutant units.

    gamma is a matrix over Z/p^n (4-tuple); d1(x) = x x^(-sigma),
    d2 = the norm; Z_p resp. Z_pr are the unit groups of the subrings
    generated by gamma over Z/p^n resp. GR(p^n, r).
    """
    t = RingTables(p, r, n)
    G = MatGroup(t)
    gm = G.single([[gamma[0], gamma[1]], [gamma[2], gamma[3]]])
    ident = G.single([[1, 0], [0, 1]])

    def span(scalars):
        seen = {}
        for a in scalars:
            for b in scalars:
                m = tuple(int(t.ADD[t.MUL[a, x], t.MUL[b, y]])
                          for x, y in zip(ident, gm))
                mm = tuple(np.int64(v) for v in m)
                if t.UNIT[int(G.det(mm))]:
                    seen[m] = mm
        return seen

    big = span(range(t.Q))
    small = span(range(p**n))

    def key(mm):
        return tuple(int(v) for v in mm)

    def sig(mm):
        return G.sigma(mm)

    def minv(mm):
        return G.minv(mm)

    def mmul(x, y):
        return G.matmul(x, y)

    # position 1: the sigma-fixed points of the big unit group are the small one
    fixed = {key(m) for m in big.values() if key(sig(m)) == key(m)}
    if fixed != set(small.keys()):
        return False

    # d1 and d2
    d1 = {}
    d2 = {}
    for km, m in big.items():
        d1[km] = key(mmul(m, minv(sig(m))))
        d2[km] = key(G.norm(m))

    im_d1 = set(d1.values())
    ker_d2 = {km for km, v in d2.items() if v == key(ident)}
    if im_d1 != ker_d2:
        return False

    # exactness at the last spot: the norm surjects onto the small units
    im_d2 = set(d2.values())
    if im_d2 != set(small.keys()):
        return False

    # kernel of d1 is the image of the small units (same as position 1)
    ker_d1 = {km for km, v in d1.items() if v == key(ident)}
    return ker_d1 == set(small.keys())


# ---------------------------------------------------------------------------
# base-change unit identity at finite level


def bc_unit_identity(f_values, k: int, p: int, r: int, j: int,
                     deltas: Optional[np.ndarray] = None) -> bool:
    """Averages of f(N(u delta)) over u in Gamma(p^k) at modulus p^j equal
    averages of f(v N(delta)) over v in the p-adic-side Gamma(p^k).

    f_values: one integer per conjugacy class of GL2(Z/p^j).
    Exhaustive over all delta when deltas is None.
    """
    if not 0 <= k <= j:
        raise DomainError("need 0 <= k <= j")
    tables, G, labels, norm_class = orbit_label_data(p, r, j)
    small = FiniteGL2(p, j)
    fv = np.asarray([int(v) for v in f_values], dtype=np.int64)
    if len(fv) != len(small.class_reps):
        raise DomainError("one value per conjugacy class required")

    # left side: average f(N(u delta)) = f-value of the orbit of (u delta)
    mask = G.congruence_mask(k)
    u_idx = np.nonzero(mask)[0]
    check_cap(len(u_idx) * 64, "bc-unit coset averaging")
    per_el = fv[norm_class[labels]]
    if deltas is None:
        sel = np.arange(G.order)
    else:
        sel = np.asarray(deltas)
    dsel = tuple(c[sel] for c in G.comps)
    sums = np.zeros(len(sel), dtype=np.int64)
    for ui in u_idx:
        u = tuple(np.full(len(sel), int(c[ui]), dtype=np.int64) for c in G.comps)
        sums += per_el[G.idx(G.matmul(u, dsel))]
    n_left = len(u_idx)

    # right side: per conjugacy class of the norm, average f over v * gamma
    mod = p**j
    pk = p**k
    vs = []
    for x in small.elements:
        if ((x[0] - 1) % pk == 0 and x[1] % pk == 0
                and x[2] % pk == 0 and (x[3] - 1) % pk == 0):
            vs.append(x)
    rhs = []
    for gamma in small.class_reps:
        s = sum(fv[small.class_of(small.mul(v, gamma))] for v in vs)
        rhs.append(Fraction(int(s), len(vs)))
    rhs_num = np.asarray([f.numerator for f in rhs], dtype=np.int64)
    rhs_den = np.asarray([f.denominator for f in rhs], dtype=np.int64)
    cls_of_sel = norm_class[labels[sel]]
    lhs_num = sums
    # compare sums/n_left against rhs fraction per element
    return bool(np.all(lhs_num * rhs_den[cls_of_sel]
                       == rhs_num[cls_of_sel] * n_left))
