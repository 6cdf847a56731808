"""Census of elliptic curves over small finite fields and semisimple sums.

Curves in long Weierstrass form over F_q (q <= 16 by default) are
enumerated up to isomorphism by sweeping the substitution action
(u, r, s, t): x -> u^2 x' + r, y -> u^3 y' + s u^2 x' + t, which is valid
in every characteristic.  Point counts, automorphism orders, level
structure counts, Honda-Tate style isogeny-class tables, per-point
semisimple traces and the boundary term are all exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from .errors import DomainError, ResourceLimit, check_cap
from .finitegl2 import FiniteGL2, e_gamma, fixed_surjections, ss_trace_point
from .gl2group import RingTables
from .padic import _is_prime


def factor_prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            r = 0
            while q % p == 0:
                q //= p
                r += 1
            if q != 1:
                raise DomainError("q must be a prime power")
            return p, r
    raise DomainError("q must be >= 2")


class SmallField:
    """F_q with dense numpy operation tables; elements are 0..q-1."""

    _cache = {}

    def __new__(cls, q):
        if q not in cls._cache:
            obj = super().__new__(cls)
            obj._build(q)
            cls._cache[q] = obj
        return cls._cache[q]

    def _build(self, q):
        p, r = factor_prime_power(q)
        t = RingTables(p, r, 1)
        self.q, self.p, self.r = q, p, r
        self.ADD = t.ADD.copy()
        self.MUL = t.MUL.copy()
        self.NEG = t.NEG.copy()
        self.INV = t.INV.copy()
        self.one = int(t.one)

    def add(self, a, b):
        return self.ADD[a, b]

    def mul(self, a, b):
        return self.MUL[a, b]

    def sub(self, a, b):
        return self.ADD[a, self.NEG[b]]

    def neg(self, a):
        return self.NEG[a]

    def inv(self, a):
        return self.INV[a]

    def embed(self, n: int):
        """Image of the integer n in F_q (prime-subfield arithmetic)."""
        x = 0
        for _ in range(n % self.p):
            x = int(self.ADD[x, self.one])
        return x


# ---------------------------------------------------------------------------
# Weierstrass curves and their points


@dataclass
class WeierstrassCurve:
    q: int
    a: tuple  # (a1, a2, a3, a4, a6) field codes
    aut_order: int = 1
    _points: Optional[list] = field(default=None, repr=False)

    def __post_init__(self):
        F = SmallField(self.q)
        a1, a2, a3, a4, a6 = self.a
        m, ad, neg = F.mul, F.add, F.neg

        def s(*xs):
            acc = 0
            for x in xs:
                acc = int(ad(acc, x))
            return acc

        b2 = s(m(a1, a1), _nmul(F, 4, a2))
        b4 = s(_nmul(F, 2, a4), m(a1, a3))
        b6 = s(m(a3, a3), _nmul(F, 4, a6))
        b8 = s(m(m(a1, a1), a6), _nmul(F, 4, m(a2, a6)),
               neg(m(a1, m(a3, a4))), m(a2, m(a3, a3)), neg(m(a4, a4)))
        c4 = s(m(b2, b2), neg(_nmul(F, 24, b4)))
        disc = s(neg(m(m(b2, b2), b8)), neg(_nmul(F, 8, m(b4, m(b4, b4)))),
                 neg(_nmul(F, 27, m(b6, b6))), _nmul(F, 9, m(b2, m(b4, b6))))
        self.disc = disc
        self.j = int(F.mul(F.mul(c4, F.mul(c4, c4)), F.inv(disc))) if disc else None
        if disc == 0:
            raise DomainError("singular Weierstrass equation")

    @property
    def field(self):
        return SmallField(self.q)

    def points(self):
        """All affine points plus None for the point at infinity."""
        if self._points is not None:
            return self._points
        F = SmallField(self.q)
        a1, a2, a3, a4, a6 = self.a
        pts = [None]
        for x in range(self.q):
            rhs = int(F.add(F.mul(x, F.mul(x, x)),
                      F.add(F.mul(a2, F.mul(x, x)),
                            F.add(F.mul(a4, x), a6))))
            for y in range(self.q):
                lhs = int(F.add(F.mul(y, y),
                          F.add(F.mul(a1, F.mul(x, y)), F.mul(a3, y))))
                if lhs == rhs:
                    pts.append((x, y))
        self._points = pts
        return pts

    def count(self) -> int:
        return len(self.points())

    @property
    def trace(self) -> int:
        """a_E = q + 1 - #E(F_q); satisfies the Weil bound."""
        a = self.q + 1 - self.count()
        assert a * a <= 4 * self.q
        return a

    def is_supersingular(self) -> bool:
        p, _ = factor_prime_power(self.q)
        return self.trace % p == 0

    # -- group law -------------------------------------------------------------

    def neg_point(self, P):
        if P is None:
            return None
        F = SmallField(self.q)
        a1, _, a3, _, _ = self.a
        x, y = P
        return (x, int(F.neg(F.add(y, F.add(F.mul(a1, x), a3)))))

    def add_points(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        F = SmallField(self.q)
        a1, a2, a3, a4, a6 = self.a
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2 and Q == self.neg_point(P):
            return None
        if P == Q:
            den = int(F.add(_nmul(F, 2, y1), F.add(F.mul(a1, x1), a3)))
            lam = int(F.mul(F.add(_nmul(F, 3, F.mul(x1, x1)),
                                  F.add(_nmul(F, 2, F.mul(a2, x1)),
                                        F.add(a4, F.neg(F.mul(a1, y1))))),
                            F.inv(den)))
            nu = int(F.mul(F.add(F.neg(F.mul(x1, F.mul(x1, x1))),
                                 F.add(F.mul(a4, x1),
                                       F.add(_nmul(F, 2, a6),
                                             F.neg(F.mul(a3, y1))))),
                           F.inv(den)))
        else:
            den = F.inv(F.sub(x2, x1))
            lam = int(F.mul(F.sub(y2, y1), den))
            nu = int(F.mul(F.sub(F.mul(y1, x2), F.mul(y2, x1)), den))
        x3 = int(F.add(F.mul(lam, lam),
                 F.add(F.mul(a1, lam),
                       F.sub(F.sub(F.neg(a2), x1), x2))))
        y3 = int(F.neg(F.add(F.mul(F.add(lam, a1), x3), F.add(nu, a3))))
        return (x3, y3)

    def scalar_mul(self, k, P):
        acc, base = None, P
        while k:
            if k & 1:
                acc = self.add_points(acc, base)
            base = self.add_points(base, base)
            k >>= 1
        return acc


def _nmul(F, n, x):
    """n * x for a small non-negative integer n (reduced mod char)."""
    acc = 0
    for _ in range(n % F.p):
        acc = int(F.ADD[acc, x])
    return acc


# ---------------------------------------------------------------------------
# the census


def _substitution_arrays(q):
    """All (u, r, s, t) with u a unit, as an array (code 0 is the zero element)."""
    grid = [(u, rr, s, t) for u in range(1, q) for rr in range(q)
            for s in range(q) for t in range(q)]
    return np.array(grid, dtype=np.int64)


def _transform_all(q, a, subs):
    """Images of the curve under all substitutions; returns coefficient arrays."""
    F = SmallField(q)
    ADD, MUL, NEG, INV = F.ADD, F.MUL, F.NEG, F.INV
    a1, a2, a3, a4, a6 = (np.full(len(subs), x, dtype=np.int64) for x in a)
    u, rr, s, t = subs[:, 0], subs[:, 1], subs[:, 2], subs[:, 3]

    def add(x, y):
        return ADD[x, y]

    def mul(x, y):
        return MUL[x, y]

    def nm(k, x):
        out = np.zeros_like(x)
        for _ in range(k % F.p):
            out = ADD[out, x]
        return out

    u2 = mul(u, u)
    u3 = mul(u2, u)
    u4 = mul(u2, u2)
    u6 = mul(u3, u3)
    na1 = mul(add(a1, nm(2, s)), INV[u])
    na2 = mul(add(a2, add(NEG[mul(s, a1)], add(nm(3, rr), NEG[mul(s, s)]))),
              INV[u2])
    na3 = mul(add(a3, add(mul(rr, a1), nm(2, t))), INV[u3])
    na4 = mul(add(a4, add(NEG[mul(s, a3)],
              add(nm(2, mul(rr, a2)),
                  add(NEG[mul(add(t, mul(rr, s)), a1)],
                      add(nm(3, mul(rr, rr)), NEG[nm(2, mul(s, t))]))))),
              INV[u4])
    na6 = mul(add(a6, add(mul(rr, a4),
              add(mul(mul(rr, rr), a2),
                  add(mul(rr, mul(rr, rr)),
                      add(NEG[mul(t, a3)],
                          add(NEG[mul(t, t)], NEG[mul(rr, mul(t, a1))])))))),
              INV[u6])
    return na1, na2, na3, na4, na6


def enumerate_curves(q: int, cap: int = 16) -> List[WeierstrassCurve]:
    """All elliptic curves over F_q up to isomorphism, with |Aut| recorded."""
    if q > cap:
        raise ResourceLimit(f"census cap is q <= {cap}")
    check_cap(q**5, "Weierstrass coefficient space", default=2_000_000)
    F = SmallField(q)
    subs = _substitution_arrays(q)
    group_order = (q - 1) * q**3
    assert len(subs) == group_order
    seen = np.zeros(q**5, dtype=bool)
    curves = []
    total_nonsingular = 0

    def code(t5):
        c = 0
        for x in reversed(t5):
            c = c * q + int(x)
        return c

    for a in itertools.product(range(q), repeat=5):
        if seen[code(a)]:
            continue
        try:
            E = WeierstrassCurve(q, a)
        except DomainError:
            continue
        na1, na2, na3, na4, na6 = _transform_all(q, a, subs)
        codes = (na1 + q * (na2 + q * (na3 + q * (na4 + q * na6)))).astype(np.int64)
        orbit = np.unique(codes)
        seen[orbit] = True
        total_nonsingular += len(orbit)
        if group_order % len(orbit):
            raise AssertionError("orbit size does not divide the group order")
        aut = group_order // len(orbit)
        # canonical representative: least coefficient code in the orbit
        c0 = int(orbit[0])
        rep = tuple((c0 // q**i) % q for i in range(5))
        curves.append(WeierstrassCurve(q, rep, aut_order=aut))
    # every nonsingular tuple is in exactly one orbit
    assert total_nonsingular == _count_nonsingular(q)
    curves.sort(key=lambda E: E.a)
    return curves


def _count_nonsingular(q):
    """Vectorized count of nonsingular Weierstrass tuples over F_q."""
    F = SmallField(q)
    ADD, MUL, NEG = F.ADD, F.MUL, F.NEG
    codes = np.arange(q**5, dtype=np.int64)
    comps = [(codes // q**i) % q for i in range(5)]
    a1, a2, a3, a4, a6 = comps

    def nm(k, x):
        out = np.zeros_like(x)
        for _ in range(k % F.p):
            out = ADD[out, x]
        return out

    b2 = ADD[MUL[a1, a1], nm(4, a2)]
    b4 = ADD[nm(2, a4), MUL[a1, a3]]
    b6 = ADD[MUL[a3, a3], nm(4, a6)]
    b8 = ADD[MUL[MUL[a1, a1], a6],
             ADD[nm(4, MUL[a2, a6]),
                 ADD[NEG[MUL[a1, MUL[a3, a4]]],
                     ADD[MUL[a2, MUL[a3, a3]], NEG[MUL[a4, a4]]]]]]
    disc = ADD[NEG[MUL[MUL[b2, b2], b8]],
               ADD[NEG[nm(8, MUL[b4, MUL[b4, b4]])],
                   ADD[NEG[nm(27, MUL[b6, b6])], nm(9, MUL[b2, MUL[b4, b6]])]]]
    return int(np.count_nonzero(disc))


# ---------------------------------------------------------------------------
# level structures


def level_m_count(E: WeierstrassCurve, m: int) -> int:
    """Moduli points above E: ordered bases of E[m](F_q) divided by |Aut|."""
    p, _ = factor_prime_power(E.q)
    if m < 3:
        raise DomainError("level m >= 3 required")
    if m % p == 0:
        raise DomainError("level must be prime to the characteristic")
    tors = [P for P in E.points() if E.scalar_mul(m, P) is None]
    if len(tors) != m * m:
        return 0
    bases = 0
    for P in tors:
        for Q in tors:
            span = set()
            for i in range(m):
                iP = E.scalar_mul(i, P)
                for j in range(m):
                    span.add(_pt_key(E.add_points(iP, E.scalar_mul(j, Q))))
            if len(span) == m * m:
                bases += 1
    if bases % E.aut_order:
        raise AssertionError("automorphisms do not act freely on bases")
    return bases // E.aut_order


def _pt_key(P):
    return P if P is None else (int(P[0]), int(P[1]))


# ---------------------------------------------------------------------------
# isogeny classes and the Lefschetz sum


@dataclass
class IsogenyClassRecord:
    trace: int
    curves: List[WeierstrassCurve]
    ordinary: bool
    unit_eigenvalue: Optional[int]  # mod p^n when ordinary and n >= 1


def _unit_root_mod(a_E: int, q: int, p: int, n: int) -> int:
    """Hensel: unit root of x^2 - a_E x + q mod p^n (needs p not dividing a_E)."""
    if a_E % p == 0:
        raise DomainError("no unit root in the supersingular case")
    mod = p**n
    x = a_E % mod
    for _ in range(n.bit_length() + 2):
        fx = (x * x - a_E * x + q) % mod
        dfx = (2 * x - a_E) % mod
        x = (x - fx * pow(dfx, -1, mod)) % mod
    assert (x * x - a_E * x + q) % mod == 0 and x % p != 0
    return x


def isogeny_classes(q: int, n: int = 1) -> List[IsogenyClassRecord]:
    """Census curves grouped by Frobenius trace, Honda-Tate style."""
    p, r = factor_prime_power(q)
    by_trace: Dict[int, list] = {}
    for E in enumerate_curves(q):
        by_trace.setdefault(E.trace, []).append(E)
    out = []
    for a_E in sorted(by_trace):
        ordinary = a_E % p != 0
        unit = _unit_root_mod(a_E, q, p, n) if (ordinary and n >= 1) else None
        out.append(IsogenyClassRecord(a_E, by_trace[a_E], ordinary, unit))
    return out


@dataclass
class LefschetzReport:
    q: int
    p: int
    r: int
    n: int
    m: int
    per_class: list
    total: Fraction
    moduli_points: int
    boundary: Optional[Fraction]

    def to_dict(self):
        return {
            "q": self.q, "p": self.p, "r": self.r, "n": self.n, "m": self.m,
            "total": str(self.total),
            "moduli_points": self.moduli_points,
            "boundary": None if self.boundary is None else str(self.boundary),
            "per_class": [
                {"trace": row["trace"], "points": row["points"],
                 "ordinary": row["ordinary"],
                 "point_trace": str(row["point_trace"])}
                for row in self.per_class
            ],
        }


def point_trace(p: int, r: int, n: int, ordinary: bool,
                unit_eigenvalue: Optional[int]) -> int:
    """Semisimple trace at one moduli point, via the character sums.

    A second, independent path (fixed surjections resp. the explicit
    Steinberg dimension) is computed and compared on every call.
    """
    if n == 0:
        return 1
    G = FiniteGL2(p, n)
    h = e_gamma(G)
    if ordinary:
        val = ss_trace_point("ordinary", h, p, r, n, a=unit_eigenvalue)
        direct = fixed_surjections(p, n, (1, 0, 0, 1), a=unit_eigenvalue)
        assert val.as_rational() == direct
        return int(direct)
    val = ss_trace_point("supersingular", h, p, r, n)
    direct = 1 - p**r * (p**n + p**(n - 1) - 1)
    assert val.as_rational() == direct
    return direct


def ss_lefschetz(p: int, r: int, n: int, m: int) -> LefschetzReport:
    """Sum of semisimple point traces over the level-m census at q = p^r."""
    q = p**r
    per_class = []
    total = Fraction(0)
    moduli_points = 0
    for rec in isogeny_classes(q, n=max(n, 1)):
        pts = sum(level_m_count(E, m) for E in rec.curves)
        if pts == 0:
            continue
        tr = point_trace(p, r, n, rec.ordinary,
                         rec.unit_eigenvalue if rec.ordinary else None)
        per_class.append({"trace": rec.trace, "points": pts,
                          "ordinary": rec.ordinary, "point_trace": tr})
        total += pts * tr
        moduli_points += pts
    boundary = boundary_ss_trace(p, r, n, m) if n >= 1 else None
    return LefschetzReport(q, p, r, n, m, per_class, total, moduli_points,
                           boundary)


# ---------------------------------------------------------------------------
# the boundary term


def gl2_order_mod(N: int) -> int:
    """|GL2(Z/N)| by multiplicativity over prime powers."""
    out = 1
    for p in range(2, N + 1):
        if N % p == 0 and _is_prime(p):
            a = 0
            while N % p == 0:
                N //= p
                a += 1
            out *= p**(4 * (a - 1)) * (p * p - 1) * (p * p - p)
    return out


def boundary_ss_trace(p: int, r: int, n: int, m: int) -> Fraction:
    """Boundary contribution: 0 unless p^r = 1 mod m, else the packet count."""
    if n < 1:
        raise DomainError("boundary term needs n >= 1")
    if m < 3 or m % p == 0:
        raise DomainError("level m >= 3 prime to p required")
    if pow(p, r, m) != 1 % m:
        return Fraction(0)
    modulus = p**n * m
    cosets = gl2_order_mod(modulus) // (2 * modulus)
    packet = p**(n - 1) * (p - 1)
    val = Fraction(cosets, packet)
    assert val.denominator == 1
    return val


def boundary_orbit_report(p: int, r: int, n: int, m: int):
    """Independent enumeration of boundary packets.

    Returns (packets, fixed_packets, sizes_ok): cosets of {+-unipotent} in
    GL2(Z/p^n m) grouped into inertia orbits, the count of orbits fixed by
    the Frobenius action through its tame quotient, and whether every
    orbit has size p^(n-1) (p-1).
    """
    N = p**n * m
    check_cap(N**4, "boundary group enumeration")
    codes = np.arange(N**4, dtype=np.int64)
    a = codes % N
    b = (codes // N) % N
    c = (codes // N**2) % N
    d = (codes // N**3) % N
    det = (a * d - b * c) % N
    unit = np.gcd(det, N) == 1
    el = codes[unit]
    a, b, c, d = a[el], b[el], c[el], d[el]

    def left_mul(u, comps):
        ua, ub, uc, ud = u
        xa, xb, xc, xd = comps
        return ((ua * xa + ub * xc) % N, (ua * xb + ub * xd) % N,
                (uc * xa + ud * xc) % N, (uc * xb + ud * xd) % N)

    def codes_of(comps):
        xa, xb, xc, xd = comps
        return xa + N * (xb + N * (xc + N * xd))

    # subgroup {+-1} * unipotent upper triangular
    subgroup = []
    for sgn in (1, N - 1):
        for x in range(N):
            subgroup.append(((sgn) % N, (sgn * x) % N, 0, sgn % N))
    comps = (a, b, c, d)
    coset_label = None
    for u in subgroup:
        cc = codes_of(left_mul(u, comps))
        coset_label = cc if coset_label is None else np.minimum(coset_label, cc)

    # inertia: diag(k^-1, 1) for k in (Z/p^n)^x lifted to be 1 mod m
    inertia = []
    for k in range(1, p**n):
        if k % p == 0:
            continue
        kl = _crt(pow(k, -1, p**n), p**n, 1, m)
        inertia.append((kl % N, 0, 0, 1))
    # inertia is a group, so one min-pass over it reaches every orbit label
    lab = np.full(N**4, -1, dtype=np.int64)
    lab[el] = coset_label
    packet_label = coset_label.copy()
    for u in inertia:
        cc = codes_of(left_mul(u, comps))
        packet_label = np.minimum(packet_label, lab[cc])
    lab_of = np.full(N**4, -1, dtype=np.int64)
    lab_of[el] = packet_label

    packets, counts = np.unique(packet_label, return_counts=True)
    sizes_ok = bool(np.all(counts == 2 * N * len(inertia)))
    # Frobenius through the tame quotient: x = p^r mod m, 1 mod p^n
    x0 = _crt(1, p**n, pow(p, r, m), m)
    frob = (pow(x0, -1, N), 0, 0, 1)
    cc = codes_of(left_mul(frob, comps))
    # a packet is fixed iff its elements keep their packet label
    fixed_packets = int(len(np.unique(packet_label[lab_of[cc] == packet_label])))
    return int(len(packets)), fixed_packets, sizes_ok


def _crt(r1, m1, r2, m2):
    """x = r1 mod m1, x = r2 mod m2 for coprime moduli."""
    inv = pow(m1, -1, m2)
    return (r1 + m1 * ((r2 - r1) * inv % m2)) % (m1 * m2)
