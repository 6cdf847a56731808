"""Finite convolution in the level-n Hecke algebra of GL2 over Q_q.

Functions bi-invariant under the principal congruence subgroup K = Gamma(p^n)
with finite support are stored as maps from canonical right-coset keys to
values.  The canonical key reduces the primitive part of g modulo the
sublattice p^n * M * M2(O) + p^(n+d) * M2(O) of the flattened matrix module,
which determines the right coset exactly.  Convolution is the finite sum
(f1 * f2)(g) = vol(K) * sum over supp(f1)/K of f1(h) f2(h^-1 g) with
vol(GL2(Z_q)) = q - 1.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, List, Optional

from .errors import DomainError, PrecisionExhausted, check_cap
from .padic import LocalContext, LocalMatrix, get_context, vp_int
from .ratfunc import RationalFunctionT
from .testfunc import phi_pn, phi_pnt

# ---------------------------------------------------------------------------
# canonical right-coset keys


def _echelon_mod_pe(gens, width, e_exp, p):
    """Howell-style echelon pivots of the subgroup of (Z/p^e_exp)^width.

    Pivot rows have zeros left of their pivot column and pivot entry p^a;
    for a > 0 the tail p^(e-a) * row is fed back so that the pivot list
    generates the whole subgroup, which makes vector reduction canonical.
    """
    pe = p**e_exp
    rows = [r for r in ([x % pe for x in g] for g in gens) if any(r)]
    pivots = []
    for col in range(width):
        idxs = [i for i, r in enumerate(rows) if r[col] % pe]
        if not idxs:
            continue
        i0 = min(idxs, key=lambda i: vp_int(rows[i][col] % pe, p).value)
        row = rows.pop(i0)
        a = vp_int(row[col] % pe, p).value
        uinv = pow(row[col] // p**a, -1, pe)
        row = [(x * uinv) % pe for x in row]
        for i, r in enumerate(rows):
            if r[col] % pe:
                f = r[col] // p**a
                rows[i] = [(x - f * y) % pe for x, y in zip(r, row)]
        rows = [r for r in rows if any(r)]
        pivots.append((col, a, row))
        if a > 0:
            tail = [(p**(e_exp - a) * x) % pe for x in row]
            if any(tail):
                rows.append(tail)
    return pivots


def _howell_normalize(pivots, e_exp, p):
    """Reduce each pivot row above later pivots: canonical module key."""
    pe = p**e_exp
    rows = [list(r) for (_, _, r) in pivots]
    meta = [(c, a) for (c, a, _) in pivots]
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            cj, aj = meta[j]
            f = rows[i][cj] // p**aj
            if f:
                rows[i] = [(x - f * y) % pe for x, y in zip(rows[i], rows[j])]
    return tuple((c, a, tuple(r)) for (c, a), r in zip(meta, rows))


def _reduce_vec(vec, pivots, pe, p):
    v = [x % pe for x in vec]
    for col, a, row in pivots:
        f = v[col] // p**a
        if f:
            v = [(x - f * y) % pe for x, y in zip(v, row)]
    return tuple(v)


def _gen_powers(ctx):
    """1, g, ..., g^(r-1) as ring elements."""
    out, cur = [], ctx.one
    for _ in range(ctx.r):
        out.append(cur)
        cur = cur * ctx.generator
    return out


def canonical_coset_rep(g: LocalMatrix, n: int):
    """Key identifying the right coset g * Gamma(p^n); equal keys iff equal cosets.

    For n >= 1 the coset of the primitive part M is the affine set
    M + p^n M M2(O), reduced canonically mod p^(n+d); for n = 0 it is the
    column lattice of M, keyed by its Howell normal form mod p^d.
    """
    ctx = g.ctx
    p, r = ctx.p, ctx.r
    d = g.det_valuation() - 2 * g.e  # valuation of det of the primitive part
    depth = max(n + d, 1)
    if g.prec < depth:
        raise PrecisionExhausted("coset key needs more certified digits")
    a, b, c, dd = g.m
    if n == 0:
        cols = []
        for gp in _gen_powers(ctx):
            ca, cc = a * gp, c * gp
            cols.append(list(ca.coeffs_mod(depth)) + list(cc.coeffs_mod(depth)))
            cb, cd = b * gp, dd * gp
            cols.append(list(cb.coeffs_mod(depth)) + list(cd.coeffs_mod(depth)))
        width = 2 * r
        cols += [[(p**depth if i == j else 0) for j in range(width)]
                 for i in range(width)]
        pivots = _echelon_mod_pe(cols, width, depth, p)
        return (g.e, d, _howell_normalize(pivots, depth, p))

    def flat(mat):
        return [coef for x in mat for coef in x.coeffs_mod(depth)]

    vec = flat((a, b, c, dd))
    width = 4 * r
    gens = []
    pn_ = p**n
    for gp in _gen_powers(ctx):
        sa, sb, sc, sd = (x * gp * pn_ for x in (a, b, c, dd))
        # M * E11 places column (a, c) in the first column, etc.
        gens.append(flat((sa, ctx.zero, sc, ctx.zero)))
        gens.append(flat((ctx.zero, sa, ctx.zero, sc)))
        gens.append(flat((sb, ctx.zero, sd, ctx.zero)))
        gens.append(flat((ctx.zero, sb, ctx.zero, sd)))
    gens += [[(p**depth if i == j else 0) for j in range(width)]
             for i in range(width)]
    pivots = _echelon_mod_pe(gens, width, depth, p)
    return (g.e, d, _reduce_vec(vec, pivots, p**depth, p))


def in_congruence_subgroup(x: LocalMatrix, n: int) -> bool:
    """x in Gamma(p^n): integral, congruent to 1 mod p^n."""
    if x.e != 0:
        return False
    if n == 0:
        return x.det_valuation() == 0
    if x.prec < n:
        raise PrecisionExhausted("membership test needs more digits")
    a, b, c, d = x.m
    one = x.ctx.one
    return all(y.valuation_below(n) is None for y in (a - one, b, c, d - one))


def same_coset(g1: LocalMatrix, g2: LocalMatrix, n: int) -> bool:
    """Membership oracle g1^-1 g2 in Gamma(p^n), the key's ground truth."""
    return in_congruence_subgroup(g1.inverse() @ g2, n)


# ---------------------------------------------------------------------------
# coset functions


def group_order_gl2(q: int, n: int) -> int:
    """|GL2(GR(p^n, r))| with q = p^r."""
    if n == 0:
        return 1
    return q**(4 * (n - 1)) * (q * q - 1) * (q * q - q)


def vol_congruence(ctx: LocalContext, n: int) -> Fraction:
    """Haar volume of Gamma(p^n) when GL2(Z_q) has volume q - 1."""
    return Fraction(ctx.q - 1, group_order_gl2(ctx.q, n))


class CosetFunction:
    """Finitely supported right-Gamma(p^n)-coset function, or formula-backed."""

    def __init__(self, ctx: LocalContext, n: int, support=None,
                 formula: Optional[Callable] = None, zero=Fraction(0)):
        self.ctx = ctx
        self.n = n
        self.support = support or {}
        self.formula = formula
        self.zero = zero

    def __call__(self, g: LocalMatrix):
        if self.formula is not None:
            return self.formula(g)
        try:
            key = canonical_coset_rep(g, self.n)
        except PrecisionExhausted:
            raise
        hit = self.support.get(key)
        return hit[1] if hit is not None else self.zero

    def coset_reps(self):
        return [rep for rep, _ in self.support.values()]

    def items(self):
        return [(rep, val) for rep, val in self.support.values()]


def e_congruence(ctx: LocalContext, n: int) -> CosetFunction:
    """The idempotent e_K, K = Gamma(p^n): indicator of K over vol(K)."""
    ident = LocalMatrix.identity(ctx)
    key = canonical_coset_rep(ident, n)
    vol = vol_congruence(ctx, n)
    return CosetFunction(ctx, n, {key: (ident, Fraction(1) / vol)})


def double_coset_indicator(ctx: LocalContext, n: int, w: LocalMatrix,
                           depth: int = None) -> CosetFunction:
    """Indicator of Gamma(p^n) w Gamma(p^n) as a right-coset support map.

    The right cosets are found by saturating u * w over a transversal of
    Gamma(p^(n+depth)) in Gamma(p^n); the count must be stable when the
    depth increases by one, which is asserted.
    """
    d = w.det_valuation() - 2 * w.e
    depth = depth if depth is not None else d + 1
    reps1 = _saturate_left(ctx, n, w, depth)
    reps2 = _saturate_left(ctx, n, w, depth + 1)
    if len(reps1) != len(reps2):
        raise DomainError("double-coset enumeration did not stabilize")
    return CosetFunction(ctx, n, {k: (rep, Fraction(1))
                                  for k, rep in reps1.items()})


def _saturate_left(ctx, n, w, depth):
    reps = {}
    for u in congruence_elements(ctx, n, depth):
        g = u @ w
        key = canonical_coset_rep(g, n)
        reps.setdefault(key, g)
    return reps


def congruence_elements(ctx: LocalContext, n: int, depth: int):
    """All of Gamma(p^n) modulo Gamma(p^(n+depth)), as exact matrices."""
    p, r = ctx.p, ctx.r
    pn_ = p**n
    space = list(itertools.product(range(p**depth), repeat=r))
    check_cap(len(space)**4, "congruence subgroup enumeration")
    for x11 in space:
        for x12 in space:
            for x21 in space:
                for x22 in space:
                    rows = [
                        [tuple((1 if i == 0 else 0) + pn_ * c
                               for i, c in enumerate(x11)),
                         tuple(pn_ * c for c in x12)],
                        [tuple(pn_ * c for c in x21),
                         tuple((1 if i == 0 else 0) + pn_ * c
                               for i, c in enumerate(x22))],
                    ]
                    yield LocalMatrix.from_integers(ctx, rows)


def phi_support(ctx: LocalContext, n: int) -> CosetFunction:
    """The level-n central function with its support enumerated into cosets."""
    p, r, q = ctx.p, ctx.r, ctx.q
    support = {}
    for kk in range(0, n):  # k(g) = kk, i.e. e = -kk
        d = 1 + 2 * kk
        depth = n + d
        check_cap((p**depth)**(4 * r), "central function support enumeration")
        space = itertools.product(
            itertools.product(range(p**depth), repeat=r), repeat=4)
        for quad in space:
            rows = [[quad[0], quad[1]], [quad[2], quad[3]]]
            try:
                m = LocalMatrix.from_integers(ctx, rows, e=-kk)
                if m.e != -kk:  # not primitive at this scale
                    continue
                if m.det_valuation() != 1 or not m.trace_val_ge(0):
                    continue
            except DomainError:
                continue
            key = canonical_coset_rep(m, n)
            if key not in support:
                support[key] = (m, Fraction(phi_pn(m, n)))
    return CosetFunction(ctx, n, support, formula=None)


def phi_formula(ctx: LocalContext, n: int, deformed=False) -> CosetFunction:
    if deformed:
        return CosetFunction(ctx, n, formula=lambda g: phi_pnt(g, n),
                             zero=RationalFunctionT.zero(ctx.q))
    return CosetFunction(ctx, n, formula=lambda g: Fraction(phi_pn(g, n)))


def phi0_support(ctx: LocalContext) -> CosetFunction:
    """Level-0 spherical function: the q+1 cosets of the double coset, value 1/(q-1)."""
    q = ctx.q
    support = {}
    val = Fraction(1, q - 1)
    for coeffs in itertools.product(range(ctx.p), repeat=ctx.r):
        m = LocalMatrix.from_integers(ctx, [[ctx.p, coeffs], [0, 1]])
        support[canonical_coset_rep(m, 0)] = (m, val)
    m = LocalMatrix.from_integers(ctx, [[1, 0], [0, ctx.p]])
    support[canonical_coset_rep(m, 0)] = (m, val)
    return CosetFunction(ctx, 0, support)


def convolve(f1: CosetFunction, f2: CosetFunction, at: List[LocalMatrix]):
    """(f1 * f2)(g) for each g in `at`; f1 must carry an enumerated support."""
    if not f1.support:
        raise DomainError("left factor needs an enumerated support")
    vol = vol_congruence(f1.ctx, f1.n)
    out = []
    for g in at:
        acc = None
        for h, val in f1.items():
            term = f2(h.inverse() @ g) * val
            acc = term if acc is None else acc + term
        out.append(acc * vol)
    return out


# ---------------------------------------------------------------------------
# identity campaigns


def branch_covering_sample(ctx: LocalContext, n: int, count: int = 200,
                           seed: int = 20259):
    """Matrices hitting every branch of the level-n function."""
    p, q = ctx.p, ctx.q
    rnd = random.Random(seed)
    out = []
    # deterministic branch anchors
    out.append(LocalMatrix.from_integers(ctx, [[p, 0], [0, 1]]))          # ell infinite
    out.append(LocalMatrix.from_integers(ctx, [[0, 1], [-p, 0]]))         # trace zero
    out.append(LocalMatrix.from_integers(ctx, [[p, p], [0, p]]))          # off-support det
    for j in range(0, n + 2):
        out.append(LocalMatrix.from_integers(ctx, [[p, 0], [0, 1 + p**j]]))
    for kk in range(0, n + 1):
        rows = [[p**(kk + 1), 1], [0, p**kk]]
        out.append(LocalMatrix.from_integers(ctx, rows, e=-kk))           # k(g) = kk
    while len(out) < count:
        rows = [[rnd.randrange(p**(n + 2)) for _ in range(2)] for _ in range(2)]
        try:
            m = LocalMatrix.from_integers(ctx, rows, e=-rnd.randrange(n + 1))
            m.det_valuation()
        except Exception:
            continue
        h = _random_unimodular(ctx, rnd)
        out.append(m.conjugate_by(h) if rnd.random() < 0.5 else m)
    return out


def _random_unimodular(ctx, rnd):
    p = ctx.p
    while True:
        rows = [[rnd.randrange(p**3) for _ in range(2)] for _ in range(2)]
        try:
            h = LocalMatrix.from_integers(ctx, rows)
            if h.det_valuation() == 0:
                return h
        except Exception:
            continue


def gamma_n_transversal(ctx: LocalContext, n: int):
    """The q^4 matrices 1 + p^n X, X over residue lifts mod p."""
    p, r = ctx.p, ctx.r
    pn_ = p**n
    space = list(itertools.product(range(p), repeat=r))
    for x11 in space:
        for x12 in space:
            for x21 in space:
                for x22 in space:
                    rows = [
                        [tuple((1 if i == 0 else 0) + pn_ * c
                               for i, c in enumerate(x11)),
                         tuple(pn_ * c for c in x12)],
                        [tuple(pn_ * c for c in x21),
                         tuple((1 if i == 0 else 0) + pn_ * c
                               for i, c in enumerate(x22))],
                    ]
                    yield LocalMatrix.from_integers(ctx, rows)


def tower_identity_check(q: int, n: int, sample=None, count: int = 200,
                         seed: int = 20259):
    """phi_{p,n,t} = phi_{p,n+1,t} * e_{Gamma(p^n)} on a branch-covering sample.

    Also asserts that specializing t := q reproduces the undeformed level-n
    function on the same sample.  Exact rational-function equality.
    """
    p, r = _factor_prime_power(q)
    ctx = get_context(p, r, 2 * (n + 1) + 6)
    if sample is None:
        sample = branch_covering_sample(ctx, n + 1, count=count, seed=seed)
    us = list(gamma_n_transversal(ctx, n))
    assert len(us) == q**4
    failures = []
    for g in sample:
        vals = [phi_pnt(g @ u, n + 1) for u in us]
        avg = vals[0]
        for v in vals[1:]:
            avg = avg + v
        avg = avg * Fraction(1, len(us))
        lhs = phi_pnt(g, n)
        if not (avg == lhs):
            failures.append((g, lhs, avg))
        if avg.specialize(q) != Fraction(phi_pn(g, n)):
            failures.append((g, "specialization mismatch", avg.specialize(q)))
    return len(failures) == 0, failures, len(sample)


def _factor_prime_power(q):
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


def centrality_check(q: int, n: int, generators=None, count: int = 100,
                     seed: int = 20259):
    """phi * f = f * phi for double-coset generators f, sampled exactly."""
    p, r = _factor_prime_power(q)
    ctx = get_context(p, r, 2 * n + 8)
    phi_sup = phi_support(ctx, n)
    phi_fn = phi_formula(ctx, n)
    if generators is None:
        generators = [
            LocalMatrix.from_integers(ctx, [[0, 1], [1, 0]]),
            LocalMatrix.from_integers(ctx, [[p, 0], [0, 1]]),
            LocalMatrix.from_integers(ctx, [[0, 1], [p, 0]]),
        ]
    sample = branch_covering_sample(ctx, n, count=count, seed=seed)
    # include points in the product support: h * w shapes
    extra = []
    rnd = random.Random(seed + 1)
    for w in generators:
        for rep, _ in list(phi_sup.items())[:10]:
            extra.append(rep @ w)
    sample = sample + extra
    failures = []
    for w in generators:
        f = double_coset_indicator(ctx, n, w)
        for g in sample:
            left = convolve(phi_sup, f, [g])[0]
            right = convolve(f, phi_fn, [g])[0]
            if left != right:
                failures.append((w, g, left, right))
    return len(failures) == 0, failures, len(sample) * len(generators)
