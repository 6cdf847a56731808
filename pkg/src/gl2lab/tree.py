"""The Bruhat-Tits tree of PGL2 over an unramified local field.

Vertices at distance d from the base point correspond to sublattices of
the standard lattice with cyclic quotient of order q^d, parametrized by
points of the projective line over Z_q/p^d in the canonical split form
(1, c) / (c, 1) with c divisible by p.  Stabilization of a vertex by a
matrix is an exact divisibility test on the adjugate-conjugated matrix;
orbital-integral ratios are weighted sums over stabilization-distance
shells following the vertex-counting lemma (weights q/(q+1) resp.
(q-1)/(q+1) by the trace's divisibility by p).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

from .errors import (DomainError, NotStabilizable, PrecisionExhausted,
                     check_cap)
from .padic import LocalContext, LocalMatrix, ell_min, k_of


class TreeVertex:
    """Homothety class of lattices, canonical split form.

    kind 'A': lattice spanned by (1, c) and (0, p^d), c mod p^d;
    kind 'B': lattice spanned by (c, 1) and (p^d, 0), c mod p^d, p | c.
    The base vertex v0 is (0, 'A', 0).
    """

    __slots__ = ("d", "kind", "c")

    def __init__(self, d, kind, c):
        self.d = d
        self.kind = kind
        self.c = tuple(c)

    def __eq__(self, other):
        return (self.d, self.kind, self.c) == (other.d, other.kind, other.c)

    def __hash__(self):
        return hash((self.d, self.kind, self.c))

    def __repr__(self):
        return f"v({self.d},{self.kind},{self.c})"

    def is_base(self):
        return self.d == 0

    def basis_rows(self, ctx: LocalContext):
        """Row-major basis matrix H whose columns span the lattice."""
        pd = ctx.p**self.d
        if self.kind == "A":
            return [[1, 0], [list(self.c), pd]]
        return [[list(self.c), pd], [1, 0]]

    def parent(self, ctx: LocalContext) -> "TreeVertex":
        """The neighbor one step closer to the base vertex."""
        if self.d == 0:
            raise DomainError("the base vertex has no parent")
        pd1 = ctx.p**(self.d - 1)
        c = tuple(x % pd1 for x in self.c)
        if self.d == 1:
            return base_vertex(ctx)
        return TreeVertex(self.d - 1, self.kind, c)


def base_vertex(ctx: LocalContext) -> TreeVertex:
    return TreeVertex(0, "A", (0,) * ctx.r)


def shell(ctx: LocalContext, d: int):
    """All vertices at distance exactly d: (q+1) q^(d-1) of them for d >= 1."""
    if d == 0:
        yield base_vertex(ctx)
        return
    p, r = ctx.p, ctx.r
    pd = p**d
    for c in itertools.product(range(pd), repeat=r):
        yield TreeVertex(d, "A", c)
    for c in itertools.product(range(0, pd, p), repeat=r):
        yield TreeVertex(d, "B", c)


def enumerate_vertices(ctx: LocalContext, D: int) -> List[TreeVertex]:
    """All vertices at distance <= D, each exactly once."""
    if D < 0:
        raise DomainError("depth must be >= 0")
    q = ctx.q
    total = 1 + sum((q + 1) * q**(d - 1) for d in range(1, D + 1))
    check_cap(total, "tree vertex enumeration")
    out = []
    for d in range(D + 1):
        out.extend(shell(ctx, d))
    assert len(out) == total
    return out


def stabilizes(gamma: LocalMatrix, v: TreeVertex) -> bool:
    """gamma(Lambda_v) inside Lambda_v: H^-1 gamma H is integral."""
    ctx = gamma.ctx
    rows = v.basis_rows(ctx)
    H = LocalMatrix.from_integers(ctx, rows)
    a, b, c, d = H.m
    adj = (d, -b, -c, a)
    ga, gb, gc, gd = gamma.m
    # B = adj(H) * M * H where gamma = p^e M
    t = (adj[0] * ga + adj[1] * gc, adj[0] * gb + adj[1] * gd,
         adj[2] * ga + adj[3] * gc, adj[2] * gb + adj[3] * gd)
    B = (t[0] * a + t[1] * c, t[0] * b + t[1] * d,
         t[2] * a + t[3] * c, t[2] * b + t[3] * d)
    need = v.d - gamma.e  # v_p(det H) = d up to a unit
    if need <= 0:
        return True
    if need > gamma.prec:
        raise PrecisionExhausted("stabilization test deeper than certified digits")
    return all(x.valuation_below(need) is None for x in B)


@dataclass
class FixedSetReport:
    """Stabilized vertices of a matrix within a search depth."""

    gamma: LocalMatrix
    depth: int
    stabilized: List[TreeVertex]
    nearest: TreeVertex
    k_tree: int
    nearest_unique: bool = True

    def check_connected(self, ctx=None) -> bool:
        """The stabilized set induces a connected (convex) subtree."""
        ctx = ctx or self.gamma.ctx
        sset = set(self.stabilized)
        for v in self.stabilized:
            for w in _path_between(ctx, v, self.nearest):
                if w not in sset:
                    return False
        return True


def _path_between(ctx, u: TreeVertex, v: TreeVertex):
    """Vertices on the geodesic from u to v (inclusive)."""
    left, right = [u], [v]
    a, b = u, v
    while a.d > b.d:
        a = a.parent(ctx)
        left.append(a)
    while b.d > a.d:
        b = b.parent(ctx)
        right.append(b)
    while a != b:
        a = a.parent(ctx)
        b = b.parent(ctx)
        left.append(a)
        right.append(b)
    return left + right[:-1][::-1]


def fixed_set(gamma: LocalMatrix, D: int) -> FixedSetReport:
    """Stabilized vertices up to depth D with the unique nearest one.

    Requires gamma conjugate to an integral matrix (integral trace and
    determinant) and D at least k(gamma).
    """
    if not gamma.trace_val_ge(0) or gamma.det_valuation() < 0:
        raise DomainError("gamma is not conjugate to an integral matrix")
    k = k_of(gamma)
    if D < k:
        raise DomainError(f"depth {D} below k(gamma) = {k}")
    stabilized = [v for v in enumerate_vertices(gamma.ctx, D)
                  if stabilizes(gamma, v)]
    if not stabilized:
        raise NotStabilizable(f"no stabilized vertex within depth {D}")
    dmin = min(v.d for v in stabilized)
    nearest_all = [v for v in stabilized if v.d == dmin]
    return FixedSetReport(gamma, D, stabilized, nearest_all[0], dmin,
                          nearest_unique=(len(nearest_all) == 1))


def stabilized_line_count(gamma: LocalMatrix) -> int:
    """Fixed points of gamma mod p on the projective line over F_q.

    Requires gamma integral with v_p(det) = 1: the count is 1 when the
    trace is divisible by p and 2 otherwise, so q resp. q-1 of the q+1
    neighbors of a vertex fail to be stabilized.
    """
    ctx = gamma.ctx
    if gamma.e < 0:
        raise DomainError("gamma must be integral")
    if gamma.det_valuation() != 1:
        raise DomainError("v_p(det) = 1 required")
    from .padic import get_context
    fq = get_context(ctx.p, ctx.r, 1)
    a, b, c, d = (fq.el(x.coeffs_mod(1)) for x in gamma.m)
    count = 0
    for line in _proj_line(fq):
        x, y = line
        ix, iy = a * x + b * y, c * x + d * y
        # (ix, iy) must be proportional to (x, y): 2x2 determinant zero
        if ix * y == iy * x:
            count += 1
    return count


def _proj_line(fq):
    for c in fq.all_elements():
        yield (fq.one, c)
    yield (fq.zero, fq.one)


def vertex_weight(gamma: LocalMatrix) -> Fraction:
    """Relative measure of non-base stabilization shells per the neighbor count."""
    q = gamma.ctx.q
    if gamma.trace_val_ge(1):
        return Fraction(q, q + 1)
    return Fraction(q - 1, q + 1)


def orbital_ratio(gamma: LocalMatrix, n: int,
                  phi_at: Optional[Callable[[int], Fraction]] = None):
    """O(level-n function) / O(level-0 function) as an exact rational.

    Computed as (q-1) * sum over vertices at distance <= n-1 of
    weight(v) * value(distance), the value being the level-n branch value
    at stabilization distance k = d.  Equals the closed-form constant.
    Returns (ratio, supported); (0, False) when gamma is not conjugate
    to an integral matrix.
    """
    ctx = gamma.ctx
    q = ctx.q
    try:
        integral = gamma.trace_val_ge(0) and gamma.det_valuation() >= 0
    except DomainError:
        integral = False
    if not integral:
        return Fraction(0), False
    if gamma.det_valuation() != 1:
        raise DomainError("orbital ratio needs v_p(det) = 1")
    tr_div = gamma.trace_val_ge(1)
    ell_cap = None if tr_div else ell_min(gamma, n)
    if phi_at is None:
        def phi_at(d):
            return Fraction(_branch_value(q, n, tr_div, ell_cap, d))
    w = vertex_weight(gamma)
    total = phi_at(0) * Fraction(1)
    for d in range(1, n):
        count = (q + 1) * q**(d - 1)
        # per-vertex weight, summed over the shell
        total += count * w * phi_at(d)
    return (q - 1) * total, True


def orbital_shell_tally(gamma: LocalMatrix, n: int):
    """Shell-by-shell contributions backing orbital_ratio, for reporting."""
    q = gamma.ctx.q
    tr_div = gamma.trace_val_ge(1)
    ell_cap = None if tr_div else ell_min(gamma, n)
    w = vertex_weight(gamma)
    rows = []
    for d in range(0, n):
        count = 1 if d == 0 else (q + 1) * q**(d - 1)
        weight = Fraction(1) if d == 0 else w
        value = Fraction(_branch_value(q, n, tr_div, ell_cap, d))
        rows.append({"distance": d, "vertices": count,
                     "weight": weight, "value": value,
                     "contribution": (q - 1) * count * weight * value})
    return rows


def _branch_value(q, n, tr_div, ell_cap, d):
    """Level-n branch value for stabilization distance d (= the invariant k)."""
    if d > n - 1:
        return 0
    if tr_div:
        return -1 - q
    if ell_cap < n - d:
        return 1 - q**(2 * ell_cap)
    return 1 + q**(2 * (n - d) - 1)
