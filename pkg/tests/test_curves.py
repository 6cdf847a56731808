"""Curve census, level structures, Lefschetz sums, boundary."""

import pytest

from gl2lab.curves import (SmallField, boundary_orbit_report,
                           boundary_ss_trace, enumerate_curves,
                           factor_prime_power, gl2_order_mod, isogeny_classes,
                           level_m_count, point_trace, ss_lefschetz)
from gl2lab.errors import DomainError


def test_small_field_tables():
    F = SmallField(4)
    # char 2: x + x = 0; multiplicative group of order 3
    for x in range(4):
        assert F.add(x, x) == 0
    nonzero = [x for x in range(1, 4)]
    for x in nonzero:
        assert F.mul(x, F.inv(x)) == F.one
    F7 = SmallField(7)
    assert F7.add(3, 5) == 1 and F7.mul(3, 5) == 1


def test_weil_bound_q5():
    for E in enumerate_curves(5):
        assert -4 <= E.trace <= 4


@pytest.mark.parametrize("q,count", [(2, 5), (3, 8), (5, 12)])
def test_census_class_counts_and_mass(q, count):
    # the orbit sweep itself asserts sum of orbit sizes = #nonsingular tuples
    cs = enumerate_curves(q)
    assert len(cs) == count
    group_order = (q - 1) * q**3
    for E in cs:
        assert group_order % E.aut_order == 0
    # weighted count: sum of 1/|Aut| over isomorphism classes equals q,
    # equivalently there are exactly (q-1) q^4 nonsingular coefficient tuples
    from fractions import Fraction
    assert sum(Fraction(1, E.aut_order) for E in cs) == q


def test_automorphisms_act_freely_on_bases():
    # direct-action freeness behind the integrality of the moduli count
    q, m = 7, 3
    F = SmallField(q)
    for E in enumerate_curves(q):
        tors = [P for P in E.points() if E.scalar_mul(m, P) is None]
        if len(tors) != m * m:
            continue
        # substitutions fixing the coefficients = Aut(E); their point action
        auts = []
        for u in range(1, q):
            for rr in range(q):
                for s in range(q):
                    for t in range(q):
                        img = _apply_subst(F, E.a, u, rr, s, t)
                        if img == E.a:
                            auts.append((u, rr, s, t))
        assert len(auts) == E.aut_order
        bases = []
        for P in tors:
            for Q in tors:
                span = set()
                for i in range(m):
                    iP = E.scalar_mul(i, P)
                    for j in range(m):
                        span.add(_key(E.add_points(iP, E.scalar_mul(j, Q))))
                if len(span) == m * m:
                    bases.append((P, Q))
        assert bases, "full torsion must contain a basis"
        for base in bases[:6]:
            fixers = 0
            for (u, rr, s, t) in auts:
                moved = tuple(_act_on_point(F, P, u, rr, s, t) for P in base)
                if moved == base:
                    fixers += 1
            assert fixers == 1  # only the identity fixes an ordered basis


def _key(P):
    return P if P is None else (int(P[0]), int(P[1]))


def _apply_subst(F, a, u, rr, s, t):
    """Coefficients of the substituted equation (same formulas as the sweep)."""
    import numpy as np
    from gl2lab.curves import _transform_all
    subs = np.array([[u, rr, s, t]], dtype=np.int64)
    na = _transform_all(F.q, a, subs)
    return tuple(int(x[0]) for x in na)


def _act_on_point(F, P, u, rr, s, t):
    """(x, y) -> ((x - r)/u^2, (y - s(x - r) - t)/u^3), inverse substitution."""
    if P is None:
        return None
    x, y = P
    u2 = F.mul(u, u)
    u3 = F.mul(u2, u)
    xr = F.sub(x, rr)
    num_y = F.sub(F.sub(y, F.mul(s, xr)), t)
    return (int(F.mul(xr, F.inv(u2))), int(F.mul(num_y, F.inv(u3))))


def test_supersingular_criteria_q7():
    p = 7
    for E in enumerate_curves(7):
        ss_by_trace = E.trace % p == 0
        ss_by_count = E.count() % p == 1 % p
        assert ss_by_trace == ss_by_count == E.is_supersingular()
        if ss_by_trace:
            assert E.trace == 0      # |a| <= 5 forces 0


def test_group_law_and_torsion():
    for q in (5, 7):
        for E in enumerate_curves(q)[:4]:
            pts = E.points()
            P = pts[1]
            # order of P divides the group order
            k, acc = 0, None
            while True:
                acc = E.add_points(acc, P)
                k += 1
                if acc is None:
                    break
            assert len(pts) % k == 0
            assert E.add_points(P, E.neg_point(P)) is None


def test_level_m_count_examples():
    # no full 3-torsion -> 0
    cs = enumerate_curves(5)      # 5 = 2 mod 3, no full level-3 structures
    assert all(level_m_count(E, 3) == 0 for E in cs)
    # q = 7: the curve with E(F_7) containing (Z/3)^2 carries 48/|Aut| points
    found = []
    for E in enumerate_curves(7):
        c = level_m_count(E, 3)
        if c:
            tors = [P for P in E.points() if E.scalar_mul(3, P) is None]
            assert len(tors) == 9
            assert c * E.aut_order == 48        # |GL2(Z/3)| bases
            found.append((E, c))
    assert sum(c for _, c in found) == 8
    with pytest.raises(DomainError):
        level_m_count(enumerate_curves(7)[0], 2)
    with pytest.raises(DomainError):
        level_m_count(enumerate_curves(7)[0], 7)


@pytest.mark.parametrize("q", [4, 7, 13])
def test_lefschetz_n0_equals_direct_count(q):
    p, r = factor_prime_power(q)
    rep = ss_lefschetz(p, r, 0, 3)
    direct = sum(level_m_count(E, 3) for E in enumerate_curves(q))
    assert rep.total == direct == rep.moduli_points
    # two geometric components, four cusps each
    assert direct == 2 * (q - 3)


def test_isogeny_class_records():
    recs = isogeny_classes(7, n=1)
    traces = [r.trace for r in recs]
    assert traces == sorted(traces)
    for r in recs:
        assert r.ordinary == (r.trace % 7 != 0)
        if r.ordinary:
            a = r.unit_eigenvalue
            assert (a * a - r.trace * a + 7) % 7 == 0 and a % 7 != 0


def test_point_trace_values():
    # supersingular at (p, r, n) = (2, 1, 1): 1 - 2 (2 + 1 - 1) = -3
    assert point_trace(2, 1, 1, False, None) == -3
    assert point_trace(2, 1, 0, False, None) == 1
    assert point_trace(2, 1, 1, True, 1) == 2**2 - 2**0
    assert point_trace(2, 1, 1, True, 1) == 3
    assert point_trace(3, 1, 1, True, 2) == 0


def test_lefschetz_supersingular_q4():
    rep = ss_lefschetz(2, 2, 1, 3)
    # the only level-3 class over F_4 is supersingular: 2 points, each 1 - 4*2
    assert rep.moduli_points == 2
    assert rep.total == 2 * (1 - 4 * (2 + 1 - 1))


def test_gl2_order_mod_composite():
    assert gl2_order_mod(21) == 48 * 2016
    assert gl2_order_mod(15) == 48 * 480


def test_boundary_formula_values():
    assert boundary_ss_trace(2, 1, 1, 3) == 0          # 2 != 1 mod 3
    assert boundary_ss_trace(7, 1, 1, 3) == 384
    assert boundary_ss_trace(5, 2, 1, 3) == 192        # 25 = 1 mod 3
    with pytest.raises(DomainError):
        boundary_ss_trace(3, 1, 1, 3)                  # m not prime to p
    with pytest.raises(DomainError):
        boundary_ss_trace(7, 1, 0, 3)


def test_boundary_oracle_agreement():
    packets, fixed, sizes_ok = boundary_orbit_report(7, 1, 1, 3)
    assert (packets, fixed, sizes_ok) == (384, 384, True)
    packets, fixed, sizes_ok = boundary_orbit_report(5, 2, 1, 3)
    assert (packets, fixed, sizes_ok) == (192, 192, True)
    # Frobenius must move every packet when p^r != 1 mod m
    packets, fixed, sizes_ok = boundary_orbit_report(2, 1, 1, 3)
    assert fixed == 0 and sizes_ok
