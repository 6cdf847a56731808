"""The explicit central test functions and their closed-form orbital constants.

phi_p0 is the normalized indicator of the determinant-valuation-1 double
coset of the maximal compact subgroup.  phi_pn (level n >= 1) is the
four-branch function of the invariants (v_p det, v_p tr, k, ell), and
phi_pnt its rational-function deformation, which specializes to phi_pn
at t = q.  c_closed is the closed-form value of the orbital-integral
ratio, and c_r_char the character-theoretic expression for the same
constants at q = p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cyclotomic import CyclotomicValue
from .errors import DomainError, PrecisionExhausted
from .padic import (INF, ExtendedNat, GaloisRingElement, LocalMatrix,
                    ell_min, ell_of, k_of, unit_eigenvalue)
from .ratfunc import RationalFunctionT

OFF_SUPPORT = "off-support"
TRACE_DIVISIBLE = "trace-divisible"
SMALL_ELL = "ell-below-threshold"
LARGE_ELL = "ell-at-least-threshold"


def phi_branch(g: LocalMatrix, n: int):
    """Branch classification of g for the level-n function.

    Returns (branch, k, ell_or_None) where ell is reported as
    min(ell(g), n - k), the only resolution the values consult.
    """
    if n < 1:
        raise DomainError("phi_pn needs n >= 1")
    k = k_of(g)
    if g.det_valuation() != 1 or not g.trace_val_ge(0) or k > n - 1:
        return OFF_SUPPORT, k, None
    if g.trace_val_ge(1):
        return TRACE_DIVISIBLE, k, None
    lm = ell_min(g, n - k)
    if lm < n - k:
        return SMALL_ELL, k, lm
    return LARGE_ELL, k, lm


def phi_p0(g: LocalMatrix) -> Fraction:
    """1/(q-1) on the integral primitive determinant-valuation-1 locus, else 0."""
    q = g.ctx.q
    if g.e == 0 and g.det_valuation() == 1:
        return Fraction(1, q - 1)
    g.det_valuation()  # certify invertibility either way
    return Fraction(0)


def phi_pn(g: LocalMatrix, n: int) -> int:
    """The level-n central function, exact integer values."""
    q = g.ctx.q
    branch, k, ell = phi_branch(g, n)
    if branch == OFF_SUPPORT:
        return 0
    if branch == TRACE_DIVISIBLE:
        return -1 - q
    if branch == SMALL_ELL:
        return 1 - q**(2 * ell)
    return 1 + q**(2 * (n - k) - 1)


def phi_pnt(g: LocalMatrix, n: int) -> RationalFunctionT:
    """Deformed level-n function; phi_pnt(g)(t := q) == phi_pn(g)."""
    q = g.ctx.q
    branch, k, ell = phi_branch(g, n)
    if branch == OFF_SUPPORT:
        return RationalFunctionT.zero(q)
    if branch == TRACE_DIVISIBLE:
        # -q(1 - t^2)/(q - t^2)
        return RationalFunctionT(q, (-q, 0, q), 1)
    if branch == SMALL_ELL:
        return RationalFunctionT.const(q, 1) - RationalFunctionT.t_power(q, 2 * ell)
    # 1 - (q-1) t^(2(n-k)) / (q - t^2)
    return (RationalFunctionT.const(q, 1)
            - RationalFunctionT(q, (0,) * (2 * (n - k)) + (q - 1,), 1))


# ---------------------------------------------------------------------------
# invariants record


@dataclass
class GammaInvariants:
    """Conjugation invariants of a determinant-valuation-r element.

    ``ell`` saturates at ``level``: branch predicates only ever compare
    ell against thresholds <= level, and a reported value of exactly
    ``level`` means ">= level" unless ``ell_exact`` is set (in which case
    it is the certified exact value, INF included).
    """

    v_det: int
    v_tr: ExtendedNat
    ell: Optional[ExtendedNat]
    t2_residue: Optional[GaloisRingElement]
    level: int
    ell_exact: bool = False

    @classmethod
    def from_matrix(cls, g: LocalMatrix, n: int) -> "GammaInvariants":
        v_det = g.det_valuation()
        if not g.trace_val_ge(0):
            raise DomainError("invariants need an integral trace")
        if g.trace_val_ge(1):
            try:
                v_tr = g.trace_valuation()
            except PrecisionExhausted:
                v_tr = ExtendedNat(n)  # saturated; only ">= 1" is consulted
            return cls(v_det, v_tr, None, None, n)
        if v_det < 1:   # ell and the unit eigenvalue live on v_det >= 1 only
            return cls(v_det, ExtendedNat(0), None, None, n)
        ell_exact = True
        try:
            ell = ell_of(g)
        except PrecisionExhausted:
            ell = ExtendedNat(ell_min(g, n))
            ell_exact = False
        return cls(v_det, ExtendedNat(0), ell, unit_eigenvalue(g, n), n,
                   ell_exact)

    def t2_int(self) -> int:
        """Unit eigenvalue as an integer residue mod p^n (must be rational)."""
        if self.t2_residue is None:
            raise DomainError("no unit eigenvalue stored")
        c = self.t2_residue.coeffs_mod(self.level)
        if any(c[1:]):
            raise DomainError("unit eigenvalue does not lie in Z/p^n")
        return c[0]


def c_closed(inv: GammaInvariants, n: int, q: int) -> int:
    """Closed-form orbital-integral ratio for the level-n function."""
    if inv.v_det != 1:
        return 0
    if inv.v_tr >= 1:
        return (1 + q) * (1 - q**n)
    if inv.ell is not None and not (inv.ell < n):
        return q**(2 * n) - q**(2 * n - 2)
    return 0


def c_r_char(inv: GammaInvariants, h, p: int, r: int, n: int) -> CyclotomicValue:
    """Character-theoretic value: the two-branch sum over level-n characters.

    h is a class function on GL2(Z/p^n).  Vanishes unless v_p(det) = r and
    the trace is integral (integrality is part of the invariants record).
    """
    from .finitegl2 import FiniteGL2, ss_trace_point

    G = FiniteGL2(p, n)
    zero = CyclotomicValue.rational(G.char_order, 0)
    if inv.v_det != r:
        return zero
    if inv.v_tr >= 1:
        return ss_trace_point("supersingular", h, p, r, n)
    if inv.t2_residue is None:
        raise DomainError("ordinary branch needs the unit eigenvalue")
    return ss_trace_point("ordinary", h, p, r, n, a=inv.t2_int())
