"""Rational-function and cyclotomic arithmetic."""

from fractions import Fraction

import pytest

from gl2lab.cyclotomic import CyclotomicValue, cyclotomic_polynomial
from gl2lab.errors import DomainError
from gl2lab.ratfunc import RationalFunctionT


KNOWN_CYCLOTOMICS = {
    1: (-1, 1),
    2: (1, 1),
    3: (1, 1, 1),
    4: (1, 0, 1),
    5: (1, 1, 1, 1, 1),
    6: (1, -1, 1),
    8: (1, 0, 0, 0, 1),
    9: (1, 0, 0, 1, 0, 0, 1),
    12: (1, 0, -1, 0, 1),
}


def test_cyclotomic_polynomials():
    for M, coeffs in KNOWN_CYCLOTOMICS.items():
        assert cyclotomic_polynomial(M) == coeffs


@pytest.mark.parametrize("M", [1, 2, 3, 4, 6, 8, 12])
def test_roots_of_unity(M):
    z = CyclotomicValue.zeta(M)
    acc = CyclotomicValue.rational(M, 1)
    for k in range(1, M):
        acc = acc * z
        assert acc == CyclotomicValue.zeta(M, k)
        if M > 1:
            assert acc != 1 or k == 0
    assert acc * z == 1
    # full sum vanishes for M > 1
    s = CyclotomicValue.rational(M, 0)
    for k in range(M):
        s = s + CyclotomicValue.zeta(M, k)
    if M > 1:
        assert s.is_zero()


def test_cyclotomic_rationality():
    z = CyclotomicValue.zeta(6)
    v = z + CyclotomicValue.zeta(6, 5)   # z + z^-1 = 1 in Q(zeta_6)
    assert v.as_rational() == 1
    with pytest.raises(DomainError):
        z.as_rational()
    assert (z * 0).is_zero()
    assert CyclotomicValue.rational(6, Fraction(3, 2)) / 3 == Fraction(1, 2)


def test_ratfunc_canonical_form():
    q = 2
    # (q - t^2) / (q - t^2) == 1
    f = RationalFunctionT(q, (q, 0, -1), 1)
    assert f == RationalFunctionT.const(q, 1)
    assert f.den_exp == 0
    z = RationalFunctionT.zero(q)
    assert z.is_zero() and (z + z).is_zero()


def test_ratfunc_arithmetic_and_specialize():
    q = 3
    a = RationalFunctionT(q, (-q, 0, q), 1)       # -q(1-t^2)/(q-t^2)
    b = RationalFunctionT(q, (q, 0, -q), 1)
    assert (a + b).is_zero()
    assert a.specialize(q) == -1 - q
    big = RationalFunctionT.const(q, 1) - RationalFunctionT(q, (0, 0, q - 1), 1)
    assert big.specialize(q) == 1 + q
    small = RationalFunctionT.const(q, 1) - RationalFunctionT.t_power(q, 4)
    assert small.specialize(q) == 1 - q**4
    # averaging with scalar division
    avg = (a + big + small) / 3
    assert avg.specialize(q) == Fraction((-1 - q) + (1 + q) + (1 - q**4), 3)


def test_ratfunc_cross_multiplied_equality():
    q = 2
    # t^2/(q-t^2) + 1 == q/(q-t^2)
    lhs = RationalFunctionT(q, (0, 0, 1), 1) + 1
    rhs = RationalFunctionT(q, (q,), 1)
    assert lhs == rhs
