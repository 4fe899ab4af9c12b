from fractions import Fraction

import mpmath
import pytest

from cyclopack.intervals import IntervalValue, int_nth_root, pi_interval


def as_mpf(x: Fraction, prec=400):
    with mpmath.workprec(prec):
        return mpmath.mpf(x.numerator) / x.denominator


def test_int_nth_root():
    assert int_nth_root(0, 3) == 0
    assert int_nth_root(26, 3) == 2
    assert int_nth_root(27, 3) == 3
    assert int_nth_root(2 ** 90 - 1, 5) == 2 ** 18 - 1
    for n in (2, 3, 7):
        for v in (1, 5, 10 ** 12, 10 ** 12 + 7):
            r = int_nth_root(v, n)
            assert r ** n <= v < (r + 1) ** n


def test_pi_enclosure_and_nesting():
    with mpmath.workprec(600):
        pi = +mpmath.pi
        prev = None
        for bits in (32, 64, 128, 256, 512):
            iv = pi_interval(bits)
            assert as_mpf(iv.lo, 600) < pi < as_mpf(iv.hi, 600)
            assert iv.width < Fraction(1, 2 ** (bits - 3))
            if prev is not None:
                assert prev.contains_interval(iv)
                assert iv.width < prev.width
            prev = iv


def test_midpoints_refine_within_coarser_enclosures():
    coarse = pi_interval(64)
    fine = pi_interval(256)
    assert fine.midpoint in coarse


def test_interval_arithmetic_contains():
    a = IntervalValue(Fraction(1, 3), Fraction(1, 2))
    b = IntervalValue(Fraction(-2), Fraction(3))
    for x in (Fraction(2, 5),):
        for y in (Fraction(-1), Fraction(0), Fraction(2)):
            assert x + y in a + b
            assert x - y in a - b
            assert x * y in a * b
    c = IntervalValue(Fraction(1, 4), Fraction(1, 2))
    assert Fraction(2, 5) / Fraction(1, 3) in a / c
    assert (Fraction(2, 5) ** 3) in a ** 3
    assert Fraction(0) in b ** 2
    with pytest.raises(ZeroDivisionError):
        a / b


def test_interval_pow_signs():
    neg = IntervalValue(Fraction(-3), Fraction(-2))
    assert (neg ** 2).lo == 4 and (neg ** 2).hi == 9
    assert (neg ** 3).lo == -27 and (neg ** 3).hi == -8
    mixed = IntervalValue(Fraction(-2), Fraction(3))
    assert (mixed ** 2).lo == 0 and (mixed ** 2).hi == 9


def test_nth_root_enclosure():
    with mpmath.workprec(400):
        for val, n in ((Fraction(2), 2), (Fraction(10), 3), (Fraction(7, 5), 4)):
            iv = IntervalValue.point(val).nth_root(n, 128)
            true = mpmath.root(as_mpf(val), n)
            assert as_mpf(iv.lo) <= true <= as_mpf(iv.hi)
            assert iv.width <= Fraction(3, 2 ** 128)
    # roots of interval endpoints stay ordered
    iv = IntervalValue(Fraction(4), Fraction(9)).sqrt(64)
    assert iv.lo <= 2 and 3 <= iv.hi


def test_outward_pads_and_preserves():
    x = IntervalValue(Fraction(1, 3), Fraction(2, 3))
    out = x.outward(32)
    assert out.lo < Fraction(1, 3) and out.hi > Fraction(2, 3)
    assert out.width - x.width <= Fraction(4, 2 ** 32)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        IntervalValue(Fraction(1), Fraction(0))
