"""Certified enclosures of real constants with exact rational endpoints.

An IntervalValue is a pair of Fractions lo <= hi known to contain the real
quantity in question. All arithmetic is containment-preserving (outward), so
a strict comparison of an endpoint against a rational is a proof. Pi is
enclosed by bracketing partial sums of the Machin arctangent series; the
brackets tighten monotonically as the precision parameter grows, and outward
dyadic rounding pads each endpoint by one ulp so enclosures at higher
precision are strictly nested inside coarser ones.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt


def int_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for integers n >= 0, k >= 1."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << -(-n.bit_length() // k)  # upper seed, then Newton downwards
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


class IntervalValue:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi) -> None:
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x) -> "IntervalValue":
        x = Fraction(x)
        return cls(x, x)

    def __repr__(self) -> str:
        return f"IntervalValue({float(self.lo)!r}, {float(self.hi)!r})"

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def contains_interval(self, other: "IntervalValue") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, IntervalValue):
            return IntervalValue(self.lo + other.lo, self.hi + other.hi)
        return IntervalValue(self.lo + Fraction(other), self.hi + Fraction(other))

    __radd__ = __add__

    def __neg__(self):
        return IntervalValue(-self.hi, -self.lo)

    def __sub__(self, other):
        if isinstance(other, IntervalValue):
            return IntervalValue(self.lo - other.hi, self.hi - other.lo)
        return self + (-Fraction(other))

    def __rsub__(self, other):
        return (-self) + Fraction(other)

    def __mul__(self, other):
        if isinstance(other, IntervalValue):
            cands = (self.lo * other.lo, self.lo * other.hi,
                     self.hi * other.lo, self.hi * other.hi)
            return IntervalValue(min(cands), max(cands))
        q = Fraction(other)
        if q >= 0:
            return IntervalValue(self.lo * q, self.hi * q)
        return IntervalValue(self.hi * q, self.lo * q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, IntervalValue):
            if other.lo <= 0 <= other.hi:
                raise ZeroDivisionError("interval divisor contains zero")
            cands = (self.lo / other.lo, self.lo / other.hi,
                     self.hi / other.lo, self.hi / other.hi)
            return IntervalValue(min(cands), max(cands))
        q = Fraction(other)
        if q == 0:
            raise ZeroDivisionError
        if q > 0:
            return IntervalValue(self.lo / q, self.hi / q)
        return IntervalValue(self.hi / q, self.lo / q)

    def __rtruediv__(self, other):
        return IntervalValue.point(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        if k == 0:
            return IntervalValue.point(1)
        if self.lo >= 0:
            return IntervalValue(self.lo ** k, self.hi ** k)
        if self.hi <= 0:
            a, b = self.lo ** k, self.hi ** k
            return IntervalValue(min(a, b), max(a, b))
        if k % 2 == 1:
            return IntervalValue(self.lo ** k, self.hi ** k)
        return IntervalValue(0, max(self.lo ** k, self.hi ** k))

    def clamp_nonnegative(self) -> "IntervalValue":
        """Intersect with [0, inf); requires hi >= 0."""
        return IntervalValue(max(self.lo, Fraction(0)), self.hi)

    def nth_root(self, n: int, precision: int) -> "IntervalValue":
        """Enclosure of the n-th root; requires a nonnegative interval."""
        if self.lo < 0:
            raise ValueError("n-th root of an interval reaching below zero")
        scale = 1 << (n * precision)
        lo_int = int_nth_root(int(self.lo * scale), n)
        hi_scaled = self.hi * scale
        hi_ceil = -int(-hi_scaled.numerator // hi_scaled.denominator)
        hi_int = int_nth_root(hi_ceil, n) + 1
        unit = Fraction(1, 1 << precision)
        return IntervalValue(lo_int * unit, hi_int * unit)

    def sqrt(self, precision: int) -> "IntervalValue":
        return self.nth_root(2, precision)

    def outward(self, precision: int) -> "IntervalValue":
        """Round endpoints outward to the dyadic grid 2^-precision and pad by
        one ulp; the pad guarantees strict nesting of refined enclosures."""
        scale = 1 << precision
        lo = Fraction(self.lo.numerator * scale // self.lo.denominator - 1, scale)
        hi = Fraction(-(-self.hi.numerator * scale // self.hi.denominator) + 1, scale)
        return IntervalValue(lo, hi)


def _arctan_inv_brackets(q: int, tail_bits: int) -> tuple[Fraction, Fraction]:
    """Bracketing partial sums of arctan(1/q) for integer q >= 2.

    The series is alternating with strictly decreasing terms, so consecutive
    partial sums enclose the limit.
    """
    term = Fraction(1, q)
    total = term
    j = 1
    q2 = q * q
    limit = Fraction(1, 1 << tail_bits)
    while True:
        term = Fraction(term.numerator, term.denominator * q2)
        t = term / (2 * j + 1)
        prev = total
        total = total - t if j % 2 else total + t
        j += 1
        if t < limit:
            return (min(prev, total), max(prev, total))


@lru_cache(maxsize=None)
def pi_interval(precision: int = 128) -> IntervalValue:
    """Enclosure of pi via Machin's formula 16 arctan(1/5) - 4 arctan(1/239)."""
    if precision < 8:
        raise ValueError("precision must be at least 8 bits")
    tail = precision + 16
    a5 = _arctan_inv_brackets(5, tail)
    a239 = _arctan_inv_brackets(239, tail)
    raw = IntervalValue(16 * a5[0] - 4 * a239[1], 16 * a5[1] - 4 * a239[0])
    return raw.outward(precision)
