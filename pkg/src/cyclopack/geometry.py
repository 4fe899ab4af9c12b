"""Euclidean and hermitian geometry of the embedded field.

K sits inside C^g via its g complex embeddings; E is the real span of K, and
C^g = E + iE. The euclidean pairing on rational points of E is the exact trace
form <a, b> = Tr(a * conj(b)). Points of C^g handled here are restricted to
pairs of field elements (rational points), which keeps every norm and pairing
an exact rational; the floating embeddings are diagnostics only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import linalg
from .cyclotomic import CycloElement, CyclotomicContext


@dataclass(frozen=True)
class ComplexPoint:
    """The point x + iy of C^g with x, y rational points of E."""

    x: CycloElement
    y: CycloElement

    def __post_init__(self) -> None:
        if self.x.ctx.m != self.y.ctx.m:
            raise ValueError("components from different cyclotomic fields")

    @property
    def ctx(self) -> CyclotomicContext:
        return self.x.ctx


def pairing(a: CycloElement, b: CycloElement) -> Fraction:
    """Euclidean pairing Tr(a * conj(b)) on E; symmetric, positive definite."""
    return (a * b.conj()).trace()


def gram(basis) -> list[list[Fraction]]:
    """Gram matrix of the pairing on a linearly independent family."""
    basis = list(basis)
    conjs = [b.conj() for b in basis]
    mat = [[(a * c).trace() for c in conjs] for a in basis]
    if linalg.determinant(mat) == 0:
        raise ValueError("family is linearly dependent")
    return mat


def norm_sq(p: ComplexPoint) -> Fraction:
    # the cross term of |x + iy|^2 vanishes because the pairing is real on E
    return pairing(p.x, p.x) + pairing(p.y, p.y)


def g_act(k: int, p: ComplexPoint) -> ComplexPoint:
    """Action of the unit zeta^k: x + iy maps to zeta^k x + i conj(zeta^k) y.

    k is any exponent mod m; the acting group is the full cyclic group of
    order m generated by zeta, so k need not be coprime to m.
    """
    zk = p.ctx.zeta(k)
    return ComplexPoint(zk * p.x, zk.conj() * p.y)


def embed(a: CycloElement, precision: int = 53):
    """The g complex embeddings of a, ordered by increasing exponent k
    coprime to m; mpmath values at the requested bit precision.

    Diagnostics only: no certified quantity depends on this.
    """
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    ctx = a.ctx
    with mpmath.workprec(precision + 16):
        out = []
        for k in sorted(ctx.power_map):
            root = mpmath.expjpi(mpmath.mpf(2 * k) / ctx.m)
            acc = mpmath.mpc(0)
            for c in reversed(a.coords):
                acc = acc * root + mpmath.mpf(c.numerator) / c.denominator
            out.append(+acc)
    return out
