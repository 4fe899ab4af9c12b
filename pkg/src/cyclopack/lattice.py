"""The rank-2g lattice of a principally polarized abelian variety with
multiplication structure from the cyclotomic field.

For a scale r > 0 and a rational point t of E, the lattice is spanned by
r * (codifferent basis) together with the vectors r * t * conj(b) + (i/r) * b
for b running over the power basis of the ring of integers. A lattice point
r*u + (i/r)*v is stored as the pair (u, v) of field elements, which keeps
every Gram entry a rational in r^2 and 1/r^2 only; r itself never needs to
be extracted as a real number.
"""
from __future__ import annotations

from fractions import Fraction

from . import linalg
from .cyclotomic import CycloElement, CyclotomicContext


class PolarizedLattice:
    """Lattice with exact real Gram matrix and integer symplectic form.

    generators holds the (u, v) pairs; real_gram[j][k] is the real part of
    the hermitian product of generators j and k, symplectic[j][k] its
    imaginary part (kept as Fractions so that integrality is checkable).
    """

    def __init__(self, ctx: CyclotomicContext, r_sq, x: CycloElement,
                 generators, conjugate_f: bool = True) -> None:
        r_sq = Fraction(r_sq)
        if r_sq <= 0:
            raise ValueError(f"r^2 must be positive, got {r_sq}")
        self.ctx = ctx
        self.r_sq = r_sq
        self.x = x
        self.conjugate_f = conjugate_f
        self.generators: tuple[tuple[CycloElement, CycloElement], ...] = tuple(generators)

        us = [u for u, _ in self.generators]
        vs = [v for _, v in self.generators]
        ucon = [u.conj() for u in us]
        vcon = [v.conj() for v in vs]
        n = len(self.generators)
        inv_r_sq = 1 / r_sq
        self.real_gram = [
            [r_sq * (us[j] * ucon[k]).trace() + inv_r_sq * (vs[j] * vcon[k]).trace()
             for k in range(n)]
            for j in range(n)
        ]
        self.symplectic = [
            [(vs[j] * ucon[k]).trace() - (us[j] * vcon[k]).trace() for k in range(n)]
            for j in range(n)
        ]

    # -- checks ----------------------------------------------------------------

    def is_riemann_integral(self) -> bool:
        """True iff the imaginary part of the form is integer on the lattice."""
        return all(e.denominator == 1 for row in self.symplectic for e in row)

    def symplectic_int(self) -> list[list[int]]:
        if not self.is_riemann_integral():
            raise ValueError("symplectic form is not integral")
        return [[int(e) for e in row] for row in self.symplectic]

    def is_unimodular(self) -> bool:
        """True iff |det| of the integer symplectic matrix is 1, i.e. the
        polarization is principal."""
        return abs(linalg.determinant(self.symplectic)) == 1

    def det_real_gram(self) -> Fraction:
        return linalg.determinant(self.real_gram)

    def _offset(self, v: CycloElement) -> CycloElement:
        return self.x * (v.conj() if self.conjugate_f else v)

    def coordinates_of(self, u: CycloElement, v: CycloElement):
        """Rational coordinates of the point r*u + (i/r)*v in the generator
        basis, or None if (u, v) is not in the rational span (never happens
        for field-element pairs)."""
        # v determines the second block of coordinates directly (power basis),
        # the first block is the codifferent coordinates of the remainder
        t_b = list(v.coords)
        w = u - self._offset(v)
        t_a = self.ctx.coords_in_codiff(w)
        return t_a + t_b

    def contains(self, u: CycloElement, v: CycloElement) -> bool:
        return linalg.is_integral_vector(self.coordinates_of(u, v))

    def is_g_stable(self) -> bool:
        """Stability under the order-m unit group: it is enough to check the
        generator zeta, whose action sends (u, v) to (zeta u, conj(zeta) v)."""
        z = self.ctx.zeta(1)
        zc = z.conj()
        return all(self.contains(z * u, zc * v) for u, v in self.generators)

    def has_real_multiplication(self) -> bool:
        """Stability under multiplication by zeta + zeta^-1, which generates
        the ring of integers of the maximal totally real subfield."""
        b = self.ctx.zeta(1) + self.ctx.zeta(self.ctx.m - 1)
        return all(self.contains(b * u, b * v) for u, v in self.generators)

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        from .ioutil import fmt_rat
        return {
            "m": self.ctx.m,
            "r_sq": fmt_rat(self.r_sq),
            "x": [fmt_rat(c) for c in self.x.coords],
            "real_gram": [[fmt_rat(e) for e in row] for row in self.real_gram],
            "symplectic": self.symplectic_int(),
        }


def build_lattice(ctx: CyclotomicContext, r_sq, x: CycloElement,
                  conjugate_f: bool = True) -> PolarizedLattice:
    """Construct the lattice for scale r^2 > 0 and twist point x.

    conjugate_f=False replaces the twist map y -> x*conj(y) by y -> x*y; that
    variant is not unit-stable and exists only as a negative control.
    """
    gens = [(a, ctx.zero()) for a in ctx.codiff_basis]
    for b in ctx.ok_basis:
        off = x * (b.conj() if conjugate_f else b)
        gens.append((off, b))
    return PolarizedLattice(ctx, r_sq, x, gens, conjugate_f=conjugate_f)
