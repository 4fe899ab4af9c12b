"""Exact arithmetic in K = Q(zeta_m) with the power basis of Z[zeta_m].

All coordinates are exact Fractions in the power basis {1, zeta, ...,
zeta^(g-1)}, g = phi(m). The trace-dual of the ring of integers (the
codifferent) is the fractional ideal generated by 1/Phi_m'(zeta); since
Z[zeta_m] is the full ring of integers, this is exact, not an approximation.
No floating point is used anywhere in this module.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import linalg


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, low degree first, by exact division
    of x^m - 1 by the product of Phi_d over proper divisors d of m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    num = [-1] + [0] * (m - 1) + [1]
    den = [1]
    for d in range(1, m):
        if m % d == 0:
            den = _poly_mul_int(den, list(cyclotomic_polynomial(d)))
    quo, rem = _poly_divmod_int(num, den)
    assert all(c == 0 for c in rem), "cyclotomic division must be exact"
    return tuple(quo)


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic here, so the quotient stays integral
    assert den[-1] == 1
    rem = list(num)
    dd = len(den) - 1
    quo = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quo[i - dd] = c
            for j, y in enumerate(den):
                rem[i - dd + j] -= c * y
    return quo, rem


class CycloElement:
    """An element of K as g exact rational coordinates in the power basis."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: "CyclotomicContext", coords) -> None:
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != ctx.g:
            raise ValueError(f"expected {ctx.g} coordinates, got {len(coords)}")
        self.ctx = ctx
        self.coords = coords

    def __repr__(self) -> str:
        return f"CycloElement(m={self.ctx.m}, {list(map(str, self.coords))})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self.ctx.m == other.ctx.m and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.ctx.m, self.coords))

    def __bool__(self) -> bool:
        return any(self.coords)

    def _check(self, other: "CycloElement") -> None:
        if self.ctx.m != other.ctx.m:
            raise ValueError("elements from different cyclotomic fields")

    def __add__(self, other):
        if isinstance(other, CycloElement):
            self._check(other)
            return CycloElement(self.ctx, [a + b for a, b in zip(self.coords, other.coords)])
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, CycloElement):
            self._check(other)
            return CycloElement(self.ctx, [a - b for a, b in zip(self.coords, other.coords)])
        return NotImplemented

    def __neg__(self):
        return CycloElement(self.ctx, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, CycloElement):
            self._check(other)
            return self.ctx.mul(self, other)
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.ctx, [a * other for a in self.coords])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CycloElement):
            return self * self.ctx.inverse(other)
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.ctx, [a / other for a in self.coords])
        return NotImplemented

    def conj(self) -> "CycloElement":
        return self.ctx.conj(self)

    def trace(self) -> Fraction:
        return self.ctx.trace(self)

    def inverse(self) -> "CycloElement":
        return self.ctx.inverse(self)

    def is_integral(self) -> bool:
        """True iff the element lies in Z[zeta], i.e. all coordinates are integers."""
        return all(c.denominator == 1 for c in self.coords)


class CyclotomicContext:
    """All precomputed data of Q(zeta_m): reduction tables, traces of powers,
    Galois action matrices, and bases of the ring of integers and of its
    trace-dual (codifferent) lattice.

    Immutable after construction; every operation is pure, so a context can be
    shared freely across workers.
    """

    def __init__(self, m: int) -> None:
        if m < 3:
            raise ValueError(f"m must be >= 3, got {m}")
        self.m = m
        self.phi_coeffs: tuple[int, ...] = cyclotomic_polynomial(m)
        self.g = len(self.phi_coeffs) - 1
        g = self.g

        # coordinates of zeta^e for 0 <= e < m (integer vectors)
        zp = [[0] * g for _ in range(m)]
        zp[0][0] = 1
        cur = zp[0]
        for e in range(1, m):
            cur = self._shift_reduce_int(cur)
            zp[e] = cur
        self._zeta_coords: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in zp)

        # coordinates of zeta^j for g <= j <= 2g-2, used to reduce products
        self.reduction_table: tuple[tuple[int, ...], ...] = tuple(
            self._zeta_coords[j % m] for j in range(g, 2 * g - 1)
        )

        # traces of zeta^j for 0 <= j <= 2g-2 via Newton's identities on Phi_m
        self.trace_vec: tuple[int, ...] = self._newton_traces()

        # Galois action zeta -> zeta^k for every k coprime to m
        self.power_map: dict[int, tuple[tuple[int, ...], ...]] = {}
        for k in range(1, m):
            if gcd(k, m) == 1:
                cols = [self._zeta_coords[(j * k) % m] for j in range(g)]
                self.power_map[k] = tuple(tuple(cols[j][i] for j in range(g)) for i in range(g))

        self.ok_basis: tuple[CycloElement, ...] = tuple(
            CycloElement(self, self._zeta_coords[j]) for j in range(g)
        )

        diff = self.different_generator()
        self.codiff_gen: CycloElement = self.inverse(diff)
        self.codiff_basis: tuple[CycloElement, ...] = tuple(
            self.mul(self.codiff_gen, b) for b in self.ok_basis
        )

        tgram = [[Fraction(self.trace_vec[i + j]) for j in range(g)] for i in range(g)]
        self.disc_abs: int = abs(int(linalg.determinant(tgram)))

        # Gram matrices of the euclidean pairing Tr(a conj(b)) on both bases;
        # both are circulant in (j - k) mod m, so one trace per residue suffices
        tcirc = [self.trace(self.zeta(e)) for e in range(m)]
        self.ok_gram: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(tcirc[(j - k) % m] for k in range(g)) for j in range(g)
        )
        w = self.mul(self.codiff_gen, self.conj(self.codiff_gen))
        wcirc = [self.trace(self.mul(w, self.zeta(e))) for e in range(m)]
        self.codiff_gram: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(wcirc[(j - k) % m] for k in range(g)) for j in range(g)
        )

        # power-basis coordinates of the codifferent basis, inverted once so
        # membership tests in the codifferent lattice are a single mat-vec
        cd_matrix = [[self.codiff_basis[j].coords[i] for j in range(g)] for i in range(g)]
        self._codiff_inv = linalg.inverse(cd_matrix)

    # -- construction helpers -------------------------------------------------

    def _shift_reduce_int(self, coords: list[int]) -> list[int]:
        # multiply by zeta: shift up, fold the overflow back with Phi_m
        g = self.g
        top = coords[g - 1]
        out = [0] + coords[: g - 1]
        if top:
            for i in range(g):
                out[i] -= top * self.phi_coeffs[i]
        return out

    def _newton_traces(self) -> tuple[int, ...]:
        # power sums of the roots of Phi_m from its coefficients; exact and
        # float-free (the embedding-sum computation is kept as a test oracle)
        g, c = self.g, self.phi_coeffs
        t = [0] * (2 * g - 1)
        t[0] = g
        for k in range(1, 2 * g - 1):
            s = 0
            for i in range(1, min(k, g) + 1):
                if i < k:
                    s += c[g - i] * t[k - i]
            if k <= g:
                s += k * c[g - k]
            t[k] = -s
        return tuple(t)

    # -- element factories ----------------------------------------------------

    def element(self, coords) -> CycloElement:
        return CycloElement(self, coords)

    def zero(self) -> CycloElement:
        return CycloElement(self, [0] * self.g)

    def one(self) -> CycloElement:
        return CycloElement(self, [1] + [0] * (self.g - 1))

    def zeta(self, e: int = 1) -> CycloElement:
        return CycloElement(self, self._zeta_coords[e % self.m])

    def from_rational(self, q) -> CycloElement:
        return CycloElement(self, [Fraction(q)] + [Fraction(0)] * (self.g - 1))

    # -- field operations -----------------------------------------------------

    def mul(self, a: CycloElement, b: CycloElement) -> CycloElement:
        g = self.g
        ac, bc = a.coords, b.coords
        conv = [Fraction(0)] * (2 * g - 1)
        for i, x in enumerate(ac):
            if x:
                for j, y in enumerate(bc):
                    if y:
                        conv[i + j] += x * y
        out = list(conv[:g])
        for j in range(g, 2 * g - 1):
            c = conv[j]
            if c:
                red = self.reduction_table[j - g]
                for i in range(g):
                    if red[i]:
                        out[i] += c * red[i]
        return CycloElement(self, out)

    def conj(self, a: CycloElement) -> CycloElement:
        """Complex conjugation zeta -> zeta^(m-1)."""
        return self.apply_power(self.m - 1, a)

    def apply_power(self, k: int, a: CycloElement) -> CycloElement:
        """Galois action zeta -> zeta^k; requires gcd(k, m) = 1."""
        mat = self.power_map.get(k % self.m)
        if mat is None:
            raise ValueError(f"k={k} is not coprime to m={self.m}")
        return CycloElement(self, linalg.mat_vec(mat, a.coords))

    def trace(self, a: CycloElement) -> Fraction:
        return sum((c * t for c, t in zip(a.coords, self.trace_vec)), Fraction(0))

    def inverse(self, a: CycloElement) -> CycloElement:
        if not a:
            raise ZeroDivisionError("zero has no inverse in K")
        # columns of the multiplication-by-a map, built by repeated zeta-shifts
        g = self.g
        cols = []
        t = a
        for _ in range(g):
            cols.append(t.coords)
            t = self.mul(t, self.zeta(1))
        mat = [[cols[j][i] for j in range(g)] for i in range(g)]
        e0 = [Fraction(1)] + [Fraction(0)] * (g - 1)
        sol = linalg.solve(mat, e0)
        assert sol is not None  # multiplication by a nonzero field element is invertible
        return CycloElement(self, sol)

    def different_generator(self) -> CycloElement:
        """Phi_m'(zeta); its inverse generates the codifferent over Z[zeta]."""
        c = self.phi_coeffs
        return CycloElement(self, [i * c[i] for i in range(1, self.g + 1)])

    # -- lattice coordinates --------------------------------------------------

    def coords_in_codiff(self, a: CycloElement) -> list[Fraction]:
        """Coordinates of a in the codifferent basis codiff_gen * zeta^j."""
        return linalg.mat_vec(self._codiff_inv, a.coords)

    def in_codifferent(self, a: CycloElement) -> bool:
        return linalg.is_integral_vector(self.coords_in_codiff(a))


def context_new(m: int) -> CyclotomicContext:
    """Build the full precomputed context for Q(zeta_m); rejects m < 3."""
    return CyclotomicContext(m)
