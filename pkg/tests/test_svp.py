import random
from fractions import Fraction

import mpmath
import pytest

from cyclopack import linalg
from cyclopack.svp import (ball_volume, enumerate_in_ball,
                           enumerate_in_ball_with_norms, lll_reduce,
                           packing_density, shortest_norm_sq)
from oracles import box_points_in_ball, box_shortest_norm_sq


def frac_mat(rows):
    return [[Fraction(x) for x in row] for row in rows]


def random_pd_gram(n, rng):
    # A^T A + I for a random integer matrix A is positive definite
    a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
    g = [[Fraction(sum(a[k][i] * a[k][j] for k in range(n)) + (i == j))
          for j in range(n)] for i in range(n)]
    return g


def random_unimodular(n, rng):
    u = linalg.identity(n)
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        q = rng.randint(-2, 2)
        for c in range(n):
            u[i][c] += q * u[j][c]
    return u


# -- ball volumes ---------------------------------------------------------------

def test_ball_volume_values():
    with mpmath.workprec(400):
        pi = +mpmath.pi
        targets = {2: pi, 4: pi ** 2 / 2, 8: pi ** 4 / 24}
        for n, t in targets.items():
            iv = ball_volume(n, 128)
            lo = mpmath.mpf(iv.lo.numerator) / iv.lo.denominator
            hi = mpmath.mpf(iv.hi.numerator) / iv.hi.denominator
            assert lo < t < hi
            assert iv.width < Fraction(1, 2 ** 120)


def test_ball_volume_refinement_nests():
    for n in (2, 4, 12):
        coarse = ball_volume(n, 64)
        fine = ball_volume(n, 256)
        assert coarse.contains_interval(fine)
        assert fine.midpoint in coarse


def test_ball_volume_rejects_odd_or_tiny():
    with pytest.raises(ValueError):
        ball_volume(3)
    with pytest.raises(ValueError):
        ball_volume(0)


# -- LLL -------------------------------------------------------------------------

def test_lll_identity_fixed():
    g = linalg.identity(4)
    u, r = lll_reduce(g)
    assert u == [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    assert r == g


def test_lll_preserves_determinant_and_matches_transform():
    rng = random.Random(31)
    for n in (2, 3, 4, 6):
        for _ in range(10):
            g = random_pd_gram(n, rng)
            u, r = lll_reduce(g)
            uf = frac_mat(u)
            assert linalg.determinant(uf) in (1, -1)
            assert linalg.mat_mul(linalg.mat_mul(uf, g), linalg.transpose(uf)) == r
            assert linalg.determinant(r) == linalg.determinant(g)


def test_lll_lovasz_condition_holds():
    rng = random.Random(33)
    delta = Fraction(99, 100)
    for _ in range(10):
        g = random_pd_gram(5, rng)
        _, r = lll_reduce(g)
        # recompute GSO from scratch and check both LLL conditions
        n = len(r)
        mu = [[Fraction(0)] * n for _ in range(n)]
        bb = [Fraction(0)] * n
        for k in range(n):
            for j in range(k):
                mu[k][j] = (r[k][j] - sum(mu[j][i] * mu[k][i] * bb[i] for i in range(j))) / bb[j]
            bb[k] = r[k][k] - sum(mu[k][j] ** 2 * bb[j] for j in range(k))
            assert bb[k] > 0
        for k in range(1, n):
            assert abs(mu[k][k - 1]) <= Fraction(1, 2)
            assert bb[k] >= (delta - mu[k][k - 1] ** 2) * bb[k - 1]


def test_lll_example_gram(ctx12):
    _, r = lll_reduce([list(row) for row in ctx12.ok_gram])
    assert r[0][0] <= 4


def test_lll_rejects_non_pd():
    with pytest.raises(ValueError):
        lll_reduce(frac_mat([[1, 0], [0, -1]]))
    with pytest.raises(ValueError):
        lll_reduce(frac_mat([[0, 0], [0, 1]]))


# -- enumeration -------------------------------------------------------------------

def test_enumerate_trivial_cases():
    gid = linalg.identity(2)
    assert enumerate_in_ball(gid, None, 0) == [(0, 0)]
    assert len(enumerate_in_ball(gid, None, 1)) == 5
    assert enumerate_in_ball(gid, None, Fraction(-1)) == []


def test_enumerate_matches_box_scan_random():
    rng = random.Random(37)
    for trial in range(50):
        n = rng.randint(1, 4)
        g = random_pd_gram(n, rng)
        center = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
        radius = Fraction(rng.randint(1, 40), rng.randint(1, 4))
        got = enumerate_in_ball(g, center, radius)
        expect = box_points_in_ball(g, center, radius)
        assert got == expect, (trial, g, center, radius)


def test_enumerate_norms_are_exact():
    rng = random.Random(39)
    g = random_pd_gram(3, rng)
    center = [Fraction(1, 3), Fraction(-1, 2), Fraction(0)]
    for v, q in enumerate_in_ball_with_norms(g, center, 9):
        d = [Fraction(t) - c for t, c in zip(v, center)]
        direct = sum(g[i][j] * d[i] * d[j] for i in range(3) for j in range(3))
        assert direct == q


# -- shortest vectors ---------------------------------------------------------------

def test_shortest_norm_known_values(ctx3, ctx4):
    assert shortest_norm_sq(linalg.identity(4)) == 1
    assert shortest_norm_sq([list(r) for r in ctx3.ok_gram]) == 2
    assert shortest_norm_sq([list(r) for r in ctx4.codiff_gram]) == Fraction(1, 2)
    assert shortest_norm_sq([list(r) for r in ctx3.codiff_gram]) == Fraction(2, 3)


def test_shortest_norm_matches_box_scan():
    rng = random.Random(41)
    for _ in range(25):
        n = rng.randint(1, 4)
        g = random_pd_gram(n, rng)
        assert shortest_norm_sq(g) == box_shortest_norm_sq(g)


def test_shortest_norm_homogeneous_and_unimodular_invariant():
    rng = random.Random(43)
    for _ in range(10):
        g = random_pd_gram(3, rng)
        lam = shortest_norm_sq(g)
        c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert shortest_norm_sq([[c * x for x in row] for row in g]) == c * lam
        u = random_unimodular(3, rng)
        gu = linalg.mat_mul(linalg.mat_mul(u, g), linalg.transpose(u))
        assert shortest_norm_sq(gu) == lam


# -- packing density ----------------------------------------------------------------

def test_packing_density_values():
    with mpmath.workprec(300):
        pi = +mpmath.pi
        iv = packing_density(linalg.identity(2), 2)
        assert mpmath.mpf(iv.lo.numerator) / iv.lo.denominator < pi / 4
        assert mpmath.mpf(iv.hi.numerator) / iv.hi.denominator > pi / 4
        iv4 = packing_density(linalg.identity(4), 4)  # the m=4 witness lattice
        t = pi ** 2 / 32
        assert mpmath.mpf(iv4.lo.numerator) / iv4.lo.denominator < t
        assert mpmath.mpf(iv4.hi.numerator) / iv4.hi.denominator > t


def test_packing_density_monotone_in_lambda():
    small = packing_density(frac_mat([[Fraction(1, 2), 0], [0, 2]]), 2)
    large = packing_density(linalg.identity(2), 2)
    assert small.hi < large.lo


def test_packing_density_rejects_bad_input():
    with pytest.raises(ValueError):
        packing_density(frac_mat([[2, 0], [0, 2]]), 2)  # covolume != 1
    with pytest.raises(ValueError):
        packing_density(linalg.identity(3), 2)
