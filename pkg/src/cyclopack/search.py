"""The averaging search: pick a scale certified by the mean-value bound,
sample twist points until the obstruction count vanishes, and emit an exact
certificate of the resulting packing bound.

Pipeline for a given m and rational epsilon in (0, m):

  1. select_r scans a grid of rational r^2 for a value where the pure
     codifferent vectors are already long enough (certified interval lower
     bound) while the mean obstruction count J(r) stays below m (certified
     interval upper bound).
  2. Twist points x are sampled from the fundamental parallelepiped of the
     codifferent; x = 0 is always tried first. count_N(x) is an exact
     integer; the first x with count zero wins. Since the count is divisible
     by m and has mean J(r0) < m, such x exist in abundance.
  3. The certificate's bound is NOT inferred from the counting argument: the
     shortest vector of the constructed lattice is enumerated exactly and
     v_2g * lambda1^2g is bounded below by interval arithmetic.

All certified quantities are exact rationals; interval refinement is
deterministic, so a certificate reproduces bit-for-bit from (m, epsilon,
r^2, x, precision).
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CycloElement, CyclotomicContext
from .geometry import ComplexPoint, norm_sq
from .intervals import IntervalValue
from .ioutil import fmt_rat, parse_rat
from .lattice import build_lattice
from .svp import ball_volume, enumerate_in_ball_with_norms, shortest_norm_sq

MAX_PRECISION = 4096

CHECK_NAMES = ("integrality", "unimodular", "g_stable", "real_mult")


class SearchError(Exception):
    pass


class NoQualifyingRadius(SearchError):
    """No grid value passed both certified conditions; enlarge the grid."""


class SearchBudgetExceeded(SearchError):
    def __init__(self, m: int, tried: int, best_n: int) -> None:
        super().__init__(f"m={m}: no zero-count twist found in {tried} samples "
                         f"(best count seen: {best_n})")
        self.m = m
        self.tried = tried
        self.best_n = best_n


class CertificateFormatError(ValueError):
    pass


def default_r_grid() -> tuple[Fraction, ...]:
    """r^2 in {k/2 : 1 <= k <= 32}, scanned in increasing order."""
    return tuple(Fraction(k, 2) for k in range(1, 33))


@dataclass(frozen=True)
class SearchConfig:
    m: int
    epsilon: Fraction = Fraction(1, 2)
    denom: int = 8
    budget: int = 1000
    seed: int = 0
    precision: int = 128
    r_grid: tuple[Fraction, ...] = field(default_factory=default_r_grid)
    workers: int = 1

    def validate(self) -> None:
        if self.m < 3:
            raise ValueError(f"m must be >= 3, got {self.m}")
        if not (0 < self.epsilon < self.m):
            raise ValueError(f"epsilon must satisfy 0 < epsilon < m, got {self.epsilon}")
        if self.denom < 1 or self.budget < 1 or self.precision < 16 or self.workers < 1:
            raise ValueError("denom, budget and workers must be >= 1, precision >= 16")
        if not self.r_grid:
            raise ValueError("r_grid must be nonempty")


@dataclass(frozen=True)
class Certificate:
    """Exact witness of v_2g * lambda1(Gamma)^2g > m - epsilon together with
    the structural checks of the underlying polarized lattice."""

    m: int
    g: int
    epsilon: Fraction
    r_sq: Fraction
    x_coords: tuple[Fraction, ...]
    lambda1_sq: Fraction
    n_value: int
    bound_lo: Fraction
    checks: dict[str, bool]
    precision_bits: int
    seed: int
    sample_index: int

    def is_valid(self) -> bool:
        return (self.n_value == 0
                and all(self.checks.get(k, False) for k in CHECK_NAMES)
                and self.bound_lo > self.m - self.epsilon)


# -- the cut-off function chi -------------------------------------------------

def _compare_ball_multiple(two_g: int, q_pow: Fraction, bound: Fraction,
                           precision: int) -> str:
    """Certified comparison of v_{two_g} * q_pow with bound: 'le', 'gt', or
    'tie' when undecided at the precision cap (possible only for an exact
    boundary value, which rationals cannot produce for q_pow != 0)."""
    p = max(precision, 16)
    while True:
        v = ball_volume(two_g, p)
        if v.hi * q_pow <= bound:
            return "le"
        if v.lo * q_pow > bound:
            return "gt"
        if p >= MAX_PRECISION:
            return "tie"
        p = min(2 * p, MAX_PRECISION)


def chi_norm_sq(two_g: int, nsq: Fraction, bound: Fraction, precision: int = 128) -> bool:
    """chi on a point of known squared norm: true iff v_2g * |z|^2g <= bound.

    Undecidable boundary ties resolve to inside, which can only inflate the
    obstruction count, never weaken a certificate.
    """
    if nsq == 0:
        return True
    q_pow = Fraction(nsq) ** (two_g // 2)
    return _compare_ball_multiple(two_g, q_pow, bound, precision) != "gt"


def chi(p: ComplexPoint, epsilon, precision: int = 128) -> bool:
    """Indicator of the ball v_2g |z|^2g <= m - epsilon at a rational point."""
    ctx = p.ctx
    return chi_norm_sq(2 * ctx.g, norm_sq(p), ctx.m - Fraction(epsilon), precision)


# -- chi-ball radius ----------------------------------------------------------

def chi_radius_sq(ctx: CyclotomicContext, epsilon, precision: int) -> IntervalValue:
    """Enclosure of R^2 = ((m - epsilon) / v_2g)^(1/g), the squared norm at
    which chi switches off."""
    g = ctx.g
    v2g = ball_volume(2 * g, precision)
    return (IntervalValue.point(ctx.m - Fraction(epsilon)) / v2g).nth_root(g, precision)


# -- J(r): the averaged count -------------------------------------------------

def j_value(ctx: CyclotomicContext, r_sq, epsilon, precision: int = 128) -> IntervalValue:
    """Enclosure of the mean obstruction count at scale r.

    Closed form: since |x + i b / r|^2 = |x|^2 + |b|^2 / r^2, every term of
    the defining sum is the volume of a g-ball slice, so

        J(r) = nu(F') * r^-g * v_g * sum_b (R^2 - |b|^2 / r^2)^(g/2)

    over nonzero ring integers b with |b|^2 < r^2 R^2, with nu(F') the
    covolume sqrt(|disc|) of the ring of integers. Validated against a
    Monte-Carlo estimate of the defining integral in the test suite.
    """
    r_sq = Fraction(r_sq)
    g = ctx.g
    guard = precision + 32
    r2 = chi_radius_sq(ctx, epsilon, guard)
    vecs = enumerate_in_ball_with_norms(ctx.ok_gram, None, r_sq * r2.hi)
    total = IntervalValue.point(0)
    nonempty = False
    for v, t in vecs:
        if not any(v):
            continue
        term = r2 - t / r_sq
        if term.hi <= 0:
            continue
        nonempty = True
        total = total + term.clamp_nonnegative() ** (g // 2)
    if not nonempty:
        return IntervalValue.point(0)
    nu_f_prime = IntervalValue.point(ctx.disc_abs).sqrt(guard)
    vg = ball_volume(g, guard)
    out = (nu_f_prime * vg * total / (r_sq ** (g // 2))).outward(precision)
    return IntervalValue(max(out.lo, Fraction(0)), out.hi)


def select_r(ctx: CyclotomicContext, epsilon, r_grid, precision: int = 128) -> Fraction:
    """First grid value r^2 such that, with certainty from interval bounds,
    v_2g (r^2 lambda1^2(I))^g > m - epsilon and J(r) < m."""
    epsilon = Fraction(epsilon)
    m, g = ctx.m, ctx.g
    bound = m - epsilon
    lam_codiff = shortest_norm_sq(ctx.codiff_gram)
    for r_sq in r_grid:
        r_sq = Fraction(r_sq)
        if r_sq <= 0:
            continue
        q_pow = (r_sq * lam_codiff) ** g
        if _compare_ball_multiple(2 * g, q_pow, bound, precision) != "gt":
            continue
        p = precision
        while True:
            j = j_value(ctx, r_sq, epsilon, p)
            if j.hi < m:
                return r_sq
            if j.lo >= m or p >= MAX_PRECISION:
                break
            p = min(2 * p, MAX_PRECISION)
    raise NoQualifyingRadius(
        f"m={m}: no r^2 in the grid passes both certified conditions; enlarge the grid")


# -- N(x): the exact obstruction count ----------------------------------------

def count_N(ctx: CyclotomicContext, r_sq, x: CycloElement, epsilon,
            precision: int = 128) -> int:
    """Exact number of pairs (a, b), b != 0, whose lattice vector
    r a + r x conj(b) + (i/r) b lands inside the chi ball.

    Candidates are enumerated against the outer interval bound of the chi
    radius and each one is confirmed by the certified chi itself, so the
    count is exact despite the irrational threshold.
    """
    r_sq = Fraction(r_sq)
    epsilon = Fraction(epsilon)
    g = ctx.g
    bound = ctx.m - epsilon
    guard = precision + 32
    r2 = chi_radius_sq(ctx, epsilon, guard)
    total = 0
    for bvec, t in enumerate_in_ball_with_norms(ctx.ok_gram, None, r_sq * r2.hi):
        if not any(bvec):
            continue
        rem_hi = (r2.hi - t / r_sq) / r_sq
        if rem_hi < 0:
            continue
        b = ctx.element(bvec)
        center = [-c for c in ctx.coords_in_codiff(x * b.conj())]
        for _, qa in enumerate_in_ball_with_norms(ctx.codiff_gram, center, rem_hi):
            nsq = r_sq * qa + t / r_sq
            if chi_norm_sq(2 * g, nsq, bound, precision):
                total += 1
    return total


# -- twist sampling -----------------------------------------------------------

def _randbelow(rng: random.Random, n: int) -> int:
    # rejection sampling on getrandbits: exactly uniform and portable, since
    # the MT19937 bit stream is fixed by the algorithm
    if n == 1:
        return 0
    k = (n - 1).bit_length()
    while True:
        r = rng.getrandbits(k)
        if r < n:
            return r


def sample_x(ctx: CyclotomicContext, denom: int, rng: random.Random) -> CycloElement:
    """Random point of the fundamental parallelepiped of the codifferent with
    coordinates u_j / denom, u_j uniform in [0, denom)."""
    if denom < 1:
        raise ValueError("denom must be >= 1")
    acc = ctx.zero()
    for a in ctx.codiff_basis:
        u = _randbelow(rng, denom)
        if u:
            acc = acc + Fraction(u, denom) * a
    return acc


# -- the full search ----------------------------------------------------------

@lru_cache(maxsize=8)
def _cached_context(m: int) -> CyclotomicContext:
    return CyclotomicContext(m)


def _count_task(args) -> int:
    m, r_sq_s, coords, eps_s, precision = args
    ctx = _cached_context(m)
    x = ctx.element([parse_rat(s) for s in coords])
    return count_N(ctx, parse_rat(r_sq_s), x, parse_rat(eps_s), precision)


def certified_lower_bound(two_g: int, lambda1_sq: Fraction, target: Fraction,
                          precision: int) -> Fraction:
    """Rational lower bound of v_2g * lambda1^2g, refined (deterministically)
    until it exceeds target or the precision cap is reached."""
    q_pow = Fraction(lambda1_sq) ** (two_g // 2)
    p = precision
    while True:
        cand = ball_volume(two_g, p).lo * q_pow
        if cand > target or p >= MAX_PRECISION:
            return cand
        p = min(2 * p, MAX_PRECISION)


def run_checks(lat) -> dict[str, bool]:
    integral = lat.is_riemann_integral()
    return {
        "integrality": integral,
        "unimodular": integral and lat.is_unimodular(),
        "g_stable": lat.is_g_stable(),
        "real_mult": lat.has_real_multiplication(),
    }


def _certificate_at(ctx: CyclotomicContext, config: SearchConfig, r_sq: Fraction,
                    x: CycloElement, n_value: int, sample_index: int) -> Certificate:
    lat = build_lattice(ctx, r_sq, x)
    checks = run_checks(lat)
    lam = shortest_norm_sq(lat.real_gram)
    bound_lo = certified_lower_bound(2 * ctx.g, lam, ctx.m - config.epsilon,
                                     config.precision)
    return Certificate(
        m=ctx.m, g=ctx.g, epsilon=config.epsilon, r_sq=r_sq,
        x_coords=x.coords, lambda1_sq=lam, n_value=n_value, bound_lo=bound_lo,
        checks=checks, precision_bits=config.precision, seed=config.seed,
        sample_index=sample_index,
    )


def search(config: SearchConfig) -> Certificate:
    """Run the full pipeline; raises NoQualifyingRadius or
    SearchBudgetExceeded when the certified witness cannot be produced
    within the configured resources."""
    config.validate()
    ctx = CyclotomicContext(config.m)
    r_sq = select_r(ctx, config.epsilon, config.r_grid, config.precision)

    rng = random.Random(config.seed)

    def candidate(i: int) -> CycloElement:
        return ctx.zero() if i == 0 else sample_x(ctx, config.denom, rng)

    best_n: int | None = None
    winner: tuple[int, CycloElement] | None = None

    if config.workers == 1:
        for i in range(config.budget):
            x = candidate(i)
            n = count_N(ctx, r_sq, x, config.epsilon, config.precision)
            best_n = n if best_n is None else min(best_n, n)
            if n == 0:
                winner = (i, x)
                break
    else:
        # deterministic regardless of pool size: candidates are drawn from the
        # seeded stream in index order and the smallest zero-count index wins
        eps_s = fmt_rat(config.epsilon)
        r_s = fmt_rat(r_sq)
        chunk = 4 * config.workers
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            i = 0
            while i < config.budget and winner is None:
                xs = [candidate(j) for j in range(i, min(i + chunk, config.budget))]
                args = [(config.m, r_s, tuple(fmt_rat(c) for c in x.coords), eps_s,
                         config.precision) for x in xs]
                for off, n in enumerate(pool.map(_count_task, args)):
                    best_n = n if best_n is None else min(best_n, n)
                    if n == 0:
                        winner = (i + off, xs[off])
                        break
                i += len(xs)

    if winner is None:
        raise SearchBudgetExceeded(config.m, config.budget, best_n or 0)
    idx, x0 = winner
    return _certificate_at(ctx, config, r_sq, x0, 0, idx)


# -- certificate (de)serialization and re-verification -------------------------

def certificate_to_json_dict(cert: Certificate) -> dict:
    return {
        "m": cert.m,
        "g": cert.g,
        "epsilon": fmt_rat(cert.epsilon),
        "r_sq": fmt_rat(cert.r_sq),
        "x": [fmt_rat(c) for c in cert.x_coords],
        "lambda1_sq": fmt_rat(cert.lambda1_sq),
        "n_value": cert.n_value,
        "bound_lo": fmt_rat(cert.bound_lo),
        "checks": {k: bool(cert.checks[k]) for k in CHECK_NAMES},
        "precision_bits": cert.precision_bits,
        "seed": cert.seed,
        "sample_index": cert.sample_index,
    }


def certificate_from_json_dict(d: dict) -> Certificate:
    try:
        return Certificate(
            m=int(d["m"]), g=int(d["g"]),
            epsilon=parse_rat(d["epsilon"]),
            r_sq=parse_rat(d["r_sq"]),
            x_coords=tuple(parse_rat(s) for s in d["x"]),
            lambda1_sq=parse_rat(d["lambda1_sq"]),
            n_value=int(d["n_value"]),
            bound_lo=parse_rat(d["bound_lo"]),
            checks={k: bool(d["checks"][k]) for k in CHECK_NAMES},
            precision_bits=int(d["precision_bits"]),
            seed=int(d["seed"]),
            sample_index=int(d["sample_index"]),
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise CertificateFormatError(f"malformed certificate: {exc}") from exc


def recompute_certificate(cert: Certificate) -> tuple[Certificate, list[str]]:
    """Recompute every derived field from (m, epsilon, r^2, x) at the stored
    precision and list all fields that disagree with the stored values."""
    ctx = CyclotomicContext(cert.m)
    if len(cert.x_coords) != ctx.g:
        raise CertificateFormatError(
            f"x has {len(cert.x_coords)} coordinates, expected g={ctx.g}")
    x = ctx.element(cert.x_coords)
    n = count_N(ctx, cert.r_sq, x, cert.epsilon, cert.precision_bits)
    config = SearchConfig(m=cert.m, epsilon=cert.epsilon, seed=cert.seed,
                          precision=cert.precision_bits)
    fresh = _certificate_at(ctx, config, cert.r_sq, x, n, cert.sample_index)
    mismatches = []
    if fresh.g != cert.g:
        mismatches.append("g")
    if fresh.lambda1_sq != cert.lambda1_sq:
        mismatches.append("lambda1_sq")
    if fresh.n_value != cert.n_value:
        mismatches.append("n_value")
    if fresh.bound_lo != cert.bound_lo:
        mismatches.append("bound_lo")
    if fresh.checks != cert.checks:
        mismatches.append("checks")
    return fresh, mismatches
