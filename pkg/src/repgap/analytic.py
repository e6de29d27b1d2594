"""High-precision checks on prime sums over arithmetic progressions, the
class sets controlling repunit cofactor divisors, rough-prime counts, and
the explicit crossover function from the valuation argument.

Floating work runs on 128-bit MPFR (contract: at least 80-bit mantissa),
with primes accumulated in ascending order through a compensated
accumulator, so every sum is reproducible bit for bit.  The class-set
inequality and the Brun-Titchmarsh counts are exact integers/rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import gmpy2
import numpy as np
from gmpy2 import mpfr

from . import arith
from .arith import DomainError

PRECISION_BITS = 128


def _hp():
    return gmpy2.context(precision=PRECISION_BITS)


class CompensatedSum:
    """Neumaier accumulator over mpfr: tracks the rounding error of every
    add so the final value is independent of magnitude ordering quirks."""

    __slots__ = ("s", "c")

    def __init__(self):
        self.s = mpfr(0)
        self.c = mpfr(0)

    def add(self, x) -> None:
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t

    @property
    def value(self):
        return self.s + self.c


@dataclass(frozen=True)
class ProgressionSumRecord:
    """Sums over primes p <= x with p = l mod k.

    S = sum 1/p - loglog(x)/phi(k);  T = sum log(p)/p - log(x)/phi(k);
    p_kl is the least prime in the class.
    """

    x: int
    k: int
    l: int
    pi: int
    S: mpfr
    T: mpfr
    p_kl: int


def least_prime_in_progression(k: int, l: int) -> int:
    """Least prime = l mod k (Dirichlet guarantees one exists)."""
    if math.gcd(l, k) != 1:
        raise DomainError(f"gcd({l}, {k}) != 1")
    c = l if l > 0 else l + k
    while True:
        if c > 1 and arith.is_probable_prime(c):
            return c
        c += k


def _prime_terms(sieve: arith.PrimeSieve, x: int):
    """Primes up to x with their 1/p and log(p)/p terms, computed once."""
    primes, invs, logs = [], [], []
    with _hp():
        for p in sieve:
            if p > x:
                break
            primes.append(p)
            invs.append(mpfr(1) / p)
            logs.append(gmpy2.log(p) / p)
    return primes, invs, logs


def _sum_terms(terms, k: int) -> dict[int, tuple]:
    """Per-residue compensated sums of 1/p and log(p)/p, plus counts,
    accumulated in ascending prime order."""
    primes, invs, logs = terms
    sums: dict[int, tuple] = {}
    for r in range(k):
        if math.gcd(r, k) == 1:
            sums[r] = (CompensatedSum(), CompensatedSum(), [0])
    for i, p in enumerate(primes):
        entry = sums.get(p % k)
        if entry is not None:
            entry[0].add(invs[i])
            entry[1].add(logs[i])
            entry[2][0] += 1
    return sums


def progression_records_for_k(
    x: int, k: int, sieve: Optional[arith.PrimeSieve] = None, _terms=None
) -> dict[int, ProgressionSumRecord]:
    """All coprime-residue records for one modulus in a single prime pass."""
    if x < 3:
        raise DomainError("x must be >= 3")
    if k < 2:
        raise DomainError("k must be >= 2")
    if _terms is None:
        if sieve is None:
            sieve = arith.primes_up_to(x)
        _terms = _prime_terms(sieve, x)
    phi = arith.euler_phi(k)
    with _hp():
        loglog = gmpy2.log(gmpy2.log(mpfr(x)))
        logx = gmpy2.log(mpfr(x))
        sums = _sum_terms(_terms, k)
        out = {}
        for r, (inv, logsum, cnt) in sums.items():
            out[r] = ProgressionSumRecord(
                x=x,
                k=k,
                l=r,
                pi=cnt[0],
                S=inv.value - loglog / phi,
                T=logsum.value - logx / phi,
                p_kl=least_prime_in_progression(k, r),
            )
    return out


def progression_sums(
    x: int, k: int, l: int, sieve: Optional[arith.PrimeSieve] = None
) -> ProgressionSumRecord:
    """The record for a single progression l mod k."""
    if math.gcd(l, k) != 1:
        raise DomainError(f"gcd({l}, {k}) != 1")
    return progression_records_for_k(x, k, sieve)[l % k]


@dataclass(frozen=True)
class PropPomReport:
    """|T(x;k,l)| against log(p_kl)/p_kl + C k^delta log(k)/phi(k) for all
    3 <= k <= k_max; the fitted constant is the smallest C that would make
    every bound hold, and is implementation metadata, not a quoted value.
    delta defaults to the square-root split."""

    x: int
    k_max: int
    constant: float
    delta: float
    records: tuple[ProgressionSumRecord, ...]
    violations: tuple[ProgressionSumRecord, ...]
    fitted_constant: float


def check_prop_pom(
    x: int,
    k_max: int,
    constant: float = 10.0,
    sieve: Optional[arith.PrimeSieve] = None,
    k_min: int = 3,
    delta: float = 0.5,
) -> PropPomReport:
    if k_max < k_min:
        raise DomainError("k_max below k_min")
    if not 0 < delta <= 1:
        raise DomainError("delta must lie in (0, 1]")
    if sieve is None:
        sieve = arith.primes_up_to(x)
    terms = _prime_terms(sieve, x)
    records = []
    violations = []
    fitted = mpfr(0)
    with _hp():
        delta_hp = mpfr(delta)
        for k in range(k_min, k_max + 1):
            recs = progression_records_for_k(x, k, _terms=terms)
            phi = arith.euler_phi(k)
            margin = mpfr(k) ** delta_hp * gmpy2.log(k) / phi
            for r in sorted(recs):
                rec = recs[r]
                records.append(rec)
                lead = gmpy2.log(rec.p_kl) / rec.p_kl
                needed = (abs(rec.T) - lead) / margin
                if needed > fitted:
                    fitted = needed
                if abs(rec.T) > lead + constant * margin:
                    violations.append(rec)
    return PropPomReport(
        x=x,
        k_max=k_max,
        constant=constant,
        delta=delta,
        records=tuple(records),
        violations=tuple(violations),
        fitted_constant=float(fitted),
    )


@dataclass(frozen=True)
class BtRecord:
    """pi(x;k,l) * phi(k) * log(x/k) / x, flagged when above 2.

    The counts and phi are exact; log(x/k) is the one transcendental factor
    and is evaluated at 128 bits.
    """

    x: int
    k: int
    l: int
    pi: int
    ratio: mpfr
    exceeds: bool


def bt_check(
    x: int, k: int, l: int, sieve: Optional[arith.PrimeSieve] = None
) -> BtRecord:
    """Brun-Titchmarsh ratio for a single (x, k, l)."""
    if x <= k:
        raise DomainError("requires x > k")
    if math.gcd(l, k) != 1:
        raise DomainError(f"gcd({l}, {k}) != 1")
    if sieve is None:
        sieve = arith.primes_up_to(x)
    l %= k
    count = 0
    for p in sieve:
        if p > x:
            break
        if p % k == l:
            count += 1
    with _hp():
        ratio = count * arith.euler_phi(k) * gmpy2.log(mpfr(x) / k) / x
    return BtRecord(x, k, l, count, ratio, bool(ratio > 2))


def bt_grid(
    ks: Sequence[int], xs_for_k, sieve: Optional[arith.PrimeSieve] = None
) -> list[BtRecord]:
    """Batched ratios: one prime pass per modulus with snapshot thresholds.

    xs_for_k maps k to its x values (callable or constant sequence).
    """
    records = []
    max_x = 0
    grid = {}
    for k in ks:
        xs = sorted({x for x in (xs_for_k(k) if callable(xs_for_k) else xs_for_k) if x > k})
        grid[k] = xs
        if xs:
            max_x = max(max_x, xs[-1])
    if sieve is None:
        sieve = arith.primes_up_to(max_x)
    for k, xs in grid.items():
        if not xs:
            continue
        phi = arith.euler_phi(k)
        counts = [0] * k
        xi = 0
        snapshots = []
        for p in sieve:
            while xi < len(xs) and p > xs[xi]:
                snapshots.append(counts[:])
                xi += 1
            if xi == len(xs):
                break
            counts[p % k] += 1
        while xi < len(xs):
            snapshots.append(counts[:])
            xi += 1
        with _hp():
            for x, snap in zip(xs, snapshots):
                logxk = gmpy2.log(mpfr(x) / k)
                for l in range(1, k):
                    if math.gcd(l, k) != 1:
                        continue
                    ratio = snap[l] * phi * logxk / x
                    records.append(BtRecord(x, k, l, snap[l], ratio, bool(ratio > 2)))
    return records


# ---------------------------------------------------------------------------
# class sets and the positivity inequality


@dataclass(frozen=True)
class ClassSetReport:
    """Residues c coprime to m' whose c-1 is divisible by a divisor >= 3 of
    m', and the exact value 1 - ((1+delta)/m' + |C|/phi(m'))."""

    m_prime: int
    delta: int
    phi: int
    members: tuple[int, ...]
    lhs6: Fraction


def class_set_C(m_prime: int) -> ClassSetReport:
    if m_prime < 2:
        raise DomainError("m' must be >= 2")
    divs = [d for d in range(3, m_prime + 1) if m_prime % d == 0]
    members = tuple(
        c
        for c in range(1, m_prime + 1)
        if math.gcd(c, m_prime) == 1 and any((c - 1) % d == 0 for d in divs)
    )
    phi = arith.euler_phi(m_prime)
    delta = math.gcd(m_prime, 2) - 1
    lhs6 = 1 - (Fraction(1 + delta, m_prime) + Fraction(len(members), phi))
    return ClassSetReport(m_prime, delta, phi, members, lhs6)


def lhs6_scan(m_max: int, m_min: int = 2) -> list[tuple[int, Fraction]]:
    """(m', lhs6) over a range, exact."""
    return [(mp, class_set_C(mp).lhs6) for mp in range(m_min, m_max + 1)]


class AnalyticClaimError(ArithmeticError):
    """A verification that would falsify a published claim failed."""


@dataclass(frozen=True)
class ExcludedResidue:
    """The case-defined residue a with gcd(a, m') = 1 expected to avoid the
    class set; verification flags are per-m' because a = m'-1 collisions
    occur below the claim's range (m' in {6, 12})."""

    m_prime: int
    residue: int
    s: int
    m0: int
    coprime: bool
    below_boundary: bool  # 1 <= a < m'-1
    outside_class_set: bool

    @property
    def verified(self) -> bool:
        return self.coprime and self.below_boundary and self.outside_class_set


def excluded_residue(m_prime: int) -> ExcludedResidue:
    """Writing m' = 2^s m0 (m0 odd): a = 2 when s = 0; a = m0 + 2 when
    s >= 1 and m0 = 1 mod 4, or s = 1 and m0 = 3 mod 4; a = 3 m0 + 2 when
    s >= 2 and m0 = 3 mod 4.  Hard error above m' = 1000 if verification
    fails (that would falsify the claim); below, flags are reported."""
    if m_prime < 5:
        raise DomainError("m' must be >= 5")
    s = 0
    m0 = m_prime
    while m0 % 2 == 0:
        s += 1
        m0 //= 2
    if s == 0:
        a = 2
    elif m0 % 4 == 1 or (s == 1 and m0 % 4 == 3):
        a = m0 + 2
    else:
        a = 3 * m0 + 2
    report = class_set_C(m_prime)
    result = ExcludedResidue(
        m_prime=m_prime,
        residue=a,
        s=s,
        m0=m0,
        coprime=math.gcd(a, m_prime) == 1,
        below_boundary=1 <= a < m_prime - 1,
        outside_class_set=a not in report.members,
    )
    if m_prime > 1000 and not result.verified:
        raise AnalyticClaimError(f"excluded-residue verification failed: {result}")
    return result


@dataclass(frozen=True)
class RoughPrimeCount:
    """Primes q in (m'/2, m'] whose (q-1)/2 has no prime factor below
    (ln m')^3, and how many of those land in the class set."""

    m_prime: int
    threshold: float
    pi1: int
    overlap: int


def rough_prime_count(
    m_prime: int, sieve: Optional[arith.PrimeSieve] = None
) -> RoughPrimeCount:
    if m_prime < 100:
        raise DomainError("m' must be >= 100")
    if sieve is None:
        sieve = arith.primes_up_to(m_prime)
    threshold = math.log(m_prime) ** 3
    divs = [d for d in range(3, m_prime + 1) if m_prime % d == 0]
    pi1 = 0
    overlap = 0
    for q in sieve:
        if q > m_prime:
            break
        if q * 2 <= m_prime:
            continue
        half = (q - 1) // 2
        factors, complete = arith.factorize(half)
        if not complete:
            raise DomainError(f"factorization budget exceeded at q={q}")
        if all(p >= threshold for p in factors):
            pi1 += 1
            if math.gcd(q, m_prime) == 1 and any((q - 1) % d == 0 for d in divs):
                overlap += 1
    return RoughPrimeCount(m_prime, threshold, pi1, overlap)


# ---------------------------------------------------------------------------
# explicit crossover function and the totient floor


def first_proof_threshold(x) -> mpfr:
    """f(x) = x - 69.2224 log^4(x) (1.78107242 loglog(x) + 0.83918269)^2,
    at 128-bit precision; positive and increasing from 4.0515e8 - 1 on."""
    with _hp():
        xm = mpfr(x)
        if xm < 3:
            raise DomainError("x must be >= 3")
        lx = gmpy2.log(xm)
        inner = mpfr("1.78107242") * gmpy2.log(lx) + mpfr("0.83918269")
        return xm - mpfr("69.2224") * lx**4 * inner**2


def threshold_sample(n_points: int, x_lo, x_hi) -> list[mpfr]:
    """f on a log-spaced grid (used for the monotonicity check)."""
    with _hp():
        lo = gmpy2.log(mpfr(x_lo))
        hi = gmpy2.log(mpfr(x_hi))
        return [
            first_proof_threshold(gmpy2.exp(lo + (hi - lo) * i / (n_points - 1)))
            for i in range(n_points)
        ]


EULER_GAMMA = "0.5772156649"


def phi_lower_bound_check(m_prime: int) -> bool:
    """phi(m') > m' / (e^gamma loglog m' + 2.50637 / loglog m')."""
    if m_prime < 3:
        raise DomainError("m' must be >= 3")
    with _hp():
        ll = gmpy2.log(gmpy2.log(mpfr(m_prime)))
        bound = m_prime / (gmpy2.exp(mpfr(EULER_GAMMA)) * ll + mpfr("2.50637") / ll)
        return arith.euler_phi(m_prime) > bound


def phi_lower_bound_scan(limit: int) -> list[int]:
    """All m' in [3, limit] failing the totient floor (expected none up to
    1e6; the first true failure is the ninth primorial, above 2e8)."""
    if limit < 3:
        raise DomainError("limit must be >= 3")
    phi = np.arange(limit + 1, dtype=np.float64)
    for p in range(2, limit + 1):
        if phi[p] == p:  # p untouched so far means p is prime
            phi[p::p] -= phi[p::p] / p
    m = np.arange(3, limit + 1, dtype=np.float64)
    ll = np.log(np.log(m))
    gamma = float(mpfr(EULER_GAMMA))
    bound = m / (math.exp(gamma) * ll + 2.50637 / ll)
    bad = np.flatnonzero(phi[3:] <= bound)
    return [int(v) + 3 for v in bad]
