"""Exact integer arithmetic: sieves, factorial valuations, repunits,
multiplicative orders, cyclotomic values and budgeted factorization.

Everything here is a pure function of its inputs; PrimeSieve is immutable
after construction and safe to share across threads and worker processes.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

SIEVE_SEGMENT_LIMIT = 1 << 24  # build in segments above this to bound memory
SIEVE_CACHE_MAGIC = b"RGL1"
CACHE_DIR_ENV = "RGL_CACHE_DIR"

# Witnesses making Miller-Rabin deterministic below 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class DomainError(ValueError):
    """An argument is outside the stated domain of an operation."""


class PrimeSieve:
    """Primality bitset over [2, limit], bit j <-> the integer 2 + j.

    The packed layout (little-endian bit order) is also the on-disk cache
    format, so membership is bit-exact regardless of how it was built.
    """

    __slots__ = ("limit", "_bits", "_primes")

    def __init__(self, limit: int, bits: bytes):
        self.limit = limit
        self._bits = bits
        self._primes: Optional[list[int]] = None

    def is_prime(self, n: int) -> bool:
        if n < 2 or n > self.limit:
            return False
        j = n - 2
        return bool(self._bits[j >> 3] >> (j & 7) & 1)

    def primes(self) -> list[int]:
        """All primes <= limit, ascending (cached after first call)."""
        if self._primes is None:
            arr = np.unpackbits(
                np.frombuffer(self._bits, dtype=np.uint8), bitorder="little"
            )[: self.limit - 1]
            self._primes = [int(v) for v in np.flatnonzero(arr) + 2]
        return self._primes

    def count(self) -> int:
        # mask the final byte: padding bits beyond limit-1 are not members
        nbits = self.limit - 1
        full, rem = divmod(nbits, 8)
        total = int.from_bytes(self._bits[:full], "little").bit_count()
        if rem:
            total += (self._bits[full] & ((1 << rem) - 1)).bit_count()
        return total

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes())

    def __contains__(self, n: int) -> bool:
        return self.is_prime(n)


def _simple_sieve_flags(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def primes_up_to(limit: int, segment_size: int = SIEVE_SEGMENT_LIMIT) -> PrimeSieve:
    """Sieve of Eratosthenes; segmented above `segment_size` entries."""
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    if limit <= segment_size:
        flags = _simple_sieve_flags(limit)[2:]
    else:
        base = np.flatnonzero(_simple_sieve_flags(math.isqrt(limit)))
        parts = []
        lo = 2
        while lo <= limit:
            hi = min(lo + segment_size, limit + 1)
            seg = np.ones(hi - lo, dtype=bool)
            for p in base:
                p = int(p)
                start = max(p * p, ((lo + p - 1) // p) * p)
                if start < hi:
                    seg[start - lo :: p] = False
            parts.append(seg)
            lo = hi
        flags = np.concatenate(parts)
    bits = np.packbits(flags, bitorder="little").tobytes()
    return PrimeSieve(limit, bits)


def save_sieve(sieve: PrimeSieve, path: str) -> None:
    """Write the cache file: magic, decimal limit, newline, raw bitset."""
    with open(path, "wb") as fh:
        fh.write(SIEVE_CACHE_MAGIC + str(sieve.limit).encode() + b"\n" + sieve._bits)


def load_sieve(path: str, expected_limit: Optional[int] = None) -> Optional[PrimeSieve]:
    """Load a cached sieve; None (caller rebuilds) on any validation failure."""
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError:
        return None
    if not blob.startswith(SIEVE_CACHE_MAGIC):
        return None
    nl = blob.find(b"\n", len(SIEVE_CACHE_MAGIC))
    if nl < 0:
        return None
    try:
        limit = int(blob[len(SIEVE_CACHE_MAGIC) : nl])
    except ValueError:
        return None
    if limit < 2 or (expected_limit is not None and limit != expected_limit):
        return None
    bits = blob[nl + 1 :]
    if len(bits) != ((limit - 1) + 7) // 8:
        return None
    rem = (limit - 1) % 8
    if rem and bits[-1] >> rem:
        return None  # nonzero padding bits: not a file we wrote
    return PrimeSieve(limit, bits)


def get_sieve(limit: int, cache_path: Optional[str] = None) -> PrimeSieve:
    """Sieve with optional file cache; RGL_CACHE_DIR supplies a directory."""
    if cache_path is None:
        cache_dir = os.environ.get(CACHE_DIR_ENV)
        if cache_dir:
            cache_path = os.path.join(cache_dir, f"sieve_{limit}.rgl")
    if cache_path:
        cached = load_sieve(cache_path, expected_limit=limit)
        if cached is not None:
            return cached
    sieve = primes_up_to(limit)
    if cache_path:
        os.makedirs(os.path.dirname(cache_path) or ".", exist_ok=True)
        save_sieve(sieve, cache_path)
    return sieve


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre_valuation(n: int, q: int) -> int:
    """Exponent of the prime q in n!, by the floor-sum formula."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if not is_probable_prime(q):
        raise DomainError(f"{q} is not prime")
    total = 0
    qk = q
    while qk <= n:
        total += n // qk
        qk *= q
    return total


def repunit(b: int, m: int) -> int:
    """1 + b + ... + b^(m-1), exactly; equals m at the degenerate base b = 1."""
    if m < 1:
        raise DomainError("repunit length must be >= 1")
    if b == 1:
        return m
    return (b**m - 1) // (b - 1)


def repunit_mod(b: int, m: int, q: int) -> int:
    """(b^m - 1)/(b - 1) mod q; m mod q when b is 1 mod q (geometric degenerate)."""
    if not is_probable_prime(q):
        raise DomainError(f"{q} is not prime")
    b %= q
    if b == 1:
        return m % q
    return (pow(b, m, q) - 1) * pow(b - 1, -1, q) % q


def multiplicative_order(b: int, q: int) -> int:
    """Least d >= 1 with b^d = 1 mod q; always divides q - 1."""
    if not is_probable_prime(q):
        raise DomainError(f"{q} is not prime")
    if b % q == 0:
        raise DomainError(f"{q} divides {b}, order undefined")
    d = q - 1
    for p in factorize(q - 1)[0]:
        while d % p == 0 and pow(b, d // p, q) == 1:
            d //= p
    return d


def int_valuation(x: int, p: int) -> int:
    """Largest e with p^e dividing x; x = 0 is out of domain."""
    if x == 0:
        raise DomainError("valuation of 0 is infinite")
    if not is_probable_prime(p):
        raise DomainError(f"{p} is not prime")
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def nu2_repunit(b: int, m: int) -> int:
    """ν2 of (b^m - 1)/(b - 1) via the two-power product decomposition.

    Writing m = 2^r * t with t odd, the repunit splits as
    prod_{i<r} (b^(2^i) + 1) times an odd sum of t terms, so only the
    product contributes to the 2-adic valuation.
    """
    if b < 2 or m < 2:
        raise DomainError("requires b >= 2 and m >= 2")
    if b % 2 == 0:
        return 0
    r = int_valuation(m, 2) if m % 2 == 0 else 0
    total = 0
    for i in range(r):
        total += int_valuation(b ** (2**i) + 1, 2)
    return total


def factorize(
    n: int, trial_bound: int = 10**6, rho_budget: int = 200_000
) -> tuple[dict[int, int], bool]:
    """Budgeted factorization: trial division, then Pollard rho (Brent).

    Returns ({prime: exponent}, complete). When the budget runs out the
    unfactored composite part is recorded under itself with exponent 1 and
    complete is False; callers must check the flag.
    """
    if n < 0:
        n = -n
    if n <= 1:
        return {}, True
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    wi = 0
    while d * d <= n and d <= trial_bound:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += wheel[wi]
        wi = (wi + 1) % 8
    if n == 1:
        return factors, True
    complete = True
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rho_budget)
        if d is None:
            factors[m] = factors.get(m, 0) + 1
            complete = False
            continue
        stack.append(d)
        stack.append(m // d)
    return factors, complete


def _pollard_rho(n: int, budget: int) -> Optional[int]:
    # deterministic parameter schedule keeps scans reproducible; the budget
    # is the total iteration count across all retries
    if n % 2 == 0:
        return 2
    attempts = 8
    per_attempt = max(budget // attempts, 1)
    for c in range(1, attempts + 1):
        x = y = 2
        d = 1
        steps = 0
        q = 1
        while d == 1 and steps < per_attempt:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            q = q * abs(x - y) % n
            steps += 1
            if steps % 64 == 0 or q == 0:
                d = math.gcd(q or abs(x - y), n)
        if d == 1:
            d = math.gcd(q, n)
        if 1 < d < n:
            return d
    return None


def divisors(n: int, trial_bound: int = 10**6) -> list[int]:
    """Positive divisors of |n|, ascending; raises if factorization incomplete."""
    if n == 0:
        raise DomainError("0 has infinitely many divisors")
    factors, complete = factorize(abs(n), trial_bound=trial_bound)
    if not complete:
        raise DomainError(f"factorization budget exceeded for {n}")
    divs = [1]
    for p, e in factors.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    """Möbius function, from the factorization (exact, budget raises)."""
    if n < 1:
        raise DomainError("mobius is defined on positive integers")
    if n == 1:
        return 1
    factors, complete = factorize(n)
    if not complete:
        raise DomainError(f"factorization budget exceeded for {n}")
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def euler_phi(n: int) -> int:
    """Euler totient, from the factorization."""
    if n < 1:
        raise DomainError("phi is defined on positive integers")
    factors, complete = factorize(n)
    if not complete:
        raise DomainError(f"factorization budget exceeded for {n}")
    out = 1
    for p, e in factors.items():
        out *= (p - 1) * p ** (e - 1)
    return out


def spf_table(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for [0, limit] (int64)."""
    if limit < 2:
        raise DomainError("limit must be >= 2")
    spf = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            sl = spf[p * p :: p]
            sl[sl == np.arange(p * p, limit + 1, p)] = p
    return spf


def prime_factors_from_spf(n: int, spf: np.ndarray) -> list[int]:
    """Distinct prime factors of n read off an SPF table."""
    out = []
    while n > 1:
        p = int(spf[n])
        out.append(p)
        while n % p == 0:
            n //= p
    return out


# ---------------------------------------------------------------------------
# cyclotomic values


def _poly_mul_binomial(coeffs: list[int], d: int) -> list[int]:
    # multiply by (x^d - 1)
    out = [0] * (len(coeffs) + d)
    for i, c in enumerate(coeffs):
        out[i + d] += c
        out[i] -= c
    return out


def _poly_divexact_binomial(coeffs: list[int], d: int) -> list[int]:
    # exact division by (x^d - 1)
    n = len(coeffs) - 1
    out = [0] * (n - d + 1)
    for i in range(n - d, -1, -1):
        out[i] = coeffs[i + d]
        coeffs[i] += out[i]
    assert all(c == 0 for c in coeffs[:d]), "division by x^d - 1 not exact"
    return out


def cyclotomic_coeffs(m: int) -> list[int]:
    """Coefficients (constant first) of the m-th cyclotomic polynomial,
    from the Möbius product over the divisors of m."""
    if m < 1:
        raise DomainError("index must be >= 1")
    num: list[int] = [1]
    dens: list[int] = []
    for d in divisors(m):
        mu = mobius(m // d)
        if mu == 1:
            num = _poly_mul_binomial(num, d)
        elif mu == -1:
            dens.append(d)
    for d in sorted(dens, reverse=True):
        num = _poly_divexact_binomial(num, d)
    return num


def cyclotomic_value(m: int, b: int) -> int:
    """Φ_m(b), exactly, via polynomial construction then Horner."""
    coeffs = cyclotomic_coeffs(m)
    acc = 0
    for c in reversed(coeffs):
        acc = acc * b + c
    return acc


@dataclass(frozen=True)
class PhiDivisorEntry:
    prime: int
    exponent: int
    label: str  # "exceptional" (q | m) or "split" (q = 1 mod m)


@dataclass(frozen=True)
class PhiDivisorReport:
    m: int
    b: int
    value: int
    entries: tuple[PhiDivisorEntry, ...]
    unfactored_cofactor: int  # 1 when the factorization completed
    complete: bool


def classify_phi_divisors(
    m: int, b: int, trial_bound: int = 10**6, rho_budget: int = 200_000
) -> PhiDivisorReport:
    """Label every found prime factor of Φ_m(b) as exceptional (divides m)
    or split (1 mod m); any other residue class would falsify the
    classification and raises.
    """
    if m < 2 or b < 2:
        raise DomainError("requires m >= 2 and b >= 2")
    value = cyclotomic_value(m, b)
    if value <= 1:
        raise DomainError(f"Φ_{m}({b}) = {value} has no prime factors")
    factors, complete = factorize(value, trial_bound=trial_bound, rho_budget=rho_budget)
    entries = []
    cofactor = 1
    for q in sorted(factors):
        e = factors[q]
        if not complete and not is_probable_prime(q):
            cofactor *= q**e
            continue
        if m % q == 0:
            label = "exceptional"
        elif q % m == 1:
            label = "split"
        else:
            raise ArithmeticError(
                f"prime {q} | Φ_{m}({b}) is neither a divisor of {m} nor 1 mod {m}"
            )
        entries.append(PhiDivisorEntry(q, e, label))
    return PhiDivisorReport(m, b, value, tuple(entries), cofactor, complete)
