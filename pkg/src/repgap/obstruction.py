"""Local-obstruction search over pairs (a, p): which shifted repunit
polynomials Φ_p(X) + a have a root modulo every small prime, and which are
ruled out by a single rootless prime q (then q | n! forces n! != Φ_p(b) + a
for all n >= q).

The scan over |a| <= a_max is embarrassingly parallel over blocks of a; all
workers share read-only tables and the merged output is canonically sorted,
so results are independent of worker count and partition order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import Optional

from . import arith, polynomials
from .arith import DomainError

DEFAULT_A_MAX = 100_000
DEFAULT_Q_BOUND = 100
# Smallest q-bound at which the survivor scan to 1e5 is already stable
# (every unstable survivor of the bound-100 scan dies by q = 113).
STABLE_Q_BOUND = 128


@dataclass(frozen=True)
class ObstructionCertificate:
    """Proof that Φ_p(X) + a has no root mod q: the full residue table.

    residues[k] = Φ_p(k) + a mod q for k in 0..q-1 (Φ_p(1) counted as p).
    The pair is ruled out because q <= |a| <= n forces q | n!.
    """

    a: int
    p: int
    q: int
    residues: tuple[int, ...]

    def replay(self) -> bool:
        """Recompute every residue; False if any entry is wrong or zero."""
        if len(self.residues) != self.q:
            return False
        for k, claimed in enumerate(self.residues):
            if claimed == 0 or claimed != _value_at(self.p, self.a, k, self.q):
                return False
        return True


@dataclass(frozen=True)
class SurvivorRecord:
    a: int
    p: int
    integer_root: Optional[int]  # b0 with Φ_p(b0) = -a, when one exists


@dataclass(frozen=True)
class EliminationRecord:
    a: int
    p: int
    q: int  # least obstructing prime; full certificate is recomputable


@dataclass(frozen=True)
class SurvivorSet:
    """Result of a scan: pairs with no obstruction below the q-bound."""

    a_max: int
    q_bound: int
    survivors: tuple[SurvivorRecord, ...]
    fiat: tuple[tuple[int, int], ...]  # (-p, p), injected per construction
    eliminated: tuple[EliminationRecord, ...]

    @property
    def pairs(self) -> set[tuple[int, int]]:
        return {(s.a, s.p) for s in self.survivors}


def _value_at(p: int, a: int, k: int, q: int) -> int:
    if k % q == 1:
        value = (p + a) % q
        # the geometric-sum degenerate branch must agree with Φ_p(1) = p
        assert value == (arith.repunit_mod(k, p, q) + a) % q
        return value
    return (arith.repunit_mod(k, p, q) + a) % q


def candidate_primes(a: int) -> list[int]:
    """Primes p >= 7 dividing |a|-1 or a, excluding p = -a, ascending."""
    if abs(a) < 2:
        raise DomainError("requires |a| >= 2")
    cands = set()
    for n in (abs(a) - 1, abs(a)):
        if n > 1:
            factors, complete = arith.factorize(n)
            if not complete:
                raise DomainError(f"factorization budget exceeded for {n}")
            cands.update(p for p in factors if p >= 7)
    cands.discard(-a)
    return sorted(cands)


def find_obstruction(
    a: int, p: int, q_bound: int = DEFAULT_Q_BOUND
) -> Optional[ObstructionCertificate]:
    """Smallest prime q <= min(|a|, q_bound) with no root of Φ_p(X) + a mod q,
    as a full residue-table certificate; None when every such q has a root."""
    if p < 7 or not arith.is_probable_prime(p):
        raise DomainError(f"p must be a prime >= 7, got {p}")
    limit = min(abs(a), q_bound)
    for q in arith.primes_up_to(max(limit, 2)):
        if q > limit:
            break
        residues = tuple(_value_at(p, a, k, q) for k in range(q))
        if all(residues):
            return ObstructionCertificate(a, p, q, residues)
    return None


# ---------------------------------------------------------------------------
# fast scan machinery: for each prime q, the set of values Φ_p(k) mod q over
# k in {0, 2, .., q-1} depends on p only through p mod (q-1)


def _value_tables(q_bound: int) -> dict[int, list[frozenset[int]]]:
    tables: dict[int, list[frozenset[int]]] = {}
    for q in arith.primes_up_to(max(q_bound, 2)):
        per_exponent = []
        for e in range(q - 1):
            vals = {1 % q}  # k = 0 gives Φ_p(0) = 1
            for k in range(2, q):
                ke = pow(k, e if e else q - 1, q)
                vals.add((ke - 1) * pow(k - 1, -1, q) % q)
            per_exponent.append(frozenset(vals))
        tables[q] = per_exponent
    return tables


def _root_exists_from_tables(tables, p: int, a: int, q: int) -> bool:
    if (p + a) % q == 0:
        return True
    return (-a) % q in tables[q][p % (q - 1)]


_WORKER_STATE: dict = {}


def _scan_worker_init(a_max: int, q_bound: int) -> None:
    _WORKER_STATE["tables"] = _value_tables(q_bound)
    _WORKER_STATE["qprimes"] = arith.primes_up_to(max(q_bound, 2)).primes()
    _WORKER_STATE["spf"] = arith.spf_table(a_max)
    _WORKER_STATE["q_bound"] = q_bound


def _scan_block(block: tuple[int, int]) -> tuple[list, list]:
    lo, hi = block
    tables = _WORKER_STATE["tables"]
    qprimes = _WORKER_STATE["qprimes"]
    spf = _WORKER_STATE["spf"]
    q_bound = _WORKER_STATE["q_bound"]
    survivors = []
    eliminated = []
    start = lo if lo % 2 else lo + 1
    for mag in range(max(start, 3), hi, 2):
        cands = set()
        for n in (mag - 1, mag):
            for p in arith.prime_factors_from_spf(n, spf):
                if p >= 7:
                    cands.add(p)
        if not cands:
            continue
        for sign in (1, -1):
            a = sign * mag
            for p in sorted(cands):
                if p == -a:
                    continue
                limit = min(mag, q_bound)
                hit = None
                for q in qprimes:
                    if q > limit:
                        break
                    if not _root_exists_from_tables(tables, p, a, q):
                        hit = q
                        break
                if hit is None:
                    survivors.append((a, p))
                else:
                    eliminated.append((a, p, hit))
    return survivors, eliminated


def _integer_root_of_pair(a: int, p: int) -> Optional[int]:
    # |Φ_p(x)| >= (|x|-1)^(p-1), so only tiny |x| can reach -a
    target = -a
    xmax = int(round(abs(a) ** (1.0 / (p - 1)))) + 2
    for x in range(-xmax, xmax + 1):
        if x == 1:
            if p == target:  # Φ_p(1) = p
                return 1
            continue
        if abs(x) >= 2 and (p - 1) * math.log2(abs(x)) > abs(a).bit_length() + 3:
            continue
        if arith.repunit(x, p) == target:
            return x
    return None


def reproduce_S0(
    a_max: int = DEFAULT_A_MAX,
    q_bound: int = DEFAULT_Q_BOUND,
    jobs: int = 1,
) -> SurvivorSet:
    """Scan all odd a, 3 <= |a| <= a_max, both signs, over every candidate
    prime; pairs with no obstructing q survive.  The (-p, p) family for
    primes 7 <= p <= a_max is injected by construction (candidate_primes
    excludes p = -a) and reported separately."""
    if a_max < 7:
        raise DomainError("a_max must be >= 7")
    blocks = _partition_blocks(3, a_max + 1, max(jobs * 8, 1))
    if jobs <= 1:
        _scan_worker_init(a_max, q_bound)
        results = [_scan_block(b) for b in blocks]
        _WORKER_STATE.clear()
    else:
        with Pool(jobs, initializer=_scan_worker_init, initargs=(a_max, q_bound)) as pool:
            results = pool.map(_scan_block, blocks)
    survivors: list[tuple[int, int]] = []
    eliminated: list[tuple[int, int, int]] = []
    for s, e in results:
        survivors.extend(s)
        eliminated.extend(e)
    survivors.sort(key=lambda t: (abs(t[0]), t[0] < 0, t[1]))
    eliminated.sort(key=lambda t: (abs(t[0]), t[0] < 0, t[1]))
    fiat = tuple(
        (-p, p) for p in arith.primes_up_to(a_max) if p >= 7
    )
    recs = tuple(
        SurvivorRecord(a, p, _integer_root_of_pair(a, p)) for a, p in survivors
    )
    return SurvivorSet(
        a_max=a_max,
        q_bound=q_bound,
        survivors=recs,
        fiat=fiat,
        eliminated=tuple(EliminationRecord(*t) for t in eliminated),
    )


def _partition_blocks(lo: int, hi: int, n: int) -> list[tuple[int, int]]:
    size = max((hi - lo + n - 1) // n, 1)
    return [(b, min(b + size, hi)) for b in range(lo, hi, size)]


# ---------------------------------------------------------------------------
# rootless primes of a fixed pair


def root_exists(p: int, a: int, q: int) -> bool:
    """Does Φ_p(X) + a have a root mod q?

    Small p goes through the finite-field gcd route on the dense polynomial;
    large p (no dense construction) through the direct residue scan.
    """
    if p <= polynomials.MAX_CONSTRUCTED_PRIME:
        return polynomials.has_root_mod_q(polynomials.build_P(p, a), q)
    return any(_value_at(p, a, k, q) == 0 for k in range(q))


def least_rootless_prime(
    p: int, a: int, ceiling: int = 100_000
) -> Optional[int]:
    """Least prime q with no root of Φ_p(X) + a mod q; None when every prime
    up to the abort ceiling has a root (certain if the pair has an integer
    root, since a linear factor yields a root mod every prime)."""
    f = polynomials.build_P(p, a)
    q = 2
    while q <= ceiling:
        if not polynomials.has_root_mod_q(f, q):
            return q
        q += 1
        while not arith.is_probable_prime(q):
            q += 1
    return None


def rootless_density(p: int, a: int, x: int) -> Fraction:
    """(# primes q <= x with no root) / pi(x), exact."""
    if x < 100:
        raise DomainError("x must be >= 100")
    f = polynomials.build_P(p, a)
    sieve = arith.primes_up_to(x)
    rootless = 0
    total = 0
    for q in sieve:
        total += 1
        if not polynomials.has_root_mod_q(f, q):
            rootless += 1
    return Fraction(rootless, total)


def rootless_flags(p: int, a: int, x: int) -> list[tuple[int, bool]]:
    """(q, rootless?) for every prime q <= x; lets callers derive densities
    at several cutoffs from one pass."""
    f = polynomials.build_P(p, a)
    return [
        (q, not polynomials.has_root_mod_q(f, q)) for q in arith.primes_up_to(x)
    ]
