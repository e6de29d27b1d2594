"""Exhaustive desk-scale searches for n! = (b^m - 1)/(b - 1) + a.

Exact big-integer arithmetic throughout; the m loop is bounded by base 2
(the smallest base gives the longest repunit below n!), so completeness
never depends on the asymptotic box heuristics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import arith
from .arith import DomainError

MAX_N = 300  # factorials stay exact; larger boxes are out of scope


@dataclass(frozen=True)
class EquationInstance:
    """A verified tuple: n! - repunit(b, m) == a, checked on construction."""

    n: int
    m: int
    b: int
    a: int

    def __post_init__(self):
        if self.n < 2 or self.m < 3 or self.b < 2:
            raise DomainError(f"out-of-domain instance {self}")
        if math.factorial(self.n) - arith.repunit(self.b, self.m) != self.a:
            raise DomainError(f"{self} does not satisfy the equation")

    def as_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "b": self.b, "a": self.a}


@dataclass(frozen=True)
class SearchBox:
    """Finite search region; m runs until the base-2 repunit passes n! - a."""

    n_min: int
    n_max: int
    a_min: int
    a_max: int
    m_min: int = 3

    def __post_init__(self):
        if self.n_min < 2 or self.n_max < self.n_min:
            raise DomainError(f"bad n range in {self}")
        if self.a_min > self.a_max:
            raise DomainError(f"empty a range in {self}")
        if self.m_min < 3:
            raise DomainError("m_min must be >= 3")


def search_box(box: SearchBox) -> list[EquationInstance]:
    """All solutions inside the box (complete direct enumeration)."""
    hits = search_a_range(box.a_min, box.a_max, box.n_max, m_min=box.m_min)
    return [h for h in hits if h.n >= box.n_min]


def solve_repunit_eq(N: int, m: int) -> int | None:
    """The unique b >= 2 with (b^m - 1)/(b - 1) = N, if any, by monotone
    binary search (at most one positive solution exists for fixed m)."""
    if N < 3:
        raise DomainError("N must be >= 3")
    if m < 2:
        raise DomainError("m must be >= 2")
    lo, hi = 2, 2
    while arith.repunit(hi, m) < N:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if arith.repunit(mid, m) < N:
            lo = mid + 1
        else:
            hi = mid
    return lo if arith.repunit(lo, m) == N else None


def search_fixed_a(a: int, n_max: int, m_min: int = 3) -> list[EquationInstance]:
    """All (n, m, b) with 2 <= n <= n_max, m >= m_min, b >= 2 solving the
    equation for this a."""
    if n_max > MAX_N:
        raise DomainError(f"n_max capped at {MAX_N}")
    out = []
    fact = 1
    for n in range(2, n_max + 1):
        fact *= n
        target = fact - a
        m = m_min
        while target >= 3 and arith.repunit(2, m) <= target:
            b = solve_repunit_eq(target, m)
            if b is not None:
                out.append(EquationInstance(n, m, b, a))
            m += 1
    return out


def search_a_range(
    a_min: int, a_max: int, n_max: int, m_min: int = 3
) -> list[EquationInstance]:
    """Direct enumeration over b for every (n, m): complete for any a range,
    and independent of the binary-search route (serves as its oracle)."""
    if a_min > a_max:
        raise DomainError("empty a range")
    if n_max > MAX_N:
        raise DomainError(f"n_max capped at {MAX_N}")
    out = []
    fact = 1
    for n in range(2, n_max + 1):
        fact *= n
        limit = fact - a_min  # largest repunit that can still hit the range
        if limit < 3:
            continue
        b = 2
        while arith.repunit(b, m_min) <= limit:
            m = m_min
            value = arith.repunit(b, m)
            while value <= limit:
                a = fact - value
                if a_min <= a <= a_max:
                    out.append(EquationInstance(n, m, b, a))
                m += 1
                value = value * b + 1
            b += 1
    return out


def check_m3_divisibility(n: int) -> bool:
    """True iff 9 | n! (n >= 6), which kills n! = b^2 + b + 1 outright:
    b^2 + b + 1 is never 0 mod 9."""
    if n < 2:
        raise DomainError("n must be >= 2")
    return arith.legendre_valuation(n, 3) >= 2


def search_order_caps(
    n: int, a_bound: int, c_m: float = 1.0, c_b: float = 0.5
) -> tuple[int, int]:
    """Heuristic caps used only to prioritize search order: a length cap
    m_cap = ceil(c_m sqrt(n) ln^2 n) and a base floor
    b_floor = ceil(exp(c_b sqrt(n)/ln n)).  Exact searches never rely on
    them; a_bound records the |a| = O(n) regime they were fitted for."""
    if n < 3:
        raise DomainError("n must be >= 3")
    if a_bound < 0:
        raise DomainError("a_bound must be nonnegative")
    ln = math.log(n)
    m_cap = math.ceil(c_m * math.sqrt(n) * ln * ln)
    b_floor = math.ceil(math.exp(c_b * math.sqrt(n) / ln))
    return m_cap, b_floor
