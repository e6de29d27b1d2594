#!/usr/bin/env python3
"""How close can a factorial come to a repunit?

Exhaustive search of n! = (b^m - 1)/(b - 1) + a over exact big integers.
The length loop is bounded through base 2, so nothing is missed.
"""

import math
import time

from repgap import eqsearch as eq

print("all solutions with a = -1, n <= 100 (m >= 3):")
t0 = time.time()
for hit in eq.search_fixed_a(-1, 100):
    print(f"  n={hit.n} m={hit.m} b={hit.b}: "
          f"{hit.n}! = {math.factorial(hit.n)} = repunit({hit.b},{hit.m}) - 1")
print(f"  ({time.time() - t0:.2f}s)")
print("  note: 3! = 6 = 7 - 1 (binary 111) is genuine, even though the")
print("  published note names (5,5,3) as the only hit; above length 3 the")
print("  uniqueness claim is confirmed:")
print(f"  m >= 4: {[(h.n, h.m, h.b) for h in eq.search_fixed_a(-1, 100, m_min=4)]}")

print("\nno factorial up to 100! is itself a repunit of length >= 3:")
print(f"  a = 0 solutions: {eq.search_fixed_a(0, 100)}")
print("  for length 3 there is a one-line reason: b^2 + b + 1 mod 9 lands in")
print(f"  {sorted({(b * b + b + 1) % 9 for b in range(9)})}, never 0, "
      "while 9 | n! from n = 6 on")
print(f"  check_m3_divisibility(6) = {eq.check_m3_divisibility(6)}")

print("\nsmall window around zero, n <= 12 (brute force, exact):")
for hit in eq.search_a_range(-5, 5, 12):
    print(f"  n={hit.n:>2} m={hit.m} b={hit.b:>3} a={hit.a:>2}")

print("\nheuristic search-ordering box (never used for completeness):")
for n in (5, 20, 100):
    m_cap, b_floor = eq.search_order_caps(n, a_bound=n)
    print(f"  n={n:>3}: length cap {m_cap:>4}, base floor {b_floor}")
