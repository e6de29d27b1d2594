#!/usr/bin/env python3
"""The class set C(m') and the counting inequality behind it.

C(m') collects residues c coprime to m' with c - 1 divisible by some
divisor >= 3 of m'; only primes in those classes can divide the repunit
cofactor.  The gap 1 - ((1+delta)/m' + |C|/phi(m')) must stay positive for
the counting argument to close, and an explicit residue plus a supply of
rough primes keep |C| away from phi(m').
"""

from repgap import analytic as an

print("small class sets (exact rationals):")
for mp in (3, 4, 6, 12, 30, 100):
    rep = an.class_set_C(mp)
    members = rep.members if len(rep.members) <= 12 else rep.members[:12] + ("...",)
    print(f"  m'={mp:>3}: |C|={len(rep.members):>3} {members} "
          f"lhs = {rep.lhs6}")

rows = an.lhs6_scan(1000, m_min=5)
worst = min(rows, key=lambda t: t[1])
print(f"\npositivity over 5 <= m' <= 1000: all positive "
      f"(tightest at m' = {worst[0]}: {worst[1]})")
print("m' = 4 sits exactly at zero, matching the one known solution's length")

print("\nthe excluded residue (never in C, coprime, inside (0, m'-1)):")
for mp in (5, 6, 12, 1001, 1002, 1004, 2040):
    rep = an.excluded_residue(mp)
    flags = []
    if not rep.below_boundary:
        flags.append("collides with m'-1")
    print(f"  m'={mp:>5}: a = {rep.residue:>4} (s={rep.s}, m0={rep.m0}) "
          f"{'ok' if rep.verified else ' / '.join(flags)}")
print("  the two collisions (m' = 6, 12) sit far below the range the")
print("  argument uses (m' > 1000), where verification never fails")

print("\nrough primes q in (m'/2, m']: (q-1)/2 free of factors < (ln m')^3")
for mp in (10**4, 10**5):
    rep = an.rough_prime_count(mp)
    print(f"  m'={mp}: pi1 = {rep.pi1}, of which in C(m'): {rep.overlap} "
          f"(threshold {rep.threshold:.0f})")
