#!/usr/bin/env python3
"""The explicit crossover function that closes the valuation argument.

f(x) = x - 69.2224 log^4(x) (1.78107242 loglog(x) + 0.83918269)^2 must be
positive and increasing from x0 = 4.0515e8 - 1 on.  The margin at x0 is a
few hundred against a leading term of 4e8, which is why this runs on
128-bit floats rather than doubles-by-default.
"""

import gmpy2

from repgap import analytic as an

x0 = 4.0515e8 - 1
print(f"f(x0) at x0 = {x0:.0f}:")
v = an.first_proof_threshold(x0)
print(f"  {v}")
print(f"  relative margin: {float(v / x0):.2e}\n")

print("log-spaced sample up to 1e12 (all strictly increasing):")
sample = an.threshold_sample(7, x0, 10**12)
xs = [
    gmpy2.exp(
        gmpy2.log(gmpy2.mpfr(x0))
        + (gmpy2.log(gmpy2.mpfr(10**12)) - gmpy2.log(gmpy2.mpfr(x0))) * i / 6
    )
    for i in range(7)
]
for x, v in zip(xs, sample):
    print(f"  x = {float(x):>14.6e}   f(x) = {float(v):>14.6e}")
mono = all(b > a for a, b in zip(sample, sample[1:]))
print(f"  monotone: {mono}\n")

print("below the claimed range the sign flips (recorded, no claim there):")
print(f"  f(1e3) = {float(an.first_proof_threshold(1000)):.1f}")

print("\nthe totient floor feeding the same estimate "
      "(phi(m') > m'/(e^gamma loglog m' + 2.50637/loglog m')):")
for mp in (30030, 510510, 999983):
    print(f"  m' = {mp:>7}: holds = {an.phi_lower_bound_check(mp)}")
bad = an.phi_lower_bound_scan(10**6)
print(f"  failures up to 1e6: {bad if bad else 'none'}")
