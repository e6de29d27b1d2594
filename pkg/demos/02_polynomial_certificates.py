#!/usr/bin/env python3
"""Discriminants, Newton polygons and factorization shapes of the shifted
repunit polynomials P(X) = X^(p-1) + ... + X + 1 + a.

Three routes decide how P factors over the integers:
  - p | a with p not dividing a/p + 1: the shift X -> X+1 is Eisenstein,
  - p | a with p | a/p + 1: a two-segment Newton polygon pins the shape,
  - otherwise: integer roots plus mod-q degree patterns certify the rest.
"""

from repgap import polynomials as poly

print("closed-form discriminant vs the Sylvester-matrix resultant oracle:")
for (p, a) in ((3, 0), (5, -1), (7, 7), (11, -683), (13, 26)):
    closed = poly.discriminant_closed(p, a)
    oracle = poly.discriminant_resultant(poly.build_P(p, a))
    print(f"  p={p:>2} a={a:>5}: |closed| = {closed} "
          f"{'==' if closed == abs(oracle) else '!='} |resultant|")

print("\nthe singular case a = -p needs the oracle (formula divides by 0):")
print(f"  disc of P(7, -7) via resultant: "
      f"{poly.discriminant_resultant(poly.build_P(7, -7))}")

print("\nEisenstein after the shift X -> X+1 (p = 7, a = 7 a1):")
for a1 in (1, 2, 6, 13, -8, -15):
    g = poly.shift_plus_one(poly.build_P(7, 7 * a1))
    eis = poly.is_eisenstein(g, 7)
    print(f"  a1 = {a1:>3}: constant {g.constant:>7}, eisenstein = {eis} "
          f"(predicate 7 ∤ a1+1 = {(a1 + 1) % 7 != 0})")

print("\ntwo-segment Newton polygon when 7 | a1 + 1 (a = -39991 = 7·(-5713)):")
g = poly.shift_plus_one(poly.build_P(7, -39991))
polygon = poly.newton_polygon(g, 7)
print(f"  vertices {polygon.vertices}, slopes {[str(s) for s in polygon.slopes]}")
print("  so P factors as (irreducible) or (linear)(irreducible); the root:")
print(f"  integer roots of P(7, -39991): {poly.integer_roots(poly.build_P(7, -39991))}")

print("\nfull shape classification over a few pairs:")
for (p, a) in ((7, 7), (7, -7), (7, -43), (7, -39991), (11, -8191), (7, -1)):
    shape = poly.classify_shape(p, a)
    extra = f", root {shape.root}" if shape.root is not None else ""
    print(f"  ({a:>7}, {p:>2}): {shape.tag.value}{extra}"
          f"  [{shape.certificate.get('route')}]")
