"""Integer polynomial machinery for the shifted cyclotomic family
Φ_p(X) + a: construction, discriminants (closed form against a
Sylvester-matrix resultant oracle), Newton polygons, Eisenstein and
two-segment classification, integer roots, and mod-q degree patterns.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import arith
from .arith import DomainError

MAX_CONSTRUCTED_PRIME = 10**4  # dense polynomials above this are a usage error


class SingularCaseError(DomainError):
    """The closed discriminant formula divides by (a+p)^2 = 0; use the
    resultant oracle instead."""


# ---------------------------------------------------------------------------
# dense integer polynomials, constant term first


class PolyZ:
    """Immutable dense polynomial over the integers.

    coeffs[i] is the coefficient of X^i; trailing zeros are stripped, so the
    zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, *_):
        raise AttributeError("PolyZ is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if self.is_zero:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyZ) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyZ({list(self.coeffs)})"

    def __add__(self, other: "PolyZ") -> "PolyZ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyZ(out)

    def __neg__(self) -> "PolyZ":
        return PolyZ([-c for c in self.coeffs])

    def __sub__(self, other: "PolyZ") -> "PolyZ":
        return self + (-other)

    def __mul__(self, other: "PolyZ") -> "PolyZ":
        if self.is_zero or other.is_zero:
            return PolyZ(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyZ(out)

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "PolyZ":
        return PolyZ([i * c for i, c in enumerate(self.coeffs)][1:])

    def divide_out_root(self, r: int) -> "PolyZ":
        """Exact synthetic division by (X - r); raises unless r is a root."""
        if self.is_zero:
            raise DomainError("cannot divide the zero polynomial")
        n = self.degree
        out = [0] * n
        acc = 0
        for i in range(n, 0, -1):
            acc = self.coeffs[i] + (acc * r if i < n else 0)
            out[i - 1] = acc
        if self.coeffs[0] + acc * r != 0:
            raise DomainError(f"{r} is not a root")
        return PolyZ(out)

    def strip_power_of_x(self) -> tuple["PolyZ", int]:
        """(f / X^k, k) where k is the multiplicity of the root 0."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return PolyZ(self.coeffs[k:]), k

    def to_json(self) -> list[str]:
        """Decimal-string coefficients, constant term first."""
        return [str(c) for c in self.coeffs] or ["0"]

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "PolyZ":
        return cls([int(s) for s in items])


def build_P(p: int, a: int) -> PolyZ:
    """X^(p-1) + ... + X + 1 + a, the length-p repunit polynomial shifted by a."""
    if not arith.is_probable_prime(p) or p < 3:
        raise DomainError(f"p must be a prime >= 3, got {p}")
    if p > MAX_CONSTRUCTED_PRIME:
        raise DomainError(f"refusing dense polynomial of degree {p - 1}")
    return PolyZ([1 + a] + [1] * (p - 1))


def cyclotomic_poly(m: int) -> PolyZ:
    """The m-th cyclotomic polynomial."""
    return PolyZ(arith.cyclotomic_coeffs(m))


def shift_plus_one(f: PolyZ) -> PolyZ:
    """f(X + 1), by Horner over the shifted variable."""
    g = PolyZ(())
    x_plus_1 = PolyZ((1, 1))
    for c in reversed(f.coeffs):
        g = g * x_plus_1 + PolyZ((c,))
    return g


# ---------------------------------------------------------------------------
# discriminants


def sylvester_matrix(f: PolyZ, g: PolyZ) -> list[list[int]]:
    n, m = f.degree, g.degree
    if n < 0 or m < 0:
        raise DomainError("resultant of the zero polynomial")
    F = list(reversed(f.coeffs))
    G = list(reversed(g.coeffs))
    rows = []
    for i in range(m):
        rows.append([0] * i + F + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + G + [0] * (n - 1 - i))
    return rows


def _bareiss_det(rows: list[list[int]]) -> int:
    # fraction-free elimination; all divisions are exact
    M = [row[:] for row in rows]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[-1][-1]


def resultant(f: PolyZ, g: PolyZ) -> int:
    """Res(f, g) as the Sylvester determinant, exact."""
    return _bareiss_det(sylvester_matrix(f, g))


def discriminant_resultant(f: PolyZ) -> int:
    """Signed discriminant (-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise DomainError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    res = resultant(f, f.derivative())
    d, r = divmod(res, f.lead)
    assert r == 0
    return -d if (n * (n - 1) // 2) % 2 else d


def discriminant_closed(p: int, a: int) -> int:
    """|Δ| of build_P(p, a) from the closed form
    (p^p (a+1)^(p-1) + a^p (p-1)^(p-1)) / (a+p)^2."""
    if not arith.is_probable_prime(p) or p < 3:
        raise DomainError(f"p must be a prime >= 3, got {p}")
    if a == -p:
        raise SingularCaseError(
            "a = -p makes the denominator vanish; use discriminant_resultant"
        )
    num = p**p * (a + 1) ** (p - 1) + a**p * (p - 1) ** (p - 1)
    q, r = divmod(abs(num), (a + p) ** 2)
    if r != 0:
        raise ArithmeticError(f"closed-form division not exact at (p={p}, a={a})")
    return q


# ---------------------------------------------------------------------------
# Newton polygons (points indexed from the leading coefficient, so that a
# degree-n polynomial has point j at the p-adic valuation of coeff of X^(n-j))


@dataclass(frozen=True)
class NewtonPolygon:
    prime: int
    vertices: tuple[tuple[int, int], ...]  # lower convex hull, index-ascending

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(v2 - v1, j2 - j1)
            for (j1, v1), (j2, v2) in zip(self.vertices, self.vertices[1:])
        )

    @property
    def segments(self) -> tuple[tuple[tuple[int, int], tuple[int, int], Fraction], ...]:
        return tuple(
            (a, b, Fraction(b[1] - a[1], b[0] - a[0]))
            for a, b in zip(self.vertices, self.vertices[1:])
        )


def newton_polygon(f: PolyZ, p: int) -> NewtonPolygon:
    """Lower convex hull of the valuation points of f with respect to p."""
    if f.is_zero:
        raise DomainError("zero polynomial has no Newton polygon")
    if f.constant == 0:
        raise DomainError("constant term is zero; divide out X first")
    if not arith.is_probable_prime(p):
        raise DomainError(f"{p} is not prime")
    n = f.degree
    pts = [
        (n - i, arith.int_valuation(c, p))
        for i, c in enumerate(f.coeffs)
        if c != 0
    ]
    pts.sort()
    hull: list[tuple[int, int]] = []
    for pt in pts:
        # keep only strict left turns: lower hull, strictly increasing slopes
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) > 0:
                break
            hull.pop()
        hull.append(pt)
    return NewtonPolygon(p, tuple(hull))


def is_eisenstein(f: PolyZ, p: int) -> bool:
    """p divides every non-leading coefficient, not the lead, and p^2
    does not divide the constant term."""
    if f.degree < 1:
        raise DomainError("needs degree >= 1")
    if not arith.is_probable_prime(p):
        raise DomainError(f"{p} is not prime")
    if f.lead % p == 0:
        return False
    if any(c % p for c in f.coeffs[:-1]):
        return False
    return f.constant % (p * p) != 0


# ---------------------------------------------------------------------------
# integer roots


def integer_roots(f: PolyZ) -> list[int]:
    """All integer roots with multiplicity, ascending (divisor search on the
    constant term after stripping powers of X)."""
    if f.is_zero:
        raise DomainError("zero polynomial")
    g, k = f.strip_power_of_x()
    roots = [0] * k
    if g.degree >= 1:
        # any integer root of a cofactor still divides the original constant
        for d in arith.divisors(g.constant):
            for r in (d, -d):
                while g.degree >= 1 and g.evaluate(r) == 0:
                    roots.append(r)
                    g = g.divide_out_root(r)
    return sorted(roots)


# ---------------------------------------------------------------------------
# factorization mod q: degree patterns and irreducibility certification


def _modq_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _modq_rem(a: list[int], b: list[int], q: int) -> list[int]:
    a = a[:]
    binv = pow(b[-1], -1, q)
    db = len(b) - 1
    while a and len(a) - 1 >= db:
        c = a[-1] * binv % q
        d = len(a) - 1 - db
        for i in range(len(b)):
            a[d + i] = (a[d + i] - c * b[i]) % q
        _modq_trim(a)
    return a


def _modq_divexact(a: list[int], b: list[int], q: int) -> list[int]:
    a = a[:]
    binv = pow(b[-1], -1, q)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    while a and len(a) - 1 >= db:
        c = a[-1] * binv % q
        d = len(a) - 1 - db
        out[d] = c
        for i in range(len(b)):
            a[d + i] = (a[d + i] - c * b[i]) % q
        _modq_trim(a)
    assert not a, "division not exact"
    return out


def _modq_mul(a: list[int], b: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % q
    return _modq_trim(out)

def _modq_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    a = _modq_trim([c % q for c in a])
    b = _modq_trim([c % q for c in b])
    while b:
        a, b = b, _modq_rem(a, b, q)
    if a:
        inv = pow(a[-1], -1, q)
        a = [c * inv % q for c in a]
    return a


def _modq_powmod(base: list[int], e: int, mod: list[int], q: int) -> list[int]:
    result = [1]
    b = _modq_rem(base, mod, q)
    while e:
        if e & 1:
            result = _modq_rem(_modq_mul(result, b, q), mod, q)
        b = _modq_rem(_modq_mul(b, b, q), mod, q)
        e >>= 1
    return result


def _modq_deriv(f: list[int], q: int) -> list[int]:
    return _modq_trim([i * c % q for i, c in enumerate(f)][1:])


def _ddf_counts(g: list[int], q: int) -> list[tuple[int, int]]:
    # distinct-degree factorization of squarefree monic g: (degree, count)
    out = []
    gg = g[:]
    h = [0, 1]
    d = 0
    while len(gg) - 1 >= 2 * (d + 1):
        d += 1
        h = _modq_powmod(h, q, gg, q)
        hx = h[:] + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % q
        hx = _modq_trim(hx)
        c = gg[:] if not hx else _modq_gcd(gg, hx, q)
        if len(c) > 1:
            out.append((d, (len(c) - 1) // d))
            gg = _modq_divexact(gg, c, q)
            h = _modq_rem(h, gg, q)
    if len(gg) > 1:
        out.append((len(gg) - 1, 1))
    return out


@dataclass(frozen=True)
class ModqDegrees:
    q: int
    degrees: tuple[int, ...]  # ascending, with multiplicity
    squarefree: bool


def factor_degrees_mod_q(f: PolyZ, q: int) -> ModqDegrees:
    """Degrees of the irreducible factors of f mod q, with multiplicity.

    Squarefree parts go through distinct-degree factorization; repeated
    parts are handled by the characteristic-q squarefree decomposition
    (q-th power parts descend via the Frobenius on coefficients).
    """
    if not arith.is_probable_prime(q):
        raise DomainError(f"{q} is not prime")
    if f.is_zero or f.lead % q == 0:
        raise DomainError("leading coefficient vanishes mod q")
    fq = [c % q for c in f.coeffs]
    inv = pow(fq[-1], -1, q)
    fq = _modq_trim([c * inv % q for c in fq])
    fp = _modq_deriv(fq, q)
    squarefree = bool(fp) and len(_modq_gcd(fq, fp, q)) == 1
    degrees: list[int] = []
    stack = [(fq, 1)]
    while stack:
        g, mult = stack.pop()
        if len(g) <= 1:
            continue
        gp = _modq_deriv(g, q)
        if not gp:
            stack.append((g[::q], mult * q))
            continue
        c = _modq_gcd(g, gp, q)
        w = _modq_divexact(g, c, q)
        i = 1
        while len(w) > 1:
            y = _modq_gcd(w, c, q)
            z = _modq_divexact(w, y, q)
            if len(z) > 1:
                for d, cnt in _ddf_counts(z, q):
                    degrees.extend([d] * (cnt * i * mult))
            c = _modq_divexact(c, y, q)
            w = y
            i += 1
        if len(c) > 1:
            stack.append((c[::q], mult * q))
    return ModqDegrees(q, tuple(sorted(degrees)), squarefree)


def has_root_mod_q(f: PolyZ, q: int) -> bool:
    """Does f have a root mod q?  gcd(X^q - X, f) over F_q."""
    if not arith.is_probable_prime(q):
        raise DomainError(f"{q} is not prime")
    fq = _modq_trim([c % q for c in f.coeffs])
    if not fq:
        return True
    if len(fq) == 1:
        return False
    h = _modq_powmod([0, 1], q, fq, q)
    hx = h[:] + [0] * max(0, 2 - len(h))
    hx[1] = (hx[1] - 1) % q
    hx = _modq_trim(hx)
    if not hx:
        return True
    return len(_modq_gcd(fq, hx, q)) > 1


def _achievable_degree_sums(degrees: Sequence[int]) -> frozenset[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return frozenset(sums)


def certify_irreducible(
    f: PolyZ, certification_bound: int = 1000
) -> tuple[bool, tuple[int, ...]]:
    """One-sided irreducibility certificate by intersecting achievable
    factor-degree sums over squarefree reductions mod q.

    Returns (certified, primes_used).  A False result is inconclusive:
    polynomials reducible modulo every prime exist.
    """
    n = f.degree
    if n < 1:
        return False, ()
    if n == 1:
        return True, ()
    target = frozenset({0, n})
    inter: Optional[frozenset[int]] = None
    used: list[int] = []
    for q in arith.primes_up_to(max(certification_bound, 2)):
        if f.lead % q == 0:
            continue
        pattern = factor_degrees_mod_q(f, q)
        if not pattern.squarefree:
            continue
        used.append(q)
        a = _achievable_degree_sums(pattern.degrees)
        inter = a if inter is None else inter & a
        if inter == target:
            return True, tuple(used)
    return False, tuple(used)


# ---------------------------------------------------------------------------
# factorization shape of build_P(p, a)


class ShapeTag(enum.Enum):
    IRREDUCIBLE = "irreducible"
    LINEAR_TIMES_IRREDUCIBLE = "linear_times_irreducible"
    HAS_LINEAR_FACTOR_UNCERTIFIED = "linear_factor_uncertified_cofactor"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FactorizationShape:
    tag: ShapeTag
    root: Optional[int] = None
    certificate: dict = field(default_factory=dict)


def classify_shape(p: int, a: int, certification_bound: int = 1000) -> FactorizationShape:
    """Shape of Φ_p(X) + a over the integers.

    Route 1: p | a with p not dividing a/p + 1 makes the X -> X+1 shift
    Eisenstein, hence irreducible.  Route 2: p | a with p | a/p + 1 gives the
    two-segment polygon, hence irreducible or linear times irreducible, and
    an integer-root search decides which.  Otherwise the verdict rests on
    mod-q degree patterns, which are one-sided; Unknown is an honest output.
    """
    if not arith.is_probable_prime(p) or p < 7:
        raise DomainError(f"p must be a prime >= 7, got {p}")
    if a == 0:
        raise DomainError("a must be nonzero")
    f = build_P(p, a)
    if a % p == 0 and a != -p:
        a1 = a // p
        g = shift_plus_one(f)
        if (a1 + 1) % p != 0:
            assert is_eisenstein(g, p)
            return FactorizationShape(
                ShapeTag.IRREDUCIBLE, certificate={"route": "eisenstein", "prime": p}
            )
        polygon = newton_polygon(g, p)
        roots = integer_roots(f)
        cert = {
            "route": "two_segment_polygon",
            "prime": p,
            "vertices": list(polygon.vertices),
        }
        if roots:
            return FactorizationShape(
                ShapeTag.LINEAR_TIMES_IRREDUCIBLE, root=roots[0], certificate=cert
            )
        return FactorizationShape(ShapeTag.IRREDUCIBLE, certificate=cert)
    roots = integer_roots(f)
    if not roots:
        ok, used = certify_irreducible(f, certification_bound)
        if ok:
            return FactorizationShape(
                ShapeTag.IRREDUCIBLE,
                certificate={"route": "modq_patterns", "primes": list(used)},
            )
        return FactorizationShape(
            ShapeTag.UNKNOWN, certificate={"route": "modq_patterns", "primes": list(used)}
        )
    root = roots[0]
    cofactor = f.divide_out_root(root)
    if len(roots) == 1:
        ok, used = certify_irreducible(cofactor, certification_bound)
        if ok:
            return FactorizationShape(
                ShapeTag.LINEAR_TIMES_IRREDUCIBLE,
                root=root,
                certificate={"route": "modq_patterns", "primes": list(used)},
            )
    return FactorizationShape(
        ShapeTag.HAS_LINEAR_FACTOR_UNCERTIFIED,
        root=root,
        certificate={"route": "modq_patterns", "roots": roots},
    )
