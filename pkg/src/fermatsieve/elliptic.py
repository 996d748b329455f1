"""Long Weierstrass elliptic curves over F_p and over Q."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

import numpy as np

from .intkernel import ArithmeticInputError, is_prime


class SingularCurveError(ArithmeticInputError):
    pass


class BadReductionError(ArithmeticInputError):
    pass


def _b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def weierstrass_invariants(a1, a2, a3, a4, a6):
    """(c4, c6, discriminant) of a long Weierstrass model."""
    b2, b4, b6, b8 = _b_invariants(a1, a2, a3, a4, a6)
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return c4, c6, disc


@dataclass(frozen=True)
class CurveQ:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self) -> None:
        if self.discriminant == 0:
            raise SingularCurveError("curve over Q is singular")

    @property
    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def discriminant(self) -> int:
        return weierstrass_invariants(*self.ainvs)[2]

    def contains(self, pt: "RationalPoint") -> bool:
        if pt.is_infinity:
            return True
        x, y = pt.x, pt.y
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6

    def reduce(self, p: int) -> "CurveFp":
        if self.discriminant % p == 0:
            raise BadReductionError(f"bad reduction at {p} for this model")
        return CurveFp(p, *(c % p for c in self.ainvs))


@dataclass(frozen=True)
class CurveFp:
    p: int
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, getattr(self, name) % self.p)
        if weierstrass_invariants(*self.ainvs)[2] % self.p == 0:
            raise SingularCurveError(f"singular curve mod {self.p}")

    @property
    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def quadratic_twist(self, d: int) -> "CurveFp":
        """Twist by the unit d (p odd): y^2 = x^3 + d a2' x^2 + d^2 a4' x + d^3 a6'."""
        p = self.p
        if p == 2:
            raise ArithmeticInputError("quadratic twist implemented for odd p only")
        a2, a4, a6 = _completed_square(self)
        return CurveFp(p, 0, d * a2, 0, d * d * a4, d**3 * a6)


@dataclass(frozen=True)
class RationalPoint:
    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if (self.x is None) != (self.y is None):
            raise ValueError("a finite point needs both coordinates")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None


INFINITY = RationalPoint()


def _completed_square(curve: CurveFp):
    """Coefficients (A2, A4, A6) of y^2 = x^3 + A2 x^2 + A4 x + A6 isomorphic to curve (p odd)."""
    p = curve.p
    inv4 = pow(4, -1, p)
    a1, a2, a3, a4, a6 = curve.ainvs
    # (y + (a1 x + a3)/2)^2 = x^3 + a2 x^2 + a4 x + a6 + (a1 x + a3)^2 / 4
    return (
        (a2 + a1 * a1 * inv4) % p,
        (a4 + 2 * a1 * a3 * inv4) % p,
        (a6 + a3 * a3 * inv4) % p,
    )


@lru_cache(maxsize=64)
def quadratic_character_table(p: int) -> np.ndarray:
    """chi[x] in {-1, 0, 1} for x in [0, p)."""
    chi = -np.ones(p, dtype=np.int64)
    chi[0] = 0
    squares = (np.arange(1, p, dtype=np.int64) ** 2) % p
    chi[squares] = 1
    return chi


def _count_exhaustive(curve: CurveFp) -> int:
    p = curve.p
    a1, a2, a3, a4, a6 = curve.ainvs
    n = 1
    for x in range(p):
        rhs = (x**3 + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y) % p == rhs:
                n += 1
    return n


def count_points(curve: CurveFp) -> int:
    """#E(F_p), point at infinity included."""
    p = curve.p
    if p <= 3:
        return _count_exhaustive(curve)
    a2, a4, a6 = _completed_square(curve)
    chi = quadratic_character_table(p)
    x = np.arange(p, dtype=np.int64)
    rhs = (((x + a2) * x % p + a4) * x + a6) % p
    return int(p + 1 + chi[rhs].sum())


def trace_frobenius(curve: CurveFp) -> int:
    return curve.p + 1 - count_points(curve)


def has_3_isogeny(curve: CurveFp) -> bool:
    """A rational 3-isogeny exists iff the trace is +-(p+1) mod 3."""
    a = trace_frobenius(curve)
    q = curve.p + 1
    return (a - q) % 3 == 0 or (a + q) % 3 == 0


def reduce_and_ap(curve: CurveQ, p: int) -> int:
    if p % 2 == 0 or not is_prime(p):
        raise ArithmeticInputError("p must be an odd prime")
    return trace_frobenius(curve.reduce(p))


def legendre_family_traces(e1: np.ndarray, e2: int, p: int) -> np.ndarray:
    """Traces of y^2 = x (x - e1[i]) (x - e2) over F_p for a batch of e1 values.

    Vectorized character sums; callers guarantee nonsingularity.
    """
    chi = quadratic_character_table(p)
    x = np.arange(p, dtype=np.int64)
    e1 = np.asarray(e1, dtype=np.int64) % p
    out = np.empty(len(e1), dtype=np.int64)
    fixed = x * ((x - e2) % p) % p
    chunk = max(1, 4_000_000 // max(p, 1))
    for start in range(0, len(e1), chunk):
        block = e1[start : start + chunk, None]
        vals = fixed[None, :] * ((x[None, :] - block) % p) % p
        out[start : start + chunk] = -chi[vals].sum(axis=1)
    return out


# ---------------------------------------------------------------------------
# exact group law over Q
# ---------------------------------------------------------------------------


def add_points(curve: CurveQ, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = (Fraction(c) for c in curve.ainvs)
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return INFINITY
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return RationalPoint(x3, y3)


def rational_point_order(curve: CurveQ, pt: RationalPoint, cap: int = 16) -> Union[int, str]:
    """Order of a rational point, or the string ``"exceeds cap"``."""
    if not curve.contains(pt):
        raise ArithmeticInputError("point is not on the curve")
    if cap > 16:
        raise ArithmeticInputError("cap is limited to 16")
    acc = pt
    for k in range(1, cap + 1):
        if acc.is_infinity:
            return k
        acc = add_points(curve, acc, pt)
    return "exceeds cap"


def torsion_bound(curve: CurveQ, probe_primes: Iterable[int]) -> int:
    """gcd of #E(F_p) over odd primes of good reduction: a multiple of the torsion order."""
    g = 0
    probes = list(probe_primes)
    if not probes:
        raise ArithmeticInputError("need at least one probe prime")
    for p in probes:
        if p % 2 == 0:
            raise ArithmeticInputError("probe primes must be odd")
        g = math.gcd(g, count_points(curve.reduce(p)))
    return g
