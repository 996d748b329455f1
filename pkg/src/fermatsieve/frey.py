"""Twisted Fermat triples and their Frey curves."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Tuple

from .elliptic import CurveFp, CurveQ, SingularCurveError
from .intkernel import odd_prime_divisors


class TripleError(ValueError):
    pass


class NormalizationError(ValueError):
    pass


@dataclass(frozen=True)
class Triple:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if 0 in (self.a, self.b, self.c):
            raise TripleError("coefficients must be nonzero")
        a, b, c = self.a, self.b, self.c
        if math.gcd(a, b) != 1 or math.gcd(b, c) != 1 or math.gcd(a, c) != 1:
            raise TripleError(f"coefficients {a, b, c} are not pairwise coprime")

    @property
    def product(self) -> int:
        return self.a * self.b * self.c

    @property
    def N0(self) -> int:
        return level_N0(self)

    def odd_primes(self) -> Tuple[int, ...]:
        return tuple(odd_prime_divisors(self.product))

    def reduce(self, p: int) -> Tuple[int, int, int]:
        return self.a % p, self.b % p, self.c % p

    def as_list(self):
        return [self.a, self.b, self.c]

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


def level_N0(triple: Triple) -> int:
    """Product of the odd primes dividing abc."""
    return math.prod(triple.odd_primes())


@dataclass(frozen=True)
class FreySpec:
    triple: Triple
    n: int
    x: int
    y: int
    z: int
    terms: Tuple[int, int, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        t = self.triple
        A, B, C = t.a * self.x**self.n, t.b * self.y**self.n, t.c * self.z**self.n
        object.__setattr__(self, "terms", (A, B, C))
        if A + B + C != 0:
            raise NormalizationError("witness does not satisfy the equation")
        if B % 2 or A % 4 != 3:
            raise NormalizationError("need b*y^n even and a*x^n = -1 mod 4")
        if math.gcd(A, B) != 1 or math.gcd(B, C) != 1 or math.gcd(A, C) != 1:
            raise NormalizationError("terms a*x^n, b*y^n, c*z^n must be pairwise coprime")


@dataclass(frozen=True)
class FreyModel:
    curve: CurveQ
    minimal_discriminant: int
    conductor_radical: int


def frey_minimal_model(spec: FreySpec) -> FreyModel:
    """Global minimal model of Y^2 = X(X - ax^n)(X + by^n) when 16 | b."""
    if spec.triple.b % 16:
        raise NormalizationError("the minimal-model pathway needs 16 | b")
    A, B, C = spec.terms
    curve = CurveQ(1, (B - A - 1) // 4, 0, -(A * B) // 16, 0)
    disc = (A * B * C) ** 2 // 2**8
    rad = math.prod(odd_prime_divisors(spec.triple.product * spec.x * spec.y * spec.z))
    return FreyModel(curve, disc, rad)


def frey_fiber_curve(triple: Triple, n: int, p: int, alpha: int, beta: int = 1) -> CurveFp:
    """y^2 = x (x - a alpha^n)(x + b beta^n) over F_p."""
    a, b, _ = triple.reduce(p)
    u = a * pow(alpha, n, p) % p
    v = b * pow(beta, n, p) % p
    if u == 0 or v == 0 or (u + v) % p == 0:
        raise SingularCurveError(f"singular specialization at alpha={alpha}, beta={beta}")
    return CurveFp(p, 0, (v - u) % p, 0, (-u * v) % p, 0)


def normalize(triple: Triple, n: int, witness: Tuple[int, int, int]) -> FreySpec:
    """Permute terms and flip the global sign until the Frey hypotheses hold.

    Permutations are tried in lexicographic order, each with sign +1 then -1;
    the first arrangement with 16 | b, b y^n even and a x^n = -1 mod 4 wins.
    """
    coeffs = (triple.a, triple.b, triple.c)
    if sum(c * w**n for c, w in zip(coeffs, witness)) != 0:
        raise NormalizationError("witness does not satisfy the equation")
    for perm in permutations(range(3)):
        for sign in (1, -1):
            a, b, c = (sign * coeffs[i] for i in perm)
            x, y, z = (witness[i] for i in perm)
            if b % 16:
                continue
            try:
                return FreySpec(Triple(a, b, c), n, x, y, z)
            except NormalizationError:
                continue
    raise NormalizationError("no permutation/sign satisfies the Frey normalization")

