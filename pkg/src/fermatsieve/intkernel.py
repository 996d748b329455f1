"""Exact integer, modular and polynomial arithmetic.

Polynomials are coefficient lists in ascending degree order. ``IntPoly`` is
the immutable carrier used across the package; the lower level ``poly_*``
helpers work on plain lists modulo an integer and are what the hot paths use.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple


class ArithmeticInputError(ValueError):
    """Raised when an arithmetic routine receives an input it cannot handle."""


class NonSimpleRootError(ArithmeticInputError):
    """The derivative vanishes at the root mod l; use component lifting instead."""


# ---------------------------------------------------------------------------
# integers
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the base set is exact below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int) -> List[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def odd_prime_divisors(n: int) -> List[int]:
    """Sorted odd primes dividing ``n`` (n != 0)."""
    if n == 0:
        raise ArithmeticInputError("0 has no finite prime divisor set")
    from sympy import factorint

    return sorted(q for q in factorint(abs(n)) if q != 2)


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ArithmeticInputError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def mod_pow(base: int, exp: int, m: int) -> int:
    """``base**exp mod m`` by left-to-right square and multiply."""
    if m < 1:
        raise ArithmeticInputError("modulus must be positive")
    if exp < 0:
        raise ArithmeticInputError("negative exponent")
    result = 1 % m
    base %= m
    for bit in bin(exp)[2:]:
        result = result * result % m
        if bit == "1":
            result = result * base % m
    return result


def mod_inverse(x: int, m: int) -> int:
    try:
        return pow(x, -1, m)
    except ValueError:
        raise ArithmeticInputError(f"{x} is not invertible mod {m}") from None


def is_nth_power(x: int, n: int, p: int) -> bool:
    """Membership of the unit ``x`` in the subgroup of n-th powers of F_p^*."""
    x %= p
    if x == 0:
        raise ArithmeticInputError("0 is not a unit")
    d = math.gcd(n, p - 1)
    return mod_pow(x, (p - 1) // d, p) == 1


def nth_power_table(n: int, p: int) -> bytearray:
    """Lookup table t with t[x] == 1 iff x is a nonzero n-th power mod p."""
    d = math.gcd(n, p - 1)
    table = bytearray(p)
    for y in range(1, p):
        table[pow(y, d, p)] = 1
    return table


@dataclass(frozen=True)
class ResidueClass:
    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ArithmeticInputError("modulus must be positive")
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def reduce(self, modulus: int) -> "ResidueClass":
        if self.modulus % modulus:
            raise ArithmeticInputError(f"{modulus} does not divide {self.modulus}")
        return ResidueClass(self.value % modulus, modulus)


# ---------------------------------------------------------------------------
# list polynomials mod m
# ---------------------------------------------------------------------------


def poly_trim(a: Sequence[int], m: int | None = None) -> List[int]:
    out = [c % m for c in a] if m else list(a)
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_add(a: Sequence[int], b: Sequence[int], m: int | None = None) -> List[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return poly_trim(out, m)


def poly_sub(a: Sequence[int], b: Sequence[int], m: int | None = None) -> List[int]:
    return poly_add(a, [-c for c in b], m)


def poly_mul(a: Sequence[int], b: Sequence[int], m: int | None = None) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return poly_trim(out, m)


def poly_scale(a: Sequence[int], s: int, m: int | None = None) -> List[int]:
    return poly_trim([s * c for c in a], m)


def poly_eval(a: Sequence, x, m: int | None = None):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
        if m:
            acc %= m
    return acc


def poly_deriv(a: Sequence[int], m: int | None = None) -> List[int]:
    return poly_trim([i * a[i] for i in range(1, len(a))], m)


def poly_divmod(a: Sequence[int], b: Sequence[int], m: int) -> Tuple[List[int], List[int]]:
    """Division with remainder mod m; the leading coefficient of b must be a unit."""
    b = poly_trim(b, m)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = mod_inverse(b[-1], m)
    rem = poly_trim(a, m)
    if len(rem) < len(b):
        return [], rem
    quo = [0] * (len(rem) - len(b) + 1)
    for shift in range(len(rem) - len(b), -1, -1):
        coef = rem[shift + len(b) - 1] * inv % m
        quo[shift] = coef
        if coef:
            for j, bj in enumerate(b):
                rem[shift + j] = (rem[shift + j] - coef * bj) % m
    return poly_trim(quo, m), poly_trim(rem[: len(b) - 1], m)


def poly_mod(a: Sequence[int], b: Sequence[int], m: int) -> List[int]:
    return poly_divmod(a, b, m)[1]


def poly_monic(a: Sequence[int], p: int) -> List[int]:
    a = poly_trim(a, p)
    if not a:
        return a
    return poly_scale(a, mod_inverse(a[-1], p), p)


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Monic gcd over the field F_p."""
    a, b = poly_trim(a, p), poly_trim(b, p)
    while b:
        a, b = b, poly_mod(a, b, p)
    return poly_monic(a, p)


def poly_xgcd(a: Sequence[int], b: Sequence[int], p: int):
    """(g, s, t) with s*a + t*b = g monic, over F_p."""
    r0, r1 = poly_trim(a, p), poly_trim(b, p)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1, p), p)
    inv = mod_inverse(r0[-1], p)
    return poly_scale(r0, inv, p), poly_scale(s0, inv, p), poly_scale(t0, inv, p)


def poly_powmod(base: Sequence[int], exp: int, modulus: Sequence[int], m: int) -> List[int]:
    result = [1]
    base = poly_mod(base, modulus, m)
    while exp:
        if exp & 1:
            result = poly_mod(poly_mul(result, base, m), modulus, m)
        base = poly_mod(poly_mul(base, base, m), modulus, m)
        exp >>= 1
    return result


# ---------------------------------------------------------------------------
# IntPoly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with exact coefficients, ascending order, no trailing zeros."""

    coeffs: Tuple

    def __init__(self, coeffs: Iterable) -> None:
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        out = [1]
        for r in roots:
            out = poly_mul(out, [-r, 1])
        return cls(out)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if not self.coeffs:
            raise ArithmeticInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x, m: int | None = None):
        return poly_eval(self.coeffs, x, m)

    def derivative(self) -> "IntPoly":
        return IntPoly(poly_deriv(self.coeffs))

    def reduce(self, m: int) -> List[int]:
        return poly_trim(self.coeffs, m)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(poly_mul(self.coeffs, other.coeffs))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(poly_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(poly_sub(self.coeffs, other.coeffs))

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"


def _as_coeffs(f) -> List:
    return list(f.coeffs) if isinstance(f, IntPoly) else poly_trim(f)


# ---------------------------------------------------------------------------
# Hensel lifting
# ---------------------------------------------------------------------------


def hensel_lift_root(f, r: int, l: int, k: int) -> int:
    """Lift a simple root ``r`` of ``f`` mod ``l`` to the unique root mod ``l**k``."""
    coeffs = _as_coeffs(f)
    if k < 1:
        raise ArithmeticInputError("target exponent must be >= 1")
    if poly_eval(coeffs, r, l) != 0:
        raise ArithmeticInputError(f"{r} is not a root mod {l}")
    deriv = poly_deriv(coeffs)
    if poly_eval(deriv, r, l) == 0:
        raise NonSimpleRootError(f"root {r} mod {l} is not simple")
    root, prec = r % l, 1
    while prec < k:
        prec = min(2 * prec, k)
        modulus = l**prec
        fr = poly_eval(coeffs, root, modulus)
        dr = poly_eval(deriv, root, modulus)
        root = (root - fr * mod_inverse(dr, modulus)) % modulus
    return root % l**k


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------


def _content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def _pseudo_rem(a: List[int], b: List[int]) -> List[int]:
    """lc(b)^(deg a - deg b + 1) * a mod b, exact over Z."""
    rem = list(a)
    lb = b[-1]
    db = len(b) - 1
    e = len(a) - len(b) + 1
    while rem and len(rem) - 1 >= db:
        coef = rem[-1]
        shift = len(rem) - 1 - db
        rem = [c * lb for c in rem]
        for j, bj in enumerate(b):
            rem[shift + j] -= coef * bj
        rem = poly_trim(rem)
        e -= 1
    return [c * lb**e for c in rem]


def resultant(f, g) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f.

    Integer coefficients; computed by the subresultant remainder sequence,
    which keeps intermediate coefficients bounded by the final size.
    """
    a, b = _as_coeffs(f), _as_coeffs(g)
    if not a or not b:
        raise ArithmeticInputError("resultant of the zero polynomial")
    if any(isinstance(c, Fraction) and c.denominator != 1 for c in a + b):
        raise ArithmeticInputError("resultant needs integer coefficients")
    a = [int(c) for c in a]
    b = [int(c) for c in b]
    da, db = len(a) - 1, len(b) - 1
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    ca, cb = _content(a), _content(b)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    t = ca**db * cb**da
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            s = -s
    g_, h = 1, 1
    while True:
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _pseudo_rem(a, b)
        if not r:
            return 0
        a = b
        denom = g_ * h**delta
        b = [c // denom for c in r]
        g_ = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g_
        else:
            h = g_**delta // h ** (delta - 1)
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            break
    if da == 1:
        h = b[-1]
    else:
        h = b[-1] ** da // h ** (da - 1)
    return s * t * h


def is_squarefree_over_q(f) -> bool:
    a = _as_coeffs(f)
    if len(a) <= 2:
        return bool(a)
    return resultant(a, poly_deriv(a)) != 0


# ---------------------------------------------------------------------------
# factorization over F_l
# ---------------------------------------------------------------------------


def _squarefree_decomposition(f: List[int], p: int) -> List[Tuple[List[int], int]]:
    """Monic squarefree parts with multiplicities over F_p (handles p-th powers)."""
    out: List[Tuple[List[int], int]] = []
    f = poly_monic(f, p)

    def rec(g: List[int], mult: int) -> None:
        if len(g) <= 1:
            return
        d = poly_deriv(g, p)
        if not d:
            # g is a polynomial in x^p
            root = [g[i * p] for i in range((len(g) - 1) // p + 1)]
            rec(root, mult * p)
            return
        c = poly_gcd(g, d, p)
        w = poly_divmod(g, c, p)[0]
        i = 1
        while len(w) > 1:
            y = poly_gcd(w, c, p)
            z = poly_divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((z, i * mult))
            i += 1
            w = y
            c = poly_divmod(c, y, p)[0]
        if len(c) > 1:
            root = [c[i * p] for i in range((len(c) - 1) // p + 1)]
            rec(root, mult * p)

    rec(f, 1)
    return out


def _distinct_degree(f: List[int], p: int) -> List[Tuple[List[int], int]]:
    out = []
    h = [0, 1]
    d = 0
    g = list(f)
    while 2 * (d + 1) <= len(g) - 1:
        d += 1
        h = poly_powmod(h, p, g, p)
        common = poly_gcd(g, poly_sub(h, [0, 1], p), p)
        if len(common) > 1:
            out.append((common, d))
            g = poly_divmod(g, common, p)[0]
            h = poly_mod(h, g, p)
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def _equal_degree(f: List[int], d: int, p: int, rng: random.Random) -> List[List[int]]:
    if len(f) - 1 == d:
        return [f]
    n = len(f) - 1
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = poly_trim(a, p)
        if len(a) <= 1:
            continue
        if p == 2:
            acc, t = list(a), list(a)
            for _ in range(d - 1):
                t = poly_mod(poly_mul(t, t, p), f, p)
                acc = poly_add(acc, t, p)
            cand = acc
        else:
            cand = poly_sub(poly_powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = poly_gcd(f, cand, p)
        if 1 < len(g) < len(f):
            rest = poly_divmod(f, g, p)[0]
            return _equal_degree(g, d, p, rng) + _equal_degree(rest, d, p, rng)


def factor_mod_l(f, l: int) -> List[Tuple[IntPoly, int]]:
    """Monic irreducible factors of ``f`` over F_l with multiplicities.

    Factors are sorted by (degree, coefficients) so output is deterministic.
    """
    coeffs = poly_trim(_as_coeffs(f), l)
    if not coeffs:
        raise ArithmeticInputError(f"polynomial vanishes mod {l}")
    if len(coeffs) == 1:
        return []
    rng = random.Random(0x5EED ^ l)
    result = []
    for part, mult in _squarefree_decomposition(coeffs, l):
        for block, d in _distinct_degree(part, l):
            for irr in _equal_degree(block, d, l, rng):
                result.append((irr, mult))
    merged: dict = {}
    for irr, mult in result:
        merged[tuple(irr)] = merged.get(tuple(irr), 0) + mult
    ordered = sorted(merged.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return [(IntPoly(k), v) for k, v in ordered]


def roots_mod(f, m: int) -> List[int]:
    """All x in [0, m) with f(x) = 0 mod m, by exhaustive evaluation."""
    coeffs = _as_coeffs(f)
    return [x for x in range(m) if poly_eval(coeffs, x, m) == 0]


def frac_mod(q: Fraction, m: int) -> int:
    q = Fraction(q)
    return q.numerator * mod_inverse(q.denominator, m) % m
