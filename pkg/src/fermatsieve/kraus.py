"""Finite sets of admissible Frobenius traces and the gcd sieve over them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Tuple

import numpy as np

from .elliptic import count_points, legendre_family_traces
from .frey import Triple, frey_fiber_curve
from .intkernel import ArithmeticInputError, is_nth_power, is_prime, primes_up_to


class PrimeDividesCoefficientsError(ArithmeticInputError):
    pass


@dataclass(frozen=True)
class TraceSet:
    entries: Tuple[int, ...]
    p: int
    provenance: str = "generic"

    def __init__(self, entries: Iterable[int], p: int, provenance: str = "generic") -> None:
        values = set(entries)
        values |= {-t for t in values}
        object.__setattr__(self, "entries", tuple(sorted(values)))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "provenance", provenance)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, t) -> bool:
        return t in self.entries

    def mod3(self) -> "TraceSetMod3":
        return TraceSetMod3(t % 3 for t in self.entries)


@dataclass(frozen=True)
class TraceSetMod3:
    residues: FrozenSet[int]

    def __init__(self, residues: Iterable[int]) -> None:
        vals = {r % 3 for r in residues}
        vals |= {-r % 3 for r in vals}
        object.__setattr__(self, "residues", frozenset(vals))

    def __contains__(self, r) -> bool:
        return r % 3 in self.residues

    def __le__(self, other: "TraceSetMod3") -> bool:
        return self.residues <= other.residues

    def sorted(self):
        return sorted(self.residues)


# ---------------------------------------------------------------------------
# generic sets
# ---------------------------------------------------------------------------


def set_Ap(p: int) -> TraceSet:
    if p == 2:
        return TraceSet({-1, 1}, 2)
    bound = math.isqrt(4 * p)  # |a| <= 2 sqrt(p)  <=>  a^2 <= 4p
    vals = {a for a in range(-bound, bound + 1) if (a - p - 1) % 4 == 0}
    return TraceSet(vals, p)


def set_Tp(p: int) -> TraceSet:
    return TraceSet(set(set_Ap(p)) | {p + 1}, p)


# ---------------------------------------------------------------------------
# Kraus sets
# ---------------------------------------------------------------------------


def _check_unit_coefficients(triple: Triple, p: int) -> Tuple[int, int, int]:
    a, b, c = triple.reduce(p)
    if 0 in (a, b, c):
        raise PrimeDividesCoefficientsError(f"{p} divides abc")
    return a, b, c


def second_case(triple: Triple, n: int, p: int) -> bool:
    """True iff a/b, b/c or c/a is an n-th power in F_p^*."""
    a, b, c = _check_unit_coefficients(triple, p)
    ratios = (a * pow(b, -1, p), b * pow(c, -1, p), c * pow(a, -1, p))
    return any(is_nth_power(r, n, p) for r in ratios)


@lru_cache(maxsize=256)
def _nth_powers(n: int, p: int) -> np.ndarray:
    d = math.gcd(n, p - 1)
    mask = np.zeros(p, dtype=bool)
    y = np.arange(1, p, dtype=np.int64)
    acc = np.ones_like(y)
    for bit in bin(d)[2:]:
        acc = acc * acc % p
        if bit == "1":
            acc = acc * y % p
    mask[acc] = True
    return mask


def _admissible_powers(triple: Triple, n: int, p: int) -> np.ndarray:
    """Sorted u in (F_p^*)^n with (a/c) u + b/c also a nonzero n-th power."""
    a, b, c = _check_unit_coefficients(triple, p)
    powers = _nth_powers(n, p)
    u = np.nonzero(powers)[0].astype(np.int64)
    ci = pow(c, -1, p)
    w = (a * ci % p * u + b * ci) % p
    return u[powers[w]]


def set_Sprime(triple: Triple, n: int, p: int) -> FrozenSet[int]:
    """{alpha in F_p^* : (a/c) alpha^n + b/c in (F_p^*)^n}."""
    _check_unit_coefficients(triple, p)
    admissible = np.zeros(p, dtype=bool)
    admissible[_admissible_powers(triple, n, p)] = True
    return frozenset(al for al in range(1, p) if admissible[pow(al, n, p)])


def _family_traces(triple: Triple, n: int, p: int) -> np.ndarray:
    """Traces of y^2 = x(x - a u)(x + b) for each admissible u (twist classes)."""
    a, b, _ = triple.reduce(p)
    u = _admissible_powers(triple, n, p)
    if len(u) == 0:
        return np.zeros(0, dtype=np.int64)
    return legendre_family_traces(a * u % p, (-b) % p, p)


def _check_Tnp_domain(triple: Triple, n: int, p: int) -> None:
    if not is_prime(p) or p == 2 or n % p == 0:
        raise ArithmeticInputError(f"T_(n,p) needs an odd prime p not dividing n (p={p}, n={n})")
    _check_unit_coefficients(triple, p)


def set_Anp(triple: Triple, n: int, p: int) -> TraceSet:
    _check_Tnp_domain(triple, n, p)
    traces = _family_traces(triple, n, p)
    return TraceSet((int(t) for t in np.unique(traces)), p, f"kraus({n})")


def set_Tnp(triple: Triple, n: int, p: int) -> TraceSet:
    """A_(n,p), plus +-(p+1) when the second-case condition holds."""
    A = set_Anp(triple, n, p)
    if second_case(triple, n, p):
        return TraceSet(set(A) | {p + 1}, p, f"kraus({n})+second-case")
    return A


def fiber_traces_direct(triple: Triple, n: int, p: int) -> TraceSet:
    """A_(n,p) by counting every fiber curve over S'_(n,p) one at a time (slow oracle path)."""
    vals = set()
    for alpha in sorted(set_Sprime(triple, n, p)):
        vals.add(p + 1 - count_points(frey_fiber_curve(triple, n, p, alpha, 1)))
    return TraceSet(vals, p, f"kraus({n})")


# ---------------------------------------------------------------------------
# mod 3 images
# ---------------------------------------------------------------------------


def tbar(triple: Triple, n: int, p: int, method: str = "traces") -> TraceSetMod3:
    """Image of T_(n,p) in F_3.

    ``method="traces"`` reduces exact traces; ``method="isogeny"`` decides each
    trace class mod 3 from the existence of a rational 3-isogeny (O(p) per prime).
    """
    if method == "traces":
        return set_Tnp(triple, n, p).mod3()
    if method == "isogeny":
        return _tbar_isogeny(triple, n, p)
    raise ValueError(f"unknown method {method!r}")


def _vec_inverse(x: np.ndarray, p: int) -> np.ndarray:
    result = np.ones_like(x)
    base = x % p
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


@lru_cache(maxsize=64)
def _x0_3_j_image(p: int) -> np.ndarray:
    """Mask of j in F_p admitting a curve with a rational 3-isogeny: j = (h+27)(h+3)^3/h."""
    h = np.arange(1, p, dtype=np.int64)
    num = (h + 27) % p * (pow_vec(h + 3, 3, p)) % p
    j = num * _vec_inverse(h, p) % p
    mask = np.zeros(p, dtype=bool)
    mask[j] = True
    return mask


def pow_vec(x: np.ndarray, e: int, p: int) -> np.ndarray:
    out = np.ones_like(x)
    for _ in range(e):
        out = out * (x % p) % p
    return out


def _tbar_isogeny(triple: Triple, n: int, p: int) -> TraceSetMod3:
    _check_Tnp_domain(triple, n, p)
    if p <= 3:
        return set_Tnp(triple, n, p).mod3()
    a, b, _ = triple.reduce(p)
    u = _admissible_powers(triple, n, p)
    residues = set()
    q = (p + 1) % 3
    if second_case(triple, n, p):
        residues |= {q, -q % 3}
    if len(u):
        e1 = a * u % p
        e2 = (-b) % p
        s = (e1 * e1 - e1 * e2 + e2 * e2) % p
        den = e1 * e2 % p * ((e1 - e2) % p) % p
        j = 256 * pow_vec(s, 3, p) % p * _vec_inverse(den * den % p, p) % p
        special = (j == 0) | (j == 1728 % p)
        iso = _x0_3_j_image(p)[j]
        generic = ~special
        if np.any(generic & iso):
            residues |= {q, -q % 3}
        if np.any(generic & ~iso):
            residues |= _complement_classes(q)
        if np.any(special):
            traces = legendre_family_traces(e1[special], e2, p)
            residues |= {int(t) % 3 for t in traces}
    return TraceSetMod3(residues)


def _complement_classes(q: int):
    # traces without a 3-isogeny avoid +-(p+1) mod 3
    return {r for r in range(3) if r != q and r != -q % 3}


# ---------------------------------------------------------------------------
# gcd sieve over newform classes
# ---------------------------------------------------------------------------


class _AllPrimes:
    """Sentinel: the gcd was zero, so no prime is excluded."""

    def __repr__(self) -> str:
        return "ALL_PRIMES"

    def __contains__(self, item) -> bool:
        return True


ALL_PRIMES = _AllPrimes()


def L_fp(f, p: int) -> int:
    """p * prod over a in T_p of Norm(a - a_p(f))."""
    from .newforms import eigen_norm

    if f.level % p == 0:
        raise ArithmeticInputError(f"{p} divides the level {f.level}")
    out = p
    for a in set_Tp(p):
        out *= eigen_norm(f, p, a)
    return out


def gcd_primes(values: Iterable[int]):
    from .intkernel import odd_prime_divisors

    g = 0
    for v in values:
        g = math.gcd(g, v)
    if g == 0:
        return ALL_PRIMES
    return frozenset(odd_prime_divisors(g))


def survivor_primes(f, p_max: int, exclude: Iterable[int] = (), skip_p_equal_l: bool = False):
    """Odd primes dividing gcd{L_(f,p) : p <= p_max prime, p not dividing the level}.

    ``exclude`` drops primes from the gcd range outright.  With
    ``skip_p_equal_l`` a prime l survives when it divides every L_(f,p)
    with p != l, so the congruence at p = l is never used against l.
    Returns ``ALL_PRIMES`` when every L value in range is zero.
    """
    skip = set(exclude)
    primes = [p for p in primes_up_to(p_max) if f.level % p and p not in skip]
    values = {p: L_fp(f, p) for p in primes}
    base = gcd_primes(values.values())
    if not skip_p_equal_l or base is ALL_PRIMES:
        return base
    extra = set()
    for q in primes:
        if q == 2 or q in base:
            continue
        rest = gcd_primes(v for p, v in values.items() if p != q)
        if q in rest:
            extra.add(q)
    return frozenset(base | extra)
