"""p-adic solvability of a x^n + b y^n + c z^n = 0 by lifting primitive points mod p^k.

A primitive point is scaled so that its first unit coordinate is 1, so the
strata are (1, y, z), (p*, 1, z) and (p*, p*, 1), with starred entries
divisible by p.  Solutions mod p^(k+1) reduce to solutions mod p^k, which
lets the search refine the surviving residues one digit at a time.

Before searching, each coefficient loses the largest factor p^(n m) it
contains: x -> p^m x identifies the two curves over Q, so their Q_p points
correspond, and the reduced model exposes an obstruction at a smaller k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .frey import Triple
from .intkernel import ArithmeticInputError, is_prime, primes_up_to, valuation

EMPTY, SOLVABLE, UNKNOWN = "Empty", "Solvable", "Unknown"

# numpy int64 products stay exact while the modulus is below 2^31
_VEC_LIMIT = 2**31


@dataclass(frozen=True)
class LocalVerdict:
    outcome: str
    p: int
    k: int
    point: Optional[Tuple[int, int, int]] = None
    witness: Optional[dict] = None
    model: Optional[Tuple[int, int, int]] = None

    @property
    def is_empty(self) -> bool:
        return self.outcome == EMPTY

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "p": self.p,
            "k": self.k,
            "point": list(self.point) if self.point else None,
            "witness": self.witness,
            "model": list(self.model) if self.model else None,
        }


def reduced_model(triple: Triple, n: int, p: int) -> Triple:
    """Divide each coefficient by p^(n m) for the largest such power it contains."""
    out = []
    for c in (triple.a, triple.b, triple.c):
        out.append(c // p ** (n * (valuation(c, p) // n)))
    return Triple(*out)


def default_k_max(triple: Triple, n: int, p: int) -> int:
    return min(2 * valuation(n * triple.a * triple.b * triple.c, p) + 3, 6)


def _form(triple: Triple, n: int, pt, m: int) -> int:
    x, y, z = pt
    return (triple.a * pow(x, n, m) + triple.b * pow(y, n, m) + triple.c * pow(z, n, m)) % m


def smoothness_witness(triple: Triple, n: int, p: int, k: int, pt) -> Optional[dict]:
    """A coordinate whose partial derivative has valuation v with k > 2v and F = 0 mod p^k."""
    m = p**k
    if _form(triple, n, pt, m):
        return None
    best = None
    for idx, (coef, x) in enumerate(zip((triple.a, triple.b, triple.c), pt)):
        d = n * coef * pow(x, n - 1) if n > 1 else coef
        if d == 0:
            continue
        v = valuation(d, p)
        if k > 2 * v and (best is None or v < best["valuation"]):
            best = {"coordinate": "xyz"[idx], "valuation": v, "modulus_exponent": k}
    return best


def _powers(x: np.ndarray, n: int, m: int) -> np.ndarray:
    out = np.ones_like(x)
    base = x % m
    e = n
    while e:
        if e & 1:
            out = out * base % m
        base = base * base % m
        e >>= 1
    return out


def _stratum_roots(triple: Triple, n: int, p: int, k: int, stratum: int, max_points: int) -> List[Tuple[int, ...]]:
    """Solutions mod p^k in one stratum, refined digit by digit.

    Returns the free coordinates (two residues for stratum 0, and so on) of
    every point mod p^k, or stops early once ``max_points`` are collected.
    """
    coeffs = (triple.a, triple.b, triple.c)
    free = [i for i in range(3) if i != stratum]
    # stratum s: coordinate s is 1; coordinates before s are divisible by p
    divisible = [i for i in free if i < stratum]
    cands = [()]
    # digits are added one p-adic place at a time for both free coordinates
    for j in range(1, k + 1):
        m = p**j
        step = p ** (j - 1)
        digits = range(p)
        vals = []
        for base in cands:
            b0 = base[0] if base else 0
            b1 = base[1] if base else 0
            for d0 in digits:
                v0 = b0 + d0 * step
                if j == 1 and free[0] in divisible and d0:
                    continue
                for d1 in digits:
                    v1 = b1 + d1 * step
                    if j == 1 and free[1] in divisible and d1:
                        continue
                    vals.append((v0, v1))
        if not vals:
            return []
        arr = np.array(vals, dtype=object if m >= _VEC_LIMIT else np.int64)
        pt = [None, None, None]
        pt[stratum] = 1
        if m < _VEC_LIMIT:
            pt[free[0]] = arr[:, 0]
            pt[free[1]] = arr[:, 1]
            total = np.zeros(len(arr), dtype=np.int64)
            for i in range(3):
                term = _powers(pt[i], n, m) if i != stratum else np.full(len(arr), 1, dtype=np.int64)
                total = (total + (coeffs[i] % m) * term) % m
            keep = np.nonzero(total == 0)[0]
            new = [(int(arr[i, 0]), int(arr[i, 1])) for i in keep]
        else:
            new = []
            for v0, v1 in vals:
                q = [0, 0, 0]
                q[stratum], q[free[0]], q[free[1]] = 1, v0, v1
                if _form(triple, n, q, m) == 0:
                    new.append((v0, v1))
        cands = new
        if not cands:
            return []
    return cands[:max_points] if max_points else cands


def _assemble(stratum: int, free_vals) -> Tuple[int, int, int]:
    pt = [0, 0, 0]
    free = [i for i in range(3) if i != stratum]
    pt[stratum] = 1
    pt[free[0]], pt[free[1]] = free_vals
    return tuple(pt)


def primitive_points(triple: Triple, n: int, p: int, k: int) -> List[Tuple[int, int, int]]:
    """All normalized primitive solutions mod p^k (the Empty certificate is an empty list)."""
    out = []
    for s in range(3):
        out.extend(_assemble(s, v) for v in _stratum_roots(triple, n, p, k, s, 0))
    return sorted(out)


def primitive_points_bruteforce(triple: Triple, n: int, p: int, k: int) -> List[Tuple[int, int, int]]:
    """Same set by scanning every normalized triple (oracle for small p^k)."""
    m = p**k
    out = []
    for s in range(3):
        free = [i for i in range(3) if i != s]
        for u in range(m):
            for w in range(m):
                pt = [0, 0, 0]
                pt[s], pt[free[0]], pt[free[1]] = 1, u, w
                if all(pt[i] % p == 0 for i in range(s)) and _form(triple, n, pt, m) == 0:
                    out.append(tuple(pt))
    return sorted(out)


def local_solvable(
    triple: Triple, n: int, p: int, k_max: Optional[int] = None, reduce_coefficients: bool = True
) -> LocalVerdict:
    """Empty(k), Solvable(point, witness) or Unknown(k_max) for C_n(Q_p).

    The point and the Empty certificate refer to ``verdict.model``.
    """
    if not is_prime(p) or n < 1:
        raise ArithmeticInputError(f"need a prime p and n >= 1 (p={p}, n={n})")
    if reduce_coefficients:
        triple = reduced_model(triple, n, p)
    model = (triple.a, triple.b, triple.c)
    if k_max is None:
        k_max = default_k_max(triple, n, p)
    if k_max < 1:
        raise ArithmeticInputError("k_max must be positive")
    for k in range(1, k_max + 1):
        found_any = False
        for s in range(3):
            for free_vals in _stratum_roots(triple, n, p, k, s, 0):
                found_any = True
                pt = _assemble(s, free_vals)
                w = smoothness_witness(triple, n, p, k, pt)
                if w is not None:
                    return LocalVerdict(SOLVABLE, p, k, pt, w, model)
        if not found_any:
            return LocalVerdict(EMPTY, p, k, model=model)
    return LocalVerdict(UNKNOWN, p, k_max, model=model)


def _has_smooth_fp_point(triple: Triple, n: int, p: int) -> Optional[Tuple[int, int, int]]:
    for s in range(3):
        for free_vals in _stratum_roots(triple, n, p, 1, s, 1):
            pt = _assemble(s, free_vals)
            if smoothness_witness(triple, n, p, 1, pt):
                return pt
    return None


def local_points_everywhere_n9(triple: Triple, prime_bound: int = 100, k_max: Optional[int] = None) -> List[LocalVerdict]:
    """Local verdicts for n = 9 at every prime up to ``prime_bound``.

    Primes dividing 3abc get the full lifting search.  At the other primes
    the reduction is smooth, so any F_p point lifts; the verdict records
    that argument in its witness.
    """
    n = 9
    bad = set(triple.odd_primes()) | {2, 3}
    out = []
    for p in primes_up_to(prime_bound):
        if p in bad:
            out.append(local_solvable(triple, n, p, k_max))
            continue
        pt = _has_smooth_fp_point(triple, n, p)
        if pt is None:
            out.append(local_solvable(triple, n, p, k_max))
        else:
            witness = {"argument": "good reduction, smooth F_p point", "valuation": 0, "modulus_exponent": 1}
            out.append(LocalVerdict(SOLVABLE, p, 1, pt, witness, (triple.a, triple.b, triple.c)))
    return out

