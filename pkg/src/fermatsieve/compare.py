"""Comparing the mod-3 trace images for n = 3 and n = 9, and what that says about mod-3 methods."""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .elliptic import CurveQ, reduce_and_ap
from .frey import Triple
from .intkernel import ArithmeticInputError, primes_up_to
from .kraus import tbar

BOUND0 = 106**2
BOUND1 = 218**2


def jacobian_curve(triple: Triple) -> CurveQ:
    """Y^2 = X^3 - 2^4 3^3 (abc)^2."""
    return CurveQ(0, 0, 0, 0, -(2**4) * 3**3 * triple.product**2)


def parity_check(triple: Triple, p: int) -> bool:
    """(a_p(J) even) agrees with (0 in the mod-3 image of T_(3,p))."""
    if p % 3 != 1:
        raise ArithmeticInputError(f"parity check needs p = 1 mod 3 (p={p})")
    if (6 * triple.product) % p == 0:
        raise ArithmeticInputError(f"{p} divides 6abc")
    even = reduce_and_ap(jacobian_curve(triple), p) % 2 == 0
    return even == (0 in tbar(triple, 3, p, method="isogeny"))


def parity_agreement(triple: Triple, bound: int = 1000) -> Tuple[int, int, List[int]]:
    """(agreements, admissible primes, disagreeing primes) up to ``bound``."""
    primes = [p for p in primes_up_to(bound) if p % 3 == 1 and (6 * triple.product) % p]
    bad = [p for p in primes if not parity_check(triple, p)]
    return len(primes) - len(bad), len(primes), bad


@dataclass(frozen=True)
class Table3Row:
    p0: Tuple[int, ...]
    p1: Tuple[int, ...]
    flagged: Tuple[int, ...]
    bound0: int
    bound1: int
    method: str

    def to_dict(self) -> dict:
        return {
            "p0": list(self.p0),
            "p1": list(self.p1),
            "flagged": list(self.flagged),
            "bound0": self.bound0,
            "bound1": self.bound1,
            "method": self.method,
        }


def _admissible(triple: Triple, hi: int, lo: int = 0) -> List[int]:
    return [p for p in primes_up_to(hi) if p > lo and p % 3 == 1 and (3 * triple.N0) % p]


def _classify(args) -> Tuple[int, bool, bool]:
    """(p, in p0, in p1) for one prime."""
    abc, p, bound0, method = args
    triple = Triple(*abc)
    t9 = tbar(triple, 9, p, method=method)
    in_p1 = 1 not in t9
    in_p0 = False
    if p <= bound0 and 0 not in t9:
        in_p0 = 0 in tbar(triple, 3, p, method=method)
    return p, in_p0, in_p1


def _run(fn, jobs, workers: int):
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=32))


def table3_row(
    triple: Triple, bound0: int = BOUND0, bound1: int = BOUND1, method: str = "isogeny", workers: int = 1
) -> Table3Row:
    """Primes p = 1 mod 3, p not dividing 3 N0, where the two mod-3 images differ.

    p0: 0 lies in the n = 3 image but not the n = 9 image (p <= bound0).
    p1: +-1 is missing from the n = 9 image (p <= bound1).
    flagged: primes p = 1 mod 3 dividing N0, where the sets are undefined.
    """
    abc = (triple.a, triple.b, triple.c)
    hi = max(bound0, bound1)
    jobs = [(abc, p, bound0, method) for p in _admissible(triple, hi)]
    p0, p1 = [], []
    for p, a, b in sorted(_run(_classify, jobs, workers)):
        if a:
            p0.append(p)
        if b and p <= bound1:
            p1.append(p)
    flagged = tuple(p for p in triple.odd_primes() if p % 3 == 1 and p <= hi)
    return Table3Row(tuple(p0), tuple(p1), flagged, bound0, bound1, method)


def _differs(args) -> Optional[int]:
    abc, p, method = args
    triple = Triple(*abc)
    return p if tbar(triple, 3, p, method=method) != tbar(triple, 9, p, method=method) else None


def bound_window_scan(triple: Triple, lo: int, hi: int, method: str = "isogeny", workers: int = 1) -> List[int]:
    """Primes in (lo, hi] (p = 1 mod 3, p not dividing 3 N0) where the two images differ."""
    if lo >= hi:
        raise ArithmeticInputError("empty window")
    abc = (triple.a, triple.b, triple.c)
    jobs = [(abc, p, method) for p in _admissible(triple, hi, lo)]
    return sorted(p for p in _run(_differs, jobs, workers) if p is not None)


def exceptional_consistency(triple: Triple, f, lam, p_limit: int) -> dict:
    """Check a_p(f) mod lam against the n = 9 image at every p = 1 mod 3 up to p_limit.

    Primes p = 2 mod 3 pass trivially because that image is all of F_3.
    """
    from .newforms import eigen_mod_lambda

    primes = _admissible(triple, p_limit)
    if not primes:
        warnings.warn(f"no admissible prime up to {p_limit}: the check is vacuous", stacklevel=2)
    failures = []
    for p in primes:
        r = eigen_mod_lambda(f, p, lam)
        if r not in tbar(triple, 9, p):
            failures.append({"p": p, "a_p mod lambda": r})
    return {
        "class": f.name,
        "prime": lam.label,
        "p_limit": p_limit,
        "checked": len(primes),
        "consistent": not failures,
        "failures": failures,
    }


def surviving_pairs(triple: Triple, classes: Sequence, p_max: int, p0: Optional[int]):
    """(class, lambda) pairs that no mod-3 test removes."""
    from .newforms import primes_above
    from .sieve import mod3_survivors

    n_p0, pairs = mod3_survivors(triple, p0, classes, p_max)
    by_name = {f.name: f for f in n_p0}
    out = []
    for pr in pairs:
        if pr.eliminated_by is None:
            f = by_name[pr.cls]
            lam = next(l for l in primes_above(f, 3) if l.label == pr.prime)
            out.append((f, lam))
    return out
