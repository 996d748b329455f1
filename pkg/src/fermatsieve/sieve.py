"""Elimination pipelines for large prime exponents and for n = 9, and the report they feed."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .frey import Triple
from .intkernel import ArithmeticInputError, frac_mod, poly_mod, poly_sub, poly_trim, primes_up_to
from .kraus import (
    ALL_PRIMES,
    set_Tnp,
    set_Tp,
    second_case,
    survivor_primes,
    tbar,
)
from .newforms import (
    NewformClass,
    PrimeAboveL,
    eigen_generates_field,
    eigen_mod_lambda,
    eigen_norm,
    is_eisenstein_mod_lambda,
    primes_above,
)

SCHEMA_VERSION = "1"


@dataclass
class SieveConfig:
    p_max: int = 3
    p0: Optional[int] = None
    irr_search_limit: int = 200
    local_search_limit: int = 50
    kraus_search_limit: int = 200
    mod9_search_limit: int = 100
    uniqueness_bound: int = 100
    eisenstein_bound: int = 100
    c3_height: int = 60
    local_k_max: Optional[int] = None
    skip_p_equal_l: bool = False


# ---------------------------------------------------------------------------
# primes l >= 5
# ---------------------------------------------------------------------------


def _ensure_level(triple: Triple, classes: Sequence[NewformClass]) -> None:
    for f in classes:
        if f.level != triple.N0:
            raise ArithmeticInputError(f"class {f.name} has level {f.level}, expected {triple.N0}")


def eliminate_big_primes(triple: Triple, p_max: int, classes: Sequence[NewformClass], skip_p_equal_l: bool = False):
    """Per-class survivor sets L_(f,p_max) and their union."""
    _ensure_level(triple, classes)
    per_class = {}
    union = set()
    unbounded = False
    for f in classes:
        s = survivor_primes(f, p_max, skip_p_equal_l=skip_p_equal_l)
        per_class[f.name] = s
        if s is ALL_PRIMES:
            unbounded = True
        else:
            union |= s
    return per_class, (ALL_PRIMES if unbounded else frozenset(union))


def kraus_eliminate(triple: Triple, l: int, p: int, f: NewformClass) -> bool:
    """l does not divide the product of Norm(a - a_p(f)) over a in T_(l,p)."""
    if p % l != 1:
        raise ArithmeticInputError(f"Kraus elimination needs p = 1 mod l (l={l}, p={p})")
    if (l * triple.N0) % p == 0:
        raise ArithmeticInputError(f"{p} divides l*N0")
    prod = 1
    for a in set_Tnp(triple, l, p):
        prod *= eigen_norm(f, p, a)
    return prod % l != 0


def find_kraus_witness(triple: Triple, l: int, f: NewformClass, limit: int) -> Optional[int]:
    for p in primes_up_to(limit):
        if p % l == 1 and (l * triple.product) % p and f.has_eigenvalue(p):
            if kraus_eliminate(triple, l, p, f):
                return p
    return None


# ---------------------------------------------------------------------------
# n = 9
# ---------------------------------------------------------------------------


def strong_irreducibility_witness(triple: Triple, search_limit: int = 200) -> Optional[int]:
    """Smallest p = 1 mod 9, p not dividing abc, outside the second case, with 3 | a_p at every fiber.

    Every fiber y^2 = x(x - a alpha^9)(x + b) over alpha in S'_(9,p) must
    have trace divisible by 3; None when no prime up to the limit works.
    """
    from .elliptic import legendre_family_traces
    from .kraus import _admissible_powers

    for p in primes_up_to(search_limit):
        if p % 9 != 1 or triple.product % p == 0:
            continue
        if second_case(triple, 9, p):
            continue
        a, b, _ = triple.reduce(p)
        u = _admissible_powers(triple, 9, p)
        traces = legendre_family_traces(a * u % p, (-b) % p, p) if len(u) else []
        if all(int(t) % 3 == 0 for t in traces):
            return p
    return None


def _residue_in(f: NewformClass, p: int, lam: PrimeAboveL, r: int) -> bool:
    """a_p(f) = r mod lam, valid for any inertia degree via the local factor."""
    h = f.eigenvalue(p)
    coeffs = [frac_mod(c, lam.l) for c in h]
    coeffs = poly_sub(coeffs, [r], lam.l)
    coeffs = poly_trim(coeffs, lam.l)
    if not coeffs:
        return True
    phi = list(lam.local_factor.coeffs)
    return not poly_trim(poly_mod(coeffs, phi, lam.l), lam.l)


@dataclass
class PairOutcome:
    cls: str
    degree: int
    trace_a2: str
    prime: str
    inertia_degree: int
    ramified: bool
    eliminated_by: Optional[dict] = None


def mod3_candidates(triple: Triple, classes: Sequence[NewformClass], p_max: int, skip_p_equal_l: bool = False):
    """Classes whose survivor set contains 3."""
    out = []
    for f in classes:
        s = survivor_primes(f, p_max, skip_p_equal_l=skip_p_equal_l)
        if 3 in s:
            out.append(f)
    return out


def _mod3_primes(triple: Triple, p0: Optional[int]) -> List[int]:
    if not p0:
        return []
    return [p for p in primes_up_to(p0) if p % 3 == 1 and (3 * triple.product) % p]


def mod3_norm_witness(triple: Triple, f: NewformClass, p0: Optional[int]) -> Optional[int]:
    """First p in range with 3 not dividing the product of Norm(a - a_p(f)) over T_(9,p)."""
    for p in _mod3_primes(triple, p0):
        prod = 1
        for a in set_Tnp(triple, 9, p):
            prod *= eigen_norm(f, p, a)
        if prod % 3:
            return p
    return None


def mod3_residue_witness(triple: Triple, f: NewformClass, lam: PrimeAboveL, p0: Optional[int]) -> Optional[int]:
    """First p in range with a_p(f) mod lam outside the mod-3 image of T_(9,p)."""
    for p in _mod3_primes(triple, p0):
        if eigen_mod_lambda(f, p, lam) not in tbar(triple, 9, p):
            return p
    return None


def mod3_survivors(triple: Triple, p0: Optional[int], classes: Sequence[NewformClass], p_max: int, cfg: Optional[SieveConfig] = None):
    """N_(p0) refined to (class, lambda) pairs, with a record of how each pair was removed.

    Returns (classes in N_(p0), list of PairOutcome for every degree-one
    prime above 3 of those classes).  Pairs left with ``eliminated_by`` None
    survive mod 3.
    """
    cfg = cfg or SieveConfig(p_max=p_max, p0=p0)
    _ensure_level(triple, classes)
    candidates = mod3_candidates(triple, classes, p_max, cfg.skip_p_equal_l)
    n_p0 = [f for f in candidates if mod3_norm_witness(triple, f, p0) is None]
    pairs = []
    for f in n_p0:
        for lam in primes_above(f, 3):
            if lam.inertia_degree != 1:
                continue
            out = PairOutcome(f.name, f.degree, str(f.trace(2)), lam.label, lam.inertia_degree, lam.ramified)
            if is_eisenstein_mod_lambda(f, lam, cfg.eisenstein_bound):
                out.eliminated_by = {"kind": "eisenstein", "bound": cfg.eisenstein_bound}
            else:
                p = mod3_residue_witness(triple, f, lam, p0)
                if p is not None:
                    out.eliminated_by = {"kind": "mod3-residue", "p": p}
            pairs.append(out)
    return n_p0, pairs


def mod9_eliminate(triple: Triple, f: NewformClass, lam: PrimeAboveL, p: int) -> bool:
    """9 divides no Norm(a - a_p(f)) for a in T_p, and a_p(f) generates K_f."""
    if lam.ramified:
        raise ArithmeticInputError("ramified prime: use the deformation check instead")
    if lam.inertia_degree != 1:
        raise ArithmeticInputError("mod-9 elimination needs a degree-one prime")
    if (3 * triple.N0) % p == 0:
        raise ArithmeticInputError(f"{p} divides 3*N0")
    return all(eigen_norm(f, p, a) % 9 for a in set_Tp(p)) and eigen_generates_field(f, p)


def find_mod9_witness(triple: Triple, f: NewformClass, lam: PrimeAboveL, limit: int) -> Optional[int]:
    for p in primes_up_to(limit):
        if (3 * triple.N0) % p and f.has_eigenvalue(p) and mod9_eliminate(triple, f, lam, p):
            return p
    return None


def residue_unique(
    f: NewformClass, lam: PrimeAboveL, classes: Sequence[NewformClass], bound: int
) -> Tuple[bool, List[str]]:
    """Is the mod-lam eigensystem of f matched by no other (g, mu) at good primes up to bound?"""
    primes = [p for p in primes_up_to(bound) if (lam.l * f.level) % p]
    system = {p: eigen_mod_lambda(f, p, lam) for p in primes}
    clashes = []
    for g in classes:
        for mu in primes_above(g, lam.l):
            if g.name == f.name and mu.local_factor == lam.local_factor:
                continue
            if all(_residue_in(g, p, mu, system[p]) for p in primes):
                clashes.append(f"{g.name} {mu.label}")
    return not clashes, clashes


def class_description(f: NewformClass, classes: Sequence[NewformClass]) -> str:
    """'d=<degree>', starred when another class of the level has the same degree."""
    shared = sum(1 for g in classes if g.degree == f.degree) > 1
    return f"d={f.degree}{'*' if shared else ''}"


def c3_point_search(triple: Triple, height: int) -> Optional[Tuple[int, int, int]]:
    """A primitive point on a x^3 + b y^3 + c z^3 = 0 with |x|, |z| <= height, if any."""
    a, b, c = triple.a, triple.b, triple.c
    for h in range(1, height + 1):
        for x in range(-h, h + 1):
            for z in range(-h, h + 1):
                if max(abs(x), abs(z)) != h:
                    continue
                num = -(a * x**3 + c * z**3)
                if num % b:
                    continue
                y = _icbrt(num // b)
                if y is not None and (x, y, z) != (0, 0, 0) and math.gcd(math.gcd(x, y), z) == 1:
                    return (x, y, z)
    return None


def _icbrt(n: int) -> Optional[int]:
    s = -1 if n < 0 else 1
    m = abs(n)
    r = round(m ** (1 / 3)) if m else 0
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**3 == m:
            return s * cand
    return None


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _sorted_primes(s) -> object:
    return "all" if s is ALL_PRIMES else sorted(s)


def full_report(triple: Triple, cfg: SieveConfig, classes: Optional[Sequence[NewformClass]]) -> dict:
    """Every table field for one triple, the witnesses behind them, and an overall verdict."""
    from .deformation import verify_level935_scenario
    from .localsolve import local_solvable

    N0 = triple.N0
    gaps: List[str] = []
    witnesses: List[dict] = []
    table1: Dict = {"level": N0, "p_max": cfg.p_max}
    table2: Dict = {"level": N0, "p0": cfg.p0}

    # even exponents: all coefficients of one sign leave only the zero solution
    signs = {v > 0 for v in (triple.a, triple.b, triple.c)}
    even_done = len(signs) == 1
    if even_done:
        witnesses.append({"kind": "even-definite", "exponents": "even"})
    else:
        gaps.append("even exponents: coefficients of mixed sign")

    if classes is None:
        gaps.append("no newform data")
        table1["L_minus_3"] = None
        table2["classes"] = None
        classes = []
        have_data = False
    else:
        _ensure_level(triple, classes)
        have_data = True

    # primes l >= 5
    if have_data:
        per_class, union = eliminate_big_primes(triple, cfg.p_max, classes, cfg.skip_p_equal_l)
        table1["L_per_class"] = {k: _sorted_primes(v) for k, v in sorted(per_class.items())}
        if union is ALL_PRIMES:
            table1["L_minus_3"] = "all"
            gaps.append(f"L_(p_max) unbounded at p_max={cfg.p_max}")
            ls = []
        else:
            ls = sorted(union - {3})
            table1["L_minus_3"] = ls
        local_entries, kraus_entries = [], []
        for l in ls:
            hit = None
            for p in primes_up_to(cfg.local_search_limit):
                v = local_solvable(triple, l, p, cfg.local_k_max)
                if v.is_empty:
                    hit = v
                    break
            if hit is not None:
                local_entries.append([l, hit.p])
                witnesses.append({"kind": "local", "l": l, "p": hit.p, "k": hit.k, "model": list(hit.model)})
                continue
            for f in classes:
                s = per_class[f.name]
                if s is not ALL_PRIMES and l not in s:
                    continue
                p = find_kraus_witness(triple, l, f, cfg.kraus_search_limit)
                if p is None:
                    gaps.append(f"l={l}: no elimination for {f.name}")
                else:
                    kraus_entries.append([l, p])
                    witnesses.append({"kind": "kraus", "l": l, "p": p, "class": f.name})
        table1["local"] = sorted(local_entries)
        table1["kraus"] = sorted(set(map(tuple, kraus_entries)))
        table1["kraus"] = [list(e) for e in table1["kraus"]]

    # n = 9
    p_irr = strong_irreducibility_witness(triple, cfg.irr_search_limit)
    table2["p_irr"] = p_irr
    if p_irr is None:
        gaps.append(f"n=9: no irreducibility witness up to {cfg.irr_search_limit}")
    else:
        witnesses.append({"kind": "irreducibility", "p": p_irr})
    pt = c3_point_search(triple, cfg.c3_height)
    table2["c3_rank"] = {"status": "external claim, unverified", "point_found": list(pt) if pt else None,
                         "height_bound": cfg.c3_height}
    if have_data:
        n_p0, pairs = mod3_survivors(triple, cfg.p0, classes, cfg.p_max, cfg)
        table2["classes"] = [class_description(f, classes) for f in n_p0]
        table2["class_traces_a2"] = [str(f.trace(2)) for f in n_p0]
        mod9_primes = []
        pair_rows = []
        by_name = {f.name: f for f in classes}
        for pr in pairs:
            row = asdict(pr)
            f = by_name[pr.cls]
            lam = next(l for l in primes_above(f, 3) if l.label == pr.prime)
            if pr.eliminated_by is None:
                unique, clashes = residue_unique(f, lam, classes, cfg.uniqueness_bound)
                row["unique"] = unique
                row["congruent_to"] = clashes
                if not unique:
                    gaps.append(f"n=9: {pr.cls} {pr.prime} is congruent to {clashes}")
                if lam.ramified:
                    if N0 == 935 and f.degree == 11:
                        verdict = verify_level935_scenario(classes)
                        row["eliminated_by"] = {"kind": "deformation", "scenario": "level935", "passed": verdict.passed}
                        if not verdict.passed:
                            gaps.append(f"n=9: deformation check failed: {verdict.first_failure}")
                    else:
                        gaps.append(f"n=9: {pr.cls} {pr.prime} is ramified and has no deformation check")
                else:
                    p = find_mod9_witness(triple, f, lam, cfg.mod9_search_limit)
                    if p is None:
                        gaps.append(f"n=9: no mod-9 prime for {pr.cls} {pr.prime}")
                    else:
                        row["eliminated_by"] = {"kind": "mod9", "p": p}
                        mod9_primes.append(p)
            else:
                # the mod-9 prime is still reported for Eisenstein pairs
                if not lam.ramified and pr.eliminated_by["kind"] == "eisenstein":
                    p = find_mod9_witness(triple, f, lam, cfg.mod9_search_limit)
                    row["mod9_p"] = p
                    if p is not None:
                        mod9_primes.append(p)
            if row["eliminated_by"] is not None:
                witnesses.append(dict(row["eliminated_by"], cls=pr.cls, prime=pr.prime))
            pair_rows.append(row)
        table2["pairs"] = pair_rows
        table2["mod9_primes"] = mod9_primes
    verdict = "complete" if not gaps else "incomplete"
    return {
        "schema_version": SCHEMA_VERSION,
        "triple": [triple.a, triple.b, triple.c],
        "level": N0,
        "config": asdict(cfg),
        "tables": {"table1": table1, "table2": table2},
        "witnesses": witnesses,
        "gaps": gaps,
        "verdict": verdict,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
