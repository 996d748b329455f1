"""Export newform data files from PARI/GP (optional ``cypari2`` dependency).

Only the newform *data* is produced here; every check downstream reads the
JSON file, never PARI.  For each Galois class the generator of the
coefficient field is chosen among the field variable and a_2, a_3, a_5, ...
so that the order it generates has index prime to every prime in
``required_index_primes`` (3 by default, which the mod-3 and mod-9
residue maps need).  ``index_coprime_to`` then lists all small primes for
which this holds.
"""

from __future__ import annotations

import json
import logging
import os
from fractions import Fraction
from typing import Iterable, List, Sequence

from .intkernel import primes_up_to

log = logging.getLogger(__name__)

INDEX_CANDIDATE_PRIMES = tuple(primes_up_to(97))


class ExportUnavailable(RuntimeError):
    pass


def _pari():
    try:
        import cypari2
    except ImportError as exc:  # pragma: no cover - depends on environment
        raise ExportUnavailable(
            "exporting newform data needs cypari2 (pip install 'artifact[export]')"
        ) from exc
    pari = cypari2.Pari()
    pari.allocatemem(2 * 10**9, silent=True) if _accepts_silent(pari) else pari.allocatemem(2 * 10**9)
    return pari


def _accepts_silent(pari) -> bool:
    import inspect

    try:
        return "silent" in inspect.signature(pari.allocatemem).parameters
    except (TypeError, ValueError):
        return False


def _rat(x) -> Fraction:
    return Fraction(int(x.numerator()), int(x.denominator()))


def _poly_coeffs(pari, pol, var: str) -> List[Fraction]:
    """Ascending rational coefficients of a PARI polynomial (or scalar) in ``var``."""
    pol = pari(pol)
    if str(pari.type(pol)) in ("t_INT", "t_FRAC"):
        return [_rat(pol)]
    deg = int(pari.poldegree(pol, var))
    return [_rat(pari.polcoef(pol, i, var)) for i in range(deg + 1)]


_GP_CLASSES = r"""
(N, B) -> my(mf = mfinit([N, 2], 0), L = mfeigenbasis(mf), F = mffields(mf), P = primes([2, B]), C);
  vector(#L, i, C = mfcoefs(L[i], B); [F[i], vector(#P, j, C[P[j] + 1])])
"""

_GP_GENERATOR = r"""
(T, g, req, cand, D) -> my(Q = charpoly(g, 'x), ok);
  if (!issquarefree(Q) || poldegree(Q) != poldegree(T), return(0));
  if (denominator(content(Q)) != 1, return(0));
  ok = [l | l <- cand, valuation(poldisc(Q), l) == valuation(D, l)];
  for (k = 1, #req, if (!setsearch(Set(ok), req[k]), return(0)));
  [Q, ok, subst(lift(modreverse(g)), variable(T), 'x)]
"""


def export_level(level: int, prime_bound: int = 600, required_index_primes: Sequence[int] = (3,)) -> dict:
    """Compute the newform data document for ``level`` (weight 2, trivial character)."""
    pari = _pari()
    classes_fn = pari(_GP_CLASSES)
    gen_fn = pari(_GP_GENERATOR)
    primes = primes_up_to(prime_bound)
    req = pari(list(required_index_primes))
    cand = pari(list(INDEX_CANDIDATE_PRIMES))
    out = []
    for idx, entry in enumerate(classes_fn(level, prime_bound), start=1):
        field_poly, coefs = entry[0], entry[1]
        degree = int(pari.poldegree(field_poly, "y"))
        label = f"{level}.{idx}"
        if degree == 1:
            eig = {str(p): [[int(_rat(c).numerator), int(_rat(c).denominator)]] for p, c in zip(primes, coefs)}
            out.append(
                {
                    "label": label,
                    "degree": 1,
                    "min_poly": [0, 1],
                    "index_coprime_to": list(INDEX_CANDIDATE_PRIMES),
                    "eigenvalues": eig,
                }
            )
            continue
        choice = None
        gens = [pari(f"Mod(y, {field_poly})")] + [pari.Mod(pari.lift(c), field_poly) for c in coefs[:40]]
        # the field discriminant is shared by every generator; only its
        # valuations at the candidate primes matter
        disc = pari.nfdisc([field_poly, cand])
        for g in gens:
            res = gen_fn(field_poly, g, req, cand, disc)
            if res != 0:
                choice = res
                break
        if choice is None:
            raise ExportUnavailable(f"{label}: no generator with index prime to {list(required_index_primes)}")
        Q, ok, back = choice
        # a_p as a polynomial in the chosen generator x: substitute y = back(x) mod Q
        eig = {}
        for p, c in zip(primes, coefs):
            val = pari.lift(pari.Mod(pari.subst(pari.lift(c), "y", back), Q))
            coeffs = _poly_coeffs(pari, val, "x")
            while len(coeffs) > 1 and coeffs[-1] == 0:
                coeffs.pop()
            eig[str(p)] = [[c.numerator, c.denominator] for c in coeffs]
        out.append(
            {
                "label": label,
                "degree": degree,
                "min_poly": [int(c) for c in _poly_coeffs(pari, Q, "x")],
                "index_coprime_to": [int(l) for l in ok],
                "eigenvalues": eig,
            }
        )
        log.info("level %s class %s: degree %s", level, label, degree)
    return {"level": level, "classes": out}


def export_levels(levels: Iterable[int], directory: str, prime_bound: int = 600) -> List[str]:
    os.makedirs(directory, exist_ok=True)
    paths = []
    for level in levels:
        doc = export_level(level, prime_bound)
        path = os.path.join(directory, f"{level}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True)
        paths.append(path)
    return paths


def data_path(directory: str, level: int) -> str:
    return os.path.join(directory, f"{level}.json")
