"""Newform classes: ingestion, norms, primes above l and residue maps.

A class is stored as the minimal polynomial of a single generator of its
coefficient field together with each Hecke eigenvalue written as a
polynomial (rational coefficients) in that generator.  Residue maps are only
meaningful for primes l listed in ``index_coprime_to``, i.e. where the data
asserts that the order generated by the generator is l-maximal.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Dict, List, Optional, Tuple, Union

from .intkernel import (
    ArithmeticInputError,
    IntPoly,
    factor_mod_l,
    frac_mod,
    hensel_lift_root,
    is_prime,
    is_squarefree_over_q,
    poly_deriv,
    resultant,
)


class NewformDataError(ValueError):
    """Malformed or inconsistent newform data."""


class MissingEigenvalueError(KeyError):
    pass


class ResidueMapError(ArithmeticInputError):
    pass


@dataclass(frozen=True)
class NewformClass:
    level: int
    degree: int
    min_poly: IntPoly
    eigenvalues: Dict[int, Tuple[Fraction, ...]] = field(hash=False, compare=False)
    index_coprime_to: Tuple[int, ...] = ()
    label: Optional[str] = None

    def __post_init__(self) -> None:
        mp = self.min_poly
        if not mp.is_monic():
            raise NewformDataError(f"{self.name}: min_poly is not monic")
        if mp.degree != self.degree:
            raise NewformDataError(f"{self.name}: degree {self.degree} != deg(min_poly) {mp.degree}")
        if not is_squarefree_over_q(mp):
            raise NewformDataError(f"{self.name}: min_poly is not squarefree")
        for p, coeffs in self.eigenvalues.items():
            for q in coeffs:
                for l in self.index_coprime_to:
                    if Fraction(q).denominator % l == 0:
                        raise NewformDataError(
                            f"{self.name}: a_{p} has a denominator divisible by {l}"
                        )

    @property
    def name(self) -> str:
        return self.label or f"{self.level}:deg{self.degree}"

    def eigenvalue(self, p: int) -> Tuple[Fraction, ...]:
        try:
            return self.eigenvalues[p]
        except KeyError:
            raise MissingEigenvalueError(f"{self.name}: no eigenvalue for p={p}") from None

    def has_eigenvalue(self, p: int) -> bool:
        return p in self.eigenvalues

    def trace(self, p: int) -> Fraction:
        """Trace from K_f to Q of a_p(f), by Newton sums of the generator."""
        h = self.eigenvalue(p)
        sums = _power_sums(self.min_poly, len(h))
        return sum((Fraction(c) * s for c, s in zip(h, sums)), Fraction(0))

    def is_rational(self) -> bool:
        return self.degree == 1


def _power_sums(f: IntPoly, count: int) -> List[Fraction]:
    """Newton power sums s_0..s_{count-1} of the roots of the monic f."""
    c, d = f.coeffs, f.degree
    # elementary symmetric functions, e_i = 0 beyond the degree
    e = [Fraction((-1) ** i * c[d - i]) if i <= d else Fraction(0) for i in range(count + 1)]
    s = [Fraction(d)]
    for k in range(1, count):
        acc = sum(((-1) ** (i - 1) * e[i] * s[k - i] for i in range(1, k)), Fraction(0))
        s.append(acc + (-1) ** (k - 1) * k * e[k])
    return s


@dataclass(frozen=True)
class PrimeAboveL:
    l: int
    inertia_degree: int
    ramified: bool
    local_factor: IntPoly
    multiplicity: int
    residue_root: Optional[int] = None
    lifted_root: Optional[int] = None
    lift_exponent: int = 0

    @property
    def label(self) -> str:
        kind = "ramified" if self.ramified else "unramified"
        return f"({self.l}, {list(self.local_factor.coeffs)}^{self.multiplicity}, {kind})"


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------

_TOP_KEYS = {"level", "classes"}
_CLASS_KEYS = {"label", "degree", "min_poly", "index_coprime_to", "eigenvalues"}
_REQUIRED_CLASS_KEYS = _CLASS_KEYS - {"label"}


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise NewformDataError(f"{what} must be an integer, got {value!r}")
    return value


def _parse_class(level: int, raw: dict) -> NewformClass:
    if not isinstance(raw, dict):
        raise NewformDataError("class entry must be an object")
    unknown = set(raw) - _CLASS_KEYS
    if unknown:
        raise NewformDataError(f"unknown class keys: {sorted(unknown)}")
    missing = _REQUIRED_CLASS_KEYS - set(raw)
    if missing:
        raise NewformDataError(f"missing class keys: {sorted(missing)}")
    label = raw.get("label")
    if label is not None and not isinstance(label, str):
        raise NewformDataError("label must be a string")
    degree = _int(raw["degree"], "degree")
    if not isinstance(raw["min_poly"], list):
        raise NewformDataError("min_poly must be a list")
    min_poly = IntPoly(_int(c, "min_poly coefficient") for c in raw["min_poly"])
    index_primes = tuple(_int(l, "index_coprime_to entry") for l in raw["index_coprime_to"])
    for l in index_primes:
        if not is_prime(l):
            raise NewformDataError(f"index_coprime_to entry {l} is not prime")
    eig: Dict[int, Tuple[Fraction, ...]] = {}
    if not isinstance(raw["eigenvalues"], dict):
        raise NewformDataError("eigenvalues must be an object")
    for key, pairs in raw["eigenvalues"].items():
        try:
            p = int(key)
        except ValueError:
            raise NewformDataError(f"eigenvalue key {key!r} is not an integer") from None
        if str(p) != key or not is_prime(p):
            raise NewformDataError(f"eigenvalue key {key!r} is not a prime")
        coeffs = []
        for pair in pairs:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise NewformDataError(f"a_{p}: coefficients must be [num, den] pairs")
            num, den = _int(pair[0], "numerator"), _int(pair[1], "denominator")
            if den <= 0:
                raise NewformDataError(f"a_{p}: denominator must be positive")
            coeffs.append(Fraction(num, den))
        if len(coeffs) > degree:
            raise NewformDataError(f"a_{p}: more coefficients than the field degree")
        eig[p] = tuple(coeffs)
    return NewformClass(level, degree, min_poly, eig, index_primes, label)


def load_newforms(source: Union[IO[bytes], IO[str], bytes, str]) -> List[NewformClass]:
    """Parse and validate a newform data file (UTF-8 JSON)."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise NewformDataError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise NewformDataError("top level must be an object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise NewformDataError(f"unknown top-level keys: {sorted(unknown)}")
    if _TOP_KEYS - set(doc):
        raise NewformDataError("top level needs 'level' and 'classes'")
    level = _int(doc["level"], "level")
    if not isinstance(doc["classes"], list):
        raise NewformDataError("classes must be a list")
    classes = [_parse_class(level, raw) for raw in doc["classes"]]
    seen = set()
    for f in classes:
        if f.label is not None:
            if f.label in seen:
                raise NewformDataError(f"duplicate class label {f.label!r} at level {level}")
            seen.add(f.label)
    return classes


def dump_newforms(level: int, classes: List[NewformClass]) -> str:
    doc = {
        "level": level,
        "classes": [
            {
                **({"label": f.label} if f.label is not None else {}),
                "degree": f.degree,
                "min_poly": list(f.min_poly.coeffs),
                "index_coprime_to": list(f.index_coprime_to),
                "eigenvalues": {
                    str(p): [[Fraction(c).numerator, Fraction(c).denominator] for c in h]
                    for p, h in sorted(f.eigenvalues.items())
                },
            }
            for f in classes
        ],
    }
    return json.dumps(doc, indent=1, sort_keys=True)


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------


def primes_above(f: NewformClass, l: int, lift_to: int = 2) -> List[PrimeAboveL]:
    """Primes of O_f above l, read off the factorization of min_poly mod l."""
    if l not in f.index_coprime_to:
        raise ResidueMapError(f"{f.name}: index coprime to {l} is not asserted by the data")
    out = []
    for factor, mult in factor_mod_l(f.min_poly, l):
        root = lifted = None
        if factor.degree == 1:
            root = (-factor.coeffs[0]) % l
            if mult == 1:
                lifted = hensel_lift_root(f.min_poly, root, l, lift_to)
        out.append(
            PrimeAboveL(
                l=l,
                inertia_degree=factor.degree,
                ramified=mult > 1,
                local_factor=factor,
                multiplicity=mult,
                residue_root=root,
                lifted_root=lifted,
                lift_exponent=lift_to if lifted is not None else 0,
            )
        )
    return out


def _cleared(h: Tuple[Fraction, ...]) -> Tuple[List[int], int]:
    den = 1
    for c in h:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    return [int(Fraction(c) * den) for c in h], den


def eigen_norm(f: NewformClass, p: int, a: int) -> Fraction:
    """Norm from K_f to Q of a - a_p(f); an integer whenever a_p(f) is integral."""
    h = f.eigenvalue(p)
    g = [-Fraction(c) for c in h] or [Fraction(0)]
    g[0] += a
    num, den = _cleared(tuple(g))
    if not any(num):
        return 0
    # min_poly monic, so Res(min_poly, den*g) = den^deg * prod g(alpha_i)
    value = Fraction(resultant(f.min_poly, num), den**f.degree)
    return value.numerator if value.denominator == 1 else value


def _eval_mod(h: Tuple[Fraction, ...], x: int, m: int) -> int:
    acc = 0
    for c in reversed(h):
        acc = (acc * x + frac_mod(Fraction(c), m)) % m
    return acc


def eigen_mod_lambda(f: NewformClass, p: int, lam: PrimeAboveL) -> int:
    """a_p(f) mod lambda for a prime of inertia degree one."""
    if lam.inertia_degree != 1:
        raise ResidueMapError("residue field is not F_l")
    return _eval_mod(f.eigenvalue(p), lam.residue_root, lam.l)


def eigen_mod_lambda_sq(f: NewformClass, p: int, lam: PrimeAboveL) -> int:
    """a_p(f) mod lambda^2 = l^2 (lambda unramified of degree one)."""
    if lam.inertia_degree != 1:
        raise ResidueMapError("residue field is not F_l")
    if lam.ramified:
        raise ResidueMapError("ramified prime: no canonical lift to Z/l^2")
    root = lam.lifted_root
    if root is None or lam.lift_exponent < 2:
        root = hensel_lift_root(f.min_poly, lam.residue_root, lam.l, 2)
    m = lam.l**2
    return _eval_mod(f.eigenvalue(p), root % m, m)


def is_eisenstein_mod_lambda(f: NewformClass, lam: PrimeAboveL, bound: int) -> bool:
    """a_q(f) = 1 + q mod lambda for every prime q <= bound with q not dividing l*level."""
    if lam.inertia_degree != 1:
        raise ResidueMapError("residue field is not F_l")
    from .intkernel import primes_up_to

    qs = [q for q in primes_up_to(bound) if (lam.l * f.level) % q]
    if not qs:
        warnings.warn(f"Eisenstein test for {f.name} is vacuous below {bound}", stacklevel=2)
        return True
    for q in qs:
        if not f.has_eigenvalue(q):
            raise MissingEigenvalueError(f"{f.name}: Eisenstein test needs a_{q}")
        if eigen_mod_lambda(f, q, lam) != (1 + q) % lam.l:
            return False
    return True


def eigen_charpoly(f: NewformClass, p: int) -> List[Fraction]:
    """Characteristic polynomial of a_p(f) over Q (ascending, monic)."""
    d = f.degree
    xs = list(range(d + 1))
    ys = [Fraction(eigen_norm(f, p, x)) for x in xs]
    # Lagrange interpolation, exact
    coeffs = [Fraction(0)] * (d + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(d + 1):
            coeffs[k] += ys[i] * basis[k] / denom
    return coeffs


def eigen_generates_field(f: NewformClass, p: int) -> bool:
    """Q(a_p(f)) = K_f, i.e. the characteristic polynomial of a_p(f) is squarefree."""
    chi = eigen_charpoly(f, p)
    if f.degree == 1:
        return True
    num, _ = _cleared(tuple(chi))
    return resultant(num, poly_deriv(num)) != 0


def find_class(classes: List[NewformClass], label: str) -> NewformClass:
    for f in classes:
        if f.label == label:
            return f
    raise KeyError(label)


def trace_a2(f: NewformClass) -> Fraction:
    return f.trace(2)
