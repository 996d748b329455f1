"""Slow, obviously-correct reference computations used by the tests."""

from fractions import Fraction
from itertools import product

import sympy


def sylvester_resultant(f, g):
    """Res(f, g) as the Sylvester determinant (ascending coefficient lists)."""
    x = sympy.Symbol("x")
    F = sympy.Poly(list(reversed(f)), x)
    G = sympy.Poly(list(reversed(g)), x)
    m, n = F.degree(), G.degree()
    fc, gc = F.all_coeffs(), G.all_coeffs()
    rows = []
    for i in range(n):
        rows.append([0] * i + fc + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (m - 1 - i))
    return int(sympy.Matrix(rows).det())


def naive_count(p, ainvs):
    """#E(F_p) by looping over every (x, y)."""
    a1, a2, a3, a4, a6 = ainvs
    n = 1
    for x, y in product(range(p), repeat=2):
        if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0:
            n += 1
    return n


def naive_nth_powers(n, p):
    return {pow(x, n, p) for x in range(1, p)}


def exhaustive_roots(coeffs, m):
    return [x for x in range(m) if sum(c * pow(x, i, m) for i, c in enumerate(coeffs)) % m == 0]


def naive_fiber_traces(a, b, c, n, p):
    """Traces of y^2 = x(x - a t^n)(x + b) over t with a t^n + b a nonzero n-th power times -c."""
    powers = naive_nth_powers(n, p)
    out = set()
    for t in range(1, p):
        u = a * pow(t, n, p) % p
        w = (u + b) * pow(-c, -1, p) % p
        if w not in powers:
            continue
        e1, e2 = u, (-b) % p
        cnt = 1
        for x in range(p):
            rhs = x * (x - e1) * (x - e2) % p
            cnt += 1 if rhs == 0 else (2 if pow(rhs, (p - 1) // 2, p) == 1 else 0)
        out.add(p + 1 - cnt)
    return out | {-t for t in out}


def frac_ok(x):
    return isinstance(x, (int, Fraction))
