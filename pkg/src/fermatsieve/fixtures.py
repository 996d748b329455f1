"""Printed inputs and reference values for the five worked triples.

Expected table values are kept here, separate from any computation, so
that checks compare a computed value against a fixed reference.
"""

from .elliptic import CurveQ, RationalPoint
from fractions import Fraction

# level -> (a, b, c)
TRIPLES = {
    115: (5**2, 2**4, 23**4),
    185: (5**8, 2**4, 37),
    295: (5**7, 2**4, 59**7),
    329: (7, 2**4, 47**7),
    935: (11, 2**4, 5**2 * 17**2),
}
LEVELS = tuple(TRIPLES)

# Hecke algebra of S_2(Gamma_0(71)): t = T_5 generates each degree-3 order
LEVEL71_CUBICS = (
    (25, -2, -5, 1),  # t^3 - 5t^2 - 2t + 25
    (-7, -2, 3, 1),  # t^3 + 3t^2 - 2t - 7
)

# 142e1: y^2 + xy = x^3 - x^2 - 2626x + 52244
CURVE_142E1 = CurveQ(1, -1, 0, -2626, 52244)

# minimal polynomial of a_3 for the degree-11 class at level 935
LEVEL935_P = (-168, -770, -449, 1212, 705, -827, -225, 222, 26, -25, -1, 1)

# y^2 = x^3 - 15x + 22, torsion of order 6
TORSION6_CURVE = CurveQ(0, 0, 0, -15, 22)
TORSION6_POINTS = (RationalPoint(Fraction(2), Fraction(0)), RationalPoint(Fraction(3), Fraction(2)))

# ---------------------------------------------------------------------------
# reference values (large primes l >= 5)
# ---------------------------------------------------------------------------

TABLE1 = {
    115: {"p_max": 3, "L_minus_3": (5,), "local": ((5, 11),), "kraus": ()},
    185: {"p_max": 3, "L_minus_3": (5, 19), "local": ((19, 19),), "kraus": ((5, 31),)},
    295: {"p_max": 3, "L_minus_3": (5, 7), "local": ((5, 5),), "kraus": ((7, 43),)},
    329: {"p_max": 23, "L_minus_3": (5,), "local": (), "kraus": ((5, 11), (5, 41))},
    935: {"p_max": 71, "L_minus_3": (5, 7), "local": ((5, 5),), "kraus": ((7, 29),)},
}

# ---------------------------------------------------------------------------
# reference values (n = 3 and n = 9)
# ---------------------------------------------------------------------------

# p0 column: None where the printed entry is "-" (no Kraus step needed)
TABLE2 = {
    115: {"p_irr": 73, "p0": None, "classes": ("d=1",), "mod9": (2,)},
    185: {"p_irr": 73, "p0": 73, "classes": ("d=1*",), "mod9": (2,)},
    295: {"p_irr": 37, "p0": 37, "classes": ("d=6",), "mod9": (13,)},
    329: {"p_irr": 109, "p0": 13, "classes": ("d=5", "d=6"), "mod9": (5, 5)},
    935: {"p_irr": 37, "p0": 37, "classes": ("d=11*",), "mod9": ()},
}

# primes with T3bar != T9bar, as printed
TABLE3_PRINTED = {
    115: {"p0": (73, 163), "p1": ()},
    185: {"p0": (73, 307, 541), "p1": (37,)},
    295: {"p0": (37, 73, 163, 181, 199, 541), "p1": ()},
    329: {"p0": (), "p1": (109,)},
    935: {"p0": (37, 73, 307, 541), "p1": ()},
}

# the same comparison recomputed over p not dividing 3 N0 (trace sets and
# brute-force enumeration agree); at every listed prime T9bar = {0}
TABLE3_COMPUTED = {
    115: {"p0": (), "p1": (73, 163), "flagged": ()},
    185: {"p0": (), "p1": (73, 307, 541), "flagged": (37,)},
    295: {"p0": (), "p1": (37, 73, 163, 181, 199, 307), "flagged": ()},
    329: {"p0": (), "p1": (109,), "flagged": (7,)},
    935: {"p0": (), "p1": (37, 73, 307, 541), "flagged": ()},
}
