from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fermatsieve.intkernel import (
    ArithmeticInputError,
    IntPoly,
    NonSimpleRootError,
    ResidueClass,
    factor_mod_l,
    frac_mod,
    hensel_lift_root,
    is_nth_power,
    is_prime,
    is_squarefree_over_q,
    mod_inverse,
    mod_pow,
    nth_power_table,
    odd_prime_divisors,
    primes_up_to,
    resultant,
    roots_mod,
    valuation,
)
from oracles import exhaustive_roots, naive_nth_powers, sylvester_resultant

small_poly = st.lists(st.integers(-30, 30), min_size=2, max_size=6).filter(lambda c: c[-1] != 0)


def test_primes_agree_with_sympy():
    assert primes_up_to(2000) == list(sympy.primerange(2, 2001))
    for n in [0, 1, 2, 561, 7919, 2**61 - 1, 3215031751]:
        assert is_prime(n) == sympy.isprime(n)


def test_odd_prime_divisors_and_valuation():
    assert odd_prime_divisors(2**4 * 5**2 * 17**2 * 11) == [5, 11, 17]
    assert valuation(5**7 * 3, 5) == 7
    with pytest.raises(ArithmeticInputError):
        valuation(0, 5)


def test_mod_pow_and_inverse():
    assert mod_pow(3, 10**6, 1009) == pow(3, 10**6, 1009)
    assert mod_inverse(7, 31) * 7 % 31 == 1
    with pytest.raises(ArithmeticInputError):
        mod_inverse(6, 9)


@pytest.mark.parametrize("n,p", [(3, 7), (9, 37), (5, 11), (7, 29), (9, 31)])
def test_nth_powers_match_bruteforce(n, p):
    table = nth_power_table(n, p)
    want = naive_nth_powers(n, p)
    assert {x for x in range(1, p) if table[x]} == want
    assert all(is_nth_power(x, n, p) == (x in want) for x in range(1, p))


def test_residue_class_reduce():
    r = ResidueClass(20, 27)
    assert r.reduce(9) == ResidueClass(2, 9)
    with pytest.raises(ArithmeticInputError):
        r.reduce(4)


def test_intpoly_basics():
    f = IntPoly.from_roots([1, 2, 3])
    assert f.degree == 3 and f.is_monic
    assert f(2) == 0 and f(5, 7) == (4 * 3 * 2) % 7
    assert (f - f).is_zero
    assert (f * IntPoly([1, 1])).degree == 4


@settings(max_examples=150, deadline=None)
@given(small_poly, small_poly)
def test_resultant_matches_sylvester(f, g):
    assert resultant(f, g) == sylvester_resultant(f, g)


def test_resultant_known_value():
    # Res(x^2 - 2, x - 1) = lc^1 * prod g(alpha) = (sqrt2 - 1)(-sqrt2 - 1) = -1
    assert resultant([-2, 0, 1], [-1, 1]) == -1
    assert not is_squarefree_over_q([1, 2, 1])
    assert is_squarefree_over_q([-2, 0, 1])


@settings(max_examples=80, deadline=None)
@given(small_poly, st.sampled_from([2, 3, 5, 7, 13]))
def test_factor_mod_l_reconstructs(f, l):
    if f[-1] % l == 0:
        return
    fac = factor_mod_l(f, l)
    prod = IntPoly([f[-1] % l])
    for phi, e in fac:
        assert phi.is_monic
        for _ in range(e):
            prod = prod * phi
    assert prod.reduce(l) == IntPoly(f).reduce(l)
    x = sympy.Symbol("x")
    sf = sympy.factor_list(sympy.Poly(list(reversed(f)), x, modulus=l))
    assert sorted((g.degree(), e) for g, e in sf[1]) == sorted((phi.degree, e) for phi, e in fac)


def test_factor_mod_l_is_deterministic():
    f = [-168, -770, -449, 1212, 705, -827, -225, 222, 26, -25, -1, 1]
    assert factor_mod_l(f, 3) == factor_mod_l(f, 3)


def test_hensel_lift_root_exhaustive():
    f = [-2, 0, 0, 1]  # x^3 - 2
    for l in (5, 11):
        for r in exhaustive_roots(f, l):
            for k in (1, 2, 3):
                x = hensel_lift_root(f, r, l, k)
                assert f[0] + x**3 == 0 or (x**3 - 2) % l**k == 0
                assert x % l == r


def test_hensel_rejects_multiple_root():
    with pytest.raises(NonSimpleRootError):
        hensel_lift_root([1, 2, 1], 2, 3, 2)
    with pytest.raises(ArithmeticInputError):
        hensel_lift_root([1, 0, 1], 1, 3, 2)


def test_roots_mod_and_frac_mod():
    assert roots_mod([-1, 0, 1], 8) == [1, 3, 5, 7]
    assert frac_mod(Fraction(1, 2), 9) == 5
    with pytest.raises(ArithmeticInputError):
        frac_mod(Fraction(1, 3), 9)
