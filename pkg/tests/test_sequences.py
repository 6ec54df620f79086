from fractions import Fraction

import mpmath
import pytest

from multizeta.characters import characters_mod, kronecker_character, principal_character
from multizeta.exact import Cyclotomic
from multizeta.sequences import (
    bernoulli,
    bernoulli_poly,
    euler_number,
    euler_poly,
    gen_bernoulli,
    lucas,
    sum_S,
    sum_T,
)


def test_bernoulli_against_mpmath():
    assert bernoulli(1) == Fraction(1, 2)
    for n in range(0, 40):
        if n == 1:
            continue
        assert float(bernoulli(n)) == pytest.approx(float(mpmath.bernoulli(n)), rel=1e-12, abs=1e-300)


def test_euler_numbers():
    assert [euler_number(n) for n in range(0, 11)] == [1, 0, -1, 0, 5, 0, -61, 0, 1385, 0, -50521]


def test_polynomials():
    assert bernoulli_poly(1, 0) == Fraction(-1, 2)
    assert bernoulli_poly(2, Fraction(1, 2)) == Fraction(-1, 12)
    assert euler_poly(1, Fraction(3, 4)) == Fraction(1, 4)
    assert euler_poly(3, 1) == Fraction(-1, 4)
    for n in range(8):
        assert euler_poly(n, Fraction(1, 2)) * 2**n == euler_number(n)


def test_generalized_bernoulli():
    assert gen_bernoulli(1, kronecker_character(-4)) == Cyclotomic.rational(Fraction(-1, 2))
    assert gen_bernoulli(1, kronecker_character(-8)) == Cyclotomic.rational(-1)
    assert gen_bernoulli(1, kronecker_character(-3)) == Cyclotomic.rational(Fraction(-1, 3))
    assert gen_bernoulli(4, principal_character(1)) == Cyclotomic.rational(Fraction(-1, 30))
    # B_{n,chi} vanishes unless n and chi have the same parity (n >= 2)
    for chi in characters_mod(7):
        for n in range(2, 7):
            if (n - chi.parity) % 2:
                assert gen_bernoulli(n, chi).is_zero()


def test_lucas():
    assert [lucas(n) for n in (1, 2, 3, 5, 10, 15)] == [1, 3, 4, 11, 123, 1364]


def test_quadratic_sums():
    assert sum_S(1, 1) == Fraction(1, 3)
    for k in range(2, 7):
        assert sum_S(k, 1) == -(2 * k - 1) * bernoulli(2 * k)
    for k in range(0, 6):
        assert sum_T(k, 1) == 2 ** (2 * k + 1) * euler_poly(2 * k + 1, 1)
