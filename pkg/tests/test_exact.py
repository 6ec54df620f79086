import cmath
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from multizeta.exact import (
    Cyclotomic,
    PiMultiple,
    PowerSeries,
    cyclotomic_polynomial,
    euler_phi,
    rational_power,
    root_of_unity,
    sqrt_int,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def cyclo(draw, order=None):
    m = order or draw(st.integers(1, 24))
    cs = draw(st.lists(small, min_size=1, max_size=m))
    return Cyclotomic(m, cs)


@st.composite
def same_order_triple(draw):
    m = draw(st.integers(1, 24))
    return draw(cyclo(m)), draw(cyclo(m)), draw(cyclo(m))


def close(a: complex, b: complex, tol=1e-9) -> bool:
    return abs(a - b) <= tol * (1 + abs(b))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert all(len(cyclotomic_polynomial(m)) - 1 == euler_phi(m) for m in range(1, 40))


def test_root_of_unity_relations():
    z = root_of_unity(12)
    assert z**12 == Cyclotomic.one()
    assert z**6 == Cyclotomic.rational(-1)
    assert root_of_unity(4) ** 2 == -Cyclotomic.one()
    # sum of all primitive 5th roots is mu(5) = -1
    s = sum((root_of_unity(5, a) for a in range(1, 5)), Cyclotomic.zero())
    assert s == Cyclotomic.rational(-1)


@given(same_order_triple())
def test_ring_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Cyclotomic.zero()


@given(cyclo(), cyclo())
def test_mixed_orders_embed(a, b):
    assert close(complex(a * b), complex(a) * complex(b))
    assert close(complex(a + b), complex(a) + complex(b))


@given(cyclo())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == Cyclotomic.one()


@given(cyclo())
def test_conjugate_is_complex_conjugate(a):
    assert close(complex(a.conjugate()), complex(a).conjugate())


@given(cyclo())
def test_minimal_preserves_value_and_hash(a):
    m = a.minimal()
    assert m == a and hash(m) == hash(a)
    assert a.embed(a.order * 3) == a
    assert hash(a.embed(a.order * 2)) == hash(a)


@given(cyclo())
def test_json_round_trip(a):
    data = json.loads(json.dumps(a.to_json()))
    assert Cyclotomic.from_json(data) == a
    assert len(data["coeffs"]) == euler_phi(a.order)


def test_sqrt_int():
    for n in (2, 3, 5, 6, 7, 8, 12, 13, 20, 24):
        r = sqrt_int(n)
        assert r * r == Cyclotomic.rational(n)
        assert close(complex(r), n**0.5)
    assert rational_power(5, -3) * rational_power(5, 3) == Cyclotomic.one()
    assert rational_power(4, 3) == Cyclotomic.rational(8)


def test_format_and_rational():
    assert Cyclotomic.rational(Fraction(-3, 4)).format() == "-3/4"
    assert root_of_unity(4).format() == "z4"
    assert Cyclotomic.rational(Fraction(7, 2)).to_rational() == Fraction(7, 2)
    with pytest.raises(ValueError):
        root_of_unity(4).to_rational()


def test_pimultiple():
    a = PiMultiple(Cyclotomic.rational(Fraction(1, 6)), 2)
    assert a.format() == "1/6 * pi^2"
    assert close(complex(a.to_complex()), cmath.pi**2 / 6)
    assert PiMultiple(Cyclotomic.zero(), 3) == PiMultiple(Cyclotomic.zero(), 5)
    assert (a * a).pi_exponent == 4
    with pytest.raises(ValueError):
        a + PiMultiple(Cyclotomic.one(), 3)
    data = a.to_json(digits=10)
    assert data["pi_exponent"] == 2 and data["coefficient"]["coeffs"] == ["1/6"]
    assert data["numeric"]["re"].startswith("1.644934")


@given(st.lists(small, min_size=1, max_size=8))
def test_exp_of_negation_is_inverse(cs):
    a = PowerSeries([0] + cs, len(cs))
    prod = a.exp() * (-a).exp()
    assert prod[0] == Cyclotomic.one()
    assert all(prod[n].is_zero() for n in range(1, len(cs) + 1))


@given(st.lists(small, min_size=2, max_size=8))
def test_series_inverse(cs):
    if cs[0] == 0:
        cs[0] = Fraction(1)
    a = PowerSeries(cs, len(cs) - 1)
    one = a * a.inverse()
    assert one[0] == Cyclotomic.one()
    assert all(one[n].is_zero() for n in range(1, len(cs)))


def test_exp_coefficients():
    e = PowerSeries([0, 1, 0, 0, 0], 4).exp()
    assert [e[n].to_rational() for n in range(5)] == [1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24)]
