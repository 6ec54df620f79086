import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from multizeta.characters import characters_mod, kronecker_character, principal_character
from multizeta.exact import Cyclotomic, rational_power
from multizeta.formula_one import EvalRequest, eval_alternating_even, eval_formula_I
from multizeta.formula_two import (
    A_chi_minus4_closed,
    A_coeff,
    A_sequence,
    C_constant,
    eval_alternating_genfun,
    eval_formula_II,
    inner_visit_counts,
    product_identity_check,
    trig_table,
)
from multizeta.sequences import euler_poly


def admissible(N, kappa):
    for chi in characters_mod(N):
        if (kappa - chi.parity) % 2 or (kappa == 1 and chi.is_principal()):
            continue
        if N <= 2 and kappa % 2:
            continue
        yield chi


@given(st.integers(1, 7), st.integers(1, 4), st.integers(1, 3), st.sampled_from(["bullet", "star"]), st.data())
def test_engines_agree(N, kappa, d, omega, data):
    chis = list(admissible(N, kappa))
    if not chis:
        return
    chi = data.draw(st.sampled_from(chis))
    req = EvalRequest(omega, d, (kappa - chi.parity) // 2, chi)
    assert eval_formula_I(req) == eval_formula_II(req)


@pytest.mark.parametrize("N", [3, 4, 5, 7])
def test_A_vanishes_off_multiples(N):
    for kappa in range(1, 5):
        for chi in admissible(N, kappa):
            for omega in ("bullet", "star"):
                values = A_sequence(omega, kappa, chi, 3 * kappa).values
                assert all(values[n].is_zero() for n in range(3 * kappa + 1) if n % kappa)


@given(st.integers(3, 9), st.integers(1, 4), st.integers(0, 8))
def test_inner_visit_counts(N, kappa, n):
    counts = inner_visit_counts("bullet", N, 1, kappa, n)
    assert counts[n] == math.comb(n + kappa - 1, kappa - 1)


def test_outer_visit_counts():
    chi = characters_mod(7)[1]
    seq = A_sequence("bullet", 1, chi, 6)
    nbar = 3
    assert list(seq.visits) == [math.comb(n + nbar - 1, nbar - 1) for n in range(7)]


def test_trig_table_at_quarter_pi():
    tt = trig_table(4, 1, 6)
    for n in range(7):
        star = rational_power(2, 4 * n + 1) * euler_poly(n, Fraction(3, 4)) * (-1) ** (n * (n + 1) // 2)
        assert tt.T_star[n] == star
        assert tt.T_bullet[n] == rational_power(2, -1) * (-1) ** (n * (n - 1) // 2)
    with pytest.raises(ValueError):
        trig_table(4, 4, 3)


@pytest.mark.parametrize("omega", ["bullet", "star"])
def test_chi_minus4_single_sum(omega):
    chi = kronecker_character(-4)
    for k in range(0, 3):
        kappa = 2 * k + 1
        for n in range(0, 3 * kappa + 1):
            assert A_chi_minus4_closed(omega, k, n) == A_coeff(omega, k, chi, n)
    with pytest.raises(ValueError):
        A_chi_minus4_closed(omega, 1, 5, d_context=2)


def test_small_moduli_need_even_kappa():
    with pytest.raises(ValueError):
        A_sequence("bullet", 3, principal_character(2), 3)


def test_C_constant_rational_for_small_moduli():
    assert C_constant("bullet", 1, 1, principal_character(1)) == Cyclotomic.rational(Fraction(1, 6))
    assert C_constant("star", 2, 1, principal_character(2)).is_rational()


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("omega", ["bullet", "star"])
def test_alternating_two_routes(omega, d, k):
    assert eval_alternating_even(omega, d, k) == eval_alternating_genfun(omega, d, k)


@pytest.mark.parametrize("N,chi,kappa", [(1, None, 2), (2, None, 2), (5, "k5", 2), (4, "k-4", 1)])
def test_product_identity(N, chi, kappa):
    chi = {None: None, "k5": kronecker_character(5), "k-4": kronecker_character(-4)}[chi]
    res = product_identity_check(N, chi, kappa, [Fraction(1, 3), Fraction(-1, 2)], truncation=2000)
    assert res.passed, res
