"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the terminal summary
(see conftest.py) and also when this file is run directly.
"""

import itertools
import math
import time
from fractions import Fraction

import mpmath
import pytest

from multizeta.central import CentralRequest, central_closed_form_N1, central_value
from multizeta.characters import characters_mod, kronecker_character, principal_character
from multizeta.exact import Cyclotomic, PiMultiple
from multizeta.formula_one import EvalRequest, eval_alternating_even, eval_formula_I, eval_higher_rank
from multizeta.formula_two import A_sequence, eval_alternating_genfun, eval_formula_II
from multizeta.oracle import (
    OracleConfig,
    alternating_one_bar_display,
    numeric_alternating,
    numeric_higher_rank,
    numeric_multiple_L,
    verify_qL_identity,
)
from multizeta.sequences import bernoulli, euler_number, euler_poly, lucas, sum_S, sum_T
from multizeta.suites import admissible_grid, suite_identities

RESULTS: dict[int, str] = {}
ONE, TWO, CHI4 = principal_character(1), principal_character(2), kronecker_character(-4)
OMEGAS = ("bullet", "star")
f = math.factorial


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def pm(q, e) -> PiMultiple:
    return PiMultiple(Cyclotomic.rational(q) if not isinstance(q, Cyclotomic) else q, e)


def both(omega, d, k, chi) -> tuple[PiMultiple, PiMultiple]:
    req = EvalRequest(omega, d, k, chi)
    return eval_formula_I(req), eval_formula_II(req)


def test_criterion_01_zeta_table():
    t0 = time.perf_counter()
    bad = []
    for d in range(1, 5):
        expected = {
            1: pm(Fraction(1, f(2 * d + 1)), 2 * d),
            2: pm(Fraction(2 ** (2 * d + 1), f(4 * d + 2)), 4 * d),
            3: pm(Fraction(3 * 2 ** (6 * d + 1), f(6 * d + 3)), 6 * d),
        }
        for k, exp in expected.items():
            one, two = both("bullet", d, k, ONE)
            if not (one == exp and two == exp):
                bad.append((k, d))
    elapsed = time.perf_counter() - t0
    record(1, not bad and elapsed < 10, f"zeta bullet table k<=3, d<=4, both engines, {elapsed:.2f}s, mismatches={bad}")


def test_criterion_02_character_tables():
    bad = []

    def check(tag, omega, d, k, chi, exp):
        one, two = both(omega, d, k, chi)
        if not (one == exp and two == exp):
            bad.append(tag)

    for d in range(1, 4):
        sign = (-1) ** (d * (d - 1) // 2)
        check(f"zeta*2/{d}", "star", d, 1, ONE,
              pm((-1) ** (d - 1) * (2 ** (2 * d) - 2) * bernoulli(2 * d) / f(2 * d), 2 * d))
        check(f"chi2 2/{d}", "bullet", d, 1, TWO, pm(Fraction(1, 2 ** (2 * d) * f(2 * d)), 2 * d))
        check(f"chi2 4/{d}", "bullet", d, 2, TWO, pm(Fraction(1, 2 ** (2 * d) * f(4 * d)), 4 * d))
        check(f"chi2 6/{d}", "bullet", d, 3, TWO, pm(Fraction(3, 4 * f(6 * d)), 6 * d))
        check(f"chi2*2/{d}", "star", d, 1, TWO,
              pm(Fraction((-1) ** d * euler_number(2 * d), 2 ** (2 * d) * f(2 * d)), 2 * d))
        check(f"chi-4 1/{d}", "bullet", d, 0, CHI4, pm(Fraction(sign, 2 ** (2 * d) * f(d)), d))
        check(f"chi-4 3/{d}", "bullet", d, 1, CHI4, pm(Fraction(3 * sign, 2 ** (3 * d + 1) * f(3 * d)), 3 * d))
        check(f"chi-4 5/{d}", "bullet", d, 2, CHI4,
              pm(Fraction(5 * sign * (lucas(5 * d) - 1), 2 ** (5 * d + 2) * f(5 * d)), 5 * d))
        check(f"chi-4*1/{d}", "star", d, 0, CHI4, pm(sign * euler_poly(d, Fraction(3, 4)) / f(d), d))
    check("L(5;chi-4)", "bullet", 1, 2, CHI4, pm(Fraction(5, 1536), 5))
    lucas_ok = (lucas(5), lucas(10), lucas(15)) == (11, 123, 1364)
    record(2, not bad and lucas_ok, f"chi2 and chi-4 tables d<=3, Lucas L5/L10/L15, L(5;chi-4)=5pi^5/1536, mismatches={bad}")


def test_criterion_03_engine_cross_validation():
    t0 = time.perf_counter()
    grid = admissible_grid(7, 4)
    mismatches, count = [], 0
    for chi, kappa, k in grid:
        for omega in OMEGAS:
            for d in range(1, 4):
                one, two = both(omega, d, k, chi)
                count += 1
                if not (one.coefficient == two.coefficient and one.pi_exponent == two.pi_exponent):
                    mismatches.append((omega, chi.label, kappa, d))
    elapsed = time.perf_counter() - t0
    ok = not mismatches and count == len(grid) * 3 * 2 and elapsed < 300
    record(3, ok, f"Formula I == Formula II on {count} cases ({len(grid)} (chi,kappa) pairs), {elapsed:.1f}s")


def test_criterion_04_zero_value():
    chi = kronecker_character(-8)
    exact = eval_formula_I(EvalRequest("bullet", 2, 0, chi))
    r = numeric_multiple_L("bullet", [1, 1], [chi, chi], OracleConfig(cutoff=10**5, grouping="full-period"))
    dev = float(abs(r.value))
    ok = exact.coefficient.is_zero() and dev <= 1e-4
    record(4, ok, f"L bullet_2({{1}}^2; chi-8) = 0 exactly; oracle |value| = {dev:.2e} (bound {r.tail_bound:.2e})")


def test_criterion_05_identity_suite():
    rep = suite_identities(kmax=6, dmax=8, n_max=7, kappa_max=4, depth_max=3, euler_kmax=5, chi4_weight_max=10)
    groups = {}
    for c in rep.cases:
        g = c.case_id.split("/")[0]
        groups.setdefault(g, [0, 0])
        groups[g][0] += c.passed
        groups[g][1] += 1
    summary = ", ".join(f"{g} {p}/{t}" for g, (p, t) in groups.items())
    record(5, rep.passed, summary)


def test_criterion_06_A_vanishing():
    bad, checked = [], 0
    for chi, kappa, _ in admissible_grid(7, 4):
        if chi.modulus <= 2 and kappa % 2:
            continue
        for omega in OMEGAS:
            values = A_sequence(omega, kappa, chi, 3 * kappa).values
            for n in range(1, 3 * kappa + 1):
                if n % kappa:
                    checked += 1
                    if not values[n].is_zero():
                        bad.append((omega, chi.label, kappa, n))
    record(6, not bad, f"A_n = 0 for kappa not dividing n <= 3 kappa: {checked} coefficients checked, failures={bad[:5]}")


def test_criterion_07_central_values():
    bad, checked = [], 0
    for omega in OMEGAS:
        for d in range(1, 11):
            checked += 1
            if central_value(CentralRequest(omega, d, 0, ONE)) != Cyclotomic.rational(central_closed_form_N1(omega, d)):
                bad.append(("N=1", omega, d))
        for N in range(2, 6):
            for kappa in (0, 2, 4):
                for d in range(1, 7):
                    checked += 1
                    if not central_value(CentralRequest(omega, d, kappa // 2, principal_character(N))).is_zero():
                        bad.append((omega, N, kappa, d))
        for N in range(3, 6):
            for chi in characters_mod(N):
                if chi.is_principal():
                    continue
                for kappa in range(0, 5):
                    if (kappa - chi.parity) % 2:
                        continue
                    for d in range(1, 7):
                        checked += 1
                        if not central_value(CentralRequest(omega, d, (kappa - chi.parity) // 2, chi)).is_zero():
                            bad.append((omega, chi.label, kappa, d))
    zeta0 = central_value(CentralRequest("bullet", 1, 0, ONE)) == Cyclotomic.rational(Fraction(-1, 2))
    record(7, not bad and zeta0, f"{checked} central values, zeta(0) = -1/2: {zeta0}, failures={bad[:5]}")


def test_criterion_08_S_T_sums():
    ok = sum_S(1, 1) == Fraction(1, 3)
    ok &= all(sum_S(k, 1) == -(2 * k - 1) * bernoulli(2 * k) for k in range(2, 7))
    ok &= all(sum_T(k, 1) == 2 ** (2 * k + 1) * euler_poly(2 * k + 1, 1) for k in range(0, 6))
    for d in (1, 2):
        s_form = pm(((2 ** (4 * d) + 4) * sum_S(2 * d, -1) - 4 * sum_S(2 * d, -4)) / f(4 * d), 4 * d)
        t_form = pm(sum_T(2 * d, -1) / (2 ** (4 * d) * f(4 * d)), 4 * d)
        ok &= all(v == s_form for v in both("star", d, 2, ONE))
        ok &= all(v == t_form for v in both("star", d, 2, TWO))
    record(8, ok, "S_k(1), T_k(1) identities; zeta star and chi2 star at {4}^d, d<=2, via both engines")


def test_criterion_09_oracle():
    worst_ratio, worst_bound, count, bad = 0.0, 0.0, 0, []
    for chi, kappa, k in admissible_grid(7, 4):
        if kappa < 2:
            continue
        for omega in OMEGAS:
            for d in (1, 2):
                exact = eval_formula_I(EvalRequest(omega, d, k, chi)).to_complex(30)
                r = numeric_multiple_L(omega, [kappa] * d, [chi] * d, OracleConfig(cutoff=10**4))
                dev = float(abs(r.value - exact))
                count += 1
                worst_bound = max(worst_bound, r.tail_bound)
                if r.tail_bound > 0:
                    worst_ratio = max(worst_ratio, dev / r.tail_bound)
                if dev > r.tail_bound or r.tail_bound > 1e-6:
                    bad.append((omega, chi.label, kappa, d))
    q_dev = 0.0
    for s, omega, d in itertools.product((2, 3), OMEGAS, (1, 2)):
        for chi in (ONE, CHI4):
            q_dev = max(q_dev, verify_qL_identity(Fraction(1, 2), s, chi, d, omega).deviation)
    ok = not bad and q_dev <= 1e-8
    record(9, ok, f"{count} oracle points at cutoff 1e4, max bound {worst_bound:.1e}, "
                  f"max dev/bound {worst_ratio:.2f}; q-identity max deviation {q_dev:.1e}")


def test_criterion_10_higher_rank():
    options = [(1, ONE), (0, CHI4)]  # kappa = 2 with the trivial character, kappa = 1 with chi_-4
    bad, perm_ok, reduce_ok = [], True, True
    worst = 0.0
    for specs in itertools.product(options, repeat=2):
        for omega in OMEGAS:
            for d in (1, 2):
                exact = eval_higher_rank(omega, d, list(specs))
                perm_ok &= exact == eval_higher_rank(omega, d, list(specs)[::-1])
                rows = [(2 * k + c.parity, c) for k, c in specs]
                r = numeric_higher_rank(omega, d, rows, OracleConfig(cutoff=10**5, grouping="full-period"))
                dev = float(abs(r.value - exact.to_complex(30)))
                worst = max(worst, dev)
                if dev > r.tail_bound:
                    bad.append((omega, d, specs))
    for (k, chi), omega, d in itertools.product(options, OMEGAS, (1, 2, 3)):
        reduce_ok &= eval_higher_rank(omega, d, [(k, chi)]) == eval_formula_I(EvalRequest(omega, d, k, chi))
    record(10, not bad and perm_ok and reduce_ok,
           f"rank 2 vs oracle max dev {worst:.1e}, permutation invariant: {perm_ok}, rank 1 reduction: {reduce_ok}")


def test_criterion_11_alternating():
    exact_ok = all(eval_alternating_even(o, d, k) == eval_alternating_genfun(o, d, k)
                   for o in OMEGAS for d in (1, 2, 3) for k in (1, 2))
    r = numeric_alternating("bullet", 2, 1, OracleConfig(cutoff=10**6, grouping="full-period"))
    display = alternating_one_bar_display("bullet", 2)
    expected = (mpmath.log(2) ** 2 - mpmath.pi**2 / 6) / 2
    dev = float(abs(r.value - display))
    ok = exact_ok and dev <= 1e-4 and abs(display - expected) < 1e-12
    record(11, ok, f"even alternating two routes agree: {exact_ok}; {{1bar}}^2 display vs series deviation {dev:.1e}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
