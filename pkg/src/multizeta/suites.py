"""Executable verification suites.

Each suite is a list of named cases run on a thread pool and assembled in
submission order, so two runs give identical reports.  Exact cases compare
canonical cyclotomic values structurally; numeric cases compare a deviation with
an explicit bound.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .central import CentralRequest, central_closed_form_N1, central_value
from .characters import (
    W_mu,
    char_power,
    characters_mod,
    gauss_sum,
    kronecker_character,
    principal_character,
)
from .combinatorics import compositions, multinomial, partitions_of
from .exact import Cyclotomic, PiMultiple, PowerSeries, root_of_unity
from .formula_one import (
    OMEGAS,
    EvalRequest,
    convert_bullet_star,
    eps_omega,
    eval_formula_I,
    eval_higher_rank,
)
from .formula_two import A_chi_minus4_closed, A_sequence, C_constant, eval_formula_II
from .oracle import OracleConfig, numeric_higher_rank, numeric_multiple_L, verify_qL_identity
from .sequences import bernoulli, euler_number, euler_poly, gen_bernoulli, lucas, sum_S, sum_T


def thread_count() -> int:
    raw = os.environ.get("MULTIZETA_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


@dataclass(frozen=True)
class Case:
    case_id: str
    passed: bool
    lhs: str
    rhs: str
    deviation: str  # "exact" or a float rendering

    def to_json(self) -> dict:
        return {"id": self.case_id, "status": "pass" if self.passed else "fail",
                "lhs": self.lhs, "rhs": self.rhs, "deviation": self.deviation}


@dataclass
class SuiteReport:
    name: str
    cases: list[Case] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def totals(self) -> dict:
        ok = sum(c.passed for c in self.cases)
        return {"total": len(self.cases), "passed": ok, "failed": len(self.cases) - ok}

    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.passed]

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "totals": self.totals,
                "cases": [c.to_json() for c in self.cases]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def extend(self, other: "SuiteReport") -> None:
        self.cases.extend(other.cases)


def _render(x) -> str:
    if hasattr(x, "format"):
        return x.format()
    return str(x)


def _exact(case_id: str, lhs, rhs) -> Case:
    if isinstance(lhs, Fraction) and isinstance(rhs, Cyclotomic):
        lhs = Cyclotomic.rational(lhs)
    if isinstance(rhs, Fraction) and isinstance(lhs, Cyclotomic):
        rhs = Cyclotomic.rational(rhs)
    return Case(case_id, lhs == rhs, _render(lhs), _render(rhs), "exact")


def _numeric(case_id: str, lhs, rhs, bound: float) -> Case:
    dev = abs(complex(lhs) - complex(rhs))
    return Case(case_id, dev <= bound, repr(complex(lhs)), repr(complex(rhs)),
                f"{dev:.3e} (bound {bound:.3e})")


Job = tuple[str, Callable[[], Case]]


def run_jobs(name: str, jobs: Sequence[Job], threads: int | None = None) -> SuiteReport:
    def guarded(job: Job) -> Case:
        case_id, fn = job
        try:
            return fn()
        except Exception as exc:  # a crashing case is a failing case
            return Case(case_id, False, "error", f"{type(exc).__name__}: {exc}", "error")

    workers = threads or thread_count()
    if workers == 1:
        cases = [guarded(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cases = list(pool.map(guarded, jobs))
    return SuiteReport(name, cases)


def admissible_grid(n_max: int, kappa_max: int):
    """(chi, kappa, k) for every character mod N <= n_max and parity-admissible kappa."""
    out = []
    for N in range(1, n_max + 1):
        for chi in characters_mod(N):
            for kappa in range(1, kappa_max + 1):
                if (kappa - chi.parity) % 2:
                    continue
                if kappa == 1 and chi.is_principal():
                    continue
                out.append((chi, kappa, (kappa - chi.parity) // 2))
    return out


# -- summation identities ---------------------------------------------------


def master_identity_lhs(omega: str, d: int, kappa: int, chi) -> Cyclotomic:
    """Partition side: Euler factors, Gauss sums and conjugate generalized Bernoulli numbers."""
    total = Cyclotomic.zero()
    for mu in partitions_of(d):
        term = Cyclotomic.rational(Fraction(mu.eps_omega(omega), mu.z * 2**mu.length))
        term = term * W_mu(mu, kappa, chi)
        e_mu = 0
        for part in mu.parts:
            prim = char_power(chi, part).primitive
            e_mu += prim.parity
            w = kappa * part
            bern = gen_bernoulli(w, char_power(prim, -1))
            term = term * gauss_sum(prim) * bern * Fraction(1, prim.modulus**w * math.factorial(w))
        total = total + term * (-1) ** (mu.length - e_mu)
    return total


def master_identity_rhs(omega: str, d: int, kappa: int, chi) -> Cyclotomic:
    k = (kappa - chi.parity) // 2
    a = A_sequence(omega, kappa, chi, kappa * d).values[kappa * d]
    # the half-integer sign power is taken on the branch (-1)^(1/2) = -i
    return C_constant(omega, d, k, chi) * a * root_of_unity(4, -kappa * d) * Fraction(1, 2 ** (kappa * d))


def bernoulli_from_odd_multinomials(k: int) -> Cyclotomic:
    total = [Fraction(0)] * k
    for comp in compositions(k, k):
        expo = sum(l * c for l, c in enumerate(comp, start=1))
        total[expo % k] += multinomial(3 * k, [2 * c + 1 for c in comp])
    scale = Fraction(math.factorial(2 * k), 2 ** (2 * k - 1) * math.factorial(3 * k))
    return Cyclotomic(k, total) * scale


def bernoulli_from_even_multinomials(k: int) -> Cyclotomic:
    total = [Fraction(0)] * k
    for comp in compositions(k, k):
        expo = sum(l * c for l, c in enumerate(comp, start=1))
        total[expo % k] += multinomial(2 * k, [2 * c for c in comp])
    return Cyclotomic(k, total) * Fraction(1, 2 ** (2 * k - 1) * (2 ** (2 * k) - 1))


def bernoulli_from_partitions(d: int) -> Fraction:
    total = Fraction(0)
    for mu in partitions_of(d):
        term = Fraction((-1) ** mu.length, mu.z * 2**mu.length)
        for part in mu.parts:
            term *= bernoulli(2 * part) / math.factorial(2 * part)
        total += term
    return -Fraction(2 ** (2 * d) * math.factorial(2 * d), 2 ** (2 * d) - 2) * total


def euler_from_partitions(d: int) -> Fraction:
    total = Fraction(0)
    for mu in partitions_of(d):
        term = Fraction((-1) ** mu.length, mu.z * 2**mu.length)
        for part in mu.parts:
            term *= (2 ** (2 * part) - 1) * bernoulli(2 * part) / math.factorial(2 * part)
        total += term
    return 2 ** (2 * d) * math.factorial(2 * d) * total


def euler_from_root_multinomials(k: int) -> Cyclotomic:
    """E_2k from a sum over (n_1, ..., n_{2k+1}) with n_1 + ... = 2k + 1.

    The multinomial sum is the coefficient of t^(2k+1)/(2k+1)! in the product over l
    of sum_n (-1)^(n(n-1)/2) zeta^(l n) t^n / n!, which is how it is evaluated here.
    """
    m = 2 * k + 1
    prod = PowerSeries([Cyclotomic.one()], m)
    for l in range(1, m + 1):
        factor = PowerSeries([root_of_unity(m, l * n) * Fraction((-1) ** (n * (n - 1) // 2), math.factorial(n))
                              for n in range(m + 1)], m)
        prod = prod * factor
    s = prod[m] * math.factorial(m)
    return s * Fraction((-1) ** k, m * 2 ** (2 * k))


def chi4_bare_sum(omega: str, kappa: int, n: int) -> Cyclotomic:
    """Composition sum of the chi_-4 trigonometric expansion, without its power of 2."""
    terms = [Fraction(0)] * kappa
    for comp in compositions(n, kappa):
        expo = sum(l * c for l, c in enumerate(comp, start=1))
        coeff = Fraction(multinomial(n, comp))
        if omega == "bullet":
            half = sum(c * (c - 1) // 2 for c in comp)
        else:
            half = sum(c * (c + 1) // 2 for c in comp)
            for c in comp:
                coeff *= euler_poly(c, Fraction(3, 4))
        terms[expo % kappa] += coeff * (-1) ** half
    return Cyclotomic(kappa, terms)


def chi4_family_lhs(omega: str, d: int, kappa: int) -> Cyclotomic:
    total = Cyclotomic.zero()
    for mu in partitions_of(d):
        odd, even = mu.odd_part, mu.even_part
        term = Fraction(mu.eps_omega(omega) * (-1) ** mu.length, mu.z * 2 ** (mu.length + kappa * odd.size))
        for part in even.parts:
            w = kappa * part
            term *= (2**w - 1) * bernoulli(w) / math.factorial(w)
        for part in odd.parts:
            w = kappa * part - 1
            term *= Fraction(euler_number(w), math.factorial(w))
        total = total + root_of_unity(4, odd.length) * term
    return total


def chi4_family_rhs(omega: str, d: int, kappa: int) -> Cyclotomic:
    eps = eps_omega(omega)
    tilde = (eps + 1) // 2
    n = kappa * d
    scale = Fraction(eps**n, 2 ** (2 * n * (1 - tilde)) * math.factorial(n))
    return chi4_bare_sum(omega, kappa, n) * root_of_unity(4, n) * scale


def suite_identities(kmax: int = 6, dmax: int = 8, n_max: int = 7, kappa_max: int = 4, depth_max: int = 3,
                     euler_kmax: int | None = None, chi4_weight_max: int = 10,
                     threads: int | None = None) -> SuiteReport:
    """Summation identities for Bernoulli and Euler numbers."""
    if min(kmax, dmax, n_max, kappa_max, depth_max) < 1:
        raise ValueError("bounds must be at least 1")
    euler_kmax = kmax if euler_kmax is None else euler_kmax
    jobs: list[Job] = []
    for chi, kappa, _ in admissible_grid(n_max, kappa_max):
        for omega in OMEGAS:
            for d in range(1, depth_max + 1):
                cid = f"master/{omega}/{chi.label}/kappa={kappa}/d={d}"
                jobs.append((cid, lambda cid=cid, o=omega, d=d, ka=kappa, c=chi:
                             _exact(cid, master_identity_lhs(o, d, ka, c), master_identity_rhs(o, d, ka, c))))
    for k in range(1, kmax + 1):
        cid = f"bernoulli-odd-multinomial/k={k}"
        jobs.append((cid, lambda cid=cid, k=k: _exact(cid, bernoulli_from_odd_multinomials(k), bernoulli(2 * k))))
        cid = f"bernoulli-even-multinomial/k={k}"
        jobs.append((cid, lambda cid=cid, k=k: _exact(cid, bernoulli_from_even_multinomials(k), bernoulli(2 * k))))
    for d in range(1, dmax + 1):
        cid = f"bernoulli-partition/d={d}"
        jobs.append((cid, lambda cid=cid, d=d: _exact(cid, bernoulli_from_partitions(d), bernoulli(2 * d))))
        cid = f"euler-partition/d={d}"
        jobs.append((cid, lambda cid=cid, d=d: _exact(cid, euler_from_partitions(d), Fraction(euler_number(2 * d)))))
    for k in range(0, euler_kmax + 1):
        cid = f"euler-root-multinomial/k={k}"
        jobs.append((cid, lambda cid=cid, k=k: _exact(cid, euler_from_root_multinomials(k),
                                                      Fraction(euler_number(2 * k)))))
    for kappa in range(1, chi4_weight_max + 1, 2):
        for d in range(1, chi4_weight_max // kappa + 1):
            for omega in OMEGAS:
                cid = f"chi-4/{omega}/kappa={kappa}/d={d}"
                jobs.append((cid, lambda cid=cid, o=omega, d=d, ka=kappa:
                             _exact(cid, chi4_family_lhs(o, d, ka), chi4_family_rhs(o, d, ka))))
                cid = f"chi-4-closed/{omega}/kappa={kappa}/d={d}"
                jobs.append((cid, lambda cid=cid, o=omega, d=d, ka=kappa:
                             _exact(cid, A_chi_minus4_closed(o, (ka - 1) // 2, ka * d, d_context=d),
                                    A_sequence(o, ka, kronecker_character(-4), ka * d).values[ka * d])))
    return run_jobs("identities", jobs, threads)


# -- closed-form tables -----------------------------------------------------


def _both_engines(cid: str, omega: str, d: int, k: int, chi, expected: PiMultiple) -> Case:
    req = EvalRequest(omega, d, k, chi)
    one, two = eval_formula_I(req), eval_formula_II(req)
    ok = one == expected and two == expected
    return Case(cid, ok, f"I: {one.format()}; II: {two.format()}", expected.format(), "exact")


def _pm(coeff, e: int) -> PiMultiple:
    if not isinstance(coeff, Cyclotomic):
        coeff = Cyclotomic.rational(coeff)
    return PiMultiple(coeff, e)


def suite_tables(dmax: int = 4, threads: int | None = None) -> SuiteReport:
    """Classical closed forms at equal arguments, through both engines."""
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    one, two, chi4 = principal_character(1), principal_character(2), kronecker_character(-4)
    f = math.factorial
    jobs: list[Job] = []

    def add(cid, omega, d, k, chi, expected):
        jobs.append((cid, lambda: _both_engines(cid, omega, d, k, chi, expected)))

    for d in range(1, dmax + 1):
        add(f"zeta/bullet/2/d={d}", "bullet", d, 1, one, _pm(Fraction(1, f(2 * d + 1)), 2 * d))
        add(f"zeta/bullet/4/d={d}", "bullet", d, 2, one, _pm(Fraction(2 ** (2 * d + 1), f(4 * d + 2)), 4 * d))
        add(f"zeta/bullet/6/d={d}", "bullet", d, 3, one, _pm(Fraction(3 * 2 ** (6 * d + 1), f(6 * d + 3)), 6 * d))
        add(f"zeta/star/2/d={d}", "star", d, 1, one,
            _pm((-1) ** (d - 1) * (2 ** (2 * d) - 2) * bernoulli(2 * d) / f(2 * d), 2 * d))
        add(f"chi2/bullet/2/d={d}", "bullet", d, 1, two, _pm(Fraction(1, 2 ** (2 * d) * f(2 * d)), 2 * d))
        add(f"chi2/bullet/4/d={d}", "bullet", d, 2, two, _pm(Fraction(1, 2 ** (2 * d) * f(4 * d)), 4 * d))
        add(f"chi2/bullet/6/d={d}", "bullet", d, 3, two, _pm(Fraction(3, 4 * f(6 * d)), 6 * d))
        add(f"chi2/star/2/d={d}", "star", d, 1, two,
            _pm(Fraction((-1) ** d * euler_number(2 * d), 2 ** (2 * d) * f(2 * d)), 2 * d))
        sign = (-1) ** (d * (d - 1) // 2)
        add(f"chi-4/bullet/1/d={d}", "bullet", d, 0, chi4, _pm(Fraction(sign, 2 ** (2 * d) * f(d)), d))
        add(f"chi-4/bullet/3/d={d}", "bullet", d, 1, chi4, _pm(Fraction(3 * sign, 2 ** (3 * d + 1) * f(3 * d)), 3 * d))
        add(f"chi-4/bullet/5/d={d}", "bullet", d, 2, chi4,
            _pm(Fraction(5 * sign * (lucas(5 * d) - 1), 2 ** (5 * d + 2) * f(5 * d)), 5 * d))
        add(f"chi-4/star/1/d={d}", "star", d, 0, chi4, _pm(sign * euler_poly(d, Fraction(3, 4)) / f(d), d))
    add("zeta/bullet/10/d=1", "bullet", 1, 5, one,
        _pm(Fraction(2**11 * 5 * (lucas(15) + 1), f(15)), 10))
    add("chi2/bullet/10/d=1", "bullet", 1, 5, two, _pm(Fraction(5 * (lucas(10) + 1), 2**4 * f(10)), 10))
    add("chi-4/single/5", "bullet", 1, 2, chi4, _pm(Fraction(5, 1536), 5))
    for n, value in ((5, 11), (10, 123), (15, 1364)):
        jobs.append((f"lucas/{n}", lambda n=n, v=value: _exact(f"lucas/{n}", Fraction(lucas(n)), Fraction(v))))

    jobs.append(("S/k=1", lambda: _exact("S/k=1", sum_S(1, 1), Fraction(1, 3))))
    for k in range(2, 7):
        cid = f"S/k={k}"
        jobs.append((cid, lambda cid=cid, k=k: _exact(cid, sum_S(k, 1), -(2 * k - 1) * bernoulli(2 * k))))
    for k in range(0, 6):
        cid = f"T/k={k}"
        jobs.append((cid, lambda cid=cid, k=k: _exact(cid, sum_T(k, 1), 2 ** (2 * k + 1) * euler_poly(2 * k + 1, 1))))
    for d in range(1, min(dmax, 2) + 1):
        s_form = ((2 ** (4 * d) + 4) * sum_S(2 * d, -1) - 4 * sum_S(2 * d, -4)) / f(4 * d)
        add(f"zeta/star/4/d={d}", "star", d, 2, one, _pm(s_form, 4 * d))
        t_form = sum_T(2 * d, -1) / (2 ** (4 * d) * f(4 * d))
        add(f"chi2/star/4/d={d}", "star", d, 2, two, _pm(t_form, 4 * d))
    return run_jobs("tables", jobs, threads)


# -- engine cross checks ----------------------------------------------------


def suite_cross(n_max: int = 7, kappa_max: int = 4, dmax: int = 3, oracle_n_max: int = 5,
                oracle_cutoff: int = 10**4, threads: int | None = None) -> SuiteReport:
    """Formula I against Formula II, engines against the numeric oracle, and the central grid."""
    if min(n_max, kappa_max, dmax) < 1:
        raise ValueError("bounds must be at least 1")
    jobs: list[Job] = []
    grid = admissible_grid(n_max, kappa_max)
    for chi, kappa, k in grid:
        for omega in OMEGAS:
            for d in range(1, dmax + 1):
                cid = f"engines/{omega}/{chi.label}/kappa={kappa}/d={d}"

                def job(cid=cid, o=omega, d=d, k=k, c=chi):
                    req = EvalRequest(o, d, k, c)
                    return _exact(cid, eval_formula_I(req).coefficient, eval_formula_II(req).coefficient)

                jobs.append((cid, job))
    for chi, kappa, k in grid:
        if chi.modulus > oracle_n_max or kappa < 2:
            continue
        for omega in OMEGAS:
            for d in (1, 2):
                cid = f"oracle/{omega}/{chi.label}/kappa={kappa}/d={d}"

                def job(cid=cid, o=omega, d=d, k=k, c=chi, ka=kappa):
                    exact = eval_formula_I(EvalRequest(o, d, k, c)).to_complex(30)
                    r = numeric_multiple_L(o, [ka] * d, [c] * d, OracleConfig(cutoff=oracle_cutoff))
                    return _numeric(cid, r.value, exact, r.tail_bound)

                jobs.append((cid, job))
    for chi, kappa, k in admissible_grid(min(n_max, 5), min(kappa_max, 3)):
        for target in OMEGAS:
            source = "star" if target == "bullet" else "bullet"
            cid = f"convert/{target}/{chi.label}/kappa={kappa}/d={dmax}"

            def job(cid=cid, t=target, s=source, k=k, c=chi):
                via = convert_bullet_star(t, dmax, lambda m: eval_formula_I(EvalRequest(s, m, k, c)))
                return _exact(cid, via.coefficient, eval_formula_I(EvalRequest(t, dmax, k, c)).coefficient)

            jobs.append((cid, job))
    one, chi4 = principal_character(1), kronecker_character(-4)
    for specs in (((1, one), (1, one)), ((0, chi4), (1, one)), ((1, one), (0, chi4)), ((0, chi4), (0, chi4))):
        for omega in OMEGAS:
            for d in (1, 2):
                names = ",".join(f"{k}:{c.label}" for k, c in specs)
                cid = f"rank2/{omega}/{names}/d={d}"

                def job(cid=cid, o=omega, d=d, specs=specs):
                    exact = eval_higher_rank(o, d, list(specs)).to_complex(30)
                    rows = [(2 * k + c.parity, c) for k, c in specs]
                    r = numeric_higher_rank(o, d, rows, OracleConfig(cutoff=10**5, grouping="full-period"))
                    return _numeric(cid, r.value, exact, r.tail_bound)

                jobs.append((cid, job))
    for d in range(1, 7):
        for omega in OMEGAS:
            cid = f"central/{omega}/principal:1/d={d}"
            jobs.append((cid, lambda cid=cid, o=omega, d=d: _exact(
                cid, central_value(CentralRequest(o, d, 0, one)), central_closed_form_N1(o, d))))
    for N in range(1, 6):
        for chi in characters_mod(N):
            for kappa in range(0, 5):
                if (kappa - chi.parity) % 2:
                    continue
                if chi.is_principal() and (N == 1 or kappa % 2):
                    continue
                for omega in OMEGAS:
                    for d in range(1, 7):
                        cid = f"central/{omega}/{chi.label}/kappa={kappa}/d={d}"
                        k = (kappa - chi.parity) // 2
                        jobs.append((cid, lambda cid=cid, o=omega, d=d, k=k, c=chi: _exact(
                            cid, central_value(CentralRequest(o, d, k, c)), Fraction(0))))
    for s in (2, 3):
        for omega in OMEGAS:
            for d in (1, 2):
                cid = f"q-series/{omega}/s={s}/d={d}"

                def job(cid=cid, o=omega, d=d, s=s):
                    rep = verify_qL_identity(Fraction(1, 2), s, chi4, d, o)
                    return Case(cid, rep.deviation <= 1e-8, repr(rep.lhs), repr(rep.rhs), f"{rep.deviation:.3e}")

                jobs.append((cid, job))
    return run_jobs("cross", jobs, threads)


SUITES = {
    "identities": suite_identities,
    "tables": suite_tables,
    "cross": suite_cross,
}

__all__ = [
    "Case", "SuiteReport", "run_jobs", "thread_count", "admissible_grid",
    "suite_identities", "suite_tables", "suite_cross", "SUITES",
    "master_identity_lhs", "master_identity_rhs",
    "bernoulli_from_odd_multinomials", "bernoulli_from_even_multinomials",
    "bernoulli_from_partitions", "euler_from_partitions", "euler_from_root_multinomials",
    "chi4_bare_sum", "chi4_family_lhs", "chi4_family_rhs",
]
