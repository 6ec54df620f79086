"""Central limit values at equal non-positive integers -kappa.

They are read off the coefficient of t^d in exp(-eps sum_n B_{n kappa + 1, chi^n} t^n
/ (n (n kappa + 1))), using L(-kappa, chi) = -B_{kappa+1, chi} / (kappa + 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import Character, char_power
from .combinatorics import binomial_rational
from .exact import Cyclotomic, PowerSeries
from .formula_one import check_omega, eps_omega
from .sequences import gen_bernoulli


@dataclass(frozen=True)
class CentralRequest:
    omega: str
    d: int
    k: int
    chi: Character

    def __post_init__(self):
        check_omega(self.omega)
        if self.d < 1:
            raise ValueError("depth must be at least 1")
        if self.kappa < 0:
            raise ValueError(f"kappa = 2k + e(chi) must be non-negative, got {self.kappa}")

    @property
    def kappa(self) -> int:
        return 2 * self.k + self.chi.parity


def central_value(req: CentralRequest) -> Cyclotomic:
    eps = eps_omega(req.omega)
    d, kappa = req.d, req.kappa
    coeffs = [Cyclotomic.zero()]
    for n in range(1, d + 1):
        b = gen_bernoulli(n * kappa + 1, char_power(req.chi, n))
        coeffs.append(b * Fraction(-eps, n * (n * kappa + 1)))
    series = PowerSeries(coeffs, d).exp()
    return series[d] * eps**d


def central_closed_form_N1(omega: str, d: int) -> Fraction:
    if d < 0:
        raise ValueError("depth must be non-negative")
    eps = eps_omega(omega)
    return eps**d * (-1) ** d * binomial_rational(Fraction(eps, 2), d)


__all__ = ["CentralRequest", "central_value", "central_closed_form_N1"]
