"""Multiple L-values at equal positive integers as sums over partitions of the depth.

Every value L^omega_d({kappa}^d; {chi}^d) with kappa = 2k + e(chi) is a cyclotomic
multiple of pi^(kappa d).  Each partition mu of d contributes a product over its parts
of single L-values L(kappa mu_j; chi^mu_j), and each of those is a Gauss sum times a
generalized Bernoulli number of the primitive character inducing chi^mu_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .characters import (
    Character,
    cached_gauss_sum,
    char_power,
    euler_factor_alpha,
    factorize,
    kronecker_character,
    principal_character,
)
from .combinatorics import partitions_of
from .exact import Cyclotomic, PiMultiple, _OnceCache, rational_power, root_of_unity
from .sequences import bernoulli, gen_bernoulli

OMEGAS = ("bullet", "star")


def eps_omega(omega: str) -> int:
    """-1 for the strict sum, +1 for the weak one."""
    check_omega(omega)
    return -1 if omega == "bullet" else 1


def check_omega(omega: str) -> None:
    if omega not in OMEGAS:
        raise ValueError(f"omega must be 'bullet' or 'star', got {omega!r}")


@dataclass(frozen=True)
class EvalRequest:
    omega: str
    d: int
    k: int
    chi: Character

    def __post_init__(self):
        check_omega(self.omega)
        if self.d < 1:
            raise ValueError(f"depth must be at least 1, got d = {self.d}")
        if self.kappa < 1:
            raise ValueError(f"kappa = 2k + e(chi) must be at least 1, got {self.kappa}")
        if self.kappa == 1 and self.chi.is_principal():
            raise ValueError("kappa = 1 needs a non-principal character (the series diverges)")

    @property
    def kappa(self) -> int:
        return 2 * self.k + self.chi.parity


def _part_factor(key) -> Cyclotomic:
    # L(kappa m; chi^m) = zeta_4^(kappa m) 2^(kappa m) * factor * pi^(kappa m)
    m, kappa, chi = key
    power = char_power(chi, m)
    prim = power.primitive
    f = prim.modulus
    sign = -1 if (1 - prim.parity) % 2 else 1
    weight = kappa * m
    bern = gen_bernoulli(weight, prim).conjugate()
    out = bern * Fraction(sign, 2 * math.factorial(weight) * f**weight)
    out = out * cached_gauss_sum(prim)
    out = out * euler_factor_alpha(power, weight)
    return out


_PART_FACTOR = _OnceCache(_part_factor)


def part_factor(m: int, kappa: int, chi: Character) -> Cyclotomic:
    return _PART_FACTOR((m, kappa, chi))


def single_L_value(s_mult: int, kappa: int, chi: Character) -> PiMultiple:
    """L(kappa m; chi^m) for m = s_mult, via the classical primitive-character formula."""
    w = kappa * s_mult
    coeff = root_of_unity(4, w) * (2**w) * part_factor(s_mult, kappa, chi)
    return PiMultiple(coeff, w)


def _partition_sum(omega: str, d: int, specs: Sequence[tuple[int, Character]]) -> Cyclotomic:
    total = Cyclotomic.zero()
    for mu in partitions_of(d):
        term = Cyclotomic.rational(Fraction(mu.eps_omega(omega), mu.z))
        for kappa, chi in specs:
            for part in mu.parts:
                term = term * part_factor(part, kappa, chi)
        total = total + term
    return total


def eval_formula_I(req: EvalRequest) -> PiMultiple:
    kd = req.kappa * req.d
    inner = _partition_sum(req.omega, req.d, [(req.kappa, req.chi)])
    return PiMultiple(root_of_unity(4, kd) * (2**kd) * inner, kd)


def eval_higher_rank(omega: str, d: int, specs: Sequence[tuple[int, Character]]) -> PiMultiple:
    """Rank-r value for column specs (k_i, chi_i), index vectors ordered lexicographically."""
    check_omega(omega)
    if d < 1:
        raise ValueError("depth must be at least 1")
    if not specs:
        raise ValueError("need at least one (k, chi) spec")
    kappas = []
    for k, chi in specs:
        kappa = 2 * k + chi.parity
        if kappa < 1:
            raise ValueError(f"kappa = {kappa} < 1 for spec ({k}, {chi.label})")
        if kappa == 1 and chi.is_principal():
            raise ValueError(f"kappa = 1 with principal {chi.label} diverges")
        kappas.append((kappa, chi))
    total_kappa = sum(k for k, _ in kappas)
    kd = total_kappa * d
    inner = _partition_sum(omega, d, kappas)
    return PiMultiple(root_of_unity(4, kd) * (2**kd) * inner, kd)


def eval_principal(omega: str, d: int, k: int, N: int) -> PiMultiple:
    """Principal character mod N at kappa = 2k; rational coefficient throughout."""
    check_omega(omega)
    if k < 1 or N < 1 or d < 1:
        raise ValueError("need k >= 1, N >= 1, d >= 1")
    primes = list(factorize(N))
    total = Fraction(0)
    for mu in partitions_of(d):
        term = Fraction(mu.eps_omega(omega) * (-1) ** mu.length, mu.z * 2**mu.length)
        for part in mu.parts:
            w = 2 * k * part
            for p in primes:
                term *= 1 - Fraction(1, p**w)
            term *= bernoulli(w) / math.factorial(w)
        total += term
    coeff = (-1) ** (k * d) * 2 ** (2 * k * d) * total
    return PiMultiple(Cyclotomic.rational(coeff), 2 * k * d)


def eval_real_primitive(omega: str, d: int, k: int, D: int) -> PiMultiple:
    """Kronecker character chi_D: odd parts carry chi_D, even parts the trivial character."""
    check_omega(omega)
    chi = kronecker_character(D)
    e = chi.parity
    kappa = 2 * k + e
    if kappa < 1 or d < 1:
        raise ValueError("need kappa >= 1 and d >= 1")
    if kappa == 1 and D == 1:
        raise ValueError("kappa = 1 with the trivial character diverges")
    absD = abs(D)
    primes = list(factorize(absD))
    total = Cyclotomic.zero()
    for mu in partitions_of(d):
        odd, even = mu.odd_part, mu.even_part
        lo = odd.length
        # (-1)^(l - e lo / 2) realised as zeta_4^(2 l - e lo)
        sign = root_of_unity(4, 2 * mu.length - e * lo)
        term = sign * Fraction(mu.eps_omega(omega), mu.z * 2**mu.length)
        for part in even.parts:
            for p in primes:
                term = term * (1 - Fraction(1, p ** (kappa * part)))
            term = term * (bernoulli(kappa * part) / math.factorial(kappa * part))
        for part in odd.parts:
            term = term * gen_bernoulli(kappa * part, chi) * Fraction(1, math.factorial(kappa * part))
        term = term * rational_power(absD, lo) * Fraction(1, absD ** (kappa * odd.size))
        total = total + term
    kd = kappa * d
    return PiMultiple(root_of_unity(4, kd) * (2**kd) * total, kd)


def eval_alternating_even(omega: str, d: int, k: int) -> PiMultiple:
    """Alternating value with (-1)^m numerators at equal even weight 2k."""
    check_omega(omega)
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    total = Fraction(0)
    for mu in partitions_of(d):
        odd, even = mu.odd_part, mu.even_part
        term = Fraction(mu.eps_omega(omega) * (-1) ** even.length,
                        mu.z * 2 ** (even.length + 2 * k * odd.size))
        for part in odd.parts:
            term *= 2 ** (2 * k * part - 1) - 1
        for part in mu.parts:
            term *= bernoulli(2 * k * part) / math.factorial(2 * k * part)
        total += term
    coeff = (-1) ** (k * d) * 2 ** (2 * k * d) * total
    return PiMultiple(Cyclotomic.rational(coeff), 2 * k * d)


def convert_bullet_star(target: str, d: int, evaluator: Callable[[int], PiMultiple]) -> PiMultiple:
    """Value of the `target` family at depth d from the opposite family at depths 1..d.

    evaluator(c) must return the opposite family's value at depth c.
    """
    check_omega(target)
    if d < 1:
        raise ValueError("depth must be at least 1")
    cache = {c: evaluator(c) for c in range(1, d + 1)}
    total: PiMultiple | None = None
    for mu in partitions_of(d):
        term = PiMultiple(Cyclotomic.rational(mu.eps * mu.u), 0)
        for part in mu.parts:
            term = term * cache[part]
        total = term if total is None else total + term
    assert total is not None
    return total


def default_character(label_or_chi) -> Character:
    if isinstance(label_or_chi, Character):
        return label_or_chi
    from .characters import parse_character

    return parse_character(label_or_chi)


__all__ = [
    "EvalRequest",
    "OMEGAS",
    "eps_omega",
    "eval_formula_I",
    "eval_principal",
    "eval_real_primitive",
    "eval_alternating_even",
    "eval_higher_rank",
    "convert_bullet_star",
    "single_L_value",
    "part_factor",
    "principal_character",
]
