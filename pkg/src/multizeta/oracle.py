"""Floating-point evaluation of truncated multiple L-series with explicit error bounds.

Nested sums are accumulated with cumulative sums in numpy's extended precision
(x87 80-bit long double on x86-64).  For level j the summand is g_j(n) = f_j(n) n^(-s_j)
with f_j periodic.  The part of each level beyond the cutoff M is estimated by
comparison with an integral, c_j M^(1-s_j) / (s_j - 1) where c_j is the period mean
of f_j, and every reported value carries a bound on the total error:

  * the integral comparison error for the mean part,
  * a summation-by-parts bound for the zero-mean part,
  * the interaction of an outer tail with the inner tails,
  * floating-point accumulation.

A level with Re(s_j) = 1 is accepted only when f_j has mean zero, and only with
full-period grouping (the cutoff is rounded up to a multiple of every period).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

import mpmath
import numpy as np

from .characters import Character
from .combinatorics import partitions_of
from .formula_one import check_omega

_DPS = 30
_LD_EPS = float(np.finfo(np.longdouble).eps)


@dataclass(frozen=True)
class Periodic:
    """A periodic arithmetic function given by its values f(0), ..., f(P-1)."""

    values: tuple

    @property
    def period(self) -> int:
        return len(self.values)

    @classmethod
    def from_character(cls, chi: Character) -> "Periodic":
        with mpmath.workdps(_DPS):
            return cls(tuple(mpmath.mpc(chi(n).to_complex(_DPS)) for n in range(chi.modulus)))

    @classmethod
    def alternating(cls) -> "Periodic":
        # n -> (-1)^n
        return cls((mpmath.mpc(1), mpmath.mpc(-1)))

    @classmethod
    def one(cls) -> "Periodic":
        return cls((mpmath.mpc(1),))

    def __call__(self, n: int):
        return self.values[n % self.period]

    def __mul__(self, other: "Periodic") -> "Periodic":
        p = math.lcm(self.period, other.period)
        with mpmath.workdps(_DPS):
            return Periodic(tuple(self(n) * other(n) for n in range(p)))

    def __pow__(self, b: int) -> "Periodic":
        with mpmath.workdps(_DPS):
            return Periodic(tuple(v**b for v in self.values))

    def mean(self):
        with mpmath.workdps(_DPS):
            return mpmath.fsum(self.values) / self.period

    def zero_mean_bound(self):
        """max over 1 <= n <= P of |sum_{m=1}^{n} (f(m) - mean)|."""
        with mpmath.workdps(_DPS):
            c = self.mean()
            acc, worst = mpmath.mpc(0), mpmath.mpf(0)
            for n in range(1, self.period + 1):
                acc += self(n) - c
                worst = max(worst, abs(acc))
            return worst

    def sup(self):
        return max(abs(v) for v in self.values)


def as_periodic(f) -> Periodic:
    if isinstance(f, Periodic):
        return f
    if isinstance(f, Character):
        return Periodic.from_character(f)
    raise TypeError(f"expected a Character or Periodic, got {type(f).__name__}")


@dataclass(frozen=True)
class OracleConfig:
    cutoff: int = 10**4
    digits: int = 15
    grouping: str = "none"

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError("cutoff must be positive")
        if self.grouping not in ("none", "full-period"):
            raise ValueError("grouping must be 'none' or 'full-period'")


@dataclass(frozen=True)
class OracleResult:
    value: mpmath.mpc
    tail_bound: float
    cutoff: int

    def to_json(self) -> dict:
        return {"value": {"re": mpmath.nstr(self.value.real, 20),
                          "im": mpmath.nstr(self.value.imag, 20)},
                "tail_bound": repr(self.tail_bound), "cutoff": self.cutoff}

    def complex(self) -> complex:
        return complex(self.value)


def _to_ld(z) -> np.clongdouble:
    re = np.longdouble(mpmath.nstr(mpmath.re(z), 25, strip_zeros=False))
    im = np.longdouble(mpmath.nstr(mpmath.im(z), 25, strip_zeros=False))
    return np.clongdouble(re) + np.clongdouble(1j) * im


def _ld_str(x) -> str:
    return np.format_float_scientific(x, precision=21, unique=False)


def _ld_to_mp(z) -> mpmath.mpc:
    return mpmath.mpc(mpmath.mpf(_ld_str(np.real(z))), mpmath.mpf(_ld_str(np.imag(z))))


def _powers(M: int, s) -> np.ndarray:
    """n^(-s) for n = 1..M in extended precision."""
    n = np.arange(1, M + 1, dtype=np.longdouble)
    s = mpmath.mpmathify(s)
    if mpmath.im(s) == 0:
        sr = np.longdouble(mpmath.nstr(mpmath.re(s), 25))
        return (n ** (-sr)).astype(np.clongdouble)
    sc = _to_ld(s)
    return np.exp(-sc * np.log(n).astype(np.clongdouble))


@dataclass
class _Level:
    f: Periodic
    s: mpmath.mpc


def _round_cutoff(M: int, periods: Sequence[int]) -> int:
    p = reduce(math.lcm, periods, 1)
    return -(-M // p) * p


def _check_levels(levels: Sequence[_Level], grouping: str) -> None:
    with mpmath.workdps(_DPS):
        for i, lev in enumerate(levels):
            sigma = mpmath.re(lev.s)
            if sigma < 1:
                raise ValueError(f"level {i + 1}: Re(s) = {sigma} < 1, the series diverges")
            if sigma == 1:
                if abs(lev.f.mean()) > mpmath.mpf(10) ** (-_DPS + 5):
                    raise ValueError(f"level {i + 1}: Re(s) = 1 with non-zero mean diverges")
                if grouping != "full-period":
                    raise ValueError(f"level {i + 1}: Re(s) = 1 needs full-period grouping")


def _nested(levels: Sequence[_Level], omega: str, M: int, aligned: bool):
    """Estimate of the nested sum over m_1 < ... < m_d (or <=) with an error bound.

    Returns (estimate, error bound, sum of |terms| product) in mpmath.
    """
    mp = mpmath
    with mp.workdps(_DPS):
        Mf = mp.mpf(M)
        prev = np.ones(M, dtype=np.clongdouble)
        L_hat, err = mp.mpc(1), mp.mpf(0)
        rho, tau = mp.mpf(0), None
        z_prod = mp.mpf(1)
        for j, lev in enumerate(levels):
            f, s = lev.f, mp.mpc(lev.s)
            sigma = mp.re(s)
            vals = np.array([_to_ld(f(n)) for n in range(f.period)], dtype=np.clongdouble)
            idx = np.arange(1, M + 1) % f.period
            g = vals[idx] * _powers(M, s)
            z_prod *= mp.mpf(_ld_str(np.sum(np.abs(g))))
            if j == 0:
                terms = g
            elif omega == "bullet":
                shifted = np.empty(M, dtype=np.clongdouble)
                shifted[0] = 0
                shifted[1:] = prev[:-1]
                terms = g * shifted
            else:
                terms = g * prev
            cur = np.cumsum(terms)
            V = _ld_to_mp(cur[-1])

            c = f.mean()
            B = f.zero_mean_bound()
            F = f.sup()
            a = 1 if aligned else 2
            if abs(c) > 0:
                G_hat = c * mp.power(Mf, 1 - s) / (s - 1)
                tau_G = sigma - 1
                rho_G = abs(c) / abs(s - 1) + (abs(c) * (1 / sigma + 1 / Mf) + 2 * B / sigma) * abs(s) / Mf
            else:
                G_hat = mp.mpc(0)
                tau_G = sigma
                rho_G = 2 * B * abs(s) / sigma
            e = (abs(c) * (1 / sigma + 1 / Mf) + a * B / sigma) * abs(s) * Mf ** (-sigma)

            new_L = V + L_hat * G_hat
            if j == 0:
                new_err = e
                new_rho, new_tau = rho_G, tau_G
            else:
                alpha = sigma + tau - 1
                if alpha <= 0:
                    raise ValueError("nested tails do not decay: the series may diverge")
                K = F * rho * (1 + 1 / Mf) ** tau / alpha
                cross = K * Mf ** (-alpha)
                new_err = err * abs(G_hat) + (abs(L_hat) + err) * e + cross
                new_tau = min(tau_G, alpha)
                new_rho = ((abs(L_hat) + err) * rho_G * Mf ** (new_tau - tau_G)
                           + K * Mf ** (new_tau - alpha))
            L_hat, err, rho, tau = new_L, new_err, new_rho, new_tau
            prev = cur
        slack = 8 * len(levels) * M * _LD_EPS * z_prod + 1e-25
        return L_hat, err + slack, z_prod


def numeric_multiple_L(omega: str, s: Sequence, chis: Sequence, cfg: OracleConfig | None = None) -> OracleResult:
    """Sum over m_1 < ... < m_d (bullet) or m_1 <= ... <= m_d (star) of prod f_j(m_j) m_j^(-s_j)."""
    check_omega(omega)
    cfg = cfg or OracleConfig()
    if len(s) != len(chis) or not s:
        raise ValueError("s and the functions must be non-empty and of equal length")
    levels = [_Level(as_periodic(f), mpmath.mpc(x)) for x, f in zip(s, chis)]
    _check_levels(levels, cfg.grouping)
    M = cfg.cutoff
    if cfg.grouping == "full-period":
        M = _round_cutoff(M, [lev.f.period for lev in levels])
    aligned = all(M % lev.f.period == 0 for lev in levels)
    value, bound, _ = _nested(levels, omega, M, aligned)
    return OracleResult(value, float(bound), M)


def numeric_alternating(omega: str, d: int, s, cfg: OracleConfig | None = None) -> OracleResult:
    """Alternating sum with (-1)^(m_j) numerators at equal argument s."""
    return numeric_multiple_L(omega, [s] * d, [Periodic.alternating()] * d, cfg)


def _nested_bullet_blocks(row_f: Periodic, row_s, blocks: Sequence[int], M: int, aligned: bool):
    levels = [_Level(row_f**b, mpmath.mpc(row_s) * b) for b in blocks]
    return _nested(levels, "bullet", M, aligned)[:2]


def numeric_higher_rank(omega: str, d: int, specs: Sequence, cfg: OracleConfig | None = None) -> OracleResult:
    """Rank-r sum over vectors m^1 < ... < m^d in N^r (lexicographic order).

    specs[i] = (s_i, f_i) fixes row i of the exponent and function matrices.
    Splitting by the first coordinate, each run of vectors with the same first
    coordinate forms a block; blocks contribute a strict nested sum over the first
    coordinate and an independent sum of the same shape over the remaining rows.
    """
    check_omega(omega)
    cfg = cfg or OracleConfig()
    if d < 1 or not specs:
        raise ValueError("need d >= 1 and at least one row")
    rows = [(mpmath.mpc(x), as_periodic(f)) for x, f in specs]
    checks = []
    for x, f in rows:
        for b in range(1, d + 1):
            checks.append(_Level(f**b, x * b))
    _check_levels(checks, cfg.grouping)
    M = cfg.cutoff
    if cfg.grouping == "full-period":
        M = _round_cutoff(M, [f.period for _, f in rows])
    aligned = all(M % f.period == 0 for _, f in rows)
    memo: dict = {}

    def H(i: int, b: int):
        # (estimate, error) for rows i.. of a block of b equal-first-coordinates columns
        if i == len(rows):
            ok = b == 1 or omega == "star"
            return (mpmath.mpc(1 if ok else 0), mpmath.mpf(0))
        key = (i, b)
        if key in memo:
            return memo[key]
        s_i, f_i = rows[i]
        total, total_err = mpmath.mpc(0), mpmath.mpf(0)
        for comp in _ordered_compositions(b):
            factors = [H(i + 1, part) for part in comp]
            if any(v == 0 and e == 0 for v, e in factors):
                continue
            v0, e0 = _nested_bullet_blocks(f_i, s_i, comp, M, aligned)
            factors.append((v0, e0))
            val = mpmath.mpc(1)
            hi, lo = mpmath.mpf(1), mpmath.mpf(1)
            for v, e in factors:
                val *= v
                hi *= abs(v) + e
                lo *= abs(v)
            total += val
            total_err += hi - lo
        memo[key] = (total, total_err)
        return memo[key]

    with mpmath.workdps(_DPS):
        value, err = H(0, d)
    return OracleResult(value, float(err), M)


def _ordered_compositions(b: int):
    """Compositions of b into positive parts, all orders."""
    if b == 0:
        yield ()
        return
    for first in range(1, b + 1):
        for rest in _ordered_compositions(b - first):
            yield (first,) + rest


# -- q-analogue -----------------------------------------------------------


def _q_terms(f: Periodic, q, s, M: int) -> np.ndarray:
    qd = np.longdouble(mpmath.nstr(q, 25))
    n = np.arange(1, M + 1, dtype=np.longdouble)
    qn = qd**n
    bracket = (1 - qn) / (1 - qd)
    s = mpmath.mpmathify(s)
    if mpmath.im(s) == 0:
        sr = np.longdouble(mpmath.nstr(mpmath.re(s), 25))
        w = (qn ** (sr - 1) / bracket**sr).astype(np.clongdouble)
    else:
        sc = _to_ld(s)
        logq = np.log(qn).astype(np.clongdouble)
        w = np.exp((sc - 1) * logq - sc * np.log(bracket).astype(np.clongdouble))
    vals = np.array([_to_ld(f(k)) for k in range(f.period)], dtype=np.clongdouble)
    return vals[np.arange(1, M + 1) % f.period] * w


def numeric_qL(q, omega: str, s: Sequence, chis: Sequence, cfg: OracleConfig | None = None) -> OracleResult:
    """Truncated q-analogue: numerators f_j(m) q^(m (s_j - 1)), denominators [m]_q^(s_j)."""
    check_omega(omega)
    cfg = cfg or OracleConfig(cutoff=200)
    q = mpmath.mpf(Fraction(q).numerator) / Fraction(q).denominator if isinstance(q, (Fraction, int)) else mpmath.mpf(q)
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")
    if len(s) != len(chis) or not s:
        raise ValueError("s and the functions must be non-empty and of equal length")
    M = cfg.cutoff
    fs = [as_periodic(f) for f in chis]
    with mpmath.workdps(_DPS):
        prev = None
        z, tails = [], []
        for j, (f, sj) in enumerate(zip(fs, s)):
            sj = mpmath.mpc(sj)
            sigma = mpmath.re(sj)
            if sigma <= 1:
                raise ValueError("the q-series needs Re(s) > 1")
            g = _q_terms(f, q, sj, M)
            z.append(mpmath.mpf(_ld_str(np.sum(np.abs(g)))))
            scale = ((1 - q) / (1 - q ** (M + 1))) ** sigma
            tails.append(f.sup() * scale * q ** ((M + 1) * (sigma - 1)) / (1 - q ** (sigma - 1)))
            if j == 0:
                terms = g
            elif omega == "bullet":
                shifted = np.concatenate([[0], prev[:-1]]).astype(np.clongdouble)
                terms = g * shifted
            else:
                terms = g * prev
            prev = np.cumsum(terms)
        value = _ld_to_mp(prev[-1])
        # a missing tuple has its largest index m_d > M
        bound = tails[-1]
        for zj, tj in zip(z[:-1], tails[:-1]):
            bound *= zj + tj
        total_z = reduce(lambda a, b: a * b, z, mpmath.mpf(1))
        slack = 8 * len(s) * M * _LD_EPS * total_z + 1e-25
        return OracleResult(value, float(bound + slack), M)


@dataclass(frozen=True)
class QIdentityReport:
    q: Fraction
    s: complex
    d: int
    omega: str
    lhs: complex
    rhs: complex
    deviation: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.bound


def verify_qL_identity(q, s, chi, d: int, omega: str, cfg: OracleConfig | None = None) -> QIdentityReport:
    """Compare the depth-d q-series with its expansion through single q-series."""
    cfg = cfg or OracleConfig(cutoff=200)
    check_omega(omega)
    f = as_periodic(chi)
    lhs = numeric_qL(q, omega, [s] * d, [f] * d, cfg)
    qq = mpmath.mpf(Fraction(q).numerator) / Fraction(q).denominator
    with mpmath.workdps(_DPS):
        rhs, rhs_err = mpmath.mpc(0), mpmath.mpf(0)
        single: dict = {}

        def one(part: int, l: int):
            key = (part, l)
            if key not in single:
                single[key] = numeric_qL(q, "bullet", [mpmath.mpc(s) * part - l], [f**part], cfg)
            return single[key]

        for mu in partitions_of(d):
            weight = mpmath.mpf(mu.eps_omega(omega)) / mu.z
            val, hi, lo = mpmath.mpc(1), mpmath.mpf(1), mpmath.mpf(1)
            for part in mu.parts:
                inner, inner_err = mpmath.mpc(0), mpmath.mpf(0)
                for l in range(part):
                    c = math.comb(part - 1, l) * (1 - qq) ** l
                    r = one(part, l)
                    inner += c * r.value
                    inner_err += c * r.tail_bound
                val *= inner
                hi *= abs(inner) + inner_err
                lo *= abs(inner)
            rhs += weight * val
            rhs_err += abs(weight) * (hi - lo)
        dev = abs(lhs.value - rhs)
    return QIdentityReport(Fraction(q), complex(s), d, omega, complex(lhs.value), complex(rhs),
                           float(dev), float(lhs.tail_bound + rhs_err))


# -- the alternating {1-bar}^d display -----------------------------------


def alternating_one_bar_display(omega: str, d: int, dps: int = 30) -> mpmath.mpc:
    """Closed display for the alternating value at {1-bar}^d, evaluated in floats.

    Odd parts >= 3 contribute zeta values, parts equal to 1 contribute log 2 and even
    parts contribute Bernoulli numbers times powers of pi.
    """
    from .sequences import bernoulli

    check_omega(omega)
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for mu in partitions_of(d):
            odd, even = mu.odd_part, mu.even_part
            coeff = Fraction(mu.eps_omega(omega), mu.z) * (-1) ** (mu.length + even.size // 2)
            for part in odd.parts:
                if part >= 3:
                    coeff *= 2 ** (part - 1) - 1
            shift = even.length - odd.length - (even.size - odd.size)
            coeff /= Fraction(2) ** shift
            for part in even.parts:
                coeff *= bernoulli(part) / math.factorial(part)
            term = mpmath.mpf(coeff.numerator) / coeff.denominator
            term *= mpmath.log(2) ** mu.multiplicity(1)
            for part in odd.parts:
                if part >= 3:
                    term *= mpmath.zeta(part)
            term *= mpmath.pi ** even.size
            total += term
        return mpmath.mpc(total)


__all__ = [
    "Periodic", "OracleConfig", "OracleResult", "numeric_multiple_L", "numeric_alternating",
    "numeric_higher_rank", "numeric_qL", "verify_qL_identity", "QIdentityReport",
    "alternating_one_bar_display",
]
