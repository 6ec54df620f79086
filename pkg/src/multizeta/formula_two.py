"""Multiple L-values from the Taylor expansion of a finite product of sines.

For a character mod N >= 3 the generating function of the values is a product over
1 <= j <= (N-1)//2 and 1 <= l <= kappa of sin(pi (j - chi(j)^(1/kappa) zeta_kappa^l t) / N)
raised to -eps_omega.  Expanding each factor with the Taylor coefficients T_n of
sin(a + t) (or of its reciprocal) turns the value into a finite multinomial sum A
over compositions.  Moduli 1 and 2 use the sine and cosine products directly.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .characters import Character, char_value_root, principal_character
from .combinatorics import compositions, multinomial
from .exact import Cyclotomic, PiMultiple, PowerSeries, lcm, rational_power, root_of_unity
from .formula_one import EvalRequest, check_omega, eps_omega
from .sequences import bernoulli, euler_number, euler_poly


@dataclass(frozen=True)
class TrigTable:
    N: int
    j: int
    sin_a: Cyclotomic
    cos_a: Cyclotomic
    T_bullet: tuple[Cyclotomic, ...]
    T_star: tuple[Cyclotomic, ...]

    def T(self, omega: str) -> tuple[Cyclotomic, ...]:
        return self.T_bullet if omega == "bullet" else self.T_star


def trig_table(N: int, j: int, n_max: int) -> TrigTable:
    """Exact Taylor coefficients of sin(a + t) and cosec(a + t) at a = pi j / N."""
    if N < 1 or n_max < 0:
        raise ValueError("need N >= 1 and n_max >= 0")
    if j % N == 0:
        raise ValueError(f"pi*{j}/{N} is a multiple of pi: cosec has a pole")
    order = lcm(2 * N, 4)
    up, down = root_of_unity(2 * N, j), root_of_unity(2 * N, -j)
    sin_a = ((up - down) * root_of_unity(4, 3) * Fraction(1, 2)).embed(order)
    cos_a = ((up + down) * Fraction(1, 2)).embed(order)
    bullet = []
    for n in range(n_max + 1):
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        bullet.append((sin_a if n % 2 == 0 else cos_a) * sign)
    series = PowerSeries([b * Fraction(1, math.factorial(n)) for n, b in enumerate(bullet)], n_max)
    inv = series.inverse()
    star = [inv[n] * math.factorial(n) for n in range(n_max + 1)]
    return TrigTable(N, j, sin_a, cos_a, tuple(bullet), tuple(star))


def _composition_dfs(tables: Sequence[Sequence[Cyclotomic]], n_max: int, order: int):
    """Coefficients of t^n, n <= n_max, in the product of the series tables[i].

    Walks every weak composition (n_1, ..., n_r) with total <= n_max and returns the
    bucket sums together with the number of leaves visited per total.
    """
    r = len(tables)
    buckets = [Cyclotomic.zero(order) for _ in range(n_max + 1)]
    counts = [0] * (n_max + 1)

    def rec(i: int, used: int, partial: Cyclotomic):
        if i == r:
            buckets[used] = buckets[used] + partial
            counts[used] += 1
            return
        row = tables[i]
        for m in range(n_max - used + 1):
            rec(i + 1, used + m, partial * row[m])

    rec(0, 0, Cyclotomic.one(order))
    return buckets, counts


class _InnerCache:
    """A_n(j; kappa) for n <= n_max, shared by every character mod N."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.RLock()

    def get(self, omega: str, N: int, j: int, kappa: int, n_max: int):
        key = (omega, N, j, kappa)
        with self._lock:
            hit = self._data.get(key)
            if hit is not None and len(hit[0]) > n_max:
                return hit[0][: n_max + 1], hit[1][: n_max + 1]
            vals, counts = _inner_sums(omega, N, j, kappa, n_max)
            self._data[key] = (vals, counts)
            return vals, counts


def _inner_sums(omega: str, N: int, j: int, kappa: int, n_max: int):
    table = trig_table(N, j, n_max).T(omega)
    order = lcm(2 * N, 4, kappa)
    rows = []
    for l in range(1, kappa + 1):
        rows.append([
            (table[m] * root_of_unity(kappa, l * m) * Fraction(1, math.factorial(m))).embed(order)
            for m in range(n_max + 1)
        ])
    buckets, counts = _composition_dfs(rows, n_max, order)
    vals = tuple(b * math.factorial(n) for n, b in enumerate(buckets))
    return vals, tuple(counts)


_INNER = _InnerCache()


def inner_A(omega: str, N: int, j: int, kappa: int, n: int) -> Cyclotomic:
    """A^omega_n(j; kappa): multinomial sum of products of T_(n_l)(pi j/N) zeta_kappa^(l n_l)."""
    check_omega(omega)
    return _INNER.get(omega, N, j, kappa, n)[0][n]


def inner_visit_counts(omega: str, N: int, j: int, kappa: int, n_max: int) -> tuple[int, ...]:
    return _INNER.get(omega, N, j, kappa, n_max)[1]


@dataclass(frozen=True)
class ASeq:
    omega: str
    kappa: int
    chi: Character
    values: tuple[Cyclotomic, ...]
    visits: tuple[int, ...]


def _bucket_sum(order: int, terms) -> Cyclotomic:
    buckets = [Fraction(0)] * order
    for exponent, coeff in terms:
        buckets[exponent % order] += coeff
    return Cyclotomic(order, buckets)


def _A_small(omega: str, k: int, N: int, n: int) -> tuple[Cyclotomic, int]:
    """Moduli 1 and 2 at kappa = 2k; returns the value and the compositions visited."""
    if n % 2:
        return Cyclotomic.zero(), 0
    h = n // 2
    terms, visited = [], 0
    for comp in compositions(h, k):
        visited += 1
        expo = sum(l * c for l, c in enumerate(comp, start=1))
        if N == 1 and omega == "bullet":
            coeff = Fraction(multinomial(n + k, [2 * c + 1 for c in comp]))
        elif N == 1:
            coeff = Fraction(multinomial(n, [2 * c for c in comp]))
            for c in comp:
                coeff *= (2 ** (2 * c) - 2) * bernoulli(2 * c)
        elif omega == "bullet":
            coeff = Fraction(multinomial(n, [2 * c for c in comp]))
        else:
            coeff = Fraction(multinomial(n, [2 * c for c in comp]))
            for c in comp:
                coeff *= euler_number(2 * c)
        terms.append((expo, coeff))
    return _bucket_sum(k, terms), visited


def A_sequence(omega: str, kappa: int, chi: Character, n_max: int) -> ASeq:
    """A^omega_n(kappa, chi) for 0 <= n <= n_max."""
    check_omega(omega)
    N = chi.modulus
    if N <= 2:
        if kappa % 2 or kappa < 2 or not chi.is_principal():
            raise ValueError("moduli 1 and 2 need the principal character and even kappa >= 2")
        pairs = [_A_small(omega, kappa // 2, N, n) for n in range(n_max + 1)]
        return ASeq(omega, kappa, chi, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))
    nbar = (N - 1) // 2
    order = lcm(2 * N, 4, kappa, kappa * chi.order)
    rows = []
    for j in range(1, nbar + 1):
        inner = _INNER.get(omega, N, j, kappa, n_max)[0]
        if chi.exponent(j) is None:
            row = [inner[0].embed(order)] + [Cyclotomic.zero(order)] * n_max
        else:
            root = char_value_root(chi, j, kappa)
            row, power = [], Cyclotomic.one(order)
            for m in range(n_max + 1):
                row.append((inner[m] * power * Fraction(1, math.factorial(m))).embed(order))
                power = power * root
        rows.append(row)
    buckets, counts = _composition_dfs(rows, n_max, order)
    values = tuple(b * math.factorial(n) for n, b in enumerate(buckets))
    return ASeq(omega, kappa, chi, values, tuple(counts))


def A_coeff(omega: str, k: int, chi: Character, n: int) -> Cyclotomic:
    kappa = 2 * k + chi.parity
    if kappa < 1:
        raise ValueError("kappa must be at least 1")
    if n < 0:
        raise ValueError("index must be non-negative")
    return A_sequence(omega, kappa, chi, n).values[n]


def A_chi_minus4_closed(omega: str, k: int, n: int, d_context: int | None = None) -> Cyclotomic:
    """Single-sum form of A^omega_n(kappa, chi_-4), kappa = 2k + 1.

    The star prefactor is 2^((4n + kappa)/2), i.e. 2^(kappa(4d+1)/2) when n = kappa d.
    """
    check_omega(omega)
    kappa = 2 * k + 1
    if d_context is not None and n != kappa * d_context:
        raise ValueError(f"n = {n} is not kappa * d = {kappa * d_context}")
    terms = []
    for comp in compositions(n, kappa):
        expo = sum(l * c for l, c in enumerate(comp, start=1))
        coeff = Fraction(multinomial(n, comp))
        if omega == "bullet":
            half = sum(c * (c - 1) // 2 for c in comp)
        else:
            half = sum(c * (c + 1) // 2 for c in comp)
            for c in comp:
                coeff *= euler_poly(c, Fraction(3, 4))
        terms.append((expo, coeff * (-1) ** half))
    total = _bucket_sum(kappa, terms)
    if omega == "bullet":
        return total * rational_power(2, -kappa)
    return total * rational_power(2, 4 * n + kappa)


def C_constant(omega: str, d: int, k: int, chi: Character) -> Cyclotomic:
    eps = eps_omega(omega)
    tilde = (eps + 1) // 2
    N = chi.modulus
    kappa = 2 * k + chi.parity
    if N == 1:
        return Cyclotomic.rational(Fraction(eps**d * (-1) ** (k * (d - tilde)),
                                            math.factorial((2 * d + 1 - tilde) * k)))
    if N == 2:
        return Cyclotomic.rational(Fraction(eps**d * (-1) ** (k * d),
                                            2 ** (2 * k * d) * math.factorial(2 * k * d)))
    head = Fraction(eps**d * (-1) ** (kappa * d), math.factorial(kappa * d))
    return (rational_power(N, -(2 * d - eps) * kappa)
            * rational_power(2, -(N - 1) * eps * kappa) * head)


def eval_formula_II(req: EvalRequest) -> PiMultiple:
    kd = req.kappa * req.d
    a = A_sequence(req.omega, req.kappa, req.chi, kd).values[kd]
    return PiMultiple(C_constant(req.omega, req.d, req.k, req.chi) * a, kd)


def eval_alternating_genfun(omega: str, d: int, k: int) -> PiMultiple:
    """Alternating value at equal weight 2k from the sine and cosine product expansions."""
    check_omega(omega)
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    eps = eps_omega(omega)
    tilde = (eps + 1) // 2
    shift = (1 - tilde) * k
    kappa = 2 * k
    n = k * d
    seq2 = A_sequence(omega, kappa, principal_character(2), 2 * n).values
    seq1 = A_sequence(omega, kappa, principal_character(1), 2 * n).values
    total = Cyclotomic.zero()
    for p in range(n + 1):
        q = n - p
        coeff = multinomial(2 * n + shift, [2 * p, 2 * q + shift])
        total = total + root_of_unity(2 * k, p) * seq2[2 * p] * seq1[2 * q] * coeff
    const = Fraction(eps**d * (-1) ** (k * (d - tilde)),
                     2 ** (2 * k * d) * math.factorial((2 * d + 1 - tilde) * k))
    return PiMultiple(total * const, 2 * k * d)


@dataclass(frozen=True)
class ProductCheck:
    N: int
    kappa: int
    truncation: int
    points: tuple
    max_deviation: float
    tail_bound: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tail_bound


def product_identity_check(N: int, chi: Character | None, kappa: int, sample_points: Sequence,
                           truncation: int = 10**5, precision: int = 30) -> ProductCheck:
    """Compare the truncated product over n of (1 - chi(n) t^kappa / n^kappa) with its
    closed sine/cosine form at the given sample points (|t| < 1)."""
    if truncation < 10**3:
        raise ValueError("truncation must be at least 1000")
    if chi is None:
        chi = principal_character(N)
    if chi.modulus != N:
        raise ValueError("character modulus does not match N")
    if N <= 2 and (kappa % 2 or not chi.is_principal()):
        raise ValueError("moduli 1 and 2 need the principal character and even kappa")
    M = truncation - truncation % N if N > 1 else truncation
    with mpmath.workdps(precision):
        vals = [chi(n).to_complex(precision) for n in range(N)]
        worst = mpmath.mpf(0)
        worst_tail = mpmath.mpf(0)
        for t in sample_points:
            t = mpmath.mpmathify(t)
            if abs(t) >= 1:
                raise ValueError("sample points need |t| < 1")
            tk = t**kappa
            prod = mpmath.mpf(1)
            for n in range(1, M + 1):
                v = vals[n % N]
                if v:
                    prod *= 1 - v * tk / mpmath.mpf(n) ** kappa
            rhs = _product_rhs(N, chi, kappa, t)
            worst = max(worst, abs(prod - rhs))
            worst_tail = max(worst_tail, abs(rhs) * _product_tail(N, chi, kappa, abs(t), M))
        return ProductCheck(N, kappa, M, tuple(sample_points), float(worst), float(worst_tail))


def _product_rhs(N: int, chi: Character, kappa: int, t):
    pi = mpmath.pi
    out = mpmath.mpf(1)
    if N == 1:
        for l in range(1, kappa // 2 + 1):
            z = mpmath.expjpi(mpmath.mpf(2 * l) / kappa) * t
            out *= mpmath.sin(pi * z) / (pi * z)
        return out
    if N == 2:
        for l in range(1, kappa // 2 + 1):
            z = mpmath.expjpi(mpmath.mpf(2 * l) / kappa) * t
            out *= mpmath.cos(pi * z / 2)
        return out
    out = (mpmath.mpf(2) ** (N - 1) / N) ** (mpmath.mpf(kappa) / 2)
    for j in range(1, (N - 1) // 2 + 1):
        a = chi.exponent(j)
        root = 0 if a is None else mpmath.expjpi(mpmath.mpf(2 * a) / (chi.order * kappa))
        for l in range(1, kappa + 1):
            z = root * mpmath.expjpi(mpmath.mpf(2 * l) / kappa) * t
            out *= mpmath.sin(pi * (j - z) / N)
    return out


def _product_tail(N: int, chi: Character, kappa: int, t, M: int):
    # |log prod_{n>M} (1 - x_n)| <= sum |x_n| + sum |x_n|^2 once |x_n| <= 1/2
    tk = t**kappa
    quad = tk**2 / ((2 * kappa - 1) * mpmath.mpf(M) ** (2 * kappa - 1))
    if kappa >= 2:
        lin = tk / ((kappa - 1) * mpmath.mpf(M) ** (kappa - 1))
    else:
        # summation by parts over whole periods (M is a multiple of N)
        partial, worst = 0, mpmath.mpf(0)
        vals = [chi(n).to_complex(20) for n in range(N)]
        for n in range(1, N + 1):
            partial += vals[n % N]
            worst = max(worst, abs(partial))
        lin = tk * worst / M
    s = lin + quad
    return mpmath.exp(s) - 1


__all__ = [
    "TrigTable", "trig_table", "inner_A", "inner_visit_counts", "ASeq", "A_sequence",
    "A_coeff", "A_chi_minus4_closed", "C_constant", "eval_formula_II",
    "eval_alternating_genfun", "ProductCheck", "product_identity_check",
]
