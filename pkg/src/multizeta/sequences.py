"""Bernoulli and Euler numbers and polynomials, generalized Bernoulli numbers, Lucas
numbers and the quadratic sums S_k(t), T_k(t).

Bernoulli numbers follow the convention B_1 = +1/2, i.e. t e^t / (e^t - 1).
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .characters import Character
from .exact import Cyclotomic, _OnceCache, lcm

_lock = threading.Lock()
_bern: list[Fraction] = [Fraction(1)]
_euler: list[int] = [1]


def bernoulli(n: int) -> Fraction:
    if n < 0:
        raise ValueError("Bernoulli index must be non-negative")
    with _lock:
        # sum_{k<=m} C(m+1, k) B_k = m + 1 under the B_1 = +1/2 convention
        while len(_bern) <= n:
            m = len(_bern)
            acc = sum((math.comb(m + 1, k) * _bern[k] for k in range(m)), Fraction(0))
            _bern.append((m + 1 - acc) / (m + 1))
        return _bern[n]


def euler_number(n: int) -> int:
    if n < 0:
        raise ValueError("Euler index must be non-negative")
    with _lock:
        while len(_euler) <= n:
            m = len(_euler)
            if m % 2:
                _euler.append(0)
            else:
                _euler.append(-sum(math.comb(m, k) * _euler[k] for k in range(0, m, 2)))
        return _euler[n]


def bernoulli_poly(n: int, x) -> Fraction:
    """B_n(x) = sum_k C(n, k) B_k^- x^(n-k), with the classical B_1 = -1/2 inside."""
    x = Fraction(x)
    out = Fraction(0)
    for k in range(n + 1):
        b = bernoulli(k) if k != 1 else Fraction(-1, 2)
        out += math.comb(n, k) * b * x ** (n - k)
    return out


def euler_poly(n: int, x) -> Fraction:
    """E_n(x) with 2 e^{tx} / (e^t + 1) = sum E_n(x) t^n / n!."""
    if n < 0:
        raise ValueError("Euler polynomial index must be non-negative")
    y = Fraction(x) - Fraction(1, 2)
    return sum((math.comb(n, k) * Fraction(euler_number(k), 2**k) * y ** (n - k)
                for k in range(n + 1)), Fraction(0))


def _gen_bernoulli(key) -> Cyclotomic:
    n, chi = key
    N, m = chi.modulus, chi.order
    if N == 1:
        return Cyclotomic.rational(bernoulli(n))
    buckets = [Fraction(0)] * m
    scale = Fraction(N) ** (n - 1)
    for a in range(1, N + 1):
        e = chi.exponent(a)
        if e is not None:
            buckets[e] += bernoulli_poly(n, Fraction(a, N))
    return Cyclotomic(m, [b * scale for b in buckets])


_GEN_BERN = _OnceCache(_gen_bernoulli)


def gen_bernoulli(n: int, chi: Character) -> Cyclotomic:
    """B_{n, chi} = N^(n-1) sum_{a=1}^{N} chi(a) B_n(a/N)."""
    if n < 0:
        raise ValueError("index must be non-negative")
    return _GEN_BERN((n, chi))


def lucas(n: int) -> int:
    if n < 1:
        raise ValueError("Lucas numbers start at index 1")
    a, b = 1, 3
    for _ in range(n - 1):
        a, b = b, a + b
    return a


def sum_S(k: int, t) -> Fraction:
    t = Fraction(t)
    return sum((math.comb(2 * k, 2 * n) * t**n * bernoulli(2 * n) * bernoulli(2 * k - 2 * n)
                for n in range(k + 1)), Fraction(0))


def sum_T(k: int, t) -> Fraction:
    t = Fraction(t)
    return sum((math.comb(2 * k, 2 * n) * t**n * euler_number(2 * n) * euler_number(2 * k - 2 * n)
                for n in range(k + 1)), Fraction(0))


__all__ = ["bernoulli", "euler_number", "bernoulli_poly", "euler_poly", "gen_bernoulli",
           "lucas", "sum_S", "sum_T", "lcm"]
