"""Exact arithmetic in cyclotomic fields, pi-multiples and truncated power series.

Rationals are plain :class:`fractions.Fraction`.  A :class:`Cyclotomic` stores an
element of Q(zeta_M) in the power basis 1, zeta_M, ..., zeta_M^(phi(M)-1), reduced
modulo the M-th cyclotomic polynomial, as integer numerators over one common
positive denominator.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

__all__ = [
    "Cyclotomic",
    "PiMultiple",
    "PowerSeries",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "sqrt_int",
    "rational_power",
    "lcm",
]


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


class _OnceCache:
    """Write-once dict: a key is computed at most once, then only read."""

    def __init__(self, factory):
        self._factory = factory
        self._data: dict = {}
        self._lock = threading.RLock()

    def __call__(self, key):
        try:
            return self._data[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._data:
                self._data[key] = self._factory(key)
            return self._data[key]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials (lowest degree first); den is monic.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dd]
        out[i] = c
        if c:
            for k, p in enumerate(den):
                num[i + k] -= c * p
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


def _compute_cyclotomic(m: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


_PHI_CACHE = _OnceCache(_compute_cyclotomic)


def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    return _PHI_CACHE(m)


# Nonzero terms of Phi_m except the leading one, as (index, coefficient).
_PHI_TAIL = _OnceCache(
    lambda m: tuple((k, c) for k, c in enumerate(cyclotomic_polynomial(m)[:-1]) if c)
)


def _reduce(order: int, poly: list[int]) -> list[int]:
    """Reduce an integer polynomial in zeta_order to the canonical power basis."""
    phi = len(cyclotomic_polynomial(order)) - 1
    if len(poly) > order:
        folded = [0] * order
        for i, c in enumerate(poly):
            folded[i % order] += c
        poly = folded
    else:
        poly = list(poly)
    tail = _PHI_TAIL(order)
    for i in range(len(poly) - 1, phi - 1, -1):
        c = poly[i]
        if c:
            base = i - phi
            for k, p in tail:
                poly[base + k] -= c * p
    del poly[phi:]
    if len(poly) < phi:
        poly.extend([0] * (phi - len(poly)))
    return poly


def _scalar(value) -> Fraction:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"not an exact rational: {value!r}")


class Cyclotomic:
    """An element of the cyclotomic field Q(zeta_M), immutable."""

    __slots__ = ("order", "_num", "_den", "_hash")

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        fr = [_scalar(c) for c in coeffs]
        den = lcm(*(c.denominator for c in fr)) if fr else 1
        nums = [c.numerator * (den // c.denominator) for c in fr]
        self._init(order, _reduce(order, nums or [0]), den)

    def _init(self, order: int, nums: list[int], den: int) -> None:
        g = math.gcd(den, *nums)
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
        self.order = order
        self._num = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, order: int, nums: list[int], den: int) -> "Cyclotomic":
        obj = cls.__new__(cls)
        obj._init(order, nums, den)
        return obj

    @classmethod
    def from_int_poly(cls, order: int, nums: Sequence[int], den: int = 1) -> "Cyclotomic":
        """Sum of nums[i] * zeta_order**i / den for an arbitrary-length integer list."""
        return cls._raw(order, _reduce(order, list(nums) or [0]), den)

    @classmethod
    def rational(cls, value, order: int = 1) -> "Cyclotomic":
        q = _scalar(value)
        phi = euler_phi(order)
        return cls._raw(order, [q.numerator] + [0] * (phi - 1), q.denominator)

    @classmethod
    def zero(cls, order: int = 1) -> "Cyclotomic":
        return cls.rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "Cyclotomic":
        return cls.rational(1, order)

    # -- views -------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    # -- embeddings --------------------------------------------------------

    def embed(self, order: int) -> "Cyclotomic":
        """Image under Q(zeta_m) -> Q(zeta_order), zeta_m -> zeta_order**(order/m)."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into {order}")
        step = order // self.order
        poly = [0] * ((len(self._num) - 1) * step + 1)
        for i, c in enumerate(self._num):
            poly[i * step] = c
        return Cyclotomic._raw(order, _reduce(order, poly), self._den)

    def galois(self, a: int) -> "Cyclotomic":
        """The automorphism zeta -> zeta**a (a coprime to the order)."""
        m = self.order
        if math.gcd(a, m) != 1:
            raise ValueError("Galois exponent must be a unit")
        poly = [0] * m
        for i, c in enumerate(self._num):
            if c:
                poly[(i * a) % m] += c
        return Cyclotomic._raw(m, _reduce(m, poly), self._den)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def minimal(self) -> "Cyclotomic":
        """The same element written over the smallest cyclotomic order containing it."""
        if self.is_rational():
            return Cyclotomic._raw(1, [self._num[0]], self._den)
        for d in divisors(self.order)[1:-1]:
            found = self._solve_in_suborder(d)
            if found is not None:
                return found
        return self

    def _solve_in_suborder(self, d: int) -> "Cyclotomic | None":
        # Quick necessary test: fixed by every automorphism trivial on Q(zeta_d).
        m = self.order
        for a in range(d + 1, m, d):
            if math.gcd(a, m) == 1 and self.galois(a) != self:
                return None
        step = m // d
        phi_d = euler_phi(d)
        basis = [Cyclotomic.from_int_poly(m, [0] * (i * step) + [1]) for i in range(phi_d)]
        # Gaussian elimination on the linear system sum x_i basis_i = self.
        rows = [[Fraction(b._num[r]) for b in basis] + [Fraction(self._num[r], self._den)]
                for r in range(len(self._num))]
        piv_cols = []
        r = 0
        for col in range(phi_d):
            piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            pv = rows[r][col]
            rows[r] = [v / pv for v in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][col]:
                    f = rows[i][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            piv_cols.append(col)
            r += 1
        if any(row[-1] for row in rows[r:]):
            return None
        sol = [Fraction(0)] * phi_d
        for i, col in enumerate(piv_cols):
            sol[col] = rows[i][-1]
        return Cyclotomic(d, sol)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            return other
        return Cyclotomic.rational(other, 1)

    def _common(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self.order == other.order:
            return self, other
        m = lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_rational() and other.order != self.order:
            q0, q1 = other._num[0], other._den
            nums = [c * q1 for c in self._num]
            nums[0] += q0 * self._den
            return Cyclotomic._raw(self.order, nums, self._den * q1)
        a, b = self._common(other)
        if a._den == b._den:
            return Cyclotomic._raw(a.order, [x + y for x, y in zip(a._num, b._num)], a._den)
        return Cyclotomic._raw(
            a.order, [x * b._den + y * a._den for x, y in zip(a._num, b._num)], a._den * b._den
        )

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, [-c for c in self._num], self._den)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic._raw(self.order, [c * q.numerator for c in self._num],
                                   self._den * q.denominator)
        if not isinstance(other, Cyclotomic):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        if other.is_rational():
            return Cyclotomic._raw(self.order, [c * other._num[0] for c in self._num],
                                   self._den * other._den)
        if self.is_rational():
            return Cyclotomic._raw(other.order, [c * self._num[0] for c in other._num],
                                   self._den * other._den)
        a, b = self._common(other)
        x, y = a._num, b._num
        prod = [0] * (len(x) + len(y) - 1)
        for i, u in enumerate(x):
            if u:
                for j, v in enumerate(y):
                    prod[i + j] += u * v
        return Cyclotomic._raw(a.order, _reduce(a.order, prod), a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_M."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            q = Fraction(self._num[0], self._den)
            return Cyclotomic.rational(1 / q, self.order)
        m = self.order
        phi_poly = [Fraction(c) for c in cyclotomic_polynomial(m)]
        a = _trim([Fraction(c, self._den) for c in self._num])
        # Invariant: s0 * a == r0 and s1 * a == r1 (mod Phi_M).
        r0, r1 = phi_poly, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        c = r1[0]
        return Cyclotomic(m, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Cyclotomic.one(self.order)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        if self.order == other.order:
            return self._den == other._den and self._num == other._num
        if self.is_rational() and other.is_rational():
            return self._den == other._den and self._num[0] == other._num[0]
        a, b = self._common(other)
        return a._den == b._den and a._num == b._num

    def __hash__(self):
        if self._hash is None:
            mn = self.minimal()
            self._hash = hash((mn.order, mn._num, mn._den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- numerics and I/O --------------------------------------------------

    def to_complex(self, precision: int = 15) -> mpmath.mpc:
        """Value under zeta_M -> exp(2 pi i / M), accurate to 10**-precision."""
        if precision < 1:
            raise ValueError("precision must be at least one digit")
        size = max(1, sum(abs(c) for c in self._num)) / self._den
        guard = 10 + max(0, int(math.log10(size + 1)) + 1)
        with mpmath.workdps(precision + guard):
            acc = mpmath.mpc(0)
            m = self.order
            for i, c in enumerate(self._num):
                if c:
                    acc += c * mpmath.expjpi(mpmath.mpf(2 * i) / m)
            return acc / self._den

    def __complex__(self):
        return complex(self.to_complex(17))

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [_frac_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Cyclotomic":
        order = int(data["order"])
        coeffs = [Fraction(c) for c in data["coeffs"]]
        if len(coeffs) != euler_phi(order):
            raise ValueError("coefficient vector length must equal phi(order)")
        return cls(order, coeffs)

    def __repr__(self):
        return f"Cyclotomic({self.order}, {self.format()})"

    def format(self) -> str:
        if self.is_rational():
            return _frac_str(self.to_rational())
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if i == 0 else (f"z{self.order}" if i == 1 else f"z{self.order}^{i}")
            if i == 0:
                terms.append(_frac_str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{_frac_str(c)}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for k, v in enumerate(b):
                a[i + k] -= c * v
    return _trim(q), _trim(a[: len(b) - 1] or [Fraction(0)])


def root_of_unity(order: int, a: int = 1) -> Cyclotomic:
    """zeta_order ** a in canonical form."""
    if order < 1:
        raise ValueError("root of unity order must be positive")
    a %= order
    return Cyclotomic.from_int_poly(order, [0] * a + [1])


def _squarefree_split(n: int) -> tuple[int, list[int]]:
    outside, primes, p = 1, [], 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        outside *= p ** (e // 2)
        if e % 2:
            primes.append(p)
        p += 1
    if n > 1:
        primes.append(n)
    return outside, primes


def _sqrt_prime(p: int) -> Cyclotomic:
    if p == 2:
        return root_of_unity(8, 1) + root_of_unity(8, 7)
    # Quadratic Gauss sum g with g**2 = (-1/p) p.
    buckets = [0] * p
    for a in range(1, p):
        buckets[a] = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
    g = Cyclotomic.from_int_poly(p, buckets)
    if p % 4 == 1:
        return g
    return g * root_of_unity(4, 3)


_SQRT_PRIME = _OnceCache(_sqrt_prime)


def sqrt_int(n: int) -> Cyclotomic:
    """The positive square root of a non-negative integer, as a cyclotomic number."""
    if n < 0:
        raise ValueError("sqrt_int expects a non-negative integer")
    if n == 0:
        return Cyclotomic.zero()
    outside, primes = _squarefree_split(n)
    result = Cyclotomic.rational(outside)
    for p in primes:
        result = result * _SQRT_PRIME(p)
    return result


def rational_power(base: int, twice_exponent: int) -> Cyclotomic:
    """base ** (twice_exponent / 2) for a positive integer base, exactly."""
    if base < 1:
        raise ValueError("base must be positive")
    whole, half = divmod(twice_exponent, 2)
    value = Cyclotomic.rational(Fraction(base) ** whole)
    if half:
        value = value * sqrt_int(base)
    return value


@dataclass(frozen=True, eq=False)
class PiMultiple:
    """coefficient * pi ** pi_exponent, exactly."""

    coefficient: Cyclotomic
    pi_exponent: int

    def __post_init__(self):
        if self.pi_exponent < 0:
            raise ValueError("pi exponent must be non-negative")

    def __eq__(self, other):
        if not isinstance(other, PiMultiple):
            return NotImplemented
        if self.coefficient.is_zero() and other.coefficient.is_zero():
            return True
        return self.pi_exponent == other.pi_exponent and self.coefficient == other.coefficient

    def __hash__(self):
        if self.coefficient.is_zero():
            return hash(0)
        return hash((self.pi_exponent, self.coefficient))

    def __add__(self, other: "PiMultiple") -> "PiMultiple":
        if self.coefficient.is_zero():
            return other
        if other.coefficient.is_zero():
            return self
        if self.pi_exponent != other.pi_exponent:
            raise ValueError("cannot add different powers of pi")
        return PiMultiple(self.coefficient + other.coefficient, self.pi_exponent)

    def __mul__(self, other):
        if isinstance(other, PiMultiple):
            return PiMultiple(self.coefficient * other.coefficient,
                              self.pi_exponent + other.pi_exponent)
        return PiMultiple(self.coefficient * other, self.pi_exponent)

    __rmul__ = __mul__

    def to_complex(self, precision: int = 15) -> mpmath.mpc:
        with mpmath.workdps(precision + 10):
            return self.coefficient.to_complex(precision + 5) * mpmath.pi ** self.pi_exponent

    def to_json(self, digits: int | None = None) -> dict:
        out = {"pi_exponent": self.pi_exponent,
               "coefficient": self.coefficient.minimal().to_json()}
        z = self.to_complex(digits or 20)
        out["numeric"] = {"re": mpmath.nstr(z.real, digits or 20),
                          "im": mpmath.nstr(z.imag, digits or 20)}
        return out

    def format(self) -> str:
        c = self.coefficient.minimal()
        text = c.format()
        if not c.is_rational():
            text = f"({text})"
        return f"{text} * pi^{self.pi_exponent}"

    def __repr__(self):
        return f"PiMultiple({self.format()})"


class PowerSeries:
    """Truncated power series sum coeffs[n] t**n, exact to order ``truncation``."""

    __slots__ = ("order", "truncation", "coeffs")

    def __init__(self, coeffs: Sequence, truncation: int | None = None):
        cs = [c if isinstance(c, Cyclotomic) else Cyclotomic.rational(c) for c in coeffs]
        if truncation is None:
            truncation = len(cs) - 1
        if truncation < 0:
            raise ValueError("truncation must be non-negative")
        order = lcm(*(c.order for c in cs)) if cs else 1
        cs = cs[: truncation + 1]
        cs += [Cyclotomic.zero(order)] * (truncation + 1 - len(cs))
        self.order = order
        self.truncation = truncation
        self.coeffs = tuple(c.embed(order) for c in cs)

    def __getitem__(self, n: int) -> Cyclotomic:
        return self.coeffs[n]

    def _check(self, other: "PowerSeries") -> None:
        if self.truncation != other.truncation:
            raise ValueError("power series operands must share their truncation")

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        return PowerSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.truncation)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-a for a in self.coeffs], self.truncation)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def scale(self, c) -> "PowerSeries":
        return PowerSeries([a * c for a in self.coeffs], self.truncation)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        T = self.truncation
        out = []
        for n in range(T + 1):
            acc = Cyclotomic.zero(self.order)
            for k in range(n + 1):
                a, b = self.coeffs[k], other.coeffs[n - k]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return PowerSeries(out, T)

    def inverse(self) -> "PowerSeries":
        a = self.coeffs
        if a[0].is_zero():
            raise ZeroDivisionError("power series with zero constant term is not invertible")
        inv0 = a[0].inverse()
        b = [inv0]
        for n in range(1, self.truncation + 1):
            acc = Cyclotomic.zero(self.order)
            for k in range(1, n + 1):
                if a[k]:
                    acc = acc + a[k] * b[n - k]
            b.append(-(acc * inv0))
        return PowerSeries(b, self.truncation)

    def exp(self) -> "PowerSeries":
        """exp of a series without constant term, via n b_n = sum_k k a_k b_(n-k)."""
        a = self.coeffs
        if not a[0].is_zero():
            raise ValueError("exp needs a zero constant term")
        b = [Cyclotomic.one(self.order)]
        for n in range(1, self.truncation + 1):
            acc = Cyclotomic.zero(self.order)
            for k in range(1, n + 1):
                if a[k]:
                    acc = acc + a[k] * b[n - k] * k
            b.append(acc / n)
        return PowerSeries(b, self.truncation)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.truncation == other.truncation and self.coeffs == other.coeffs

    def __repr__(self):
        return f"PowerSeries({[c.format() for c in self.coeffs]})"


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a * b


def ps_inv(a: PowerSeries) -> PowerSeries:
    return a.inverse()


def ps_exp(a: PowerSeries) -> PowerSeries:
    return a.exp()
