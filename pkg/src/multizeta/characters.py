"""Dirichlet characters with exact cyclotomic values.

A character mod N is stored as exponents on a fixed set of generators of the unit
group (Z/NZ)^*, built prime by prime and lifted with the Chinese remainder theorem.
For an odd prime power the generator is the smallest primitive root; mod 4 it is -1;
mod 2^e with e >= 3 the pair -1, 5 is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .combinatorics import Partition
from .exact import Cyclotomic, _OnceCache, divisors, euler_phi, lcm, root_of_unity

__all__ = [
    "Character",
    "characters_mod",
    "principal_character",
    "kronecker_character",
    "kronecker_symbol",
    "is_fundamental_discriminant",
    "conductor_and_primitive",
    "char_power",
    "mu_primitive",
    "gauss_sum",
    "euler_factor_alpha",
    "W_mu",
    "char_value_root",
    "parse_character",
    "factorize",
]


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _mult_order(g: int, n: int) -> int:
    x, k = g % n, 1
    while x != 1:
        x = x * g % n
        k += 1
    return k


def _primitive_root(q: int) -> int:
    phi = euler_phi(q)
    for g in range(2, q):
        if math.gcd(g, q) == 1 and _mult_order(g, q) == phi:
            return g
    raise ValueError(f"no primitive root mod {q}")


def _crt_lift(residue: int, q: int, n: int) -> int:
    """The unit mod n that is residue mod q and 1 mod n/q."""
    rest = n // q
    if rest == 1:
        return residue % n
    # x = residue + q*t with x = 1 mod rest
    t = ((1 - residue) * pow(q, -1, rest)) % rest
    return (residue + q * t) % n


@dataclass(frozen=True)
class _UnitGroup:
    modulus: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    logs: dict  # unit -> tuple of discrete logs


def _build_unit_group(n: int) -> _UnitGroup:
    gens: list[int] = []
    orders: list[int] = []
    for p, e in sorted(factorize(n).items()):
        q = p**e
        if p == 2:
            if e == 2:
                gens.append(_crt_lift(q - 1, q, n))
                orders.append(2)
            elif e >= 3:
                gens.append(_crt_lift(q - 1, q, n))
                orders.append(2)
                gens.append(_crt_lift(5, q, n))
                orders.append(q // 4)
        else:
            gens.append(_crt_lift(_primitive_root(q), q, n))
            orders.append(q - q // p)
    logs: dict[int, tuple[int, ...]] = {1 % n: tuple(0 for _ in gens)}
    # Enumerate all exponent tuples; each unit is hit exactly once.
    current = [(1 % n, ())]
    for g, o in zip(gens, orders):
        nxt = []
        for x, exps in current:
            y = x
            for a in range(o):
                nxt.append((y, exps + (a,)))
                y = y * g % n
        current = nxt
    logs = {x: exps for x, exps in current}
    if len(logs) != euler_phi(n):
        raise AssertionError("unit group enumeration failed")
    return _UnitGroup(n, tuple(gens), tuple(orders), logs)


_UNIT_GROUPS = _OnceCache(_build_unit_group)


def unit_group(n: int) -> _UnitGroup:
    if n < 1:
        raise ValueError("modulus must be positive")
    return _UNIT_GROUPS(n)


@dataclass(frozen=True)
class Character:
    modulus: int
    exponents: tuple[int, ...]
    label_hint: str | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(self.exponents))
        group = unit_group(self.modulus)
        if len(self.exponents) != len(group.orders):
            raise ValueError("exponent vector does not match the unit group")
        if any(not 0 <= a < o for a, o in zip(self.exponents, group.orders)):
            raise ValueError("exponents must be reduced modulo generator orders")

    @property
    def group(self) -> _UnitGroup:
        return unit_group(self.modulus)

    @cached_property
    def order(self) -> int:
        return lcm(*(o // math.gcd(a, o) for a, o in zip(self.exponents, self.group.orders)))

    def is_principal(self) -> bool:
        return not any(self.exponents)

    def angle(self, j: int) -> Fraction | None:
        """arg chi(j) / 2 pi in [0, 1), or None when gcd(j, N) > 1."""
        x = j % self.modulus
        logs = self.group.logs.get(x)
        if logs is None:
            return None
        return sum((Fraction(a * l, o) for a, l, o in
                    zip(self.exponents, logs, self.group.orders)), Fraction(0)) % 1

    def exponent(self, j: int) -> int | None:
        """a with chi(j) = zeta_m**a, 0 <= a < m, or None off the units."""
        ang = self.angle(j)
        if ang is None:
            return None
        a = ang * self.order
        assert a.denominator == 1
        return int(a)

    def __call__(self, j: int) -> Cyclotomic:
        a = self.exponent(j)
        if a is None:
            return Cyclotomic.zero(self.order)
        return root_of_unity(self.order, a)

    @cached_property
    def parity(self) -> int:
        return 0 if self.angle(-1) == 0 else 1

    @cached_property
    def _primitive_data(self) -> tuple[int, "Character"]:
        return _find_primitive(self)

    @property
    def conductor(self) -> int:
        return self._primitive_data[0]

    @property
    def primitive(self) -> "Character":
        return self._primitive_data[1]

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def is_real(self) -> bool:
        return self.order <= 2

    @cached_property
    def index(self) -> int:
        return _INDEX(self.modulus)[self.exponents]

    @property
    def label(self) -> str:
        if self.label_hint:
            return self.label_hint
        if self.is_principal():
            return f"principal:{self.modulus}"
        return f"mod:{self.modulus}:index:{self.index}"

    def power(self, n: int) -> "Character":
        return char_power(self, n)

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "label": self.label, "order": self.order,
                "parity": self.parity, "conductor": self.conductor}

    def __repr__(self):
        return f"Character({self.label})"


def characters_mod(n: int) -> list[Character]:
    """All characters mod n, lexicographic in the exponent vector (principal first)."""
    return list(_CHARS(n))


def _all_characters(n: int) -> tuple[Character, ...]:
    orders = unit_group(n).orders
    vecs = [()]
    for o in orders:
        vecs = [v + (a,) for v in vecs for a in range(o)]
    return tuple(Character(n, v) for v in vecs)


_CHARS = _OnceCache(_all_characters)
_INDEX = _OnceCache(lambda n: {c.exponents: i for i, c in enumerate(_CHARS(n))})


def principal_character(n: int = 1) -> Character:
    return _CHARS(n)[0]


def _find_primitive(chi: Character) -> tuple[int, Character]:
    n = chi.modulus
    units = list(chi.group.logs)
    for f in divisors(n):
        if all(chi.angle(x) == 0 for x in units if x % f == 1 % f):
            for cand in characters_mod(f):
                if all(cand.angle(x) == chi.angle(x) for x in units):
                    if f == n:
                        return f, chi
                    return f, cand
            raise AssertionError("inducing character not found")
    raise AssertionError("conductor search failed")


def conductor_and_primitive(chi: Character) -> tuple[int, Character]:
    return chi.conductor, chi.primitive


def char_power(chi: Character, n: int) -> Character:
    orders = chi.group.orders
    return Character(chi.modulus, tuple((a * n) % o for a, o in zip(chi.exponents, orders)))


def mu_primitive(chi: Character, mu: Partition, j: int) -> Character:
    """The primitive character inducing chi**mu_j (j counted from 1)."""
    if not 1 <= j <= mu.length:
        raise ValueError("part index out of range")
    return char_power(chi, mu.parts[j - 1]).primitive


def gauss_sum(chi: Character) -> Cyclotomic:
    """sum_{a=1}^{N} chi(a) e^{2 pi i a/N}, as an element of order lcm(N, m)."""
    n, m = chi.modulus, chi.order
    big = lcm(n, m)
    buckets = [0] * big
    for a in range(1, n + 1):
        e = chi.exponent(a)
        if e is None:
            continue
        buckets[(a * (big // n) + e * (big // m)) % big] += 1
    return Cyclotomic.from_int_poly(big, buckets)


_GAUSS = _OnceCache(gauss_sum)


def cached_gauss_sum(chi: Character) -> Cyclotomic:
    return _GAUSS(chi)


def euler_factor_alpha(chi: Character, s: int) -> Cyclotomic:
    """Product over primes p | N, p not dividing the conductor, of 1 - chi'(p) p^-s."""
    f, prim = chi.conductor, chi.primitive
    out = Cyclotomic.one()
    for p in factorize(chi.modulus):
        if f % p:
            out = out * (1 - prim(p) * Fraction(1, p**s))
    return out


def W_mu(mu: Partition, s: int, chi: Character) -> Cyclotomic:
    out = Cyclotomic.one()
    for part in mu.parts:
        out = out * euler_factor_alpha(char_power(chi, part), s * part)
    return out


def char_value_root(chi: Character, j: int, kappa: int) -> Cyclotomic:
    """The kappa-th root of chi(j) with argument in [0, 2 pi / kappa)."""
    if kappa < 1:
        raise ValueError("kappa must be positive")
    a = chi.exponent(j)
    if a is None:
        raise ValueError(f"chi({j}) = 0: {j} is not a unit mod {chi.modulus}")
    return root_of_unity(chi.order * kappa, a)


def kronecker_symbol(a: int, n: int) -> int:
    """The Kronecker symbol (a / n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a / n) for odd positive n.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(abs(n)).values())


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1:
        return True
    if d == 0:
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def kronecker_character(d: int) -> Character:
    """The primitive real character mod |d| attached to a fundamental discriminant d."""
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    n = abs(d)
    units = list(unit_group(n).logs)
    for chi in characters_mod(n):
        if chi.order <= 2 and all(
            (chi.angle(x) == 0) == (kronecker_symbol(d, x) == 1) for x in units
        ):
            label = "principal:1" if d == 1 else f"kronecker:{d}"
            return Character(n, chi.exponents, label_hint=label)
    raise AssertionError(f"no character matches the Kronecker symbol for {d}")


def parse_character(label: str) -> Character:
    """Parse `principal:N`, `kronecker:D` or `mod:N:index:i`."""
    parts = label.strip().split(":")
    try:
        if parts[0] == "principal" and len(parts) == 2:
            return principal_character(int(parts[1]))
        if parts[0] == "kronecker" and len(parts) == 2:
            return kronecker_character(int(parts[1]))
        if parts[0] == "mod" and len(parts) == 4 and parts[2] == "index":
            n, i = int(parts[1]), int(parts[3])
            chars = characters_mod(n)
            if not 0 <= i < len(chars):
                raise ValueError(f"index {i} out of range for modulus {n}")
            return chars[i]
    except ValueError as exc:
        raise ValueError(f"bad character label {label!r}: {exc}") from None
    raise ValueError(f"bad character label {label!r}")


def character_values(chi: Character) -> list[Cyclotomic]:
    return [chi(a) for a in range(chi.modulus)]


def product_character(chis: Sequence[Character]) -> "Character":
    """Pointwise product of characters, realised modulo the lcm of the moduli."""
    n = lcm(*(c.modulus for c in chis))
    for cand in characters_mod(n):
        if all(
            cand.angle(x) == sum((c.angle(x) for c in chis), Fraction(0)) % 1
            for x in unit_group(n).logs
        ):
            return cand
    raise AssertionError("product character not found")
