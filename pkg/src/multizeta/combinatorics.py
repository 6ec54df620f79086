"""Partitions, compositions and the constants attached to them."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicity(self, i: int) -> int:
        return self.parts.count(i)

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    @cached_property
    def z(self) -> int:
        out = 1
        for part, m in self.multiplicities.items():
            out *= part**m * math.factorial(m)
        return out

    @property
    def eps(self) -> int:
        return -1 if (self.size - self.length) % 2 else 1

    def eps_omega(self, omega: str) -> int:
        """The sign attached to the strict (bullet) or weak (star) sum."""
        return self.eps if omega == "bullet" else 1

    @cached_property
    def u(self) -> int:
        return multinomial(self.length, list(self.multiplicities.values()))

    @property
    def odd_part(self) -> "Partition":
        return Partition(tuple(p for p in self.parts if p % 2))

    @property
    def even_part(self) -> "Partition":
        return Partition(tuple(p for p in self.parts if p % 2 == 0))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


@dataclass(frozen=True)
class PartitionConstants:
    z: int
    eps: int
    u: int
    length: int
    odd_part: Partition
    even_part: Partition


def partition_constants(mu: Partition) -> PartitionConstants:
    return PartitionConstants(mu.z, mu.eps, mu.u, mu.length, mu.odd_part, mu.even_part)


@lru_cache(maxsize=None)
def _partitions(d: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(d: int) -> list[Partition]:
    """All partitions of d in reverse lexicographic order."""
    if d < 0:
        raise ValueError("cannot partition a negative integer")
    return [Partition(p) for p in _partitions(d, d)]


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of n into k parts, streamed in lexicographic order."""
    if k < 1:
        raise ValueError("number of parts must be positive")
    if n < 0:
        return
    buf = [0] * k

    def rec(pos: int, remaining: int):
        if pos == k - 1:
            buf[pos] = remaining
            yield tuple(buf)
            return
        for v in range(remaining + 1):
            buf[pos] = v
            yield from rec(pos + 1, remaining - v)

    yield from rec(0, n)


def multinomial(n: int, parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts):
        raise ValueError("multinomial parts must be non-negative")
    if sum(parts) != n:
        raise ValueError(f"multinomial parts {list(parts)} do not sum to {n}")
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


def binomial_rational(alpha, d: int) -> Fraction:
    """alpha (alpha - 1) ... (alpha - d + 1) / d! for rational alpha."""
    if d < 0:
        raise ValueError("binomial lower index must be non-negative")
    alpha = Fraction(alpha)
    out = Fraction(1)
    for i in range(d):
        out *= alpha - i
    return out / math.factorial(d)
