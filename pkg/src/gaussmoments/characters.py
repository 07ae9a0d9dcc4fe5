"""Dirichlet characters modulo an odd integer, evaluated exactly.

The unit group mod an odd prime power p**a is cyclic, so a character mod q is
fixed by one index k_i per prime-power factor: chi(g_i) = e(k_i / phi(p_i**a_i))
for the canonical primitive root g_i (see :func:`arith.primitive_root`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .arith import Modulus, index_table, primitive_root


class Root(NamedTuple):
    """The root of unity e(e / D), with 0 <= e < D."""

    e: int
    D: int


@dataclass(frozen=True)
class Character:
    modulus: Modulus
    indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) != self.modulus.omega:
            raise ValueError("one index per prime-power factor is required")
        for k, (p, a) in zip(self.indices, self.modulus.factors):
            if not 0 <= k < p ** (a - 1) * (p - 1):
                raise ValueError(f"index {k} out of range for modulus {p}**{a}")

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(primitive_root(p, a) for p, a in self.modulus.factors)

    @property
    def exponent(self) -> int:
        """Exponent of the unit group; every character value is a D-th root of unity."""
        return math.lcm(*(p ** (a - 1) * (p - 1) for p, a in self.modulus.factors))

    @property
    def is_principal(self) -> bool:
        return not any(self.indices)

    @property
    def order(self) -> int:
        return math.lcm(
            *(
                (p ** (a - 1) * (p - 1)) // math.gcd(k, p ** (a - 1) * (p - 1))
                for k, (p, a) in zip(self.indices, self.modulus.factors)
            )
        )

    def conj(self) -> Character:
        return Character(
            self.modulus,
            tuple((-k) % (p ** (a - 1) * (p - 1)) for k, (p, a) in zip(self.indices, self.modulus.factors)),
        )

    def __mul__(self, other: Character) -> Character:
        if other.modulus != self.modulus:
            raise ValueError("characters must share a modulus")
        return Character(
            self.modulus,
            tuple(
                (k + j) % (p ** (a - 1) * (p - 1))
                for k, j, (p, a) in zip(self.indices, other.indices, self.modulus.factors)
            ),
        )

    def __call__(self, a: int) -> Root | None:
        return evaluate(self, a)

    def exponents(self, order: int) -> np.ndarray:
        """Array t[a], a in [0, q), with chi(a) = e(t[a] / order); -1 where chi vanishes."""
        return character_exponents(self, order)


def enumerate_characters(modulus: Modulus) -> Iterator[Character]:
    """All phi(q) characters mod q, index vectors in lexicographic order."""
    ranges = [range(p ** (a - 1) * (p - 1)) for p, a in modulus.factors]
    for idx in itertools.product(*ranges):
        yield Character(modulus, idx)


def principal(modulus: Modulus) -> Character:
    return Character(modulus, (0,) * modulus.omega)


def legendre_character(modulus: Modulus) -> Character:
    """The quadratic character mod an odd prime."""
    if not modulus.is_prime:
        raise ValueError("the Legendre character needs a prime modulus")
    return Character(modulus, ((modulus.q - 1) // 2,))


def evaluate(chi: Character, a: int) -> Root | None:
    """chi(a) as a root e(e/D) with D the group exponent, or None when gcd(a, q) > 1."""
    q = chi.modulus.q
    if math.gcd(a, q) != 1:
        return None
    D = chi.exponent
    e = 0
    for k, (p, alpha) in zip(chi.indices, chi.modulus.factors):
        ph = p ** (alpha - 1) * (p - 1)
        e += k * index_table(p, alpha)[a % p**alpha] * (D // ph)
    return Root(e % D, D)


def character_exponents(chi: Character, order: int) -> np.ndarray:
    q = chi.modulus.q
    if order % chi.exponent:
        raise ValueError(f"order {order} is not a multiple of the group exponent {chi.exponent}")
    residues = np.arange(q)
    total = np.zeros(q, dtype=np.int64)
    unit = np.ones(q, dtype=bool)
    for k, (p, alpha) in zip(chi.indices, chi.modulus.factors):
        ph = p ** (alpha - 1) * (p - 1)
        ind = np.asarray(index_table(p, alpha), dtype=np.int64)[residues % p**alpha]
        unit &= ind >= 0
        total = (total + k * ind * (order // ph)) % order
    return np.where(unit, total, -1)


def lift(chi1: Character, chi2: Character, combined: Modulus) -> Character:
    """The character chi1 * chi2 modulo the product of the coprime moduli."""
    lookup = {}
    for chi in (chi1, chi2):
        for k, (p, a) in zip(chi.indices, chi.modulus.factors):
            lookup[p] = k
    return Character(combined, tuple(lookup[p] for p, _ in combined.factors))
