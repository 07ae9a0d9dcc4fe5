"""Integer and modular arithmetic: factorization, symbols, primitive roots, logs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import HypothesisError, UnsupportedModulusError


@dataclass(frozen=True)
class Modulus:
    """An odd modulus together with its prime-power factorization."""

    q: int
    factors: tuple[tuple[int, int], ...]

    @property
    def phi(self) -> int:
        return math.prod(p ** (a - 1) * (p - 1) for p, a in self.factors)

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def square_full(self) -> bool:
        return all(a >= 2 for _, a in self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**a for p, a in self.factors)

    @property
    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def __str__(self) -> str:
        return str(self.q)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _trial_factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


@lru_cache(maxsize=None)
def factorize(q: int) -> Modulus:
    """Factor an odd modulus q >= 3 by trial division."""
    q = int(q)
    if q < 3 or q % 2 == 0:
        raise UnsupportedModulusError(f"modulus must be odd and >= 3, got {q}")
    return Modulus(q, tuple(_trial_factor(q)))


def totient(n: int) -> int:
    return math.prod(p ** (a - 1) * (p - 1) for p, a in _trial_factor(n)) if n > 1 else 1


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n, by quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"lower argument must be odd and positive, got {n}")
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p); p must be an odd prime."""
    if p % 2 == 0 or not is_prime(p):
        raise HypothesisError(f"Legendre symbol needs an odd prime, got {p}")
    return jacobi(a, p)


def multiplicative_order(g: int, modulus: int) -> int:
    if math.gcd(g, modulus) != 1:
        raise ValueError(f"{g} is not a unit mod {modulus}")
    group = totient(modulus)
    order = group
    for r, _ in _trial_factor(group):
        while order % r == 0 and pow(g, order // r, modulus) == 1:
            order //= r
    return order


@lru_cache(maxsize=None)
def primitive_root(p: int, alpha: int = 1) -> int:
    """Smallest generator mod p, lifted to p**alpha when needed.

    For alpha >= 2 the result is g if g**(p-1) != 1 mod p**2, else g + p.
    """
    if p % 2 == 0 or not is_prime(p):
        raise HypothesisError(f"primitive_root needs an odd prime, got {p}")
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    g = next(x for x in range(2, p) if multiplicative_order(x, p) == p - 1)
    if alpha == 1:
        return g
    # g lifts to every p**alpha iff it lifts to p**2
    return g if pow(g, p - 1, p * p) != 1 else g + p


def discrete_log(x: int, g: int, p: int, alpha: int = 1) -> int:
    """Exponent e in [0, phi(p**alpha)) with g**e == x mod p**alpha (baby-step giant-step)."""
    mod = p**alpha
    if x % p == 0:
        raise ValueError(f"{x} is not a unit mod {mod}")
    order = p ** (alpha - 1) * (p - 1)
    x %= mod
    m = math.isqrt(order) + 1
    baby = {}
    cur = 1
    for j in range(m):
        baby.setdefault(cur, j)
        cur = cur * g % mod
    step = pow(g, -m, mod)
    y = x
    for i in range(m + 1):
        j = baby.get(y)
        if j is not None:
            e = (i * m + j) % order
            if pow(g, e, mod) == x:
                return e
        y = y * step % mod
    raise ValueError(f"{g} does not generate {x} mod {mod}")


@lru_cache(maxsize=None)
def index_table(p: int, alpha: int) -> tuple[int, ...]:
    """ind[a] = discrete log of a to the canonical primitive root mod p**alpha; -1 on non-units."""
    mod = p**alpha
    g = primitive_root(p, alpha)
    ind = [-1] * mod
    x = 1
    for e in range(p ** (alpha - 1) * (p - 1)):
        ind[x] = e
        x = x * g % mod
    return tuple(ind)
